use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use trinomial_bench::pairs;
use trinomial_core::scan::{self, ScanOptions};
use trinomial_core::{bipoly, conds, perm, Layer, Tower, TrinomialParams};

fn field_ops(c: &mut Criterion) {
    let k = Tower::new(5, 2).unwrap();
    let xs: Vec<_> = k.nonzero(Layer::Top).collect();
    c.bench_function("ff/mul+add q=25", |b| {
        b.iter(|| xs.iter().fold(xs[0], |acc, &x| k.add(k.mul(acc, x), x)))
    });
    c.bench_function("ff/frobenius q=25", |b| {
        b.iter(|| xs.iter().map(|&x| k.frobenius(x).index()).sum::<u32>())
    });
    c.bench_function("ff/build tower q=49", |b| {
        b.iter(|| Tower::new(black_box(7), 2).unwrap())
    });
}

fn verdicts(c: &mut Criterion) {
    let mut group = c.benchmark_group("perm");
    for (p, h) in [(5u64, 1u32), (13, 1), (5, 2)] {
        let k = Tower::new(p, h).unwrap();
        let sample = pairs(&k, 200);
        group.bench_with_input(BenchmarkId::new("is_pp_mu", k.q()), &sample, |b, sample| {
            let mut seen = Vec::new();
            b.iter(|| {
                sample
                    .iter()
                    .filter(|&&(a, bb)| {
                        perm::is_pp_mu_with(&TrinomialParams::new(&k, a, bb).unwrap(), &mut seen)
                            .is_pp
                    })
                    .count()
            })
        });
        group.bench_with_input(
            BenchmarkId::new("is_pp_direct", k.q()),
            &sample,
            |b, sample| {
                b.iter(|| {
                    sample
                        .iter()
                        .filter(|&&(a, bb)| {
                            perm::is_pp_direct(&TrinomialParams::new(&k, a, bb).unwrap()).is_pp
                        })
                        .count()
                })
            },
        );
    }
    group.finish();
}

fn algebra(c: &mut Criterion) {
    let k = Tower::new(13, 1).unwrap();
    let sample = pairs(&k, 50);
    let params: Vec<_> = sample
        .iter()
        .map(|&(a, b)| TrinomialParams::new(&k, a, b).unwrap())
        .collect();
    c.bench_function("conds/evaluate q=13", |b| {
        b.iter(|| {
            params
                .iter()
                .map(conds::evaluate)
                .filter(|r| r.main_predicate)
                .count()
        })
    });
    c.bench_function("bipoly/gcd_degree q=13", |b| {
        b.iter(|| {
            params
                .iter()
                .map(|p| bipoly::gcd_degree(p).unwrap())
                .sum::<usize>()
        })
    });
    c.bench_function("bipoly/resultant q=13", |b| {
        b.iter(|| {
            params
                .iter()
                .filter(|p| bipoly::resultant_vs_closed_form(p).unwrap().equals_inner())
                .count()
        })
    });
    c.bench_function("bipoly/build_curves q=13", |b| {
        b.iter(|| {
            params
                .iter()
                .map(|p| bipoly::build_curves(p).unwrap().g.term_count())
                .sum::<usize>()
        })
    });
    let pair = bipoly::build_curves(&params[0]).unwrap();
    c.bench_function("bipoly/count_points_off_diag q=13", |b| {
        b.iter(|| bipoly::count_points_off_diag(&pair))
    });
}

fn scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    for threads in [1usize, 4] {
        let options = ScanOptions {
            threads,
            budget_q: 13,
            ..ScanOptions::default()
        };
        group.bench_with_input(
            BenchmarkId::new("exhaustive q=11", threads),
            &options,
            |b, options| b.iter(|| scan::exhaustive_scan(11, 1, options).unwrap().pp_count),
        );
    }
    group.finish();
}

criterion_group!(benches, field_ops, verdicts, algebra, scans);
criterion_main!(benches);
