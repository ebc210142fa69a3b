//! The acceptance checks, shared by `trinomial selftest` and the
//! `acceptance` test target. Each check returns an [`Outcome`] rather than
//! panicking so a run always reports every criterion.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bipoly;
use crate::conds;
use crate::error::Result;
use crate::ff::{prime_power, Elem, Layer, Tower};
use crate::perm::{self, TrinomialParams};
use crate::scan::{self, Format, ScanOptions};

pub const DEFAULT_MAX_Q: u32 = 25;
const SEED: u64 = 0x7269_6e6f;

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] AC-{} {}: {}", self.id, self.title, self.detail)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Config {
    /// Largest `q` for the extended main-theorem range; values above 25 add
    /// 29, 31, 37, 41, 43 as far as they fit.
    pub max_q: u32,
    pub threads: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_q: DEFAULT_MAX_Q,
            threads: 0,
        }
    }
}

fn tower(q: u32) -> Tower {
    let (p, h) = prime_power(q as u64).expect("acceptance fields are prime powers");
    Tower::new(p, h).expect("acceptance fields fit the table bound")
}

fn outcome(id: u8, title: &'static str, passed: bool, detail: String) -> Outcome {
    Outcome {
        id,
        title,
        passed,
        detail,
    }
}

fn failed(id: u8, title: &'static str, err: crate::Error) -> Outcome {
    outcome(id, title, false, format!("error: {err}"))
}

fn random_pairs(k: &Tower, n: usize, seed: u64) -> Vec<(Elem, Elem)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = k.order() as u64;
    (0..n)
        .map(|_| {
            let a = k.elem(rng.random_range(1..order)).expect("in range");
            let b = k.elem(rng.random_range(1..order)).expect("in range");
            (a, b)
        })
        .collect()
}

fn all_pairs(k: &Tower) -> Vec<(Elem, Elem)> {
    k.nonzero(Layer::Top)
        .flat_map(|a| k.nonzero(Layer::Top).map(move |b| (a, b)))
        .collect()
}

fn params(k: &Tower, (a, b): (Elem, Elem)) -> TrinomialParams<'_> {
    TrinomialParams::new(k, a, b).expect("nonzero parameters")
}

fn main_theorem(id: u8, title: &'static str, qs: &[u32], cfg: &Config) -> Outcome {
    let mut parts = Vec::new();
    let mut passed = true;
    for &q in qs {
        let (p, h) = prime_power(q as u64).expect("prime power");
        let options = ScanOptions {
            threads: cfg.threads,
            budget_q: q,
            ..ScanOptions::default()
        };
        match scan::exhaustive_scan(p, h, &options) {
            Ok(report) => {
                passed &= report.is_clean();
                parts.push(format!(
                    "q={q}: {} pp / {} pairs, {} violations",
                    report.pp_count,
                    report.pair_count,
                    report.violations.len()
                ));
            }
            Err(e) => return failed(id, title, e),
        }
    }
    outcome(id, title, passed, parts.join("; "))
}

/// Main theorem at q ∈ {5, 7, 11, 13}.
pub fn ac1(cfg: &Config) -> Outcome {
    main_theorem(1, "main theorem, q <= 13", &[5, 7, 11, 13], cfg)
}

/// Main theorem at q ∈ {17, 19, 23, 25}, plus 29..43 up to `max_q`.
pub fn ac2(cfg: &Config) -> Outcome {
    let qs: Vec<u32> = [17, 19, 23, 25, 29, 31, 37, 41, 43]
        .into_iter()
        .filter(|&q| q <= cfg.max_q.max(DEFAULT_MAX_Q))
        .collect();
    main_theorem(2, "main theorem, extended range", &qs, cfg)
}

fn small_char(
    id: u8,
    title: &'static str,
    qs: &[u32],
    check: fn(&TrinomialParams<'_>) -> Result<bool>,
) -> Outcome {
    let mut parts = Vec::new();
    let mut passed = true;
    for &q in qs {
        let k = tower(q);
        let pairs = all_pairs(&k);
        let tallies = pairs
            .par_iter()
            .map(|&ab| {
                let pr = params(&k, ab);
                let pp = perm::is_pp_direct(&pr).is_pp;
                match check(&pr) {
                    Ok(c) => Ok(((pp && c) as u64, (pp != c) as u64)),
                    Err(e) => Err(e),
                }
            })
            .try_reduce(|| (0, 0), |x, y| Ok((x.0 + y.0, x.1 + y.1)));
        match tallies {
            Ok((pp, mismatches)) => {
                passed &= mismatches == 0;
                parts.push(format!(
                    "q={q}: {pp} pp / {} pairs, {mismatches} mismatches",
                    pairs.len()
                ));
            }
            Err(e) => return failed(id, title, e),
        }
    }
    outcome(id, title, passed, parts.join("; "))
}

/// Characteristic 2 criterion against the direct test at q ∈ {4, 8, 16}.
pub fn ac3(_cfg: &Config) -> Outcome {
    small_char(3, "characteristic 2", &[4, 8, 16], conds::check_char2)
}

/// Characteristic 3 criterion against the direct test at q ∈ {3, 9, 27}.
pub fn ac4(_cfg: &Config) -> Outcome {
    small_char(4, "characteristic 3", &[3, 9, 27], conds::check_char3)
}

/// Direct test versus the `μ_{q+1}` test.
pub fn ac5(_cfg: &Config) -> Outcome {
    let mut parts = Vec::new();
    let mut passed = true;
    for (q, sample) in [
        (5, None),
        (7, None),
        (9, Some(10_000)),
        (11, Some(10_000)),
        (13, Some(10_000)),
        (25, Some(10_000)),
    ] {
        let k = tower(q);
        let pairs = match sample {
            None => all_pairs(&k),
            Some(n) => random_pairs(&k, n, SEED ^ q as u64),
        };
        let mismatches = pairs
            .par_iter()
            .filter(|&&ab| {
                let pr = params(&k, ab);
                let direct = perm::is_pp_direct(&pr);
                let mu = perm::is_pp_mu(&pr);
                direct.is_pp != mu.is_pp || !direct.recheck(&pr) || !mu.recheck(&pr)
            })
            .count();
        passed &= mismatches == 0;
        parts.push(format!(
            "q={q}: {} pairs, {mismatches} mismatches",
            pairs.len()
        ));
    }
    outcome(5, "direct vs mu equivalence", passed, parts.join("; "))
}

/// The point-count threshold over all prime powers up to 1000.
pub fn ac6(_cfg: &Config) -> Outcome {
    let prime_powers: Vec<u64> = (2..=1000).filter(|&q| prime_power(q).is_some()).collect();
    let wrong: Vec<u64> = prime_powers
        .iter()
        .copied()
        .filter(|&q| bipoly::hasse_weil_ok(q) != (q >= 47))
        .collect();
    let first_ok = prime_powers
        .iter()
        .copied()
        .find(|&q| bipoly::hasse_weil_ok(q));
    outcome(
        6,
        "Hasse-Weil threshold",
        wrong.is_empty(),
        format!(
            "{} prime powers <= 1000, first passing q = {first_ok:?}, misclassified {wrong:?}",
            prime_powers.len()
        ),
    )
}

#[derive(Default)]
struct StructureTally {
    pp: u64,
    pp_gcd: [u64; 3],
    gcd2_without_bis: u64,
    prima_bis_not_prima: u64,
    seconda_bis_not_seconda: u64,
    seconda_tris: u64,
    seconda_tris_not_seconda: u64,
}

/// Gcd structure of permutation pairs and the reformulation implications.
pub fn ac7(cfg: &Config) -> Outcome {
    let mut parts = Vec::new();
    let mut structure_ok = true;
    let mut bis_ok = true;
    let mut tris_failures = Vec::new();
    for q in [5u32, 7, 11, 13] {
        let (p, h) = prime_power(q as u64).expect("prime power");
        let options = ScanOptions {
            threads: cfg.threads,
            budget_q: q,
            ..ScanOptions::default()
        };
        let report = match scan::exhaustive_scan(p, h, &options) {
            Ok(r) => r,
            Err(e) => return failed(7, "gcd structure and implications", e),
        };
        let mut t = StructureTally::default();
        for row in &report.rows {
            let c = &row.conditions;
            t.prima_bis_not_prima += (c.prima_bis && !c.prima) as u64;
            t.seconda_bis_not_seconda += (c.seconda_bis && !c.seconda) as u64;
            t.seconda_tris += c.seconda_tris as u64;
            t.seconda_tris_not_seconda += (c.seconda_tris && !c.seconda) as u64;
            if row.is_pp {
                t.pp += 1;
                t.pp_gcd[row.gcd_deg as usize] += 1;
                t.gcd2_without_bis += (row.gcd_deg == 2 && !c.prima_bis) as u64;
            }
        }
        structure_ok &= t.pp_gcd[1] == 0 && t.gcd2_without_bis == 0;
        bis_ok &= t.prima_bis_not_prima == 0 && t.seconda_bis_not_seconda == 0;
        if t.seconda_tris_not_seconda > 0 {
            tris_failures.push(q);
        }
        parts.push(format!(
            "q={q}: pp gcd histogram {:?}, gcd-2 pp without prima_bis {}, prima_bis but not prima {}, seconda_bis but not seconda {}, seconda_tris {} of which not seconda {}",
            t.pp_gcd,
            t.gcd2_without_bis,
            t.prima_bis_not_prima,
            t.seconda_bis_not_seconda,
            t.seconda_tris,
            t.seconda_tris_not_seconda
        ));
    }
    if !tris_failures.is_empty() {
        parts.push(format!(
            "seconda_tris => seconda fails at q = {tris_failures:?}: there -3 is a square in F_q, so the square clause of seconda cannot hold"
        ));
    }
    let passed = structure_ok && bis_ok && tris_failures.is_empty();
    outcome(
        7,
        "gcd structure and implications",
        passed,
        parts.join("; "),
    )
}

/// The two curves: exact division, `G` over `F_q`, the `X²Y²` coefficient and
/// the change-of-variables identity.
pub fn ac8(_cfg: &Config) -> Outcome {
    let mut parts = Vec::new();
    let mut passed = true;
    for q in [5u32, 7, 9, 11, 13, 17, 19, 23, 25] {
        let k = tower(q);
        let pairs = if q == 5 {
            all_pairs(&k)
        } else {
            random_pairs(&k, 1000, SEED ^ ((q as u64) << 8))
        };
        let bad = pairs
            .par_iter()
            .filter(|&&ab| {
                let pr = params(&k, ab);
                let Ok(pair) = bipoly::build_curves(&pr) else {
                    return true;
                };
                let (a, b, aq, bq) = (pr.a(), pr.b(), pr.a_q(), pr.b_q());
                let c = |n| k.from_int(n);
                let terms = [
                    k.mul(c(3), k.norm(a)),
                    k.mul(c(2), a),
                    k.mul(c(2), aq),
                    k.mul(c(-3), k.norm(b)),
                    k.neg(b),
                    k.neg(bq),
                    Elem::ONE,
                ];
                let x2y2 = terms.into_iter().fold(Elem::ZERO, |acc, t| k.add(acc, t));
                pair.g.coeff(2, 2) != x2y2
                    || pair.g.total_degree().unwrap_or(0) > 4
                    || !pair.f.is_symmetric()
                    || !bipoly::verify_iso_identity(
                        &pair,
                        50,
                        SEED ^ ab.0.index() as u64 ^ ((ab.1.index() as u64) << 20),
                    )
            })
            .count();
        passed &= bad == 0;
        parts.push(format!("q={q}: {} pairs, {bad} failures", pairs.len()));
    }
    outcome(8, "curve identities", passed, parts.join("; "))
}

/// No off-diagonal `F_q`-points on the twisted curve of a permutation pair.
pub fn ac9(_cfg: &Config) -> Outcome {
    let mut parts = Vec::new();
    let mut passed = true;
    for q in [5u32, 7, 9, 11, 13] {
        let k = tower(q);
        let pairs = all_pairs(&k);
        let (pp, bad) = pairs
            .par_iter()
            .map_init(Vec::new, |seen, &ab| {
                let pr = params(&k, ab);
                if !perm::is_pp_mu_with(&pr, seen).is_pp {
                    return (0u64, 0u64);
                }
                let points = bipoly::build_curves(&pr).map(|c| bipoly::count_points_off_diag(&c));
                (1, !matches!(points, Ok(0)) as u64)
            })
            .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
        passed &= bad == 0;
        parts.push(format!("q={q}: {pp} pp, {bad} with off-diagonal points"));
    }
    outcome(
        9,
        "no off-diagonal points for permutations",
        passed,
        parts.join("; "),
    )
}

/// `Res_X(N, D)` against the closed form: vanishing agrees with the gcd, and
/// the relation `Res = Φ`, `h = b^{2q+10} Res²` holds on every sampled pair.
pub fn ac10(_cfg: &Config) -> Outcome {
    let title = "resultant reconciliation";
    let mut parts = Vec::new();
    let mut passed = true;
    let k = tower(5);
    let mut vanishing_mismatch = 0;
    for ab in all_pairs(&k) {
        let pr = params(&k, ab);
        match (
            bipoly::resultant_vs_closed_form(&pr),
            bipoly::gcd_degree(&pr),
        ) {
            (Ok(cmp), Ok(d)) => vanishing_mismatch += (cmp.lhs.is_zero() != (d > 0)) as u32,
            (Err(e), _) | (_, Err(e)) => return failed(10, title, e),
        }
    }
    passed &= vanishing_mismatch == 0;
    parts.push(format!(
        "q=5 exhaustive: {vanishing_mismatch} vanishing mismatches"
    ));
    for q in [5u32, 7, 11] {
        let k = tower(q);
        let pairs = random_pairs(&k, 1000, SEED ^ ((q as u64) << 16));
        let mut off = 0;
        let mut exact = 0;
        for &ab in &pairs {
            let cmp = match bipoly::resultant_vs_closed_form(&params(&k, ab)) {
                Ok(c) => c,
                Err(e) => return failed(10, title, e),
            };
            off += !(cmp.equals_inner() && cmp.squared_matches()) as u32;
            exact += cmp.exact() as u32;
        }
        passed &= off == 0;
        parts.push(format!(
            "q={q}: {} pairs, Res = inner factor on all but {off}, Res = h on {exact}",
            pairs.len()
        ));
    }
    parts.push("relation: Res_X(N,D) = inner factor, h = b^(2q+10) * Res^2".into());
    outcome(10, title, passed, parts.join("; "))
}

/// Byte-identical CSV at q = 7 across 1, 2 and 8 threads.
pub fn ac11(_cfg: &Config) -> Outcome {
    let title = "determinism across thread counts";
    let mut outputs = Vec::new();
    for threads in [1usize, 2, 8] {
        let options = ScanOptions {
            threads,
            budget_q: 7,
            ..ScanOptions::default()
        };
        let mut buf = Vec::new();
        let written = scan::exhaustive_scan(7, 1, &options)
            .and_then(|r| scan::write_report(&r, Format::Csv, false, &mut buf));
        if let Err(e) = written {
            return failed(11, title, e);
        }
        outputs.push(buf);
    }
    let same = outputs.windows(2).all(|w| w[0] == w[1]);
    outcome(
        11,
        title,
        same,
        format!("{} bytes per run, identical: {same}", outputs[0].len()),
    )
}

pub const ALL: [fn(&Config) -> Outcome; 11] =
    [ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10, ac11];

pub fn run_all(cfg: &Config) -> Vec<Outcome> {
    ALL.iter().map(|check| check(cfg)).collect()
}
