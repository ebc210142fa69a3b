use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use trinomial_core::scan::{self, ScanOptions, DEFAULT_CONIC_SEARCH_MAX_Q};
use trinomial_core::selftest::{self, DEFAULT_MAX_Q};
use trinomial_core::{Format, Tower, TrinomialParams};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "trinomial",
    version,
    about = "Permutation tests for X(1 + aX^{q(q-1)} + bX^{2(q-1)}) over F_{q^2}"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Scan all (a, b) for q = p^h, or a seeded sample of them.
    Scan {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        h: u32,
        /// Sample this many pairs (with replacement) instead of all of them.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads, 0 for one per core.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Off-diagonal point counts and factor patterns for permutation pairs.
        #[arg(long)]
        diagnostics: bool,
        /// Largest q for the brute-force conic searches under --diagnostics.
        #[arg(long, default_value_t = DEFAULT_CONIC_SEARCH_MAX_Q)]
        conic_max_q: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        summary_only: bool,
    },
    /// Classify a single pair, given by element indices, and print it as JSON.
    Check {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        diagnostics: bool,
        #[arg(long, default_value_t = DEFAULT_CONIC_SEARCH_MAX_Q)]
        conic_max_q: u32,
    },
    /// Run the acceptance checks.
    Selftest {
        /// Extend the main-theorem range up to this q (29..43 are opt-in).
        #[arg(long, default_value_t = DEFAULT_MAX_Q)]
        max_q: u32,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
}

fn usage(err: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(EXIT_USAGE)
}

fn verdict(clean: bool) -> ExitCode {
    if clean {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VIOLATION)
    }
}

#[allow(clippy::too_many_arguments)]
fn run_scan(
    p: u64,
    h: u32,
    sample: Option<u64>,
    seed: u64,
    options: ScanOptions,
    format: Format,
    out: Option<PathBuf>,
    summary_only: bool,
) -> ExitCode {
    let report = match sample {
        Some(n) => scan::sampled_scan(p, h, n, seed, &options),
        None => scan::exhaustive_scan(p, h, &options),
    };
    let report = match report {
        Ok(r) => r,
        Err(e @ trinomial_core::Error::BudgetExceeded { .. }) => {
            return usage(format!("{e} (--sample N, or raise {})", scan::BUDGET_ENV))
        }
        Err(e) => return usage(e),
    };
    let written = match &out {
        Some(path) => scan::emit_report(&report, format, summary_only, path),
        None => {
            let stdout = io::stdout().lock();
            scan::write_report(&report, format, summary_only, io::BufWriter::new(stdout))
        }
    };
    if let Err(e) = written {
        return usage(e);
    }
    eprintln!(
        "q={} pairs={} pp={} violations={} time={:.2}s",
        report.q,
        report.pair_count,
        report.pp_count,
        report.violations.len(),
        report.wall_time_secs
    );
    for v in &report.violations {
        eprintln!(
            "violation: a={} b={} is_pp={} main_predicate={}",
            v.a_idx, v.b_idx, v.is_pp, v.main_predicate
        );
    }
    verdict(report.is_clean())
}

fn run_check(p: u64, h: u32, a: u64, b: u64, diagnostics: Option<u32>) -> ExitCode {
    let k = match Tower::new(p, h) {
        Ok(k) => k,
        Err(e) => return usage(e),
    };
    let params = match TrinomialParams::from_indices(&k, a, b) {
        Ok(params) => params,
        Err(e) => return usage(e),
    };
    let row = scan::classify_pair(&params, None).and_then(|mut row| {
        if let Some(bound) = diagnostics {
            row.diagnostics = Some(scan::diagnose(&params, bound)?);
        }
        Ok(row)
    });
    let row = match row {
        Ok(row) => row,
        Err(e) => return usage(e),
    };
    let mut stdout = io::stdout().lock();
    let printed = serde_json::to_writer_pretty(&mut stdout, &row)
        .map_err(io::Error::from)
        .and_then(|_| writeln!(stdout));
    if let Err(e) = printed {
        return usage(e);
    }
    verdict(!row.violation())
}

fn run_selftest(max_q: u32, threads: usize) -> ExitCode {
    let cfg = selftest::Config { max_q, threads };
    let mut all = true;
    for check in selftest::ALL {
        let outcome = check(&cfg);
        println!("{outcome}");
        all &= outcome.passed;
    }
    verdict(all)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Scan {
            p,
            h,
            sample,
            seed,
            threads,
            diagnostics,
            conic_max_q,
            format,
            out,
            summary_only,
        } => {
            let options = ScanOptions {
                threads,
                diagnostics,
                conic_search_max_q: conic_max_q,
                ..ScanOptions::default()
            };
            run_scan(
                p,
                h,
                sample,
                seed,
                options,
                format.into(),
                out,
                summary_only,
            )
        }
        Command::Check {
            p,
            h,
            a,
            b,
            diagnostics,
            conic_max_q,
        } => run_check(p, h, a, b, diagnostics.then_some(conic_max_q)),
        Command::Selftest { max_q, threads } => run_selftest(max_q, threads),
    }
}
