//! Exhaustive and sampled verification of the permutation criteria.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bipoly::{self, FactorWitness};
use crate::conds::{self, ConditionReport};
use crate::error::{Error, Result};
use crate::ff::{Elem, Layer, Tower};
use crate::perm::{self, TrinomialParams, Witness};

pub const DEFAULT_BUDGET_Q: u32 = 31;
pub const BUDGET_ENV: &str = "TRINOMIAL_BUDGET_Q";
pub const DEFAULT_CONIC_SEARCH_MAX_Q: u32 = 7;

pub const CSV_HEADER: [&str; 11] = [
    "q",
    "a_idx",
    "b_idx",
    "is_pp",
    "prima",
    "seconda",
    "prima_bis",
    "seconda_bis",
    "seconda_tris",
    "gcd_deg",
    "main_predicate",
];

pub const SUMMARY_HEADER: [&str; 16] = [
    "q",
    "p",
    "h",
    "pair_count",
    "pp_count",
    "prima_only",
    "seconda_only",
    "both",
    "char2",
    "char3",
    "unattributed",
    "gcd0",
    "gcd1",
    "gcd2",
    "violations",
    "sampled",
];

/// Exhaustion budget: `TRINOMIAL_BUDGET_Q` if set and parseable, else 31.
pub fn budget_from_env() -> u32 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET_Q)
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
    pub diagnostics: bool,
    pub budget_q: u32,
    /// Bound for the brute-force conic searches in diagnostics.
    pub conic_search_max_q: u32,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            threads: 0,
            diagnostics: false,
            budget_q: budget_from_env(),
            conic_search_max_q: DEFAULT_CONIC_SEARCH_MAX_Q,
        }
    }
}

/// Curve-side information about one pair; the curve fields need odd `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub off_diag_points: Option<u64>,
    pub g_degree: Option<u32>,
    pub factor: Option<FactorWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub q: u32,
    pub a_idx: u32,
    pub b_idx: u32,
    pub is_pp: bool,
    pub witness: Option<Witness>,
    pub conditions: ConditionReport,
    pub gcd_deg: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<Diagnostics>,
}

impl PairRecord {
    pub fn violation(&self) -> bool {
        self.is_pp != self.conditions.main_predicate
    }
}

pub fn diagnose(params: &TrinomialParams<'_>, conic_search_max_q: u32) -> Result<Diagnostics> {
    let k = params.field();
    if k.p() == 2 {
        return Ok(Diagnostics {
            off_diag_points: None,
            g_degree: None,
            factor: None,
        });
    }
    let pair = bipoly::build_curves(params)?;
    let mut factor = bipoly::four_line_witness(params)?;
    if factor.pattern == bipoly::FactorPattern::None {
        factor = bipoly::conic_witnesses(params, conic_search_max_q)?;
    }
    Ok(Diagnostics {
        off_diag_points: Some(bipoly::count_points_off_diag(&pair)),
        g_degree: pair.g.total_degree(),
        factor: Some(factor),
    })
}

/// One row: the `μ_{q+1}` verdict, every condition, the gcd degree, and
/// diagnostics for permutation pairs when requested.
pub fn classify_pair(params: &TrinomialParams<'_>, diagnostics: Option<u32>) -> Result<PairRecord> {
    classify_pair_with(params, diagnostics, &mut Vec::new())
}

fn classify_pair_with(
    params: &TrinomialParams<'_>,
    diagnostics: Option<u32>,
    seen: &mut Vec<u32>,
) -> Result<PairRecord> {
    let verdict = perm::is_pp_mu_with(params, seen);
    let diagnostics = match diagnostics {
        Some(bound) if verdict.is_pp => Some(diagnose(params, bound)?),
        _ => None,
    };
    Ok(PairRecord {
        q: params.field().q(),
        a_idx: params.a().index(),
        b_idx: params.b().index(),
        is_pp: verdict.is_pp,
        witness: verdict.witness,
        conditions: conds::evaluate(params),
        gcd_deg: bipoly::gcd_degree(params)? as u8,
        diagnostics,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attribution {
    pub prima_only: u64,
    pub seconda_only: u64,
    pub both: u64,
    pub char2: u64,
    pub char3: u64,
    pub unattributed: u64,
}

impl Attribution {
    pub fn total(&self) -> u64 {
        self.prima_only
            + self.seconda_only
            + self.both
            + self.char2
            + self.char3
            + self.unattributed
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub a_idx: u32,
    pub b_idx: u32,
    pub is_pp: bool,
    pub main_predicate: bool,
}

/// Whether each reformulation selects the same pairs as its original, over
/// the scanned pairs. `None` below characteristic 5.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetEqualities {
    pub prima_eq_prima_bis: Option<bool>,
    pub seconda_eq_seconda_bis: Option<bool>,
}

/// Pairs where a reformulation holds but its original does not.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImplicationFailures {
    pub prima_bis_not_prima: u64,
    pub seconda_bis_not_seconda: u64,
    pub seconda_tris_not_seconda: u64,
}

impl ImplicationFailures {
    pub fn total(&self) -> u64 {
        self.prima_bis_not_prima + self.seconda_bis_not_seconda + self.seconda_tris_not_seconda
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub q: u32,
    pub p: u32,
    pub h: u32,
    pub sampled: bool,
    pub seed: Option<u64>,
    pub pair_count: u64,
    pub pp_count: u64,
    pub attribution: Attribution,
    /// Gcd degrees 0, 1, 2 over permutation pairs.
    pub gcd_histogram: [u64; 3],
    pub violations: Vec<Violation>,
    pub set_equalities: SetEqualities,
    pub implication_failures: ImplicationFailures,
    /// Permutation pairs with diagnostics whose curve has an off-diagonal
    /// `F_q`-point.
    pub pp_with_off_diag_points: u64,
    pub wall_time_secs: f64,
    pub rows: Vec<PairRecord>,
}

impl ScanReport {
    fn from_rows(
        k: &Tower,
        rows: Vec<PairRecord>,
        sampled: bool,
        seed: Option<u64>,
        started: Instant,
    ) -> Self {
        let large_p = k.p() > 3;
        let mut report = ScanReport {
            q: k.q(),
            p: k.p(),
            h: k.h(),
            sampled,
            seed,
            pair_count: rows.len() as u64,
            pp_count: 0,
            attribution: Attribution::default(),
            gcd_histogram: [0; 3],
            violations: Vec::new(),
            set_equalities: SetEqualities::default(),
            implication_failures: ImplicationFailures::default(),
            pp_with_off_diag_points: 0,
            wall_time_secs: 0.0,
            rows: Vec::new(),
        };
        let (mut prima_eq, mut seconda_eq) = (true, true);
        for row in &rows {
            let c = &row.conditions;
            prima_eq &= c.prima == c.prima_bis;
            seconda_eq &= c.seconda == c.seconda_bis;
            let fails = &mut report.implication_failures;
            fails.prima_bis_not_prima += (c.prima_bis && !c.prima) as u64;
            fails.seconda_bis_not_seconda += (c.seconda_bis && !c.seconda) as u64;
            fails.seconda_tris_not_seconda += (c.seconda_tris && !c.seconda) as u64;
            if row.violation() {
                report.violations.push(Violation {
                    a_idx: row.a_idx,
                    b_idx: row.b_idx,
                    is_pp: row.is_pp,
                    main_predicate: c.main_predicate,
                });
            }
            if !row.is_pp {
                continue;
            }
            report.pp_count += 1;
            report.gcd_histogram[row.gcd_deg as usize] += 1;
            let slot = match (k.p(), c.prima, c.seconda, c.main_predicate) {
                (2, _, _, true) => &mut report.attribution.char2,
                (3, _, _, true) => &mut report.attribution.char3,
                (p, true, true, _) if p > 3 => &mut report.attribution.both,
                (p, true, false, _) if p > 3 => &mut report.attribution.prima_only,
                (p, false, true, _) if p > 3 => &mut report.attribution.seconda_only,
                _ => &mut report.attribution.unattributed,
            };
            *slot += 1;
            if row
                .diagnostics
                .as_ref()
                .and_then(|d| d.off_diag_points)
                .is_some_and(|n| n > 0)
            {
                report.pp_with_off_diag_points += 1;
            }
        }
        if large_p {
            report.set_equalities = SetEqualities {
                prima_eq_prima_bis: Some(prima_eq),
                seconda_eq_seconda_bis: Some(seconda_eq),
            };
        }
        report.rows = rows;
        report.wall_time_secs = started.elapsed().as_secs_f64();
        report
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Io(std::io::Error::other(e)))
}

/// Every `(a, b) ∈ (F_{q²}^*)²`. The `a` axis is split across workers and
/// the per-`a` blocks are collected in index order, so rows come out sorted
/// regardless of the thread count.
pub fn exhaustive_scan(p: u64, h: u32, options: &ScanOptions) -> Result<ScanReport> {
    let started = Instant::now();
    let k = Tower::new(p, h)?;
    if k.q() > options.budget_q {
        return Err(Error::BudgetExceeded {
            q: k.q() as u64,
            budget: options.budget_q as u64,
        });
    }
    let diagnostics = options.diagnostics.then_some(options.conic_search_max_q);
    let a_values: Vec<Elem> = k.nonzero(Layer::Top).collect();
    let blocks: Vec<Vec<PairRecord>> = pool(options.threads)?.install(|| {
        a_values
            .par_iter()
            .map_init(Vec::new, |seen, &a| {
                k.nonzero(Layer::Top)
                    .map(|b| {
                        let params = TrinomialParams::new(&k, a, b)?;
                        classify_pair_with(&params, diagnostics, seen)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(ScanReport::from_rows(
        &k,
        blocks.into_iter().flatten().collect(),
        false,
        None,
        started,
    ))
}

/// `samples` pairs drawn uniformly with replacement from a seeded ChaCha8
/// stream, rows sorted by `(a_idx, b_idx)`.
pub fn sampled_scan(
    p: u64,
    h: u32,
    samples: u64,
    seed: u64,
    options: &ScanOptions,
) -> Result<ScanReport> {
    let started = Instant::now();
    let k = Tower::new(p, h)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = k.order() as u64;
    let mut pairs: Vec<(u64, u64)> = (0..samples)
        .map(|_| (rng.random_range(1..n), rng.random_range(1..n)))
        .collect();
    pairs.sort_unstable();
    let diagnostics = options.diagnostics.then_some(options.conic_search_max_q);
    let rows = pool(options.threads)?.install(|| {
        pairs
            .par_iter()
            .map_init(Vec::new, |seen, &(a, b)| {
                let params = TrinomialParams::from_indices(&k, a, b)?;
                classify_pair_with(&params, diagnostics, seen)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(ScanReport::from_rows(&k, rows, true, Some(seed), started))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Serialize)]
struct CsvRow {
    q: u32,
    a_idx: u32,
    b_idx: u32,
    is_pp: bool,
    prima: bool,
    seconda: bool,
    prima_bis: bool,
    seconda_bis: bool,
    seconda_tris: bool,
    gcd_deg: u8,
    main_predicate: bool,
}

impl From<&PairRecord> for CsvRow {
    fn from(r: &PairRecord) -> Self {
        let c = &r.conditions;
        CsvRow {
            q: r.q,
            a_idx: r.a_idx,
            b_idx: r.b_idx,
            is_pp: r.is_pp,
            prima: c.prima,
            seconda: c.seconda,
            prima_bis: c.prima_bis,
            seconda_bis: c.seconda_bis,
            seconda_tris: c.seconda_tris,
            gcd_deg: r.gcd_deg,
            main_predicate: c.main_predicate,
        }
    }
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Io(std::io::Error::other(format!("{other:?}"))),
    }
}

/// Writes the report. In summary mode the CSV is a single summary row and
/// the JSON omits `rows`.
pub fn write_report<W: Write>(
    report: &ScanReport,
    format: Format,
    summary_only: bool,
    out: W,
) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(out);
            if summary_only {
                w.write_record(SUMMARY_HEADER).map_err(csv_error)?;
                let a = &report.attribution;
                let g = &report.gcd_histogram;
                let fields = [
                    report.q as u64,
                    report.p as u64,
                    report.h as u64,
                    report.pair_count,
                    report.pp_count,
                    a.prima_only,
                    a.seconda_only,
                    a.both,
                    a.char2,
                    a.char3,
                    a.unattributed,
                    g[0],
                    g[1],
                    g[2],
                    report.violations.len() as u64,
                ];
                let mut record: Vec<String> = fields.iter().map(u64::to_string).collect();
                record.push(report.sampled.to_string());
                w.write_record(&record).map_err(csv_error)?;
            } else {
                w.write_record(CSV_HEADER).map_err(csv_error)?;
                for row in &report.rows {
                    w.serialize(CsvRow::from(row)).map_err(csv_error)?;
                }
            }
            w.flush()?;
        }
        Format::Json => {
            let mut out = out;
            if summary_only {
                let mut value = serde_json::to_value(report)?;
                value
                    .as_object_mut()
                    .expect("report is an object")
                    .remove("rows");
                serde_json::to_writer_pretty(&mut out, &value)?;
            } else {
                serde_json::to_writer_pretty(&mut out, report)?;
            }
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn emit_report(
    report: &ScanReport,
    format: Format,
    summary_only: bool,
    path: &Path,
) -> Result<()> {
    let mut file = BufWriter::new(File::create(path)?);
    write_report(report, format, summary_only, &mut file)?;
    file.flush()?;
    Ok(())
}

pub fn read_json_report(path: &Path) -> Result<ScanReport> {
    Ok(serde_json::from_reader(std::io::BufReader::new(
        File::open(path)?,
    ))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(threads: usize) -> ScanOptions {
        ScanOptions {
            threads,
            diagnostics: false,
            budget_q: DEFAULT_BUDGET_Q,
            conic_search_max_q: 0,
        }
    }

    fn csv_bytes(report: &ScanReport) -> Vec<u8> {
        let mut buf = Vec::new();
        write_report(report, Format::Csv, false, &mut buf).unwrap();
        buf
    }

    #[test]
    fn q5_full_scan_is_clean_and_consistent() {
        let report = exhaustive_scan(5, 1, &opts(2)).unwrap();
        assert_eq!(report.pair_count, 24 * 24);
        assert!(report.is_clean());
        let pp_rows = report.rows.iter().filter(|r| r.is_pp).count() as u64;
        let predicate_rows = report
            .rows
            .iter()
            .filter(|r| r.conditions.main_predicate)
            .count() as u64;
        assert_eq!(report.pp_count, pp_rows);
        assert_eq!(report.pp_count, predicate_rows);
        assert_eq!(report.attribution.total(), report.pp_count);
        assert_eq!(report.attribution.unattributed, 0);
        assert_eq!(report.gcd_histogram[1], 0);
        assert!(report
            .rows
            .windows(2)
            .all(|w| (w[0].a_idx, w[0].b_idx) < (w[1].a_idx, w[1].b_idx)));
    }

    #[test]
    fn csv_shape() {
        let report = exhaustive_scan(5, 1, &opts(1)).unwrap();
        let text = String::from_utf8(csv_bytes(&report)).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        assert_eq!(lines.clone().count(), 576);
        assert_eq!(
            lines.next().unwrap(),
            "5,1,1,false,false,false,false,false,false,0,false"
        );
    }

    #[test]
    fn empty_report_is_header_only() {
        let report = sampled_scan(5, 1, 0, 9, &opts(1)).unwrap();
        assert_eq!(report.pair_count, 0);
        let text = String::from_utf8(csv_bytes(&report)).unwrap();
        assert_eq!(text, format!("{}\n", CSV_HEADER.join(",")));
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let one = csv_bytes(&exhaustive_scan(5, 1, &opts(1)).unwrap());
        let three = csv_bytes(&exhaustive_scan(5, 1, &opts(3)).unwrap());
        assert_eq!(one, three);
        let s1 = sampled_scan(7, 1, 500, 42, &opts(1)).unwrap();
        let s4 = sampled_scan(7, 1, 500, 42, &opts(4)).unwrap();
        assert_eq!(csv_bytes(&s1), csv_bytes(&s4));
        assert_ne!(
            csv_bytes(&s1),
            csv_bytes(&sampled_scan(7, 1, 500, 43, &opts(1)).unwrap())
        );
    }

    #[test]
    fn budget_is_enforced() {
        let tight = ScanOptions {
            budget_q: 4,
            ..opts(1)
        };
        assert!(matches!(
            exhaustive_scan(5, 1, &tight),
            Err(Error::BudgetExceeded { q: 5, budget: 4 })
        ));
    }

    #[test]
    fn classify_known_rows() {
        let k = Tower::new(5, 1).unwrap();
        // 1 + a + b = 0 with a = 1, b = 3
        let params = TrinomialParams::new(&k, Elem::ONE, k.from_int(3)).unwrap();
        let row = classify_pair(&params, Some(0)).unwrap();
        assert!(!row.is_pp && row.diagnostics.is_none());
        let report = exhaustive_scan(5, 1, &opts(1)).unwrap();
        let bis = report
            .rows
            .iter()
            .find(|r| r.is_pp && r.conditions.prima_bis)
            .unwrap();
        assert_eq!(bis.gcd_deg, 2);
        let params = TrinomialParams::from_indices(&k, bis.a_idx as u64, bis.b_idx as u64).unwrap();
        let again = classify_pair(&params, None).unwrap();
        assert_eq!(&again, bis);
        let diag = classify_pair(&params, Some(5))
            .unwrap()
            .diagnostics
            .unwrap();
        assert_eq!(diag.off_diag_points, Some(0));
    }

    #[test]
    fn sampled_q49_has_no_violations() {
        let report = sampled_scan(7, 2, 100_000, 2024, &opts(0)).unwrap();
        assert_eq!(report.q, 49);
        assert_eq!(report.pair_count, 100_000);
        assert!(
            report.is_clean(),
            "{:?}",
            &report.violations[..report.violations.len().min(5)]
        );
        assert_eq!(report.gcd_histogram[1], 0);
        assert!(report.pp_count > 0);
    }

    #[test]
    fn characteristic_three_scan_is_clean() {
        let report = exhaustive_scan(3, 2, &opts(2)).unwrap();
        assert!(report.is_clean());
        assert_eq!(report.attribution.char3, report.pp_count);
        assert_eq!(report.set_equalities, SetEqualities::default());
    }

    #[test]
    fn diagnostics_on_permutation_rows() {
        let options = ScanOptions {
            diagnostics: true,
            conic_search_max_q: 5,
            ..opts(1)
        };
        let report = exhaustive_scan(5, 1, &options).unwrap();
        assert_eq!(report.pp_with_off_diag_points, 0);
        for row in &report.rows {
            assert_eq!(row.diagnostics.is_some(), row.is_pp);
            if let Some(d) = &row.diagnostics {
                assert_eq!(d.off_diag_points, Some(0));
                assert!(d.g_degree.unwrap() <= 4);
            }
        }
    }

    #[test]
    fn summary_csv_and_json_roundtrip() {
        let report = exhaustive_scan(3, 1, &opts(1)).unwrap();
        let mut buf = Vec::new();
        write_report(&report, Format::Csv, true, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), SUMMARY_HEADER.join(","));
        assert_eq!(text.lines().count(), 2);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        emit_report(&report, Format::Json, false, &path).unwrap();
        assert_eq!(read_json_report(&path).unwrap(), report);
    }
}
