//! Experiment orchestration: JSON specs in, trial batches through the
//! testers, CSV rows and scaling fits out.
//!
//! Reproducibility contract: a spec plus master seed determines every
//! byte of the CSV, independent of thread count. Per-trial seeds come
//! from an injective mix of (master seed, n, slot), trials run under
//! rayon but aggregate by index, and wall-clock time never enters the
//! CSV (it is reported on the row object only).

pub mod family;

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{distance_bounds, greedy_edge_disjoint, DisjointCycleSet};
use crate::generators::GenError;
use crate::graph::Graph;
use crate::oracle::OracleSession;
use crate::pattern::{PatternError, PatternGraph};
use crate::testers::c4::test_c4;
use crate::testers::c5::test_c5;
use crate::testers::c6::test_c6;
use crate::testers::general::{test_ck_odd, test_f_general};
use crate::testers::witness::{validate_cycle_witness, validate_pattern_witness};
use crate::testers::{Outcome, ParamError, TesterError, TesterParams, Verdict};

pub use family::{GeneratedInstance, InstanceFamily};

/// Version of the JSON spec schema.
pub const SPEC_VERSION: u32 = 1;
/// Version stamped into the first CSV column.
pub const CSV_VERSION: u32 = 1;
/// Largest edge count for which the sandwich falls back to a greedy
/// packing when no certificate is available.
pub const GREEDY_SANDWICH_EDGE_CAP: usize = 1 << 17;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid experiment spec: {0}")]
    Spec(String),
    #[error("unknown pattern spec {0:?} (want edge | cycle:K | path:K | star:LEAVES | complete:K)")]
    Pattern(String),
    #[error(transparent)]
    PatternBuild(#[from] PatternError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Tester(#[from] TesterError),
    #[error("trial {trial} at n={n} rejected with a witness that does not validate")]
    InvalidWitness { n: usize, trial: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Which tester an experiment drives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tester", rename_all = "kebab-case")]
pub enum TesterId {
    C4,
    C5,
    C6,
    Odd { k: usize },
    General { pattern: String },
}

impl TesterId {
    /// The cycle length whose distance the instance sandwich certifies,
    /// when the tested property is a cycle.
    pub fn cycle_k(&self) -> Option<usize> {
        match self {
            TesterId::C4 => Some(4),
            TesterId::C5 => Some(5),
            TesterId::C6 => Some(6),
            TesterId::Odd { k } => Some(*k),
            TesterId::General { pattern } => {
                let f = parse_pattern(pattern).ok()?;
                f.is_cycle().then(|| f.k())
            }
        }
    }
}

/// Parses the compact pattern notation used in specs and on the command
/// line: `edge`, `cycle:K`, `path:K`, `star:LEAVES`, `complete:K`.
pub fn parse_pattern(spec: &str) -> Result<PatternGraph, HarnessError> {
    if spec == "edge" {
        return Ok(PatternGraph::single_edge());
    }
    let Some((kind, num)) = spec.split_once(':') else {
        return Err(HarnessError::Pattern(spec.into()));
    };
    let v: usize = num
        .parse()
        .map_err(|_| HarnessError::Pattern(spec.into()))?;
    let f = match kind {
        "cycle" => PatternGraph::cycle(v)?,
        "path" => PatternGraph::path(v)?,
        "star" => PatternGraph::star(v)?,
        "complete" => PatternGraph::complete(v)?,
        _ => return Err(HarnessError::Pattern(spec.into())),
    };
    Ok(f)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub version: u32,
    #[serde(flatten)]
    pub tester: TesterId,
    pub family: InstanceFamily,
    pub n_sweep: Vec<usize>,
    pub eps: f64,
    pub alpha: f64,
    #[serde(default)]
    pub overrides: BTreeMap<String, f64>,
    pub trials: usize,
    pub master_seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.version != SPEC_VERSION {
            return Err(HarnessError::Spec(format!(
                "schema version {} unsupported, this build reads {SPEC_VERSION}",
                self.version
            )));
        }
        if self.trials == 0 {
            return Err(HarnessError::Spec("trials must be at least 1".into()));
        }
        if self.trials > (1 << 20) - 2 {
            return Err(HarnessError::Spec("trials exceed the seed slot space".into()));
        }
        if self.n_sweep.is_empty() {
            return Err(HarnessError::Spec("n_sweep must be nonempty".into()));
        }
        if let Some((key, &v)) = self.overrides.iter().find(|(_, &v)| !(v > 0.0)) {
            return Err(HarnessError::Spec(format!(
                "override {key} = {v} is not positive"
            )));
        }
        TesterParams::new(self.eps, self.alpha)?;
        match &self.tester {
            TesterId::Odd { k } if *k < 3 || *k % 2 == 0 => {
                return Err(HarnessError::Spec(format!("odd tester needs odd k >= 3, got {k}")));
            }
            TesterId::General { pattern } => {
                parse_pattern(pattern)?;
            }
            _ => {}
        }
        Ok(())
    }

    fn params(&self) -> Result<TesterParams, HarnessError> {
        let mut p = TesterParams::new(self.eps, self.alpha)?;
        for (key, &value) in &self.overrides {
            p.apply_override(key, value)?;
        }
        Ok(p)
    }
}

/// Sorted-sample order statistics at the lower-index convention:
/// p50 = sorted[(len-1)/2], p90 = sorted[(len-1)*9/10].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantileTriple {
    pub p50: u64,
    pub p90: u64,
    pub max: u64,
}

fn quantiles(samples: &mut Vec<u64>) -> QuantileTriple {
    samples.sort_unstable();
    let last = samples.len() - 1;
    QuantileTriple {
        p50: samples[last / 2],
        p90: samples[last * 9 / 10],
        max: samples[last],
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub n: usize,
    pub trials: usize,
    pub reject_count: usize,
    pub reject_rate: f64,
    /// Certified fraction of edges that must be removed (lower) and a
    /// matching upper bound; (0, 1) when neither could be certified.
    pub dist_lower: f64,
    pub dist_upper: f64,
    pub total: QuantileTriple,
    pub degree: QuantileTriple,
    pub neighbor: QuantileTriple,
    pub pair: QuantileTriple,
    /// Row wall time; deliberately absent from the CSV so outputs stay
    /// byte-identical across machines and thread counts.
    pub wall_time_ms: u64,
}

/// Mixes (master, n, slot) into a session seed. For a fixed master the
/// map is injective while n < 2^44 and slot < 2^20: the packed index goes
/// through an odd-multiplier affine step and the SplitMix64 finalizer,
/// both bijections on 64-bit words. Slot 0 seeds generation; trial t uses
/// slot t + 1.
pub fn derive_seed(master: u64, n: u64, slot: u64) -> u64 {
    debug_assert!(slot < 1 << 20);
    let packed = (n << 20) | slot;
    let mut z = master ^ 0x9E37_79B9_7F4A_7C15u64.wrapping_mul(packed.wrapping_add(1));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn run_tester(
    session: &mut OracleSession,
    tester: &TesterId,
    pattern: Option<&PatternGraph>,
    params: &TesterParams,
    m_hint: u64,
) -> Result<Outcome, TesterError> {
    match tester {
        TesterId::C4 => test_c4(session, params),
        TesterId::C5 => test_c5(session, params),
        TesterId::C6 => test_c6(session, params),
        TesterId::Odd { k } => test_ck_odd(session, *k, params, m_hint),
        TesterId::General { .. } => {
            test_f_general(session, pattern.expect("validated spec"), params, m_hint)
        }
    }
}

fn witness_ok(g: &Graph, tester: &TesterId, pattern: Option<&PatternGraph>, out: &Outcome) -> bool {
    let Some(w) = out.witness.as_deref() else {
        return false;
    };
    match tester {
        TesterId::C4 => validate_cycle_witness(g, w, 4),
        TesterId::C5 => validate_cycle_witness(g, w, 5),
        TesterId::C6 => validate_cycle_witness(g, w, 6),
        TesterId::Odd { k } => validate_cycle_witness(g, w, *k),
        TesterId::General { .. } => validate_pattern_witness(g, pattern.expect("validated"), w),
    }
}

/// Distance sandwich for the tested cycle length: prefer the generation
/// certificate, fall back to a greedy maximal packing on graphs small
/// enough to afford it, and otherwise admit ignorance with (0, 1).
fn sandwich(g: &Graph, cert: Option<&DisjointCycleSet>, k: Option<usize>) -> (f64, f64) {
    let Some(k) = k else { return (0.0, 1.0) };
    if let Some(c) = cert {
        if c.k == k {
            let (lo, hi) = distance_bounds(g, c);
            return (lo, if c.maximal { hi } else { 1.0 });
        }
    }
    if g.m() <= GREEDY_SANDWICH_EDGE_CAP {
        return distance_bounds(g, &greedy_edge_disjoint(g, k));
    }
    (0.0, 1.0)
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<ExperimentRow>, HarnessError> {
    spec.validate()?;
    let params = spec.params()?;
    let pattern = match &spec.tester {
        TesterId::General { pattern } => Some(parse_pattern(pattern)?),
        _ => None,
    };
    let mut rows = Vec::with_capacity(spec.n_sweep.len());
    for &n in &spec.n_sweep {
        let started = Instant::now();
        let gen_seed = derive_seed(spec.master_seed, n as u64, 0);
        let inst = spec.family.generate(n, spec.eps, spec.alpha, gen_seed)?;
        let g = &inst.graph;
        let (dist_lower, dist_upper) = sandwich(g, inst.certificate.as_ref(), spec.tester.cycle_k());
        let m_hint = g.m() as u64;
        let outcomes = (0..spec.trials)
            .into_par_iter()
            .map(|trial| {
                let seed = derive_seed(spec.master_seed, n as u64, trial as u64 + 1);
                let mut session = OracleSession::new(g, seed);
                let out = run_tester(&mut session, &spec.tester, pattern.as_ref(), &params, m_hint)?;
                if out.verdict == Verdict::Reject
                    && !witness_ok(g, &spec.tester, pattern.as_ref(), &out)
                {
                    return Err(HarnessError::InvalidWitness { n, trial });
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>, HarnessError>>()?;
        let reject_count = outcomes
            .iter()
            .filter(|o| o.verdict == Verdict::Reject)
            .count();
        let mut total: Vec<u64> = outcomes.iter().map(|o| o.total_queries).collect();
        let mut degree: Vec<u64> = outcomes.iter().map(|o| o.queries.degree).collect();
        let mut neighbor: Vec<u64> = outcomes.iter().map(|o| o.queries.neighbor).collect();
        let mut pair: Vec<u64> = outcomes.iter().map(|o| o.queries.pair).collect();
        rows.push(ExperimentRow {
            n,
            trials: spec.trials,
            reject_count,
            reject_rate: reject_count as f64 / spec.trials as f64,
            dist_lower,
            dist_upper,
            total: quantiles(&mut total),
            degree: quantiles(&mut degree),
            neighbor: quantiles(&mut neighbor),
            pair: quantiles(&mut pair),
            wall_time_ms: started.elapsed().as_millis() as u64,
        });
    }
    Ok(rows)
}

pub const CSV_HEADER: &str = "version,n,trials,reject_count,reject_rate,dist_lower,dist_upper,\
total_p50,total_p90,total_max,degree_p50,degree_p90,degree_max,\
neighbor_p50,neighbor_p90,neighbor_max,pair_p50,pair_p90,pair_max";

pub fn write_csv<W: Write>(rows: &[ExperimentRow], mut w: W) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{:.6},{:.6},{:.6},{},{},{},{},{},{},{},{},{},{},{},{}",
            CSV_VERSION,
            r.n,
            r.trials,
            r.reject_count,
            r.reject_rate,
            r.dist_lower,
            r.dist_upper,
            r.total.p50,
            r.total.p90,
            r.total.max,
            r.degree.p50,
            r.degree.p90,
            r.degree.max,
            r.neighbor.p50,
            r.neighbor.p90,
            r.neighbor.max,
            r.pair.p50,
            r.pair.p90,
            r.pair.max,
        )?;
    }
    Ok(())
}

pub fn csv_string(rows: &[ExperimentRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("in-memory write");
    String::from_utf8(buf).expect("csv is ascii")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Least squares over (log2 n, log2 p50 total queries). Rows with a zero
/// query median cannot be placed on the log scale and are skipped.
pub fn fit_scaling(rows: &[ExperimentRow]) -> Option<ScalingFit> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.n >= 1 && r.total.p50 >= 1)
        .map(|r| ((r.n as f64).log2(), (r.total.p50 as f64).log2()))
        .collect();
    fit_line(&pts)
}

pub fn fit_line(pts: &[(f64, f64)]) -> Option<ScalingFit> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = pts
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).powi(2))
        .sum();
    let ss_tot: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let r2 = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else if ss_res.abs() < 1e-12 {
        1.0
    } else {
        0.0
    };
    Some(ScalingFit {
        slope,
        intercept,
        r2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn smoke_spec() -> ExperimentSpec {
        ExperimentSpec {
            version: SPEC_VERSION,
            tester: TesterId::C4,
            family: InstanceFamily::C4LbG1,
            n_sweep: vec![64, 128],
            eps: 0.2,
            alpha: 2.0,
            overrides: BTreeMap::new(),
            trials: 20,
            master_seed: 7,
            output: None,
        }
    }

    #[test]
    fn spec_json_round_trip_with_flattened_tester() {
        let text = r#"{
            "version": 1,
            "tester": "odd",
            "k": 5,
            "family": {"name": "c5-lb-g1"},
            "n_sweep": [64],
            "eps": 0.2,
            "alpha": 2.0,
            "trials": 5,
            "master_seed": 3
        }"#;
        let spec: ExperimentSpec = serde_json::from_str(text).unwrap();
        assert_eq!(spec.tester, TesterId::Odd { k: 5 });
        assert!(spec.overrides.is_empty());
        spec.validate().unwrap();
        let back = serde_json::to_string(&spec).unwrap();
        let again: ExperimentSpec = serde_json::from_str(&back).unwrap();
        assert_eq!(again.tester, spec.tester);
    }

    #[test]
    fn spec_validation_rejects_bad_fields() {
        let mut s = smoke_spec();
        s.trials = 0;
        assert!(s.validate().is_err());
        let mut s = smoke_spec();
        s.n_sweep.clear();
        assert!(s.validate().is_err());
        let mut s = smoke_spec();
        s.overrides.insert("t_mult".into(), -1.0);
        assert!(s.validate().is_err());
        let mut s = smoke_spec();
        s.version = 2;
        assert!(s.validate().is_err());
        let mut s = smoke_spec();
        s.tester = TesterId::Odd { k: 4 };
        assert!(s.validate().is_err());
        let mut s = smoke_spec();
        s.tester = TesterId::General {
            pattern: "blob:9".into(),
        };
        assert!(s.validate().is_err());
    }

    #[test]
    fn derive_seed_varies_in_every_argument() {
        let mut seen = std::collections::HashSet::new();
        for master in [0u64, 1, 99] {
            for n in [64u64, 128, 4096] {
                for slot in 0..50u64 {
                    assert!(seen.insert(derive_seed(master, n, slot)));
                }
            }
        }
    }

    #[test]
    fn experiment_rows_certify_distance_and_detect() {
        let rows = run_experiment(&smoke_spec()).unwrap();
        assert_eq!(rows.len(), 2);
        for r in &rows {
            assert_eq!(r.trials, 20);
            assert!((r.dist_lower - 0.25).abs() < 1e-12);
            assert!(r.dist_upper <= 1.0);
            assert!(r.reject_count * 3 >= 2 * r.trials, "rate {}", r.reject_rate);
            assert!(r.total.p50 <= r.total.p90 && r.total.p90 <= r.total.max);
        }
    }

    #[test]
    fn csv_is_identical_across_runs_and_thread_counts() {
        let spec = smoke_spec();
        let a = csv_string(&run_experiment(&spec).unwrap());
        let b = csv_string(&run_experiment(&spec).unwrap());
        assert_eq!(a, b);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let c = pool.install(|| csv_string(&run_experiment(&spec).unwrap()));
        assert_eq!(a, c);
        assert!(a.starts_with(CSV_HEADER));
        assert_eq!(a.lines().count(), 3);
    }

    #[test]
    fn accept_side_family_never_rejects() {
        let mut spec = smoke_spec();
        spec.family = InstanceFamily::C4LbG0;
        let rows = run_experiment(&spec).unwrap();
        for r in &rows {
            assert_eq!(r.reject_count, 0);
            assert_eq!(r.dist_upper, 0.0);
        }
    }

    #[test]
    fn fit_recovers_synthetic_exponents() {
        // Exact dyadic points: n = 2^(4j), queries = 16 * n^(1/4) = 2^(4+j).
        let quarter: Vec<(f64, f64)> = (1..=6)
            .map(|j| ((4 * j) as f64, (4 + j) as f64))
            .collect();
        let fit = fit_line(&quarter).unwrap();
        assert!((fit.slope - 0.25).abs() < 1e-9);
        assert!(fit.r2 > 1.0 - 1e-9);

        let flat: Vec<(f64, f64)> = (1..=6).map(|j| (j as f64, 42f64.log2())).collect();
        let fit = fit_line(&flat).unwrap();
        assert!(fit.slope.abs() < 1e-9);
        assert_eq!(fit.r2, 1.0);

        let half: Vec<(f64, f64)> = (1..=6).map(|j| ((2 * j) as f64, j as f64)).collect();
        let fit = fit_line(&half).unwrap();
        assert!((fit.slope - 0.5).abs() < 1e-9);
    }

    #[test]
    fn pattern_notation_parses() {
        assert_eq!(parse_pattern("edge").unwrap().k(), 2);
        assert_eq!(parse_pattern("cycle:5").unwrap().k(), 5);
        assert!(parse_pattern("cycle:5").unwrap().is_cycle());
        assert_eq!(parse_pattern("star:3").unwrap().k(), 4);
        assert_eq!(parse_pattern("path:4").unwrap().k(), 4);
        assert_eq!(parse_pattern("complete:4").unwrap().edges().len(), 6);
        assert!(parse_pattern("hexagon").is_err());
        assert!(parse_pattern("cycle:x").is_err());
    }
}
