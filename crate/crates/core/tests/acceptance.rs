//! End-to-end acceptance suite. Runs ten numbered checks and prints one
//! PASS/FAIL line per check; the test fails if any check fails, after
//! all lines have been printed.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ckfree::exact::{
    count_c4_codegree, count_cycles, count_pattern, count_triangles_trace, distance_bounds,
    exact_distance_by_removal, greedy_edge_disjoint, is_free,
};
use ckfree::generators::planted::PlantedProfile;
use ckfree::generators::subdivide::{
    replay_subdivided, subdivide_for_ck, SubOracleError, SubdividedOracle,
};
use ckfree::generators::tripartite::gen_tripartite_regular;
use ckfree::harness::{
    csv_string, fit_scaling, run_experiment, ExperimentSpec, InstanceFamily, TesterId,
    SPEC_VERSION,
};
use ckfree::oracle::{stream_rng, OracleSession};
use ckfree::pattern::PatternGraph;
use ckfree::testers::select::select_an_edge;
use ckfree::testers::{
    c4::test_c4, c5::test_c5, c6::test_c6, general::test_ck_odd, general::test_f_general,
    TesterParams, Verdict,
};
use ckfree::Graph;

type CheckResult = Result<String, String>;

#[test]
fn acceptance() {
    let checks: Vec<(usize, &str, fn() -> CheckResult)> = vec![
        (1, "one-sided error", criterion_1),
        (2, "four-cycle detection when far", criterion_2),
        (3, "query scaling exponent", criterion_3),
        (4, "five- and six-cycle detection", criterion_4),
        (5, "edge selection distribution", criterion_5),
        (6, "cover parameter table", criterion_6),
        (7, "tuple hitting by uniform sampling", criterion_7),
        (8, "subdivision reduction fidelity", criterion_8),
        (9, "exact oracle cross-validation", criterion_9),
        (10, "byte-identical reruns", criterion_10),
    ];
    let mut failures = Vec::new();
    for (num, name, check) in checks {
        let started = Instant::now();
        let outcome = check();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {num} ({name}): {detail} [{secs:.1}s]"),
            Err(detail) => {
                println!("FAIL criterion {num} ({name}): {detail} [{secs:.1}s]");
                failures.push(num);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

/// Tester selector for the one-sidedness matrix.
#[derive(Clone, Copy, PartialEq)]
enum T {
    C4,
    C5,
    C6,
    Odd5,
    GeneralC4,
}

impl T {
    fn name(self) -> &'static str {
        match self {
            T::C4 => "test_c4",
            T::C5 => "test_c5",
            T::C6 => "test_c6",
            T::Odd5 => "test_ck_odd(5)",
            T::GeneralC4 => "test_f_general(C4)",
        }
    }

    /// Cycle length whose absence makes a family a valid accept-side
    /// control for this tester.
    fn k(self) -> usize {
        match self {
            T::C4 | T::GeneralC4 => 4,
            T::C5 | T::Odd5 => 5,
            T::C6 => 6,
        }
    }

    fn run(self, session: &mut OracleSession, p: &TesterParams, m_hint: u64) -> Verdict {
        match self {
            T::C4 => test_c4(session, p).unwrap().verdict,
            T::C5 => test_c5(session, p).unwrap().verdict,
            T::C6 => test_c6(session, p).unwrap().verdict,
            T::Odd5 => test_ck_odd(session, 5, p, m_hint).unwrap().verdict,
            T::GeneralC4 => {
                let f = PatternGraph::cycle(4).unwrap();
                test_f_general(session, &f, p, m_hint).unwrap().verdict
            }
        }
    }
}

/// Criterion 1: zero rejections across every tester and every control
/// family that provably lacks the tested cycle, at least 1000 trials per
/// tester. Families with the tested cycle present are excluded: the
/// five-cycle pair's accept side contains six-cycles, so it is not a C6
/// control.
fn criterion_1() -> CheckResult {
    let g0_c4 = InstanceFamily::C4LbG0.generate(256, 0.5, 2.0, 11).map_err(|e| e.to_string())?;
    let g0_c5 = InstanceFamily::C5LbG0.generate(256, 0.5, 2.0, 11).map_err(|e| e.to_string())?;
    let forest = InstanceFamily::Forest { max_degree: 4 }
        .generate(400, 0.5, 2.0, 11)
        .map_err(|e| e.to_string())?;
    let girth = InstanceFamily::HighGirth { degree: 3 }
        .generate(256, 0.5, 2.0, 11)
        .map_err(|e| e.to_string())?;
    let subdiv = InstanceFamily::SubdividedTf { k: 6, deg: 3 }
        .generate(12, 0.5, 2.0, 11)
        .map_err(|e| e.to_string())?;

    let matrix: Vec<(T, Vec<(&str, &Graph)>, usize)> = vec![
        (
            T::C4,
            vec![
                ("c4-lb-g0", &g0_c4.graph),
                ("c5-lb-g0", &g0_c5.graph),
                ("forest", &forest.graph),
                ("high-girth", &girth.graph),
                ("subdivided-tf", &subdiv.graph),
            ],
            200,
        ),
        (
            T::C5,
            vec![
                ("c5-lb-g0", &g0_c5.graph),
                ("forest", &forest.graph),
                ("high-girth", &girth.graph),
                ("subdivided-tf", &subdiv.graph),
            ],
            250,
        ),
        (
            T::C6,
            vec![
                ("forest", &forest.graph),
                ("high-girth", &girth.graph),
                ("subdivided-tf", &subdiv.graph),
            ],
            334,
        ),
        (
            T::Odd5,
            vec![
                ("c5-lb-g0", &g0_c5.graph),
                ("forest", &forest.graph),
                ("high-girth", &girth.graph),
                ("subdivided-tf", &subdiv.graph),
            ],
            250,
        ),
        (
            T::GeneralC4,
            vec![
                ("c4-lb-g0", &g0_c4.graph),
                ("c5-lb-g0", &g0_c5.graph),
                ("forest", &forest.graph),
                ("high-girth", &girth.graph),
                ("subdivided-tf", &subdiv.graph),
            ],
            200,
        ),
    ];
    let params = TesterParams::new(0.5, 2.0).map_err(|e| e.to_string())?;
    let mut grand_trials = 0usize;
    for (tester, families, trials) in matrix {
        let mut tester_trials = 0usize;
        for (fam_name, g) in families {
            if !is_free(g, tester.k()) {
                return Err(format!(
                    "{fam_name} is not C{}-free, matrix construction broken",
                    tester.k()
                ));
            }
            for seed in 0..trials as u64 {
                let mut session = OracleSession::new(g, seed);
                if tester.run(&mut session, &params, g.m() as u64) == Verdict::Reject {
                    return Err(format!(
                        "{} rejected {fam_name} at seed {seed}",
                        tester.name()
                    ));
                }
                tester_trials += 1;
            }
        }
        if tester_trials < 1000 {
            return Err(format!(
                "{} ran only {tester_trials} trials, need 1000",
                tester.name()
            ));
        }
        grand_trials += tester_trials;
    }
    Ok(format!("{grand_trials} accept-side trials, 0 rejections"))
}

fn c2_spec() -> ExperimentSpec {
    ExperimentSpec {
        version: SPEC_VERSION,
        tester: TesterId::C4,
        family: InstanceFamily::C4LbG1,
        n_sweep: vec![1 << 10, 1 << 12, 1 << 14],
        eps: 0.1,
        alpha: 2.0,
        overrides: BTreeMap::new(),
        trials: 200,
        master_seed: 20,
        output: None,
    }
}

/// Criterion 2: reject rate at least 2/3 on the far four-cycle packing
/// at eps = 0.1, with its certified distance lower bound on record.
fn criterion_2() -> CheckResult {
    let rows = run_experiment(&c2_spec()).map_err(|e| e.to_string())?;
    let mut rates = Vec::new();
    for r in &rows {
        if r.dist_lower < 0.1 {
            return Err(format!("n={}: certified lower bound {} below eps", r.n, r.dist_lower));
        }
        if 3 * r.reject_count < 2 * r.trials {
            return Err(format!("n={}: reject rate {:.3} below 2/3", r.n, r.reject_rate));
        }
        rates.push(format!("{:.2}@n={}", r.reject_rate, r.n));
    }
    Ok(format!("rates {}, dist_lower 0.25 certified", rates.join(" ")))
}

fn c3_spec() -> ExperimentSpec {
    ExperimentSpec {
        version: SPEC_VERSION,
        tester: TesterId::C4,
        family: InstanceFamily::Planted {
            k: 4,
            profile: PlantedProfile::TwoHeavy,
        },
        n_sweep: (10..=18).map(|e| 1usize << e).collect(),
        eps: 0.2,
        alpha: 2.0,
        overrides: BTreeMap::new(),
        trials: 100,
        master_seed: 30,
        output: None,
    }
}

/// Criterion 3: on far instances whose hubs force the high-degree branch,
/// the median query count grows like n^(1/4) up to polylog drift.
fn criterion_3() -> CheckResult {
    let rows = run_experiment(&c3_spec()).map_err(|e| e.to_string())?;
    for r in &rows {
        if 3 * r.reject_count < 2 * r.trials {
            return Err(format!("n={}: reject rate {:.3} below 2/3", r.n, r.reject_rate));
        }
    }
    let fit = fit_scaling(&rows).ok_or("fit needs two usable rows")?;
    if !(0.15..=0.35).contains(&fit.slope) {
        return Err(format!("slope {:.3} outside [0.15, 0.35]", fit.slope));
    }
    if fit.r2 < 0.9 {
        return Err(format!("R^2 {:.3} below 0.9", fit.r2));
    }
    Ok(format!(
        "slope {:.3}, R^2 {:.3} over n = 2^10..2^18",
        fit.slope, fit.r2
    ))
}

fn c4_specs() -> Vec<(&'static str, ExperimentSpec)> {
    let base = |tester: TesterId, family: InstanceFamily, n: usize, seed: u64| ExperimentSpec {
        version: SPEC_VERSION,
        tester,
        family,
        n_sweep: vec![n],
        eps: 0.2,
        alpha: 2.0,
        overrides: BTreeMap::new(),
        trials: 200,
        master_seed: seed,
        output: None,
    };
    vec![
        (
            "c5/disjoint",
            base(
                TesterId::C5,
                InstanceFamily::Planted { k: 5, profile: PlantedProfile::AllLight },
                4096,
                41,
            ),
        ),
        (
            "c5/two-heavy",
            base(
                TesterId::C5,
                InstanceFamily::Planted { k: 5, profile: PlantedProfile::TwoHeavy },
                4096,
                42,
            ),
        ),
        (
            "c6/disjoint",
            base(
                TesterId::C6,
                InstanceFamily::Planted { k: 6, profile: PlantedProfile::AllLight },
                1024,
                43,
            ),
        ),
        (
            "c6/three-heavy",
            base(
                TesterId::C6,
                InstanceFamily::Planted { k: 6, profile: PlantedProfile::ThreeHeavy },
                1024,
                44,
            ),
        ),
    ]
}

/// Criterion 4: C5 and C6 testers reject disjoint-copy and heavy-hub
/// planted instances at rate at least 2/3 with eps = 0.2.
fn criterion_4() -> CheckResult {
    let mut out = Vec::new();
    for (label, spec) in c4_specs() {
        let rows = run_experiment(&spec).map_err(|e| e.to_string())?;
        let r = &rows[0];
        if 3 * r.reject_count < 2 * r.trials {
            return Err(format!("{label}: reject rate {:.3} below 2/3", r.reject_rate));
        }
        out.push(format!("{label} {:.2}", r.reject_rate));
    }
    Ok(out.join(", "))
}

/// Criterion 5: conditioned on success, the edge selection primitive hits
/// every edge with a low-degree endpoint with probability in
/// [1/(2m'), 1/m'], verified against binomial noise at 4 sigma over one
/// million successful draws; the success rate itself is at least 2/3.
fn criterion_5() -> CheckResult {
    // Two adjacent hubs (degree 71, above theta0 = 8), 40 leaves on each
    // hub and 30 bridge vertices adjacent to both hubs. Every light
    // vertex touches only hubs, so each light-incident edge has exactly
    // one light endpoint and the claimed band is exact; edges between
    // two light vertices would be drawn through either endpoint and land
    // above 1/m'.
    let mut edges: Vec<(u32, u32)> = vec![(0, 1)];
    for leaf in 0..40u32 {
        edges.push((0, 2 + leaf));
        edges.push((1, 42 + leaf));
    }
    for bridge in 0..30u32 {
        edges.push((0, 82 + bridge));
        edges.push((1, 82 + bridge));
    }
    let n = 112usize;
    let g = Graph::from_edges(n, &edges).unwrap();
    let m_low = (g.m() - 1) as f64;
    let theta0 = 8.0;

    let mut session = OracleSession::new(&g, 5005);
    let mut counts: HashMap<(u32, u32), u64> = HashMap::new();
    let target = 1_000_000u64;
    let mut successes = 0u64;
    let mut attempts = 0u64;
    let mut draw = 0u64;
    while successes < target {
        let mut rng = stream_rng(5005, 40, draw);
        draw += 1;
        attempts += 1;
        match select_an_edge(&mut session, theta0, &mut rng).map_err(|e| e.to_string())? {
            Some((u, v)) => {
                successes += 1;
                *counts.entry(ckfree::graph::norm_edge(u, v)).or_insert(0) += 1;
            }
            None => {}
        }
        if attempts > 4 * target {
            return Err("selection success rate collapsed".into());
        }
    }
    if 3 * successes < 2 * attempts {
        return Err(format!(
            "success rate {:.3} below 2/3",
            successes as f64 / attempts as f64
        ));
    }
    let p_lo = 1.0 / (2.0 * m_low);
    let p_hi = 1.0 / m_low;
    let t = target as f64;
    let lo = t * p_lo - 4.0 * (t * p_lo * (1.0 - p_lo)).sqrt();
    let hi = t * p_hi + 4.0 * (t * p_hi * (1.0 - p_hi)).sqrt();
    let hub_edge = (0u32, 1u32);
    if counts.contains_key(&hub_edge) {
        return Err("selected the edge with two high-degree endpoints".into());
    }
    for &(u, v) in g.edges() {
        let key = ckfree::graph::norm_edge(u, v);
        if key == hub_edge {
            continue;
        }
        let c = *counts.get(&key).unwrap_or(&0) as f64;
        if c < lo || c > hi {
            return Err(format!(
                "edge ({u},{v}) count {c} outside [{lo:.0}, {hi:.0}]"
            ));
        }
    }
    Ok(format!(
        "{} light-incident edges within 4-sigma bands, success rate {:.2}",
        g.m() - 1,
        successes as f64 / attempts as f64
    ))
}

/// Criterion 6: the cover parameter against its reference table. The
/// P4 entry is the frozen brute-force value 2.
fn criterion_6() -> CheckResult {
    let table: Vec<(&str, PatternGraph, usize)> = vec![
        ("edge", PatternGraph::single_edge(), 1),
        ("C3", PatternGraph::cycle(3).unwrap(), 2),
        ("C4", PatternGraph::cycle(4).unwrap(), 2),
        ("C5", PatternGraph::cycle(5).unwrap(), 3),
        ("C6", PatternGraph::cycle(6).unwrap(), 3),
        ("C7", PatternGraph::cycle(7).unwrap(), 4),
        ("C8", PatternGraph::cycle(8).unwrap(), 4),
        ("K_{1,3}", PatternGraph::star(3).unwrap(), 3),
        ("P4", PatternGraph::path(4).unwrap(), 2),
    ];
    let mut mismatches = Vec::new();
    for (name, f, expected) in &table {
        let got = ckfree::pattern::ell_of(f);
        if got != *expected {
            mismatches.push(format!("{name}: expected {expected}, computed {got}"));
        }
    }
    if mismatches.is_empty() {
        Ok(format!("{} table entries match", table.len()))
    } else {
        Err(mismatches.join("; "))
    }
}

/// Criterion 7: sampling s = ceil(16 * ell * |X| / |T|^(1/ell)) elements
/// uniformly hits some complete pair among 1000 disjoint pairs with
/// empirical probability at least 5/8.
fn criterion_7() -> CheckResult {
    let x = 10_000u32;
    let tuples = 1_000u32;
    let ell = 2.0f64;
    let s = (16.0 * ell * x as f64 / (tuples as f64).powf(1.0 / ell)).ceil() as usize;
    let trials = 500;
    let mut hits = 0;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(7000 + trial);
        // Pair t occupies elements 2t and 2t + 1.
        let mut seen = vec![false; x as usize];
        let mut hit = false;
        for _ in 0..s {
            let e = rng.gen_range(0..x) as usize;
            seen[e] = true;
            let partner = e ^ 1;
            if (e as u32) < 2 * tuples && seen[partner] {
                hit = true;
                break;
            }
        }
        if hit {
            hits += 1;
        }
    }
    if 8 * hits < 5 * trials {
        return Err(format!("hit rate {hits}/{trials} below 5/8"));
    }
    Ok(format!("hit rate {hits}/{trials} with s = {s}"))
}

/// Criterion 8: triangle counts of random tripartite bases equal the
/// k-cycle counts of their subdivisions for k in {6, 7, 9}; lazily bound
/// subdivision oracles replay exactly against the materialized graph and
/// cost at most 4 base queries per simulated query on average.
fn criterion_8() -> CheckResult {
    let mut sim_total = 0u64;
    let mut base_total = 0u64;
    let mut graphs = 0;
    for i in 0..100u64 {
        let k = [6usize, 7, 9][(i % 3) as usize];
        let part = 4 + (i % 7) as usize;
        let deg = 2 + (i % 2) as usize;
        let (base, parts) = gen_tripartite_regular(part, deg, 800 + i).map_err(|e| e.to_string())?;
        let (sub, _map) = subdivide_for_ck(&base, &parts, k).map_err(|e| e.to_string())?;
        let tri = count_triangles_trace(&base);
        let ck = count_cycles(&sub, k);
        if tri != ck {
            return Err(format!(
                "graph {i} (k={k}): {tri} triangles but {ck} k-cycles"
            ));
        }

        let mut oracle =
            SubdividedOracle::new(&base, parts.clone(), k, 900 + i).map_err(|e| e.to_string())?;
        oracle.enable_transcript();
        let n_total = oracle.n() as u32;
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + i);
        let mut known: Vec<u32> = vec![rng.gen_range(0..n_total)];
        // A collision abort ends the session; whatever was recorded up to
        // that point must still replay against the materialization.
        'queries: for _ in 0..200 {
            match rng.gen_range(0..3) {
                0 => {
                    let v = rng.gen_range(0..n_total);
                    let _ = oracle.degree(v).map_err(|e| e.to_string())?;
                    known.push(v);
                }
                1 => {
                    let v = known[rng.gen_range(0..known.len())];
                    let d = oracle.degree(v).map_err(|e| e.to_string())?;
                    let idx = rng.gen_range(1..=d as usize);
                    match oracle.neighbor(v, idx) {
                        Ok(path) => known.extend(path),
                        Err(SubOracleError::EarlyTermination) => break 'queries,
                        Err(e) => return Err(e.to_string()),
                    }
                }
                _ => {
                    let a = rng.gen_range(0..n_total);
                    let b = known[rng.gen_range(0..known.len())];
                    match oracle.pair(a, b) {
                        Ok(_) => {}
                        Err(SubOracleError::EarlyTermination) => break 'queries,
                        Err(e) => return Err(e.to_string()),
                    }
                }
            }
        }
        let materialized = oracle.materialize();
        if count_cycles(&materialized, k) != tri {
            return Err(format!("graph {i}: materialization changed the cycle count"));
        }
        replay_subdivided(oracle.transcript(), &materialized)?;
        sim_total += oracle.sim_stats().total();
        base_total += oracle.base_stats().total();
        graphs += 1;
    }
    let ratio = base_total as f64 / sim_total as f64;
    if ratio > 4.0 {
        return Err(format!("mean base queries per simulated query {ratio:.2} > 4"));
    }
    Ok(format!(
        "{graphs} graphs, counts equal, replay exact, cost ratio {ratio:.2}"
    ))
}

/// Criterion 9: subgraph counting agrees with the trace and codegree
/// formulas on random graphs, and the packing sandwich brackets the
/// exhaustive distance on every small corpus graph.
fn criterion_9() -> CheckResult {
    for i in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(9000 + i);
        let n = rng.gen_range(8..=256usize);
        let target_m = 2 * n;
        let mut edge_set = HashSet::new();
        let mut edges = Vec::new();
        for _ in 0..target_m {
            let u = rng.gen_range(0..n as u32);
            let v = rng.gen_range(0..n as u32);
            if u != v && edge_set.insert(ckfree::graph::norm_edge(u, v)) {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        let c3 = count_pattern(&g, &PatternGraph::cycle(3).unwrap());
        if c3 != count_triangles_trace(&g) {
            return Err(format!("graph {i}: triangle counts disagree"));
        }
        let c4 = count_pattern(&g, &PatternGraph::cycle(4).unwrap());
        if c4 != count_c4_codegree(&g) {
            return Err(format!("graph {i}: four-cycle counts disagree"));
        }
    }

    // Fixed corpus of graphs small enough for exhaustive removal.
    let corpus: Vec<(usize, Vec<(u32, u32)>)> = vec![
        (4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]),
        (5, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (2, 4)]),
        (6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)]),
        (4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]),
        (7, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (1, 4)]),
        (
            6,
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 0),
                (0, 2),
                (2, 4),
                (4, 0),
            ],
        ),
        (8, (0..8).map(|i| (i, (i + 1) % 8)).collect()),
    ];
    let mut checked = 0;
    for (idx, (n, edges)) in corpus.iter().enumerate() {
        let g = Graph::from_edges(*n, edges).unwrap();
        for k in 3..=5 {
            let exact = exact_distance_by_removal(&g, k).map_err(|e| e.to_string())?;
            let (lo, hi) = distance_bounds(&g, &greedy_edge_disjoint(&g, k));
            if !(lo <= exact.distance + 1e-12 && exact.distance <= hi + 1e-12) {
                return Err(format!(
                    "corpus {idx} k={k}: sandwich [{lo:.3}, {hi:.3}] misses exact {:.3}",
                    exact.distance
                ));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "200 random graphs cross-checked, {checked} exhaustive sandwiches verified"
    ))
}

/// Criterion 10: rerunning the experiment-backed criteria with the same
/// master seeds yields byte-identical CSV output.
fn criterion_10() -> CheckResult {
    let mut reruns = 0;
    for spec in [c2_spec(), c3_spec()]
        .into_iter()
        .chain(c4_specs().into_iter().map(|(_, s)| s))
    {
        let a = csv_string(&run_experiment(&spec).map_err(|e| e.to_string())?);
        let b = csv_string(&run_experiment(&spec).map_err(|e| e.to_string())?);
        if a != b {
            return Err("CSV differs between identical runs".into());
        }
        reruns += 1;
    }
    Ok(format!("{reruns} experiment configurations byte-stable"))
}
