//! Freeness testers for arbitrary small patterns and odd cycles.
//!
//! `test_f_general` samples vertices and expands the low-degree ones,
//! with a hard query budget tied to the average degree; it works for any
//! connected or disconnected pattern on up to 12 vertices. `test_ck_odd`
//! trades the budget for edge sampling biased toward low-degree
//! endpoints, which is what makes odd cycle lengths tractable.

use rand::Rng;

use crate::oracle::{OracleError, OracleSession};
use crate::pattern::PatternGraph;
use crate::testers::select::select_uniform_edge_low;
use crate::testers::witness::{find_cycle_incremental, find_pattern_incremental};
use crate::testers::{phase, settle, Explore, Outcome, TesterError, TesterParams};

/// Tests freeness of an arbitrary pattern `f` on at most 12 vertices.
/// `m_hint` must upper-bound the edge count; it sets both the sample size
/// and the query budget, and overshooting it only costs extra queries.
pub fn test_f_general(
    session: &mut OracleSession,
    f: &PatternGraph,
    params: &TesterParams,
    m_hint: u64,
) -> Result<Outcome, TesterError> {
    params.validate()?;
    assert!(f.k() <= 12, "pattern has {} > 12 vertices", f.k());
    let r = explore_general(session, f, params, m_hint);
    settle(session, r)
}

fn explore_general(
    session: &mut OracleSession,
    f: &PatternGraph,
    p: &TesterParams,
    m_hint: u64,
) -> Explore {
    let n = session.n();
    if n < f.k() {
        return Ok(None);
    }
    let m = m_hint.max(1) as f64;
    let k = f.k() as f64;
    let ell = f.ell() as f64;
    let theta0 = p.theta0();
    let s_raw = p.s_mult
        * k.powf(2.0 + 1.0 / ell)
        * m
        * (p.alpha / m).powf(1.0 / ell)
        * p.eps.powf(-(1.0 + 2.0 / ell));
    let s = (s_raw.ceil() as u64).max(1);
    // Degree queries are prepaid in full; neighbor queries get the cap
    // tied to the average degree 2m/n. Exhaustion is an Accept, not an
    // error, so a pessimistic m_hint degrades detection, not soundness.
    let budget = s + (p.budget_mult * 2.0 * s as f64 * m / n as f64).ceil() as u64;
    session.set_budget(Some(budget));
    let mark = session.explored().mark();
    let mut rng = session.rng(phase::GENERAL, 0);
    let result = sample_and_expand(session, s, theta0, &mut rng);
    session.set_budget(None);
    match result {
        Ok(()) | Err(OracleError::BudgetExhausted { .. }) => {}
        Err(e) => return Err(e),
    }
    Ok(find_pattern_incremental(session.explored(), f, mark))
}

/// Samples `s` uniform vertices (or enumerates them all when `s` covers
/// the population) and expands each one with degree at most theta0.
fn sample_and_expand(
    session: &mut OracleSession,
    s: u64,
    theta0: f64,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<(), OracleError> {
    let n = session.n() as u64;
    let enumerate = s >= n;
    let count = if enumerate { n } else { s };
    for i in 0..count {
        let v = if enumerate {
            i as u32
        } else {
            rng.gen_range(0..n as u32)
        };
        if (session.degree_cached(v)? as f64) <= theta0 {
            session.expand_all(v)?;
        }
    }
    Ok(())
}

/// Tests C_k-freeness for odd k ≥ 3 by sampling edges with a low-degree
/// endpoint, plus a vertex-sampling pass when k > 3.
pub fn test_ck_odd(
    session: &mut OracleSession,
    k: usize,
    params: &TesterParams,
    m_hint: u64,
) -> Result<Outcome, TesterError> {
    params.validate()?;
    assert!(k >= 3 && k % 2 == 1, "k must be odd and at least 3, got {k}");
    let r = explore_odd(session, k, params, m_hint);
    settle(session, r)
}

fn explore_odd(session: &mut OracleSession, k: usize, p: &TesterParams, m_hint: u64) -> Explore {
    let n = session.n();
    if n < k {
        return Ok(None);
    }
    let m = m_hint.max(1) as f64;
    let kf = k as f64;
    let theta0 = p.theta0();
    let mark = session.explored().mark();
    let s1 = (p.se1_mult
        * kf
        * m.powf(1.0 - 2.0 / (kf - 1.0))
        * p.alpha.powf(-(1.0 - 4.0 / (kf - 1.0)))
        * p.eps.powf(1.0 - 6.0 / (kf - 1.0)))
    .ceil() as u64;
    for i in 0..s1.max(1) {
        let mut rng = session.rng(phase::ODD, i);
        let Some((u, v)) = select_uniform_edge_low(session, theta0, m_hint.max(1), &mut rng)?
        else {
            continue;
        };
        // u is light by construction; v joins in when it is light too.
        session.expand_all(u)?;
        if (session.degree_cached(v)? as f64) <= theta0 {
            session.expand_all(v)?;
        }
    }
    if k > 3 {
        let s2 = (p.se2_mult
            * kf
            * n as f64
            * (p.alpha * p.alpha / m).powf(2.0 / (kf - 1.0))
            * p.eps.powf(-6.0 / (kf - 1.0)))
        .ceil() as u64;
        let mut rng = session.rng(phase::ODD_V, 0);
        let enumerate = s2 >= n as u64;
        let count = if enumerate { n as u64 } else { s2 };
        for i in 0..count {
            let v = if enumerate {
                i as u32
            } else {
                rng.gen_range(0..n as u32)
            };
            if (session.degree_cached(v)? as f64) <= theta0 {
                session.expand_all(v)?;
            }
        }
    }
    Ok(find_cycle_incremental(session.explored(), k, mark))
}
