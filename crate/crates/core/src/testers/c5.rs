//! Five-cycle freeness tester: the four-cycle skeleton with one extra
//! level. Moderate-degree endpoints drive a depth-2 restricted expansion
//! around sampled neighbors; high-degree endpoints emit length-3 walks,
//! and a five-cycle appears as a 2-path plus a 3-path meeting at both
//! ends in the explored subgraph.

use crate::oracle::{OracleError, OracleSession};
use crate::testers::params::log2f;
use crate::testers::select::select_an_edge;
use crate::testers::witness::find_cycle_incremental;
use crate::testers::{phase, settle, Explore, Outcome, TesterError, TesterParams};
use rand::Rng;

pub fn test_c5(session: &mut OracleSession, params: &TesterParams) -> Result<Outcome, TesterError> {
    params.validate()?;
    let r = explore(session, params);
    settle(session, r)
}

fn explore(session: &mut OracleSession, p: &TesterParams) -> Explore {
    let n = session.n();
    if n == 0 {
        return Ok(None);
    }
    let theta0 = p.theta0();
    let theta1 = p.theta1(n, 5);
    let theta_min = p.theta_min(n, 5);
    let t = (p.t_mult / p.eps).ceil() as usize;
    let s2 = (p.s2_mult * (n as f64 * log2f(n) / theta1).sqrt() / p.eps.powi(3)).ceil() as usize;
    for rep in 0..t {
        let mut rng = session.rng(phase::C5, rep as u64);
        let mark = session.explored().mark();
        let Some((eu, ev)) = select_an_edge(session, theta0, &mut rng)? else {
            continue;
        };
        let v = if rng.gen_bool(0.5) { eu } else { ev };
        let dv = session.degree_cached(v)? as usize;
        if (dv as f64) <= theta1 {
            let s1 = (p.s1_mult * (dv as f64 / p.eps).sqrt()).ceil() as usize;
            if s1 >= dv {
                for u in session.expand_all(v)? {
                    expand_depth2(session, u, theta_min)?;
                }
            } else {
                for _ in 0..s1 {
                    let u = session.random_neighbor(v, &mut rng)?;
                    expand_depth2(session, u, theta_min)?;
                }
            }
        } else {
            for _ in 0..s2 {
                let mut cur = v;
                for _ in 0..3 {
                    session.degree_cached(cur)?;
                    cur = session.random_neighbor(cur, &mut rng)?;
                }
            }
        }
        if let Some(w) = find_cycle_incremental(session.explored(), 5, mark) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Restricted breadth-first expansion to depth 2 below a sampled
/// neighbor: expand `u` when its degree is within the threshold, then
/// expand each revealed neighbor under the same rule.
fn expand_depth2(
    session: &mut OracleSession,
    u: u32,
    theta_min: f64,
) -> Result<(), OracleError> {
    if (session.degree_cached(u)? as f64) > theta_min {
        return Ok(());
    }
    for w in session.expand_all(u)? {
        if (session.degree_cached(w)? as f64) <= theta_min {
            session.expand_all(w)?;
        }
    }
    Ok(())
}
