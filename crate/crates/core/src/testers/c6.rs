//! Six-cycle freeness tester: repeated restricted breadth-first search.
//!
//! Each repetition starts at a uniform vertex (skipped when its degree
//! exceeds theta0) and explores to depth 4 under three rules: low-degree
//! vertices expand fully; a high-degree vertex reached from a low-degree
//! one expands fully up to theta1 and otherwise contributes a sample of
//! ceil(theta1) distinct neighbors; a high-degree vertex reached from a
//! high-degree one is not expanded at all.

use std::collections::HashSet;

use rand::Rng;

use crate::oracle::OracleSession;
use crate::testers::params::log2f;
use crate::testers::witness::find_cycle_incremental;
use crate::testers::{phase, settle, Explore, Outcome, TesterError, TesterParams};

pub fn test_c6(session: &mut OracleSession, params: &TesterParams) -> Result<Outcome, TesterError> {
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
    let theta1 = p.theta1(n, 6);
    let sample_size = theta1.ceil() as usize;
    let t = (p.t6_mult * log2f(n).powi(3) / p.eps.powi(3)).ceil() as usize;
    for rep in 0..t {
        let mut rng = session.rng(phase::C6, rep as u64);
        let mark = session.explored().mark();
        let v = rng.gen_range(0..n as u32);
        if (session.degree_cached(v)? as f64) > theta0 {
            continue;
        }
        let mut visited: HashSet<u32> = HashSet::from([v]);
        let mut frontier: Vec<(u32, bool)> = vec![(v, true)];
        for _ in 0..4 {
            let mut next: Vec<(u32, bool)> = Vec::new();
            for idx in 0..frontier.len() {
                let (u, from_light) = frontier[idx];
                let du = session.degree_cached(u)? as f64;
                let u_light = du <= theta0;
                let children = if u_light {
                    session.expand_all(u)?
                } else if from_light {
                    if du <= theta1 {
                        session.expand_all(u)?
                    } else {
                        session.sample_distinct_neighbors(u, sample_size, &mut rng)?
                    }
                } else {
                    Vec::new()
                };
                for w in children {
                    if visited.insert(w) {
                        next.push((w, u_light));
                    }
                }
            }
            frontier = next;
        }
        if let Some(w) = find_cycle_incremental(session.explored(), 6, mark) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}
