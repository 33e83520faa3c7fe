//! Randomized edge selection through degree and neighbor queries.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::oracle::{OracleError, OracleSession};

/// Near-uniform edge selection biased toward low-degree endpoints: over
/// ceil(8 * theta0) rounds, draw a uniform vertex u and, when d(u) <=
/// theta0, return a uniform incident edge with probability d(u) / theta0.
/// Conditioned on success, each edge with a light endpoint is returned
/// with probability between 1/(2m') and 1/m' (m' = number of such edges);
/// with at least half the edges light-incident, success probability is at
/// least 2/3. `None` means every round failed.
pub fn select_an_edge(
    session: &mut OracleSession,
    theta0: f64,
    rng: &mut ChaCha8Rng,
) -> Result<Option<(u32, u32)>, OracleError> {
    let n = session.n() as u32;
    if n == 0 {
        return Ok(None);
    }
    let rounds = (8.0 * theta0).ceil() as usize;
    for _ in 0..rounds {
        let u = rng.gen_range(0..n);
        let d = session.degree(u)?;
        if d == 0 || (d as f64) > theta0 {
            continue;
        }
        if !rng.gen_bool((d as f64 / theta0).min(1.0)) {
            continue;
        }
        let v = session.random_neighbor(u, rng)?;
        return Ok(Some((u, v)));
    }
    Ok(None)
}

/// Uniform selection among edges with at least one endpoint of degree at
/// most theta0. Light-light edges are reachable from both endpoints, so a
/// fair coin drops half of those hits to equalize the weights. The loop
/// runs `16 * theta0 * n / m_hint` rounds (at least `8 * theta0`), enough
/// for the success probability per round of about m' / (n * theta0).
pub fn select_uniform_edge_low(
    session: &mut OracleSession,
    theta0: f64,
    m_hint: u64,
    rng: &mut ChaCha8Rng,
) -> Result<Option<(u32, u32)>, OracleError> {
    let n = session.n() as u32;
    if n == 0 || m_hint == 0 {
        return Ok(None);
    }
    let scaled = 16.0 * theta0 * session.n() as f64 / m_hint as f64;
    let rounds = scaled.max(8.0 * theta0).ceil() as usize;
    for _ in 0..rounds {
        let u = rng.gen_range(0..n);
        let d = session.degree_cached(u)?;
        if d == 0 || (d as f64) > theta0 {
            continue;
        }
        if !rng.gen_bool((d as f64 / theta0).min(1.0)) {
            continue;
        }
        let v = session.random_neighbor(u, rng)?;
        let dv = session.degree_cached(v)?;
        if (dv as f64) <= theta0 && !rng.gen_bool(0.5) {
            continue;
        }
        return Ok(Some((u, v)));
    }
    Ok(None)
}
