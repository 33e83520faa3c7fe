//! Layered random family: two vertex classes X (high degree) and Y (low
//! degree) wired by four independent random biregular blocks. Designed so
//! four-cycles are abundant but spread thin, with roughly `alpha / 32`
//! of them per edge on average, while the arboricity stays near `alpha`.

use serde_json::json;

use super::{DegreeClasses, GenError, InstanceMeta};
use crate::generators::bipartite::sample_regular_bipartite;
use crate::graph::Graph;
use crate::oracle::stream_rng;

const PHASE_BLOCK: u64 = 3;

/// Degree scale divisor for the Y side: Y-degree is about sqrt(n) / C2.
pub const C2: usize = 4;

/// Builds the layered instance on up to `n` vertices. `alpha` must be even
/// and at least 2; isolated spare vertices pad the tail so the vertex count
/// is exactly `n`.
pub fn gen_dist_d(n: usize, alpha: usize, seed: u64) -> Result<(Graph, InstanceMeta), GenError> {
    if alpha < 2 || alpha % 2 != 0 {
        return Err(GenError::Infeasible(format!(
            "alpha must be even and >= 2, got {alpha}"
        )));
    }
    if n < 64 {
        return Err(GenError::TooSmall {
            what: "layered family",
            n,
            min: 64,
        });
    }
    let mut d = ((n as f64).sqrt() / C2 as f64) as usize;
    d -= d % 2;
    if d < 2 {
        return Err(GenError::TooSmall {
            what: "layered family Y-degree",
            n,
            min: 64,
        });
    }
    if alpha > d {
        return Err(GenError::Infeasible(format!(
            "alpha {alpha} exceeds Y-degree {d}; increase n"
        )));
    }
    // Shrink X until the per-block stub counts divide evenly.
    let mut x = n / 4;
    while x > 0 && (x * (alpha / 2)) % (d / 2) != 0 {
        x -= 1;
    }
    if x == 0 {
        return Err(GenError::Infeasible(format!(
            "no feasible X size for n={n} alpha={alpha} d={d}"
        )));
    }
    let ny = x * alpha / d;
    debug_assert!(2 * x + 2 * ny <= n);

    let x1 = 0u32;
    let x2 = x as u32;
    let y1 = (2 * x) as u32;
    let y2 = (2 * x + ny) as u32;
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(2 * x * alpha);
    for (block, (xoff, yoff)) in [(x1, y1), (x1, y2), (x2, y1), (x2, y2)]
        .into_iter()
        .enumerate()
    {
        let mut rng = stream_rng(seed, PHASE_BLOCK, block as u64);
        let block_edges = sample_regular_bipartite(x, ny, alpha / 2, d / 2, &mut rng)?;
        edges.extend(
            block_edges
                .into_iter()
                .map(|(u, w)| (xoff + u, yoff + w)),
        );
    }
    let g = Graph::from_edges(n, &edges)?;
    for v in 0..(2 * x) as u32 {
        debug_assert_eq!(g.degree(v), alpha);
    }
    for v in (2 * x) as u32..(2 * x + 2 * ny) as u32 {
        debug_assert_eq!(g.degree(v), d);
    }

    let parts = std::collections::BTreeMap::from([
        ("X1".to_string(), (0..x as u32).collect::<Vec<_>>()),
        ("X2".to_string(), (x as u32..2 * x as u32).collect()),
        ("Y1".to_string(), (y1..y2).collect()),
        ("Y2".to_string(), (y2..(2 * x + 2 * ny) as u32).collect()),
    ]);
    let meta = InstanceMeta {
        family: "dist-d".to_string(),
        seed,
        parameters: json!({
            "n": n,
            "alpha": alpha,
            "d": d,
            "x_per_part": x,
            "y_per_part": ny,
            "spare": n - 2 * x - 2 * ny,
            "c2": C2,
        }),
        certificate: None,
        parts: Some(parts),
        degree_classes: DegreeClasses::classify(&g, 0.1, alpha as f64, 4),
    };
    Ok((g, meta))
}
