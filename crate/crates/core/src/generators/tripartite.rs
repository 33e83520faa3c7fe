//! Regular tripartite graphs used as bases for cycle subdivision, plus a
//! greedy triangle-removal pass for accept-side controls.

use crate::exact::for_each_cycle;
use crate::generators::bipartite::sample_regular_bipartite;
use crate::generators::GenError;
use crate::graph::Graph;
use crate::oracle::stream_rng;

const PHASE_TRI_BLOCK: u64 = 4;

/// Samples a tripartite graph with parts of size `n_per_part` where every
/// vertex has exactly `deg` neighbors in each of the other two parts.
/// Returns the graph and a part label (0, 1, 2) per vertex; part `p`
/// occupies ids `[p * n_per_part, (p + 1) * n_per_part)`.
pub fn gen_tripartite_regular(
    n_per_part: usize,
    deg: usize,
    seed: u64,
) -> Result<(Graph, Vec<u8>), GenError> {
    if n_per_part < 2 || deg == 0 {
        return Err(GenError::TooSmall {
            what: "tripartite base",
            n: n_per_part,
            min: 2,
        });
    }
    if deg > n_per_part {
        return Err(GenError::Infeasible(format!(
            "degree {deg} exceeds part size {n_per_part}"
        )));
    }
    let np = n_per_part as u32;
    let mut edges = Vec::with_capacity(3 * n_per_part * deg);
    for (block, (off_a, off_b)) in [(0, np), (np, 2 * np), (0, 2 * np)].into_iter().enumerate() {
        let mut rng = stream_rng(seed, PHASE_TRI_BLOCK, block as u64);
        let block_edges = sample_regular_bipartite(n_per_part, n_per_part, deg, deg, &mut rng)?;
        edges.extend(block_edges.into_iter().map(|(u, w)| (off_a + u, off_b + w)));
    }
    let g = Graph::from_edges(3 * n_per_part, &edges)?;
    let parts: Vec<u8> = (0..3 * n_per_part)
        .map(|v| (v / n_per_part) as u8)
        .collect();
    Ok((g, parts))
}

/// Deletes one edge from each triangle until none remain. Degrees drop
/// slightly below regular; part labels stay valid for subdivision.
pub fn make_triangle_free(g: &Graph) -> Graph {
    let mut edges: Vec<(u32, u32)> = g.edges().to_vec();
    loop {
        let current = Graph::from_edges(g.n(), &edges).expect("edge subset stays valid");
        let mut tri: Option<[u32; 2]> = None;
        for_each_cycle(&current, 3, |c| {
            tri = Some([c[0], c[1]]);
            false
        });
        match tri {
            None => return current,
            Some([a, b]) => {
                let key = crate::graph::norm_edge(a, b);
                edges.retain(|&(u, w)| crate::graph::norm_edge(u, w) != key);
            }
        }
    }
}
