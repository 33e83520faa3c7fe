//! Accept-side control instances: forests (free of every cycle) and
//! bipartite graphs with girth at least 8 (free of all cycles up to C7).

use rand::Rng;

use crate::generators::GenError;
use crate::graph::Graph;
use crate::oracle::stream_rng;

const PHASE_FOREST: u64 = 6;
const PHASE_GIRTH: u64 = 7;

/// Random forest by attachment: each vertex links to an earlier vertex
/// whose degree allows it, or stays a new root.
pub fn gen_forest(n: usize, max_degree: usize, seed: u64) -> Result<Graph, GenError> {
    if n < 2 || max_degree == 0 {
        return Err(GenError::TooSmall {
            what: "forest",
            n,
            min: 2,
        });
    }
    let mut rng = stream_rng(seed, PHASE_FOREST, 0);
    let mut degree = vec![0usize; n];
    let mut edges = Vec::with_capacity(n - 1);
    for v in 1..n as u32 {
        if !rng.gen_bool(0.92) {
            continue;
        }
        for _ in 0..8 {
            let u = rng.gen_range(0..v);
            if degree[u as usize] < max_degree {
                edges.push((u, v));
                degree[u as usize] += 1;
                degree[v as usize] += 1;
                break;
            }
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Bipartite graph with girth at least 8: a proposed edge joins the two
/// halves only when its endpoints are at distance 7 or more, so every
/// created cycle has length at least 8. Degrees stay at or below
/// `target_degree`; density falls short of the target when the girth
/// constraint starts rejecting most proposals.
pub fn gen_high_girth_bipartite(
    n: usize,
    target_degree: usize,
    seed: u64,
) -> Result<Graph, GenError> {
    if n < 8 || target_degree == 0 {
        return Err(GenError::TooSmall {
            what: "high-girth bipartite graph",
            n,
            min: 8,
        });
    }
    let half = n / 2;
    let mut rng = stream_rng(seed, PHASE_GIRTH, 0);
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let budget = 40 * n * target_degree;
    let target_edges = n * target_degree / 2;
    let mut dist = vec![u32::MAX; n];
    let mut touched: Vec<u32> = Vec::new();
    let mut frontier: Vec<u32> = Vec::new();
    for _ in 0..budget {
        if edges.len() >= target_edges {
            break;
        }
        let u = rng.gen_range(0..half as u32);
        let w = rng.gen_range(half as u32..n as u32);
        if adj[u as usize].len() >= target_degree || adj[w as usize].len() >= target_degree {
            continue;
        }
        // Bounded BFS from u: any path to w of length < 7 vetoes the edge.
        let mut blocked = false;
        dist[u as usize] = 0;
        touched.push(u);
        frontier.clear();
        frontier.push(u);
        'bfs: for depth in 1..=6u32 {
            let mut next = Vec::new();
            for &x in &frontier {
                for &y in &adj[x as usize] {
                    if dist[y as usize] != u32::MAX {
                        continue;
                    }
                    if y == w {
                        blocked = true;
                        break 'bfs;
                    }
                    dist[y as usize] = depth;
                    touched.push(y);
                    next.push(y);
                }
            }
            frontier = next;
        }
        for &x in &touched {
            dist[x as usize] = u32::MAX;
        }
        touched.clear();
        if blocked {
            continue;
        }
        adj[u as usize].push(w);
        adj[w as usize].push(u);
        edges.push((u, w));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::is_free;

    #[test]
    fn forest_is_acyclic_with_capped_degrees() {
        let g = gen_forest(500, 4, 3).unwrap();
        assert!(g.m() < 500);
        assert!(g.max_degree() <= 4);
        // Acyclic: every component has one more vertex than edges, which
        // the degeneracy bound certifies at 1.
        assert!(g.degeneracy() <= 1);
        for k in 3..=8 {
            assert!(is_free(&g, k));
        }
    }

    #[test]
    fn high_girth_graph_has_no_short_cycles() {
        let g = gen_high_girth_bipartite(400, 3, 5).unwrap();
        assert!(g.m() > 400 / 2, "too sparse to be a useful control");
        assert!(g.max_degree() <= 3);
        for k in 3..=7 {
            assert!(is_free(&g, k), "found a {k}-cycle");
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let a = gen_forest(100, 3, 9).unwrap();
        let b = gen_forest(100, 3, 9).unwrap();
        assert_eq!(a.edges(), b.edges());
        let c = gen_high_girth_bipartite(64, 2, 1).unwrap();
        let d = gen_high_girth_bipartite(64, 2, 1).unwrap();
        assert_eq!(c.edges(), d.edges());
    }
}
