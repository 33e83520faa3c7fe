//! Ground-truth computations on fully known graphs: cycle and pattern
//! counts, edge-disjoint cycle packings, and distance-to-freeness bounds.
//!
//! Everything here reads the whole graph. These routines back the test
//! suite and the experiment harness labels; the sublinear testers never
//! call them.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{norm_edge, Graph};
use crate::pattern::PatternGraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("{what} is {value}, above the supported maximum {max}")]
    TooLarge {
        what: &'static str,
        value: usize,
        max: usize,
    },
}

/// Visits each k-cycle exactly once as a tuple (v0, ..., v_{k-1}) with v0
/// the smallest vertex on the cycle and v1 < v_{k-1}; tuples arrive in
/// ascending lexicographic order. The visitor returns false to stop early;
/// the function returns false iff it was stopped.
pub fn for_each_cycle<F: FnMut(&[u32]) -> bool>(g: &Graph, k: usize, mut f: F) -> bool {
    assert!(k >= 3, "cycles need at least 3 vertices");
    let n = g.n();
    if n < k {
        return true;
    }
    let sorted: Vec<Vec<u32>> = (0..n as u32)
        .map(|v| {
            let mut a = g.neighbors(v).to_vec();
            a.sort_unstable();
            a
        })
        .collect();
    let mut path: Vec<u32> = Vec::with_capacity(k);
    let mut on_path = vec![false; n];
    for v0 in 0..n as u32 {
        path.push(v0);
        on_path[v0 as usize] = true;
        if !extend_cycle(&sorted, g, k, &mut path, &mut on_path, &mut f) {
            return false;
        }
        on_path[v0 as usize] = false;
        path.pop();
    }
    true
}

fn extend_cycle<F: FnMut(&[u32]) -> bool>(
    sorted: &[Vec<u32>],
    g: &Graph,
    k: usize,
    path: &mut Vec<u32>,
    on_path: &mut [bool],
    f: &mut F,
) -> bool {
    let v0 = path[0];
    let last = *path.last().unwrap();
    if path.len() == k {
        if path[1] < path[k - 1] && g.has_edge(last, v0) {
            return f(path);
        }
        return true;
    }
    for &u in &sorted[last as usize] {
        if u <= v0 || on_path[u as usize] {
            continue;
        }
        path.push(u);
        on_path[u as usize] = true;
        let keep_going = extend_cycle(sorted, g, k, path, on_path, f);
        on_path[u as usize] = false;
        path.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

/// Number of k-cycle subgraphs, by exhaustive enumeration.
pub fn count_cycles(g: &Graph, k: usize) -> u64 {
    let mut count = 0u64;
    for_each_cycle(g, k, |_| {
        count += 1;
        true
    });
    count
}

/// True iff the graph contains no k-cycle.
pub fn is_free(g: &Graph, k: usize) -> bool {
    for_each_cycle(g, k, |_| false)
}

/// Triangle count via common-neighbor sums: each edge (u, v) contributes
/// |N(u) ∩ N(v)| and each triangle is counted once per edge.
pub fn count_triangles_trace(g: &Graph) -> u64 {
    let mut tri3 = 0u64;
    for &(u, v) in g.edges() {
        let (small, other) = if g.degree(u) <= g.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        for &w in g.neighbors(small) {
            if w != other && g.has_edge(w, other) {
                tri3 += 1;
            }
        }
    }
    tri3 / 3
}

/// 4-cycle count via codegrees: a pair {u, v} with c common neighbors lies
/// opposite on C(c, 2) four-cycles, and each four-cycle has two opposite
/// pairs.
pub fn count_c4_codegree(g: &Graph) -> u64 {
    use std::collections::HashMap;
    let mut codeg: HashMap<(u32, u32), u64> = HashMap::new();
    for w in 0..g.n() as u32 {
        let nb = g.neighbors(w);
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                *codeg.entry(norm_edge(nb[i], nb[j])).or_insert(0) += 1;
            }
        }
    }
    let twice: u64 = codeg.values().map(|&c| c * (c - 1) / 2).sum();
    twice / 2
}

/// An edge-disjoint set of k-cycles. `maximal` records that every k-cycle
/// of the source graph shares an edge with some member.
#[derive(Debug, Clone, Serialize)]
pub struct DisjointCycleSet {
    pub k: usize,
    pub cycles: Vec<Vec<u32>>,
    pub maximal: bool,
}

impl DisjointCycleSet {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// All edges used by member cycles, normalized.
    pub fn edge_set(&self) -> HashSet<(u32, u32)> {
        let mut set = HashSet::with_capacity(self.k * self.cycles.len());
        for c in &self.cycles {
            for i in 0..c.len() {
                set.insert(norm_edge(c[i], c[(i + 1) % c.len()]));
            }
        }
        set
    }

    /// Each member is a genuine k-cycle of `g` and no edge repeats.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut seen = HashSet::new();
        for c in &self.cycles {
            if c.len() != self.k {
                return false;
            }
            let distinct: HashSet<u32> = c.iter().copied().collect();
            if distinct.len() != self.k {
                return false;
            }
            for i in 0..self.k {
                let e = norm_edge(c[i], c[(i + 1) % self.k]);
                if !g.has_edge(e.0, e.1) || !seen.insert(e) {
                    return false;
                }
            }
        }
        true
    }

    /// Recomputes maximality against `g` by full enumeration.
    pub fn verify_maximal(&self, g: &Graph) -> bool {
        let used = self.edge_set();
        for_each_cycle(g, self.k, |cyc| {
            (0..cyc.len()).any(|i| used.contains(&norm_edge(cyc[i], cyc[(i + 1) % cyc.len()])))
        })
    }
}

/// Greedy maximal edge-disjoint k-cycle set: stream cycles in canonical
/// order, keep each whose edges are all unused. Maximal by construction
/// because every skipped cycle shares an edge with an earlier kept one.
pub fn greedy_edge_disjoint(g: &Graph, k: usize) -> DisjointCycleSet {
    let mut used: HashSet<(u32, u32)> = HashSet::new();
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    for_each_cycle(g, k, |cyc| {
        let free = (0..k).all(|i| !used.contains(&norm_edge(cyc[i], cyc[(i + 1) % k])));
        if free {
            for i in 0..k {
                used.insert(norm_edge(cyc[i], cyc[(i + 1) % k]));
            }
            cycles.push(cyc.to_vec());
        }
        true
    });
    DisjointCycleSet {
        k,
        cycles,
        maximal: true,
    }
}

/// Distance-to-freeness sandwich from a maximal edge-disjoint set of size
/// s: destroying s disjoint cycles needs at least s removals, and removing
/// every edge of every member (at most k*s edges) suffices.
pub fn distance_bounds(g: &Graph, set: &DisjointCycleSet) -> (f64, f64) {
    let m = g.m();
    if m == 0 {
        return (0.0, 0.0);
    }
    let s = set.len() as f64;
    let lower = s / m as f64;
    let upper = (set.k as f64 * s / m as f64).min(1.0);
    (lower, upper)
}

/// Outcome of the exhaustive distance search: a smallest edge set whose
/// removal leaves the graph k-cycle-free, and its size over m.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactRemoval {
    pub removed: Vec<(u32, u32)>,
    pub distance: f64,
}

const MAX_EXHAUSTIVE_EDGES: usize = 18;

/// Exact distance to k-cycle-freeness by trying removal sets in ascending
/// size, capped at 18 edges (2^18 candidate sets).
pub fn exact_distance_by_removal(g: &Graph, k: usize) -> Result<ExactRemoval, ExactError> {
    let m = g.m();
    if m > MAX_EXHAUSTIVE_EDGES {
        return Err(ExactError::TooLarge {
            what: "edge count for exhaustive distance",
            value: m,
            max: MAX_EXHAUSTIVE_EDGES,
        });
    }
    if m == 0 {
        return Ok(ExactRemoval {
            removed: vec![],
            distance: 0.0,
        });
    }
    let edges = g.edges();
    for size in 0..=m {
        let mut mask: u64 = if size == 0 { 0 } else { (1u64 << size) - 1 };
        loop {
            let kept: Vec<(u32, u32)> = edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1u64 << i) == 0)
                .map(|(_, &e)| e)
                .collect();
            let sub = Graph::from_edges(g.n(), &kept).expect("subset of a valid graph");
            if is_free(&sub, k) {
                let removed: Vec<(u32, u32)> = edges
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1u64 << i) != 0)
                    .map(|(_, &e)| e)
                    .collect();
                return Ok(ExactRemoval {
                    removed,
                    distance: size as f64 / m as f64,
                });
            }
            if size == 0 {
                break;
            }
            // Gosper's hack: next mask with the same popcount.
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
            if mask >= 1u64 << m {
                break;
            }
        }
    }
    unreachable!("removing all edges always succeeds");
}

/// Number of copies of an arbitrary pattern: injective edge-preserving
/// maps counted by backtracking, divided by the pattern's automorphisms.
/// Cycles take the specialized enumerator.
pub fn count_pattern(g: &Graph, f: &PatternGraph) -> u64 {
    if f.is_cycle() {
        return count_cycles(g, f.k());
    }
    let embeddings = count_injective_embeddings(g, f, None);
    embeddings / automorphism_count(f)
}

/// True iff the graph contains no copy of the pattern.
pub fn is_pattern_free(g: &Graph, f: &PatternGraph) -> bool {
    if f.is_cycle() {
        return is_free(g, f.k());
    }
    count_injective_embeddings(g, f, Some(1)) == 0
}

/// |Aut(F)|, computed as the number of embeddings of F into itself.
pub fn automorphism_count(f: &PatternGraph) -> u64 {
    let host = Graph::from_edges(
        f.k(),
        &f.edges().iter().map(|&(a, b)| (a as u32, b as u32)).collect::<Vec<_>>(),
    )
    .expect("pattern is a valid graph");
    count_injective_embeddings(&host, f, None)
}

/// Counts injective maps from pattern vertices to host vertices that send
/// every pattern edge to a host edge, stopping early at `limit` if given.
/// Pattern vertices are processed in an order where each one after a
/// component root has an already-placed neighbor to anchor on.
pub(crate) fn count_injective_embeddings(
    g: &Graph,
    f: &PatternGraph,
    limit: Option<u64>,
) -> u64 {
    let k = f.k();
    let order = anchored_order(f);
    let mut image: Vec<Option<u32>> = vec![None; k];
    let mut used = vec![false; g.n()];
    let mut count = 0u64;
    place(g, f, &order, 0, &mut image, &mut used, &mut count, limit);
    count
}

/// BFS order per component; `anchor[i]` is an earlier-placed neighbor of
/// `order[i]`, or None for component roots.
fn anchored_order(f: &PatternGraph) -> Vec<(u8, Option<u8>)> {
    let k = f.k();
    let mut seen = vec![false; k];
    let mut order: Vec<(u8, Option<u8>)> = Vec::with_capacity(k);
    for root in 0..k as u8 {
        if seen[root as usize] {
            continue;
        }
        seen[root as usize] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        order.push((root, None));
        while let Some(p) = queue.pop_front() {
            for q in f.neighbors(p) {
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    order.push((q, Some(p)));
                    queue.push_back(q);
                }
            }
        }
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn place(
    g: &Graph,
    f: &PatternGraph,
    order: &[(u8, Option<u8>)],
    depth: usize,
    image: &mut Vec<Option<u32>>,
    used: &mut Vec<bool>,
    count: &mut u64,
    limit: Option<u64>,
) {
    if let Some(l) = limit {
        if *count >= l {
            return;
        }
    }
    if depth == order.len() {
        *count += 1;
        return;
    }
    let (p, anchor) = order[depth];
    let pdeg = f.degree(p);
    let try_candidate = |cand: u32,
                         image: &mut Vec<Option<u32>>,
                         used: &mut Vec<bool>,
                         count: &mut u64| {
        if used[cand as usize] || g.degree(cand) < pdeg {
            return;
        }
        // Every already-placed pattern neighbor must be a host neighbor.
        let ok = f
            .neighbors(p)
            .all(|q| match image[q as usize] {
                Some(h) => g.has_edge(cand, h),
                None => true,
            });
        if !ok {
            return;
        }
        image[p as usize] = Some(cand);
        used[cand as usize] = true;
        place(g, f, order, depth + 1, image, used, count, limit);
        image[p as usize] = None;
        used[cand as usize] = false;
    };
    match anchor {
        Some(a) => {
            let host_anchor = image[a as usize].expect("anchor placed earlier");
            for &cand in g.neighbors(host_anchor) {
                try_candidate(cand, image, used, count);
            }
        }
        None => {
            for cand in 0..g.n() as u32 {
                try_candidate(cand, image, used, count);
            }
        }
    }
}
