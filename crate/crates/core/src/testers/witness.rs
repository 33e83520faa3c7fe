//! Exact witness search over the explored subgraph.
//!
//! Testers call these after each batch of queries, passing the edge-log
//! mark taken before the batch: only cycles and embeddings using at least
//! one new edge are searched for, which keeps repeated scans from
//! re-walking old ground. The searches are complete over the explored
//! subgraph and deterministic given the query history, two properties the
//! soundness and monotonicity guarantees lean on.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::graph::Graph;
use crate::oracle::Explored;
use crate::pattern::PatternGraph;

/// A k-cycle in the explored subgraph using at least one edge revealed at
/// or after `mark`, as a vertex sequence with cyclically adjacent entries.
pub fn find_cycle_incremental(ex: &Explored, k: usize, mark: usize) -> Option<Vec<u32>> {
    debug_assert!(k >= 3);
    let new_edges = ex.edges_since(mark).to_vec();
    // Breadth-first distances from each DFS target, computed once per
    // distinct target: pruning by remaining-distance makes dead branches
    // cheap, which matters when explored hubs have hundreds of neighbors.
    let mut dist_cache: HashMap<u32, HashMap<u32, usize>> = HashMap::new();
    for &(a, b) in &new_edges {
        // Start from the endpoint with the smaller explored degree.
        let (start, target) = if ex.neighbors(a).len() <= ex.neighbors(b).len() {
            (a, b)
        } else {
            (b, a)
        };
        let dist = dist_cache
            .entry(target)
            .or_insert_with(|| bfs_dist(ex, target, k - 1));
        if dist.get(&start).copied().unwrap_or(usize::MAX) > k - 1 {
            continue;
        }
        let mut path = vec![start];
        let mut on_path: HashSet<u32> = HashSet::from([start]);
        if dfs_path(ex, dist, target, k - 1, &mut path, &mut on_path) {
            return Some(path);
        }
    }
    None
}

fn bfs_dist(ex: &Explored, from: u32, cap: usize) -> HashMap<u32, usize> {
    let mut dist = HashMap::from([(from, 0usize)]);
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        let dv = dist[&v];
        if dv == cap {
            continue;
        }
        for &w in ex.neighbors(v) {
            if !dist.contains_key(&w) {
                dist.insert(w, dv + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Extends `path` to reach `target` with exactly `remaining` more edges,
/// all vertices distinct. The distance map prunes unreachable branches.
fn dfs_path(
    ex: &Explored,
    dist: &HashMap<u32, usize>,
    target: u32,
    remaining: usize,
    path: &mut Vec<u32>,
    on_path: &mut HashSet<u32>,
) -> bool {
    let v = *path.last().expect("path starts nonempty");
    if remaining == 0 {
        return v == target;
    }
    for &w in ex.neighbors(v) {
        if w == target {
            if remaining == 1 {
                path.push(w);
                return true;
            }
            continue;
        }
        if on_path.contains(&w) {
            continue;
        }
        if dist.get(&w).copied().unwrap_or(usize::MAX) > remaining - 1 {
            continue;
        }
        path.push(w);
        on_path.insert(w);
        if dfs_path(ex, dist, target, remaining - 1, path, on_path) {
            return true;
        }
        path.pop();
        on_path.remove(&w);
    }
    false
}

/// An embedding of `f` into the explored subgraph using at least one edge
/// revealed at or after `mark`. Returns the images of the pattern's
/// vertices in pattern order. Cycles route through the dedicated search.
pub fn find_pattern_incremental(ex: &Explored, f: &PatternGraph, mark: usize) -> Option<Vec<u32>> {
    if f.is_cycle() {
        return find_cycle_incremental(ex, f.k(), mark);
    }
    if f.k() == 2 {
        return ex.edges_since(mark).first().map(|&(a, b)| vec![a, b]);
    }
    let new_edges = ex.edges_since(mark).to_vec();
    if new_edges.is_empty() {
        return None;
    }
    let vertex_pool = explored_vertices(ex);
    for &(a, b) in &new_edges {
        for &(p, q) in f.edges() {
            for (x, y) in [(a, b), (b, a)] {
                let order = placement_order(f, p, q);
                let mut images = vec![u32::MAX; f.k()];
                let mut used = HashSet::from([x, y]);
                images[p as usize] = x;
                images[q as usize] = y;
                if place(ex, f, &order, 0, &mut images, &mut used, &vertex_pool) {
                    return Some(images);
                }
            }
        }
    }
    None
}

/// Explored vertices in first-seen order; the deterministic pool for
/// pattern components not attached to the anchor edge.
fn explored_vertices(ex: &Explored) -> Vec<u32> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &(a, b) in ex.edge_log() {
        for v in [a, b] {
            if seen.insert(v) {
                out.push(v);
            }
        }
    }
    out
}

/// Pattern vertices beyond the anchor pair, neighbors-of-placed first so
/// adjacency constraints bind as early as possible.
fn placement_order(f: &PatternGraph, p: u8, q: u8) -> Vec<u8> {
    let mut placed: Vec<u8> = vec![p, q];
    let mut order = Vec::new();
    let mut queue: VecDeque<u8> = VecDeque::from([p, q]);
    while order.len() + 2 < f.k() {
        while let Some(v) = queue.pop_front() {
            for w in f.neighbors(v) {
                if !placed.contains(&w) {
                    placed.push(w);
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        // Next component, if any: smallest unplaced vertex seeds it.
        if order.len() + 2 < f.k() {
            if let Some(v) = (0..f.k() as u8).find(|v| !placed.contains(v)) {
                placed.push(v);
                order.push(v);
                queue.push_back(v);
            }
        }
    }
    order
}

fn place(
    ex: &Explored,
    f: &PatternGraph,
    order: &[u8],
    idx: usize,
    images: &mut Vec<u32>,
    used: &mut HashSet<u32>,
    pool: &[u32],
) -> bool {
    if idx == order.len() {
        return true;
    }
    let x = order[idx];
    let placed_nbrs: Vec<u8> = f
        .neighbors(x)
        .filter(|&w| images[w as usize] != u32::MAX)
        .collect();
    let candidates: Vec<u32> = match placed_nbrs.first() {
        Some(&w0) => ex.neighbors(images[w0 as usize]).to_vec(),
        None => pool.to_vec(),
    };
    'cand: for c in candidates {
        if used.contains(&c) {
            continue;
        }
        for &w in &placed_nbrs {
            if !ex.has_edge(c, images[w as usize]) {
                continue 'cand;
            }
        }
        images[x as usize] = c;
        used.insert(c);
        if place(ex, f, order, idx + 1, images, used, pool) {
            return true;
        }
        images[x as usize] = u32::MAX;
        used.remove(&c);
    }
    false
}

/// Checks a cycle witness against the true graph: right length, distinct
/// vertices, every consecutive pair (cyclically) an edge.
pub fn validate_cycle_witness(g: &Graph, w: &[u32], k: usize) -> bool {
    if w.len() != k {
        return false;
    }
    let distinct: HashSet<u32> = w.iter().copied().collect();
    if distinct.len() != k {
        return false;
    }
    (0..k).all(|i| g.has_edge(w[i], w[(i + 1) % k]))
}

/// Checks an embedding witness against the true graph: injective and
/// every pattern edge present between the mapped images.
pub fn validate_pattern_witness(g: &Graph, f: &PatternGraph, w: &[u32]) -> bool {
    if w.len() != f.k() {
        return false;
    }
    let distinct: HashSet<u32> = w.iter().copied().collect();
    if distinct.len() != w.len() {
        return false;
    }
    f.edges()
        .iter()
        .all(|&(a, b)| g.has_edge(w[a as usize], w[b as usize]))
}
