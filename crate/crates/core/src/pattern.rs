//! Small pattern graphs (the F in F-freeness) and the cover parameter that
//! sets the general tester's sample size.
//!
//! Patterns live on at most 12 vertices so subsets fit in a `u16` mask and
//! every cover computation can afford full enumeration.

use thiserror::Error;

use crate::graph::Graph;

pub const MAX_PATTERN_VERTICES: usize = 12;

#[derive(Debug, Error)]
pub enum PatternError {
    #[error("pattern has {0} vertices, maximum is {MAX_PATTERN_VERTICES}")]
    TooLarge(usize),
    #[error("pattern needs at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("pattern vertex {0} is isolated")]
    IsolatedVertex(u8),
    #[error("pattern vertex id {id} out of range for k = {k}")]
    OutOfRange { id: u8, k: usize },
    #[error("pattern self loop at {0}")]
    SelfLoop(u8),
    #[error("pattern duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(u8, u8),
}

/// A simple pattern graph on `k <= 12` vertices with no isolated vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternGraph {
    k: usize,
    edges: Vec<(u8, u8)>,
    /// adj_masks[v] has bit w set iff {v, w} is an edge.
    adj_masks: Vec<u16>,
}

impl PatternGraph {
    pub fn from_edges(k: usize, edges: Vec<(u8, u8)>) -> Result<Self, PatternError> {
        if k > MAX_PATTERN_VERTICES {
            return Err(PatternError::TooLarge(k));
        }
        if k < 2 {
            return Err(PatternError::TooSmall(k));
        }
        let mut adj_masks = vec![0u16; k];
        for &(a, b) in &edges {
            for id in [a, b] {
                if id as usize >= k {
                    return Err(PatternError::OutOfRange { id, k });
                }
            }
            if a == b {
                return Err(PatternError::SelfLoop(a));
            }
            if adj_masks[a as usize] & (1 << b) != 0 {
                return Err(PatternError::DuplicateEdge(a, b));
            }
            adj_masks[a as usize] |= 1 << b;
            adj_masks[b as usize] |= 1 << a;
        }
        for v in 0..k {
            if adj_masks[v] == 0 {
                return Err(PatternError::IsolatedVertex(v as u8));
            }
        }
        Ok(PatternGraph {
            k,
            edges,
            adj_masks,
        })
    }

    /// Converts a small graph, keeping vertex ids.
    pub fn from_graph(g: &Graph) -> Result<Self, PatternError> {
        let edges = g
            .edges()
            .iter()
            .map(|&(u, v)| (u as u8, v as u8))
            .collect();
        PatternGraph::from_edges(g.n(), edges)
    }

    pub fn single_edge() -> Self {
        PatternGraph::from_edges(2, vec![(0, 1)]).unwrap()
    }

    /// The cycle C_k, vertices in cyclic order 0, 1, ..., k-1.
    pub fn cycle(k: usize) -> Result<Self, PatternError> {
        if k < 3 {
            return Err(PatternError::TooSmall(k));
        }
        let edges = (0..k)
            .map(|i| (i as u8, ((i + 1) % k) as u8))
            .collect();
        PatternGraph::from_edges(k, edges)
    }

    /// The path P_k on k vertices (k - 1 edges).
    pub fn path(k: usize) -> Result<Self, PatternError> {
        let edges = (0..k.saturating_sub(1))
            .map(|i| (i as u8, (i + 1) as u8))
            .collect();
        PatternGraph::from_edges(k, edges)
    }

    /// The star K_{1,leaves} with the center at vertex 0.
    pub fn star(leaves: usize) -> Result<Self, PatternError> {
        let edges = (1..=leaves).map(|i| (0u8, i as u8)).collect();
        PatternGraph::from_edges(leaves + 1, edges)
    }

    pub fn complete(k: usize) -> Result<Self, PatternError> {
        let mut edges = Vec::new();
        for a in 0..k {
            for b in (a + 1)..k {
                edges.push((a as u8, b as u8));
            }
        }
        PatternGraph::from_edges(k, edges)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[(u8, u8)] {
        &self.edges
    }

    pub fn has_edge(&self, a: u8, b: u8) -> bool {
        self.adj_masks[a as usize] & (1 << b) != 0
    }

    pub fn degree(&self, v: u8) -> usize {
        self.adj_masks[v as usize].count_ones() as usize
    }

    /// Pattern neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: u8) -> impl Iterator<Item = u8> + '_ {
        let mask = self.adj_masks[v as usize];
        (0..self.k as u8).filter(move |w| mask & (1 << w) != 0)
    }

    /// True iff the pattern is the cycle on its k vertices (in any labeling).
    pub fn is_cycle(&self) -> bool {
        if self.k < 3 || self.edges.len() != self.k {
            return false;
        }
        if (0..self.k).any(|v| self.degree(v as u8) != 2) {
            return false;
        }
        // 2-regular and connected means a single cycle.
        let mut seen = 1u16;
        let mut frontier = vec![0u8];
        while let Some(v) = frontier.pop() {
            for w in self.neighbors(v) {
                if seen & (1 << w) == 0 {
                    seen |= 1 << w;
                    frontier.push(w);
                }
            }
        }
        seen.count_ones() as usize == self.k
    }

    fn is_cover(&self, mask: u16) -> bool {
        self.edges
            .iter()
            .all(|&(a, b)| mask & ((1 << a) | (1 << b)) != 0)
    }

    /// All vertex covers as bit masks, sorted by ascending popcount.
    fn covers_by_size(&self) -> Vec<u16> {
        let mut covers: Vec<u16> = (0..(1u32 << self.k) as u32)
            .map(|m| m as u16)
            .filter(|&m| self.is_cover(m))
            .collect();
        covers.sort_by_key(|m| m.count_ones());
        covers
    }

    pub fn min_vertex_cover(&self) -> usize {
        self.covers_by_size()[0].count_ones() as usize
    }

    /// The cover parameter: the maximum over vertex covers Z of the minimum
    /// size of a vertex cover contained in Z. Exhaustive over all 2^k subsets.
    ///
    /// Interpretation: an adversary fixes which vertices of a planted copy are
    /// cheap to explore (they always form a cover, since expensive vertices
    /// are pairwise non-adjacent inside a copy); the tester must still cover
    /// the copy using only cheap vertices. Always between the minimum vertex
    /// cover size and k.
    pub fn ell(&self) -> usize {
        let covers = self.covers_by_size();
        let mut worst = 0usize;
        for &z in &covers {
            // First cover under Z in popcount order is the cheapest one.
            let best = covers
                .iter()
                .find(|&&b| b & !z == 0)
                .map(|b| b.count_ones() as usize)
                .expect("Z itself is a cover under Z");
            worst = worst.max(best);
        }
        worst
    }
}

/// Convenience wrapper matching the operation map: the cover parameter of a
/// pattern, erroring only through `PatternGraph` construction.
pub fn ell_of(f: &PatternGraph) -> usize {
    f.ell()
}
