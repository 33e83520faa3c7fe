//! Query access to a graph: degree, i-th neighbor, and vertex-pair probes.
//!
//! A session wraps an immutable graph and tracks everything a tester is
//! allowed to know: per-type query counters, an optional total budget, and
//! the explored subgraph (every vertex degree and edge revealed so far).
//! Answers are pure functions of the underlying graph; the session never
//! mutates it, so any number of sessions can share one graph across threads,
//! while a single session is strictly single-threaded.
//!
//! Seeding contract: all randomness in this crate is ChaCha8 keyed by a
//! 64-bit seed plus a 64-bit stream id composed as `(phase << 48) | index`.
//! Distinct (seed, phase, index) triples give independent streams, and a
//! loop that draws more samples keeps the shorter run's draws as a prefix.
//! That prefix property is what makes Reject verdicts monotone under larger
//! sample-size multipliers.

use std::collections::{HashMap, HashSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{norm_edge, Graph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: u32, n: usize },
    #[error("neighbor index {i} out of range at vertex {v} with degree {degree}")]
    NeighborIndexOutOfRange { v: u32, i: usize, degree: usize },
    #[error("pair query with identical endpoints {v}")]
    SelfPair { v: u32 },
    #[error("degree of {v} not yet queried; random neighbor needs it")]
    DegreeUnknown { v: u32 },
    #[error("vertex {v} has no neighbors to sample")]
    NoNeighbors { v: u32 },
    #[error("query budget of {budget} exhausted")]
    BudgetExhausted { budget: u64 },
}

/// Per-type query counters. `total` is the quantity budgets cap.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryStats {
    pub degree: u64,
    pub neighbor: u64,
    pub pair: u64,
}

impl QueryStats {
    pub fn total(&self) -> u64 {
        self.degree + self.neighbor + self.pair
    }
}

/// One logged query with its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranscriptEntry {
    Degree { v: u32, d: u32 },
    Neighbor { v: u32, i: u32, u: u32 },
    Pair { u: u32, v: u32, present: bool },
}

impl std::fmt::Display for TranscriptEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            TranscriptEntry::Degree { v, d } => write!(f, "D {v} -> {d}"),
            TranscriptEntry::Neighbor { v, i, u } => write!(f, "N {v} {i} -> {u}"),
            TranscriptEntry::Pair { u, v, present } => {
                write!(f, "P {u} {v} -> {}", if present { 1 } else { 0 })
            }
        }
    }
}

#[derive(Debug, Error)]
#[error("transcript entry {index} ({entry}) disagrees with the graph")]
pub struct ReplayError {
    pub index: usize,
    pub entry: String,
}

/// Checks that every logged answer matches what the graph would answer now.
pub fn replay_transcript(entries: &[TranscriptEntry], g: &Graph) -> Result<(), ReplayError> {
    for (index, e) in entries.iter().enumerate() {
        let ok = match *e {
            TranscriptEntry::Degree { v, d } => g.degree(v) == d as usize,
            TranscriptEntry::Neighbor { v, i, u } => g.nth_neighbor(v, i as usize) == Some(u),
            TranscriptEntry::Pair { u, v, present } => g.has_edge(u, v) == present,
        };
        if !ok {
            return Err(ReplayError {
                index,
                entry: e.to_string(),
            });
        }
    }
    Ok(())
}

/// The subgraph revealed by queries so far: known exact degrees plus every
/// edge seen through neighbor answers or positive pair answers.
#[derive(Debug, Default, Clone)]
pub struct Explored {
    adj: HashMap<u32, Vec<u32>>,
    edge_set: HashSet<(u32, u32)>,
    /// Normalized edges in first-seen order; witness search walks suffixes.
    edge_log: Vec<(u32, u32)>,
    degrees: HashMap<u32, u32>,
}

impl Explored {
    /// Records an edge; returns false if it was already known.
    fn add_edge(&mut self, u: u32, v: u32) -> bool {
        let e = norm_edge(u, v);
        if !self.edge_set.insert(e) {
            return false;
        }
        self.edge_log.push(e);
        self.adj.entry(u).or_default().push(v);
        self.adj.entry(v).or_default().push(u);
        true
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edge_set.contains(&norm_edge(u, v))
    }

    /// Neighbors of `v` among revealed edges (not necessarily all of them).
    pub fn neighbors(&self, v: u32) -> &[u32] {
        self.adj.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn known_degree(&self, v: u32) -> Option<u32> {
        self.degrees.get(&v).copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_log.len()
    }

    /// Position marker for later `edges_since` calls.
    pub fn mark(&self) -> usize {
        self.edge_log.len()
    }

    /// Edges revealed since a `mark`, in discovery order.
    pub fn edges_since(&self, mark: usize) -> &[(u32, u32)] {
        &self.edge_log[mark..]
    }

    pub fn edge_log(&self) -> &[(u32, u32)] {
        &self.edge_log
    }
}

/// Deterministic stream split; see the module notes for the contract.
pub fn stream_rng(seed: u64, phase: u64, index: u64) -> ChaCha8Rng {
    debug_assert!(phase < (1 << 16));
    debug_assert!(index < (1 << 48));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((phase << 48) | (index & 0x0000_FFFF_FFFF_FFFF));
    rng
}

/// A single-threaded query session over a shared graph.
pub struct OracleSession<'g> {
    graph: &'g Graph,
    seed: u64,
    budget: Option<u64>,
    stats: QueryStats,
    explored: Explored,
    transcript: Option<Vec<TranscriptEntry>>,
}

impl<'g> OracleSession<'g> {
    pub fn new(graph: &'g Graph, seed: u64) -> Self {
        OracleSession {
            graph,
            seed,
            budget: None,
            stats: QueryStats::default(),
            explored: Explored::default(),
            transcript: None,
        }
    }

    /// Caps the total number of queries. Once the cap is reached every
    /// further query fails with `BudgetExhausted` without executing, a
    /// recoverable signal the testers translate into Accept.
    pub fn set_budget(&mut self, budget: Option<u64>) {
        self.budget = budget;
    }

    pub fn enable_transcript(&mut self) {
        if self.transcript.is_none() {
            self.transcript = Some(Vec::new());
        }
    }

    pub fn transcript(&self) -> Option<&[TranscriptEntry]> {
        self.transcript.as_deref()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stats(&self) -> QueryStats {
        self.stats
    }

    pub fn explored(&self) -> &Explored {
        &self.explored
    }

    /// Stream split bound to this session's seed.
    pub fn rng(&self, phase: u64, index: u64) -> ChaCha8Rng {
        stream_rng(self.seed, phase, index)
    }

    fn check_vertex(&self, v: u32) -> Result<(), OracleError> {
        if (v as usize) < self.graph.n() {
            Ok(())
        } else {
            Err(OracleError::VertexOutOfRange {
                v,
                n: self.graph.n(),
            })
        }
    }

    fn charge(&mut self) -> Result<(), OracleError> {
        if let Some(b) = self.budget {
            if self.stats.total() >= b {
                return Err(OracleError::BudgetExhausted { budget: b });
            }
        }
        Ok(())
    }

    pub fn degree(&mut self, v: u32) -> Result<u32, OracleError> {
        self.check_vertex(v)?;
        self.charge()?;
        self.stats.degree += 1;
        let d = self.graph.degree(v) as u32;
        self.explored.degrees.insert(v, d);
        if let Some(t) = self.transcript.as_mut() {
            t.push(TranscriptEntry::Degree { v, d });
        }
        Ok(d)
    }

    /// The i-th neighbor of `v`, 1-based. Indexing past the degree is a
    /// caller contract violation, not a charged query.
    pub fn neighbor(&mut self, v: u32, i: usize) -> Result<u32, OracleError> {
        self.check_vertex(v)?;
        let d = self.graph.degree(v);
        if i == 0 || i > d {
            return Err(OracleError::NeighborIndexOutOfRange { v, i, degree: d });
        }
        self.charge()?;
        self.stats.neighbor += 1;
        let u = self.graph.nth_neighbor(v, i).expect("index checked");
        self.explored.add_edge(v, u);
        if let Some(t) = self.transcript.as_mut() {
            t.push(TranscriptEntry::Neighbor {
                v,
                i: i as u32,
                u,
            });
        }
        Ok(u)
    }

    pub fn pair(&mut self, u: u32, v: u32) -> Result<bool, OracleError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(OracleError::SelfPair { v });
        }
        self.charge()?;
        self.stats.pair += 1;
        let present = self.graph.has_edge(u, v);
        if present {
            self.explored.add_edge(u, v);
        }
        if let Some(t) = self.transcript.as_mut() {
            t.push(TranscriptEntry::Pair { u, v, present });
        }
        Ok(present)
    }

    /// A uniform neighbor of `v`, costing exactly one neighbor query. The
    /// degree must already be known to the session (query it first).
    pub fn random_neighbor<R: Rng>(&mut self, v: u32, rng: &mut R) -> Result<u32, OracleError> {
        let d = self
            .explored
            .known_degree(v)
            .ok_or(OracleError::DegreeUnknown { v })?;
        if d == 0 {
            return Err(OracleError::NoNeighbors { v });
        }
        let i = rng.gen_range(1..=d as usize);
        self.neighbor(v, i)
    }

    /// `s` distinct uniform neighbors of `v` (all of them if s >= degree).
    /// Distinct index sampling uses rejection while s <= d/2 and a partial
    /// shuffle otherwise, then pays one neighbor query per index.
    pub fn sample_distinct_neighbors<R: Rng>(
        &mut self,
        v: u32,
        s: usize,
        rng: &mut R,
    ) -> Result<Vec<u32>, OracleError> {
        let d = self
            .explored
            .known_degree(v)
            .ok_or(OracleError::DegreeUnknown { v })? as usize;
        let indices: Vec<usize> = if s >= d {
            (1..=d).collect()
        } else if s <= d / 2 {
            let mut chosen = HashSet::with_capacity(s);
            let mut out = Vec::with_capacity(s);
            while out.len() < s {
                let i = rng.gen_range(1..=d);
                if chosen.insert(i) {
                    out.push(i);
                }
            }
            out
        } else {
            // Partial Fisher-Yates over 1..=d, taking the first s slots.
            let mut pool: Vec<usize> = (1..=d).collect();
            for t in 0..s {
                let j = rng.gen_range(t..d);
                pool.swap(t, j);
            }
            pool.truncate(s);
            pool
        };
        let mut out = Vec::with_capacity(indices.len());
        for i in indices {
            out.push(self.neighbor(v, i)?);
        }
        Ok(out)
    }

    /// Reveals the full neighborhood of `v`, one neighbor query per edge.
    /// The degree must already be known.
    pub fn expand_all(&mut self, v: u32) -> Result<Vec<u32>, OracleError> {
        let d = self
            .explored
            .known_degree(v)
            .ok_or(OracleError::DegreeUnknown { v })? as usize;
        let mut out = Vec::with_capacity(d);
        for i in 1..=d {
            out.push(self.neighbor(v, i)?);
        }
        Ok(out)
    }

    /// Degree if already paid for, without issuing a query.
    pub fn known_degree(&self, v: u32) -> Option<u32> {
        self.explored.known_degree(v)
    }

    /// Queries the degree only if this session does not know it yet.
    pub fn degree_cached(&mut self, v: u32) -> Result<u32, OracleError> {
        match self.explored.known_degree(v) {
            Some(d) => Ok(d),
            None => self.degree(v),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn c4() -> Graph {
        Graph::from_edges(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn counters_track_each_type() {
        let g = c4();
        let mut s = OracleSession::new(&g, 7);
        assert_eq!(s.degree(0).unwrap(), 2);
        assert_eq!(s.neighbor(0, 1).unwrap(), 1);
        assert_eq!(s.neighbor(0, 2).unwrap(), 3);
        assert!(!s.pair(0, 2).unwrap());
        assert!(s.pair(2, 3).unwrap());
        let st = s.stats();
        assert_eq!((st.degree, st.neighbor, st.pair), (1, 2, 2));
        assert_eq!(st.total(), 5);
    }

    #[test]
    fn contract_violations_are_not_charged() {
        let g = c4();
        let mut s = OracleSession::new(&g, 0);
        assert!(matches!(
            s.degree(9),
            Err(OracleError::VertexOutOfRange { v: 9, .. })
        ));
        assert!(matches!(
            s.neighbor(0, 3),
            Err(OracleError::NeighborIndexOutOfRange { i: 3, .. })
        ));
        assert!(matches!(s.neighbor(0, 0), Err(OracleError::NeighborIndexOutOfRange { .. })));
        assert!(matches!(s.pair(1, 1), Err(OracleError::SelfPair { v: 1 })));
        assert_eq!(s.stats().total(), 0);
    }

    #[test]
    fn budget_exhaustion_leaves_query_unexecuted() {
        let g = c4();
        let mut s = OracleSession::new(&g, 0);
        s.set_budget(Some(2));
        s.degree(0).unwrap();
        s.degree(1).unwrap();
        assert!(matches!(
            s.degree(2),
            Err(OracleError::BudgetExhausted { budget: 2 })
        ));
        // Unexecuted: counters unchanged and the degree stays unknown.
        assert_eq!(s.stats().total(), 2);
        assert_eq!(s.known_degree(2), None);
    }

    #[test]
    fn explored_collects_revealed_edges_and_degrees() {
        let g = c4();
        let mut s = OracleSession::new(&g, 0);
        s.degree(1).unwrap();
        let mark = s.explored().mark();
        s.neighbor(1, 1).unwrap();
        s.neighbor(1, 2).unwrap();
        s.pair(0, 2).unwrap(); // absent, leaves no edge
        s.pair(3, 0).unwrap(); // present
        let e = s.explored();
        assert_eq!(e.known_degree(1), Some(2));
        assert_eq!(e.known_degree(0), None);
        assert!(e.has_edge(1, 0) && e.has_edge(1, 2) && e.has_edge(0, 3));
        assert!(!e.has_edge(0, 2));
        assert_eq!(e.edges_since(mark), &[(0, 1), (1, 2), (0, 3)]);
        assert_eq!(e.neighbors(1), &[0, 2]);
    }

    #[test]
    fn random_neighbor_requires_known_degree_and_is_uniform() {
        let g = Graph::from_edges(5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let mut s = OracleSession::new(&g, 0);
        let mut rng = stream_rng(11, 1, 0);
        assert!(matches!(
            s.random_neighbor(0, &mut rng),
            Err(OracleError::DegreeUnknown { v: 0 })
        ));
        s.degree(0).unwrap();
        let n = 40_000usize;
        let mut counts = [0usize; 5];
        for _ in 0..n {
            counts[s.random_neighbor(0, &mut rng).unwrap() as usize] += 1;
        }
        // 4-sigma band around p = 1/4.
        let sigma = ((0.25 * 0.75) / n as f64).sqrt();
        for leaf in 1..5 {
            let freq = counts[leaf] as f64 / n as f64;
            assert!((freq - 0.25).abs() < 4.0 * sigma, "leaf {leaf}: {freq}");
        }
        assert_eq!(s.stats().neighbor, n as u64);
    }

    #[test]
    fn two_step_walk_distribution_on_c4() {
        // From vertex 0 the four equiprobable two-step walks 0-1-0, 0-1-2,
        // 0-3-0, 0-3-2 end at vertex 2 exactly half the time.
        let g = c4();
        let mut s = OracleSession::new(&g, 3);
        let mut rng = stream_rng(3, 2, 0);
        let trials = 40_000usize;
        let mut at2 = 0usize;
        for _ in 0..trials {
            s.degree_cached(0).unwrap();
            let u = s.random_neighbor(0, &mut rng).unwrap();
            s.degree_cached(u).unwrap();
            let w = s.random_neighbor(u, &mut rng).unwrap();
            if w == 2 {
                at2 += 1;
            }
        }
        let freq = at2 as f64 / trials as f64;
        let sigma = (0.25 / trials as f64).sqrt();
        assert!((freq - 0.5).abs() < 4.0 * sigma, "freq {freq}");
    }

    #[test]
    fn sample_distinct_neighbors_covers_both_strategies() {
        let g = Graph::from_edges(
            9,
            (1..9).map(|i| (0u32, i as u32)).collect::<Vec<_>>(),
        )
        .unwrap();
        let mut s = OracleSession::new(&g, 0);
        s.degree(0).unwrap();
        let mut rng = stream_rng(5, 3, 0);
        for want in [2usize, 6, 8, 20] {
            let got = s.sample_distinct_neighbors(0, want, &mut rng).unwrap();
            let expect = want.min(8);
            assert_eq!(got.len(), expect);
            let set: HashSet<u32> = got.iter().copied().collect();
            assert_eq!(set.len(), expect, "duplicates in {got:?}");
        }
    }

    #[test]
    fn transcript_logs_and_replays() {
        let g = c4();
        let mut s = OracleSession::new(&g, 0);
        s.enable_transcript();
        s.degree(2).unwrap();
        s.neighbor(2, 1).unwrap();
        s.pair(0, 2).unwrap();
        let t = s.transcript().unwrap().to_vec();
        let lines: Vec<String> = t.iter().map(|e| e.to_string()).collect();
        assert_eq!(lines, vec!["D 2 -> 2", "N 2 1 -> 1", "P 0 2 -> 0"]);
        replay_transcript(&t, &g).unwrap();
        // A different graph disagrees.
        let h = Graph::from_edges(4, vec![(0, 2), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(replay_transcript(&t, &h).is_err());
    }

    #[test]
    fn identical_seeds_reproduce_streams() {
        let a: Vec<u64> = {
            let mut r = stream_rng(42, 7, 9);
            (0..8).map(|_| r.gen()).collect()
        };
        let b: Vec<u64> = {
            let mut r = stream_rng(42, 7, 9);
            (0..8).map(|_| r.gen()).collect()
        };
        let c: Vec<u64> = {
            let mut r = stream_rng(42, 7, 10);
            (0..8).map(|_| r.gen()).collect()
        };
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
