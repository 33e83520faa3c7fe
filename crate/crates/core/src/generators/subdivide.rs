//! Cycle-length-k subdivision of tripartite graphs. Each edge becomes a
//! path whose length depends only on the parts of its endpoints; the
//! lengths are chosen so every triangle of the base becomes a k-cycle.
//!
//! Two forms are provided: an eager generator that materializes the whole
//! subdivided graph, and a lazy wrapper that answers queries against the
//! subdivided graph while reading the base through a counted session,
//! binding path ids to base edges only as queries touch them.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::generators::GenError;
use crate::graph::{norm_edge, Graph};
use crate::oracle::{stream_rng, OracleError, OracleSession, QueryStats};

const PHASE_SUB: u64 = 5;

/// Path length per endpoint-part class for target cycle length `k`:
/// classes are part pairs {0,1}, {1,2}, {0,2} in that order. The three
/// lengths sum to `k`, so base triangles subdivide into k-cycles.
pub fn path_lengths(k: usize) -> [usize; 3] {
    let q = k / 3;
    match k % 3 {
        0 => [q, q, q],
        1 => [q + 1, q, q],
        _ => [q + 1, q + 1, q],
    }
}

/// Class index for an edge between parts `pa` and `pb`.
pub fn class_of(pa: u8, pb: u8) -> usize {
    match (pa.min(pb), pa.max(pb)) {
        (0, 1) => 0,
        (1, 2) => 1,
        (0, 2) => 2,
        other => panic!("not a cross-part pair: {other:?}"),
    }
}

fn class_parts(c: usize) -> (u8, u8) {
    [(0, 1), (1, 2), (0, 2)][c]
}

/// Correspondence between base edges and their subdivision paths.
pub struct SubdivisionMap {
    pub k: usize,
    pub lengths: [usize; 3],
    pub n_prime: usize,
    pub n_total: usize,
    /// Per base edge (in base edge order): class and first internal id.
    /// Edges of length 1 would have no internals; k >= 6 rules that out.
    pub edge_paths: Vec<(usize, u32)>,
}

/// Replaces every edge of `g_prime` by a path of the class-determined
/// length. Internal path vertices get ids `n' ..` in base edge order, so
/// consecutive ids along each path. Parts may have unequal sizes and the
/// graph need not be regular; every edge must cross parts.
pub fn subdivide_for_ck(
    g_prime: &Graph,
    parts: &[u8],
    k: usize,
) -> Result<(Graph, SubdivisionMap), GenError> {
    if parts.len() != g_prime.n() {
        return Err(GenError::Infeasible(format!(
            "part labels for {} vertices, graph has {}",
            parts.len(),
            g_prime.n()
        )));
    }
    if k < 6 {
        return Err(GenError::TooSmall {
            what: "subdivision target cycle",
            n: k,
            min: 6,
        });
    }
    if parts.iter().any(|&p| p > 2) {
        return Err(GenError::NotTripartite);
    }
    let lengths = path_lengths(k);
    let n_prime = g_prime.n();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut edge_paths = Vec::with_capacity(g_prime.m());
    let mut next = n_prime as u32;
    for &(u, w) in g_prime.edges() {
        let (pu, pw) = (parts[u as usize], parts[w as usize]);
        if pu == pw {
            return Err(GenError::NotTripartite);
        }
        let c = class_of(pu, pw);
        let len = lengths[c];
        let (a, b) = if pu < pw { (u, w) } else { (w, u) };
        edge_paths.push((c, next));
        let mut prev = a;
        for _ in 0..len - 1 {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, b));
    }
    let n_total = next as usize;
    let g = Graph::from_edges(n_total, &edges)?;
    Ok((
        g,
        SubdivisionMap {
            k,
            lengths,
            n_prime,
            n_total,
            edge_paths,
        },
    ))
}

#[derive(Debug, Error)]
pub enum SubOracleError {
    /// A uniformly sampled base edge was already bound to another path
    /// slot. Restarting with a fresh seed is the only sound recovery;
    /// resampling in place would bias the simulated graph.
    #[error("sampled an already-bound base edge")]
    EarlyTermination,
    #[error("vertex {v} out of range for subdivided graph on {n} vertices")]
    OutOfRange { v: u32, n: usize },
    #[error("neighbor index {i} out of range for degree {d}")]
    BadIndex { i: usize, d: usize },
    #[error(transparent)]
    Base(#[from] OracleError),
}

/// One answered query against the lazy subdivided view, for replay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubEntry {
    Degree { v: u32, d: u64 },
    /// Neighbor query answer: for original vertices the whole path to the
    /// far endpoint, for path vertices the single adjacent id.
    Path { v: u32, i: usize, path: Vec<u32> },
    Pair { a: u32, b: u32, present: bool },
}

enum Loc {
    Original,
    PathVertex { class: usize, slot: u32, pos: usize },
}

/// Query access to the subdivision of a part-regular tripartite base.
/// Path ids live in per-class blocks of `n_part * deg` slots; a slot is
/// bound to a concrete base edge the first time a query depends on it,
/// either by following a base neighbor answer or by sampling uniformly
/// among that class's edges.
pub struct SubdividedOracle<'g> {
    base: OracleSession<'g>,
    g_prime: &'g Graph,
    parts: Vec<u8>,
    part_members: [Vec<u32>; 3],
    lengths: [usize; 3],
    n_prime: usize,
    deg: usize,
    block_start: [u32; 3],
    n_total: usize,
    slot_of: [HashMap<(u32, u32), u32>; 3],
    edge_of: [HashMap<u32, (u32, u32)>; 3],
    free: [Vec<u32>; 3],
    pos_in_free: [Vec<usize>; 3],
    rng: ChaCha8Rng,
    sim_stats: QueryStats,
    transcript: Option<Vec<SubEntry>>,
}

const NOT_FREE: usize = usize::MAX;

impl<'g> SubdividedOracle<'g> {
    /// The base must have three equal parts with every vertex adjacent to
    /// exactly `deg` vertices in each other part; slot counts depend on it.
    pub fn new(g_prime: &'g Graph, parts: Vec<u8>, k: usize, seed: u64) -> Result<Self, GenError> {
        if parts.len() != g_prime.n() || g_prime.n() == 0 {
            return Err(GenError::Infeasible("part labels do not match graph".into()));
        }
        if k < 6 {
            return Err(GenError::TooSmall {
                what: "subdivision target cycle",
                n: k,
                min: 6,
            });
        }
        let mut part_members: [Vec<u32>; 3] = Default::default();
        for (v, &p) in parts.iter().enumerate() {
            if p > 2 {
                return Err(GenError::NotTripartite);
            }
            part_members[p as usize].push(v as u32);
        }
        let n_part = part_members[0].len();
        if part_members.iter().any(|m| m.len() != n_part) || n_part == 0 {
            return Err(GenError::Infeasible("parts must have equal sizes".into()));
        }
        let deg = g_prime.degree(0) / 2;
        for v in 0..g_prime.n() as u32 {
            let mut per_part = [0usize; 3];
            for &w in g_prime.neighbors(v) {
                if parts[w as usize] == parts[v as usize] {
                    return Err(GenError::NotTripartite);
                }
                per_part[parts[w as usize] as usize] += 1;
            }
            for p in 0..3u8 {
                if p != parts[v as usize] && per_part[p as usize] != deg {
                    return Err(GenError::Infeasible(
                        "base must be part-regular for slot accounting".into(),
                    ));
                }
            }
        }
        let lengths = path_lengths(k);
        let class_edges = n_part * deg;
        let n_prime = g_prime.n();
        let mut block_start = [0u32; 3];
        let mut next = n_prime as u32;
        for c in 0..3 {
            block_start[c] = next;
            next += (class_edges * (lengths[c] - 1)) as u32;
        }
        let free: [Vec<u32>; 3] =
            std::array::from_fn(|_| (0..class_edges as u32).collect());
        let pos_in_free: [Vec<usize>; 3] =
            std::array::from_fn(|_| (0..class_edges).collect());
        Ok(Self {
            base: OracleSession::new(g_prime, seed),
            g_prime,
            parts,
            part_members,
            lengths,
            n_prime,
            deg,
            block_start,
            n_total: next as usize,
            slot_of: Default::default(),
            edge_of: Default::default(),
            free,
            pos_in_free,
            rng: stream_rng(seed, PHASE_SUB, 0),
            sim_stats: QueryStats::default(),
            transcript: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n_total
    }

    pub fn n_prime(&self) -> usize {
        self.n_prime
    }

    pub fn sim_stats(&self) -> QueryStats {
        self.sim_stats
    }

    pub fn base_stats(&self) -> QueryStats {
        self.base.stats()
    }

    pub fn enable_transcript(&mut self) {
        self.transcript = Some(Vec::new());
    }

    pub fn transcript(&self) -> &[SubEntry] {
        self.transcript.as_deref().unwrap_or(&[])
    }

    fn record(&mut self, e: SubEntry) {
        if let Some(t) = self.transcript.as_mut() {
            t.push(e);
        }
    }

    fn locate(&self, v: u32) -> Result<Loc, SubOracleError> {
        if (v as usize) < self.n_prime {
            return Ok(Loc::Original);
        }
        if (v as usize) >= self.n_total {
            return Err(SubOracleError::OutOfRange {
                v,
                n: self.n_total,
            });
        }
        for c in (0..3).rev() {
            if v >= self.block_start[c] {
                let rel = (v - self.block_start[c]) as usize;
                let span = self.lengths[c] - 1;
                return Ok(Loc::PathVertex {
                    class: c,
                    slot: (rel / span) as u32,
                    pos: rel % span,
                });
            }
        }
        unreachable!("ids below block 0 are original");
    }

    fn path_id(&self, class: usize, slot: u32, pos: usize) -> u32 {
        self.block_start[class] + slot * (self.lengths[class] - 1) as u32 + pos as u32
    }

    fn take_free_slot(&mut self, class: usize, slot: u32) {
        let idx = self.pos_in_free[class][slot as usize];
        debug_assert_ne!(idx, NOT_FREE);
        self.free[class].swap_remove(idx);
        if let Some(&moved) = self.free[class].get(idx) {
            self.pos_in_free[class][moved as usize] = idx;
        }
        self.pos_in_free[class][slot as usize] = NOT_FREE;
    }

    fn bind(&mut self, class: usize, edge: (u32, u32), slot: u32) {
        self.take_free_slot(class, slot);
        self.slot_of[class].insert(edge, slot);
        self.edge_of[class].insert(slot, edge);
    }

    /// Slot for a base edge discovered through a query, drawing a uniform
    /// free slot on first sight. Never terminates early: a known edge
    /// either has its slot or receives a fresh one.
    fn slot_for_edge(&mut self, class: usize, u: u32, w: u32) -> u32 {
        let key = norm_edge(u, w);
        if let Some(&s) = self.slot_of[class].get(&key) {
            return s;
        }
        let n_free = self.free[class].len();
        let idx = self.rng.gen_range(0..n_free);
        let slot = self.free[class][idx];
        self.bind(class, key, slot);
        slot
    }

    /// Base edge for a slot, sampling uniformly among the class's edges
    /// when unbound: uniform lower-part vertex plus uniform neighbor
    /// index, accepted when the neighbor lies in the upper part. Hitting
    /// an edge that is already bound elsewhere aborts the simulation.
    fn edge_for_slot(&mut self, class: usize, slot: u32) -> Result<(u32, u32), SubOracleError> {
        if let Some(&e) = self.edge_of[class].get(&slot) {
            return Ok(e);
        }
        let (lo_part, hi_part) = class_parts(class);
        for _ in 0..64 {
            let np = self.part_members[lo_part as usize].len();
            let ui = self.rng.gen_range(0..np);
            let u = self.part_members[lo_part as usize][ui];
            let j = self.rng.gen_range(1..=2 * self.deg);
            let w = self.base.neighbor(u, j)?;
            if self.parts[w as usize] != hi_part {
                continue;
            }
            let key = norm_edge(u, w);
            if self.slot_of[class].contains_key(&key) {
                return Err(SubOracleError::EarlyTermination);
            }
            self.bind(class, key, slot);
            return Ok(key);
        }
        // Each round accepts with probability 1/2; 64 misses in a row is
        // beyond plausible, treat it like a collision abort.
        Err(SubOracleError::EarlyTermination)
    }

    /// Oriented endpoints of a slot's base edge: (lower part, upper part).
    fn oriented(&self, class: usize, key: (u32, u32)) -> (u32, u32) {
        let (lo_part, _) = class_parts(class);
        if self.parts[key.0 as usize] == lo_part {
            (key.0, key.1)
        } else {
            (key.1, key.0)
        }
    }

    pub fn degree(&mut self, v: u32) -> Result<u64, SubOracleError> {
        let d = match self.locate(v)? {
            Loc::Original => self.base.degree(v)? as u64,
            Loc::PathVertex { .. } => 2,
        };
        self.sim_stats.degree += 1;
        self.record(SubEntry::Degree { v, d });
        Ok(d)
    }

    /// Neighbor query. Original vertices answer with the entire path to
    /// the far endpoint (internals first, far endpoint last); path
    /// vertices answer with their single adjacent id, index 1 toward the
    /// lower-part endpoint and 2 toward the upper.
    pub fn neighbor(&mut self, v: u32, i: usize) -> Result<Vec<u32>, SubOracleError> {
        let path = match self.locate(v)? {
            Loc::Original => {
                let w = self.base.neighbor(v, i)?;
                let class = class_of(self.parts[v as usize], self.parts[w as usize]);
                let slot = self.slot_for_edge(class, v, w);
                let len = self.lengths[class];
                let toward_upper = self.parts[v as usize] == class_parts(class).0;
                let mut path: Vec<u32> = (0..len - 1)
                    .map(|p| self.path_id(class, slot, p))
                    .collect();
                if !toward_upper {
                    path.reverse();
                }
                path.push(w);
                path
            }
            Loc::PathVertex { class, slot, pos } => {
                if i == 0 || i > 2 {
                    return Err(SubOracleError::BadIndex { i, d: 2 });
                }
                let last = self.lengths[class] - 2;
                let u = match (i, pos) {
                    (1, 0) => {
                        let key = self.edge_for_slot(class, slot)?;
                        self.oriented(class, key).0
                    }
                    (1, _) => self.path_id(class, slot, pos - 1),
                    (2, p) if p == last => {
                        let key = self.edge_for_slot(class, slot)?;
                        self.oriented(class, key).1
                    }
                    (2, _) => self.path_id(class, slot, pos + 1),
                    _ => unreachable!(),
                };
                vec![u]
            }
        };
        self.sim_stats.neighbor += 1;
        self.record(SubEntry::Path { v, i, path: path.clone() });
        Ok(path)
    }

    pub fn pair(&mut self, a: u32, b: u32) -> Result<bool, SubOracleError> {
        let la = self.locate(a)?;
        let lb = self.locate(b)?;
        let present = match (la, lb) {
            // Originals are never adjacent: every path has length >= 2.
            (Loc::Original, Loc::Original) => false,
            (
                Loc::PathVertex { class: c1, slot: s1, pos: p1 },
                Loc::PathVertex { class: c2, slot: s2, pos: p2 },
            ) => c1 == c2 && s1 == s2 && p1.abs_diff(p2) == 1,
            (Loc::Original, Loc::PathVertex { class, slot, pos })
            | (Loc::PathVertex { class, slot, pos }, Loc::Original) => {
                let o = if (a as usize) < self.n_prime { a } else { b };
                let (lo_part, hi_part) = class_parts(class);
                let last = self.lengths[class] - 2;
                let po = self.parts[o as usize];
                let could_lo = pos == 0 && po == lo_part;
                let could_hi = pos == last && po == hi_part;
                if !could_lo && !could_hi {
                    false
                } else {
                    let key = self.edge_for_slot(class, slot)?;
                    let (lo, hi) = self.oriented(class, key);
                    (could_lo && o == lo) || (could_hi && o == hi)
                }
            }
        };
        self.sim_stats.pair += 1;
        self.record(SubEntry::Pair { a, b, present });
        Ok(present)
    }

    /// Completes the binding canonically (unbound base edges take the
    /// remaining slots in ascending order, following base edge order) and
    /// materializes the full subdivided graph. Path ids equal the ids the
    /// lazy view would have used, so recorded answers replay verbatim.
    pub fn materialize(&self) -> Graph {
        let g = self.g_prime;
        let free_sorted: [Vec<u32>; 3] = std::array::from_fn(|c| {
            let mut v = self.free[c].clone();
            v.sort_unstable();
            v
        });
        let mut next_free = [0usize; 3];
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for &(u, w) in g.edges() {
            let class = class_of(self.parts[u as usize], self.parts[w as usize]);
            let key = norm_edge(u, w);
            let slot = match self.slot_of[class].get(&key) {
                Some(&s) => s,
                None => {
                    let s = free_sorted[class][next_free[class]];
                    next_free[class] += 1;
                    s
                }
            };
            let (a, b) = self.oriented(class, key);
            let len = self.lengths[class];
            let mut prev = a;
            for p in 0..len - 1 {
                let id = self.path_id(class, slot, p);
                edges.push((prev, id));
                prev = id;
            }
            edges.push((prev, b));
        }
        for c in 0..3 {
            debug_assert_eq!(next_free[c], free_sorted[c].len());
        }
        Graph::from_edges(self.n_total, &edges).expect("materialized subdivision is simple")
    }
}

/// Checks every recorded answer against a materialized subdivided graph.
pub fn replay_subdivided(entries: &[SubEntry], g: &Graph) -> Result<(), String> {
    for (idx, e) in entries.iter().enumerate() {
        let ok = match e {
            SubEntry::Degree { v, d } => g.degree(*v) as u64 == *d,
            SubEntry::Pair { a, b, present } => g.has_edge(*a, *b) == *present,
            SubEntry::Path { v, i, path } => {
                let mut ok = !path.is_empty();
                let mut prev = *v;
                let mut cur = match g.nth_neighbor(*v, *i) {
                    Some(u) => u,
                    None => {
                        return Err(format!("entry {idx}: neighbor index invalid on replay"))
                    }
                };
                for (j, &want) in path.iter().enumerate() {
                    if cur != want {
                        ok = false;
                        break;
                    }
                    if j + 1 < path.len() {
                        let next = g
                            .neighbors(cur)
                            .iter()
                            .copied()
                            .find(|&x| x != prev)
                            .expect("interior path vertices have two neighbors");
                        prev = cur;
                        cur = next;
                    }
                }
                ok
            }
        };
        if !ok {
            return Err(format!("entry {idx} does not match: {e:?}"));
        }
    }
    Ok(())
}
