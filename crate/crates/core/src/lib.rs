//! Sublinear-query property testers for `C_k`-freeness (and general subgraph
//! freeness) in bounded-arboricity graphs, together with the machinery needed
//! to exercise them end to end:
//!
//! * [`graph`]: adjacency-list graphs with degree / i-th neighbor / pair
//!   access, edge-list IO, degeneracy and exact arboricity.
//! * [`pattern`]: small pattern graphs and the cover parameter `ell` that
//!   governs the general tester's sample size.
//! * [`oracle`]: query sessions with per-type counters, optional budgets,
//!   transcripts, and the explored-subgraph bookkeeping the testers rely on.
//! * [`exact`]: exact pattern counting, greedy edge-disjoint cycle packing,
//!   and distance-to-freeness bounds (the ground truth for experiments).
//! * [`generators`]: planted instances, matched free/far instance pairs,
//!   a random near-regular bipartite stack, and the cycle subdivision
//!   reduction with its query-translation wrapper.
//! * [`testers`]: the randomized testers themselves.
//! * [`harness`]: reproducible experiment sweeps with CSV output.
//!
//! All randomness flows through seeded ChaCha8 streams so that every verdict,
//! witness, query count, and CSV byte is reproducible from a master seed.

pub mod exact;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod pattern;
pub mod testers;

pub use graph::Graph;
pub use oracle::OracleSession;
pub use pattern::PatternGraph;
pub use testers::{TesterParams, Verdict};
