//! Sublinear cycle-freeness and subgraph-freeness testers.
//!
//! Every tester shares the same shape: a randomized exploration of the
//! graph through an `OracleSession`, followed by an exact witness search
//! restricted to the explored subgraph. Rejection therefore always comes
//! with a cycle or embedding that validates against the true graph, so
//! false rejections are impossible by construction; all the probabilistic
//! content sits on the detection side.
//!
//! Randomness is split into one stream per repetition, so raising a
//! sample-size multiplier replays the same draws as a prefix and can only
//! grow the explored subgraph. Combined with a complete witness search,
//! verdicts are monotone: more budget never turns a Reject into an Accept.

pub mod c4;
pub mod c5;
pub mod c6;
pub mod general;
pub mod params;
pub mod select;
pub mod witness;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use params::{ParamError, TesterParams};

use crate::oracle::{OracleError, OracleSession, QueryStats};

/// Repetition stream phases, one per tester family; the per-repetition
/// index completes the stream id. Phases below 16 belong to generators.
pub(crate) mod phase {
    pub const C4: u64 = 16;
    pub const C5: u64 = 17;
    pub const C6: u64 = 18;
    pub const GENERAL: u64 = 19;
    pub const ODD: u64 = 20;
    pub const ODD_V: u64 = 21;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Accept,
    Reject,
}

/// Tester result: verdict, the witness behind a rejection, and the exact
/// query expenditure of the run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Outcome {
    pub verdict: Verdict,
    /// Vertex sequence of the found cycle (cyclically adjacent) or the
    /// image of the pattern's vertices for general subgraph tests.
    pub witness: Option<Vec<u32>>,
    pub queries: QueryStats,
    pub total_queries: u64,
    pub seed: u64,
}

impl Outcome {
    fn accept(session: &OracleSession) -> Self {
        Outcome {
            verdict: Verdict::Accept,
            witness: None,
            queries: session.stats(),
            total_queries: session.stats().total(),
            seed: session.seed(),
        }
    }

    fn reject(session: &OracleSession, witness: Vec<u32>) -> Self {
        Outcome {
            verdict: Verdict::Reject,
            witness: Some(witness),
            queries: session.stats(),
            total_queries: session.stats().total(),
            seed: session.seed(),
        }
    }
}

#[derive(Debug, Error)]
pub enum TesterError {
    #[error("oracle contract violated: {0}")]
    Oracle(OracleError),
    #[error(transparent)]
    Params(#[from] ParamError),
}

/// Inner exploration outcome: a witness, or none. Exploration code uses
/// `?` freely; a `BudgetExhausted` bubbling out is not an error but the
/// signal to stop and accept.
type Explore = Result<Option<Vec<u32>>, OracleError>;

/// Maps the inner exploration result onto the public contract: witness
/// means Reject, exhausted budget or no witness means Accept, and any
/// other oracle error is a caller bug worth propagating.
fn settle(session: &OracleSession, r: Explore) -> Result<Outcome, TesterError> {
    match r {
        Ok(Some(w)) => Ok(Outcome::reject(session, w)),
        Ok(None) => Ok(Outcome::accept(session)),
        Err(OracleError::BudgetExhausted { .. }) => Ok(Outcome::accept(session)),
        Err(e) => Err(TesterError::Oracle(e)),
    }
}
