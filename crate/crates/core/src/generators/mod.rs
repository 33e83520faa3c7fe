//! Instance families for experiments: planted far instances, matched
//! accept/reject pairs with indistinguishable degree profiles, random
//! regular layered graphs, subdivision-based families, and free controls.
//!
//! Every generator is pure given its arguments and seed, and emits an
//! [`InstanceMeta`] sidecar recording the family, parameters, any planted
//! certificate, part labels, and which vertices are light or heavy under
//! default tester thresholds, so case coverage can be audited offline.

pub mod bipartite;
pub mod controls;
pub mod dist_d;
pub mod lb_pairs;
pub mod planted;
pub mod subdivide;
pub mod tripartite;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::testers::TesterParams;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("n = {n} is too small for {what} (minimum {min})")]
    TooSmall {
        what: &'static str,
        n: usize,
        min: usize,
    },
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("degree sequence repair failed after {attempts} switching attempts")]
    RepairBudget { attempts: usize },
    #[error("input graph is not tripartite under the given part labels")]
    NotTripartite,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Light/heavy classification of an instance under default tester
/// thresholds at its own (eps, alpha, n).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DegreeClasses {
    pub eps: f64,
    pub alpha: f64,
    pub theta0: f64,
    pub theta1: f64,
    /// Vertices with degree above theta0.
    pub heavy: Vec<u32>,
    /// Vertices with degree above theta1.
    pub very_heavy: Vec<u32>,
}

impl DegreeClasses {
    pub fn classify(g: &Graph, eps: f64, alpha: f64, k: usize) -> Self {
        let p = TesterParams::new(eps, alpha).expect("classification thresholds");
        let theta0 = p.theta0();
        let theta1 = p.theta1(g.n(), k);
        let mut heavy = Vec::new();
        let mut very_heavy = Vec::new();
        for v in 0..g.n() as u32 {
            let d = g.degree(v) as f64;
            if d > theta0 {
                heavy.push(v);
            }
            if d > theta1 {
                very_heavy.push(v);
            }
        }
        DegreeClasses {
            eps,
            alpha,
            theta0,
            theta1,
            heavy,
            very_heavy,
        }
    }
}

/// Sidecar metadata emitted next to each generated edge list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub family: String,
    pub seed: u64,
    pub parameters: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parts: Option<BTreeMap<String, Vec<u32>>>,
    pub degree_classes: DegreeClasses,
}

impl InstanceMeta {
    pub fn save(&self, path: &std::path::Path) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(self).expect("metadata serializes");
        std::fs::write(path, text)
    }
}

/// Applies a seeded relabeling to edges and id lists so that structural
/// roles are not correlated with vertex numbering.
pub(crate) struct Relabel {
    map: Vec<u32>,
}

impl Relabel {
    pub(crate) fn new(n: usize, rng: &mut impl rand::Rng) -> Self {
        let mut map: Vec<u32> = (0..n as u32).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            map.swap(i, j);
        }
        Relabel { map }
    }

    pub(crate) fn id(&self, v: u32) -> u32 {
        self.map[v as usize]
    }

    pub(crate) fn edges(&self, edges: &[(u32, u32)]) -> Vec<(u32, u32)> {
        edges.iter().map(|&(u, v)| (self.id(u), self.id(v))).collect()
    }

    pub(crate) fn ids(&self, vs: &[u32]) -> Vec<u32> {
        vs.iter().map(|&v| self.id(v)).collect()
    }

    pub(crate) fn cycles(&self, cycles: &[Vec<u32>]) -> Vec<Vec<u32>> {
        cycles.iter().map(|c| self.ids(c)).collect()
    }
}
