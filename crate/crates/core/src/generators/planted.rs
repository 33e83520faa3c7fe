//! Planted far instances: edge-disjoint k-cycles arranged in one of four
//! degree profiles, padded with a path forest so that at least an
//! `eps_target` fraction of all edges lies on planted cycles.
//!
//! Profiles select which detection case an instance exercises:
//!   all-light    every cycle vertex has constant degree;
//!   one-heavy    each cycle passes through a single shared hub;
//!   two-heavy    cycles thread two hubs (4- and 5-cycles);
//!   three-heavy  cycles thread three hubs (6-cycles).
//! Hub degrees land at about 1.5x the very-high threshold theta1 computed
//! from default tester constants at (eps_target, alpha_target, n), so the
//! degree splits the analysis cases rely on actually separate.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{DegreeClasses, GenError, InstanceMeta, Relabel};
use crate::exact::DisjointCycleSet;
use crate::graph::Graph;
use crate::oracle::stream_rng;
use crate::testers::TesterParams;

use rand::Rng;

const PHASE_FOREST: u64 = 1;
const PHASE_RELABEL: u64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlantedProfile {
    AllLight,
    OneHeavy,
    TwoHeavy,
    ThreeHeavy,
}

impl PlantedProfile {
    pub fn hub_count(self) -> usize {
        match self {
            PlantedProfile::AllLight => 0,
            PlantedProfile::OneHeavy => 1,
            PlantedProfile::TwoHeavy => 2,
            PlantedProfile::ThreeHeavy => 3,
        }
    }

    pub fn valid_for(self, k: usize) -> bool {
        match self {
            PlantedProfile::AllLight | PlantedProfile::OneHeavy => k >= 3,
            PlantedProfile::TwoHeavy => k == 4 || k == 5,
            PlantedProfile::ThreeHeavy => k == 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PlantedProfile::AllLight => "all-light",
            PlantedProfile::OneHeavy => "one-heavy",
            PlantedProfile::TwoHeavy => "two-heavy",
            PlantedProfile::ThreeHeavy => "three-heavy",
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PlantedSpec {
    pub n: usize,
    pub k: usize,
    pub alpha_target: f64,
    pub eps_target: f64,
    pub profile: PlantedProfile,
}

impl PlantedSpec {
    pub fn validate(&self) -> Result<(), GenError> {
        if self.k < 3 {
            return Err(GenError::Infeasible(format!(
                "cycle length {} below 3",
                self.k
            )));
        }
        if !(self.eps_target > 0.0 && self.eps_target <= 1.0) {
            return Err(GenError::Infeasible(format!(
                "eps_target {} outside (0, 1]",
                self.eps_target
            )));
        }
        if self.alpha_target < 1.0 {
            return Err(GenError::Infeasible(format!(
                "alpha_target {} below 1",
                self.alpha_target
            )));
        }
        if !self.profile.valid_for(self.k) {
            return Err(GenError::Infeasible(format!(
                "profile {} undefined for k = {}",
                self.profile.name(),
                self.k
            )));
        }
        Ok(())
    }
}

pub struct PlantedInstance {
    pub graph: Graph,
    pub certificate: DisjointCycleSet,
    pub meta: InstanceMeta,
}

/// Number of planted cycles for a heavy profile: hubs reach degree
/// 2*ceil(0.75*theta1), which exceeds theta1 by half again.
fn heavy_cycle_count(spec: &PlantedSpec) -> Result<usize, GenError> {
    let p = TesterParams::new(spec.eps_target, spec.alpha_target)
        .map_err(|e| GenError::Infeasible(e.to_string()))?;
    let theta1 = p.theta1(spec.n, spec.k);
    Ok((0.75 * theta1).ceil() as usize)
}

pub fn gen_planted(spec: &PlantedSpec, seed: u64) -> Result<PlantedInstance, GenError> {
    spec.validate()?;
    let (n, k) = (spec.n, spec.k);
    let hubs = spec.profile.hub_count();
    let fresh_per_cycle = k - hubs;
    let t = match spec.profile {
        PlantedProfile::AllLight => {
            ((spec.eps_target * n as f64) / k as f64).floor() as usize
        }
        _ => heavy_cycle_count(spec)?,
    };
    if t == 0 {
        return Err(GenError::TooSmall {
            what: "planted cycle count",
            n,
            min: (k as f64 / spec.eps_target).ceil() as usize,
        });
    }
    let used = hubs + fresh_per_cycle * t;
    if used > n {
        return Err(GenError::TooSmall {
            what: "planted profile vertex budget",
            n,
            min: used,
        });
    }

    // Hubs take the first ids, then per-cycle fresh vertices, then leftovers.
    let hub_ids: Vec<u32> = (0..hubs as u32).collect();
    let mut next = hubs as u32;
    let mut cycles: Vec<Vec<u32>> = Vec::with_capacity(t);
    for _ in 0..t {
        let fresh: Vec<u32> = (0..fresh_per_cycle).map(|j| next + j as u32).collect();
        next += fresh_per_cycle as u32;
        // Cycle layout interleaves hubs and fresh vertices: with h hubs the
        // cycle is hub0, f0, hub1, f1, ..., with remaining fresh appended,
        // so every hub has light neighbors on both sides.
        let mut cyc: Vec<u32> = Vec::with_capacity(k);
        match hubs {
            0 => cyc.extend(&fresh),
            1 => {
                cyc.push(hub_ids[0]);
                cyc.extend(&fresh);
            }
            2 => {
                // hub0, f0, hub1, f1 (, f2 for k = 5)
                cyc.push(hub_ids[0]);
                cyc.push(fresh[0]);
                cyc.push(hub_ids[1]);
                cyc.extend(&fresh[1..]);
            }
            3 => {
                cyc.push(hub_ids[0]);
                cyc.push(fresh[0]);
                cyc.push(hub_ids[1]);
                cyc.push(fresh[1]);
                cyc.push(hub_ids[2]);
                cyc.push(fresh[2]);
            }
            _ => unreachable!(),
        }
        debug_assert_eq!(cyc.len(), k);
        cycles.push(cyc);
    }

    let mut edges: Vec<(u32, u32)> = Vec::new();
    for cyc in &cycles {
        for i in 0..k {
            edges.push((cyc[i], cyc[(i + 1) % k]));
        }
    }
    let planted_edges = edges.len();

    // Path-forest padding over leftover vertices, capped so the planted
    // fraction stays at or above eps_target.
    let forest_cap =
        ((planted_edges as f64) * (1.0 - spec.eps_target) / spec.eps_target).floor() as usize;
    let mut rng = stream_rng(seed, PHASE_FOREST, 0);
    let mut forest_edges = 0usize;
    let mut prev: Option<u32> = None;
    for v in next..n as u32 {
        if forest_edges >= forest_cap {
            break;
        }
        match prev {
            Some(p) if rng.gen_bool(0.95) => {
                edges.push((p, v));
                forest_edges += 1;
                prev = Some(v);
            }
            _ => prev = Some(v),
        }
    }

    let mut relabel_rng = stream_rng(seed, PHASE_RELABEL, 0);
    let relabel = Relabel::new(n, &mut relabel_rng);
    let graph = Graph::from_edges(n, &relabel.edges(&edges))?;
    let cycles = relabel.cycles(&cycles);
    let hub_ids = relabel.ids(&hub_ids);

    let m = graph.m();
    debug_assert!(planted_edges as f64 >= spec.eps_target * m as f64 - 1e-9);

    // Maximal: every k-cycle here either is planted (all-light keeps cycles
    // vertex-disjoint from the acyclic padding) or crosses a hub edge, and
    // every hub edge lies on a planted cycle.
    let certificate = DisjointCycleSet {
        k,
        cycles: cycles.clone(),
        maximal: true,
    };
    let mut parts = std::collections::BTreeMap::new();
    parts.insert("hubs".to_string(), hub_ids.clone());
    parts.insert(
        "cycles".to_string(),
        cycles.iter().flatten().copied().collect(),
    );
    let hub_degree = hub_ids
        .first()
        .map(|&h| graph.degree(h))
        .unwrap_or(0);
    let meta = InstanceMeta {
        family: format!("planted-{}", spec.profile.name()),
        seed,
        parameters: json!({
            "n": n,
            "k": k,
            "eps_target": spec.eps_target,
            "alpha_target": spec.alpha_target,
            "profile": spec.profile.name(),
            "cycles": t,
            "forest_edges": forest_edges,
            "hub_degree": hub_degree,
        }),
        certificate: Some(cycles),
        parts: Some(parts),
        degree_classes: DegreeClasses::classify(&graph, spec.eps_target, spec.alpha_target, k),
    };
    Ok(PlantedInstance {
        graph,
        certificate,
        meta,
    })
}
