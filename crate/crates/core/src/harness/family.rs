//! Named instance families the harness can generate reproducibly.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::exact::DisjointCycleSet;
use crate::generators::controls::{gen_forest, gen_high_girth_bipartite};
use crate::generators::dist_d::gen_dist_d;
use crate::generators::lb_pairs::{gen_c4_lb_pair, gen_c5_lb_pair};
use crate::generators::planted::{gen_planted, PlantedProfile, PlantedSpec};
use crate::generators::subdivide::subdivide_for_ck;
use crate::generators::tripartite::{gen_tripartite_regular, make_triangle_free};
use crate::generators::{DegreeClasses, GenError, InstanceMeta};
use crate::graph::Graph;

/// An instance family plus its family-specific parameters. The sweep
/// variable `n` means the vertex count except where noted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum InstanceFamily {
    /// Edge-disjoint planted k-cycles over forest padding, with hubs per
    /// the profile. Far from C_k-free by construction.
    Planted { k: usize, profile: PlantedProfile },
    /// C4-free accept-side member of the four-cycle lower-bound pair.
    C4LbG0,
    /// Its far sibling: a perfect packing of edge-disjoint C4s.
    C4LbG1,
    /// C5-free (and C4-free) accept-side member of the five-cycle pair.
    C5LbG0,
    /// Its far sibling: a perfect packing of edge-disjoint C5s.
    C5LbG1,
    /// Four biregular blocks with per-edge C4 density near alpha/32.
    DistD { alpha: usize },
    /// Triangle-free tripartite base with every edge subdivided into a
    /// path; C_k-free by the subdivision bijection. Here `n` is the base
    /// part size, not the final vertex count.
    SubdividedTf { k: usize, deg: usize },
    /// Uniform attachment forest, acyclic control.
    Forest { max_degree: usize },
    /// Bipartite graph with girth at least 8, C(3..7)-free control.
    HighGirth { degree: usize },
}

/// A generated graph with its sidecar metadata and, when the construction
/// plants one, an edge-disjoint cycle packing.
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub graph: Graph,
    pub meta: InstanceMeta,
    pub certificate: Option<DisjointCycleSet>,
}

impl InstanceFamily {
    pub fn name(&self) -> &'static str {
        match self {
            InstanceFamily::Planted { .. } => "planted",
            InstanceFamily::C4LbG0 => "c4-lb-g0",
            InstanceFamily::C4LbG1 => "c4-lb-g1",
            InstanceFamily::C5LbG0 => "c5-lb-g0",
            InstanceFamily::C5LbG1 => "c5-lb-g1",
            InstanceFamily::DistD { .. } => "dist-d",
            InstanceFamily::SubdividedTf { .. } => "subdivided-tf",
            InstanceFamily::Forest { .. } => "forest",
            InstanceFamily::HighGirth { .. } => "high-girth",
        }
    }

    /// Cycle length the family is built around; used for degree
    /// classification thresholds in metadata.
    pub fn k_hint(&self) -> usize {
        match self {
            InstanceFamily::Planted { k, .. } | InstanceFamily::SubdividedTf { k, .. } => *k,
            InstanceFamily::C4LbG0 | InstanceFamily::C4LbG1 => 4,
            InstanceFamily::C5LbG0 | InstanceFamily::C5LbG1 => 5,
            InstanceFamily::DistD { .. } | InstanceFamily::Forest { .. } => 4,
            InstanceFamily::HighGirth { .. } => 6,
        }
    }

    /// True when members contain no cycle of length `k` by construction.
    pub fn known_free_of(&self, k: usize) -> bool {
        match self {
            InstanceFamily::C4LbG0 => k == 4,
            // The C5 pair's accept side is also C4-free, but contains C6s.
            InstanceFamily::C5LbG0 => k == 4 || k == 5,
            InstanceFamily::SubdividedTf { k: own, .. } => k == *own,
            InstanceFamily::Forest { .. } => k >= 3,
            InstanceFamily::HighGirth { .. } => (3..=7).contains(&k),
            _ => false,
        }
    }

    pub fn generate(
        &self,
        n: usize,
        eps: f64,
        alpha: f64,
        seed: u64,
    ) -> Result<GeneratedInstance, GenError> {
        match self {
            InstanceFamily::Planted { k, profile } => {
                let spec = PlantedSpec {
                    n,
                    k: *k,
                    alpha_target: alpha,
                    eps_target: eps,
                    profile: *profile,
                };
                let inst = gen_planted(&spec, seed)?;
                Ok(GeneratedInstance {
                    graph: inst.graph,
                    meta: inst.meta,
                    certificate: Some(inst.certificate),
                })
            }
            InstanceFamily::C4LbG0 => {
                let pair = gen_c4_lb_pair(n)?;
                Ok(GeneratedInstance {
                    graph: pair.g0,
                    meta: pair.meta0,
                    certificate: None,
                })
            }
            InstanceFamily::C4LbG1 => {
                let pair = gen_c4_lb_pair(n)?;
                Ok(GeneratedInstance {
                    certificate: Some(DisjointCycleSet {
                        k: 4,
                        cycles: pair.planted,
                        maximal: true,
                    }),
                    graph: pair.g1,
                    meta: pair.meta1,
                })
            }
            InstanceFamily::C5LbG0 => {
                let pair = gen_c5_lb_pair(n)?;
                Ok(GeneratedInstance {
                    graph: pair.g0,
                    meta: pair.meta0,
                    certificate: None,
                })
            }
            InstanceFamily::C5LbG1 => {
                let pair = gen_c5_lb_pair(n)?;
                Ok(GeneratedInstance {
                    certificate: Some(DisjointCycleSet {
                        k: 5,
                        cycles: pair.planted,
                        maximal: true,
                    }),
                    graph: pair.g1,
                    meta: pair.meta1,
                })
            }
            InstanceFamily::DistD { alpha } => {
                let (graph, meta) = gen_dist_d(n, *alpha, seed)?;
                Ok(GeneratedInstance {
                    graph,
                    meta,
                    certificate: None,
                })
            }
            InstanceFamily::SubdividedTf { k, deg } => {
                let (base, parts) = gen_tripartite_regular(n, *deg, seed)?;
                let tf = make_triangle_free(&base);
                let (graph, _map) = subdivide_for_ck(&tf, &parts, *k)?;
                let meta = InstanceMeta {
                    family: self.name().into(),
                    seed,
                    parameters: json!({
                        "n_per_part": n,
                        "deg": deg,
                        "k": k,
                        "base_m": tf.m(),
                        "n_total": graph.n(),
                    }),
                    certificate: None,
                    parts: None,
                    degree_classes: DegreeClasses::classify(&graph, eps, alpha, *k),
                };
                Ok(GeneratedInstance {
                    graph,
                    meta,
                    certificate: None,
                })
            }
            InstanceFamily::Forest { max_degree } => {
                let graph = gen_forest(n, *max_degree, seed)?;
                let meta = InstanceMeta {
                    family: self.name().into(),
                    seed,
                    parameters: json!({ "n": n, "max_degree": max_degree }),
                    certificate: None,
                    parts: None,
                    degree_classes: DegreeClasses::classify(&graph, eps, alpha, self.k_hint()),
                };
                Ok(GeneratedInstance {
                    graph,
                    meta,
                    certificate: None,
                })
            }
            InstanceFamily::HighGirth { degree } => {
                let graph = gen_high_girth_bipartite(n, *degree, seed)?;
                let meta = InstanceMeta {
                    family: self.name().into(),
                    seed,
                    parameters: json!({ "n": n, "degree": degree }),
                    certificate: None,
                    parts: None,
                    degree_classes: DegreeClasses::classify(&graph, eps, alpha, self.k_hint()),
                };
                Ok(GeneratedInstance {
                    graph,
                    meta,
                    certificate: None,
                })
            }
        }
    }
}
