//! Matched instance pairs with aligned per-part degrees: an accept-side
//! graph that is cycle-free by a uniqueness argument, and a reject-side
//! graph whose edges partition into edge-disjoint short cycles.
//!
//! Both graphs split their vertices into a serving part X, a served part Y,
//! and isolated padding Z. In the accept graph each Y-pair is served once,
//! which rules the cycle out; in the reject graph selected Y-pairs are
//! served twice in complementary ways, which closes one cycle per pair.
//! X-degrees and per-part Y-degrees agree across the pair, so the two are
//! indistinguishable to degree-based heuristics.

use serde_json::json;
use std::collections::BTreeMap;

use super::{DegreeClasses, GenError, InstanceMeta};
use crate::graph::Graph;

pub struct LbPair {
    pub g0: Graph,
    pub g1: Graph,
    pub meta0: InstanceMeta,
    pub meta1: InstanceMeta,
    /// Planted cycles of g1 (edge-disjoint; they cover every g1 edge).
    pub planted: Vec<Vec<u32>>,
}

fn meta_for(
    family: &str,
    g: &Graph,
    k: usize,
    parts: BTreeMap<String, Vec<u32>>,
    params: serde_json::Value,
    certificate: Option<Vec<Vec<u32>>>,
) -> InstanceMeta {
    InstanceMeta {
        family: family.to_string(),
        seed: 0,
        parameters: params,
        certificate,
        parts: Some(parts),
        degree_classes: DegreeClasses::classify(g, 0.1, 2.0, k),
    }
}

/// Largest odd y with y(y-1)/2 + y <= n: the accept graph dedicates one
/// X-vertex to each of the y(y-1)/2 pairs of Y-vertices.
fn largest_odd_y_c4(n: usize) -> usize {
    let mut y = 3usize;
    let mut best = 0;
    while y * (y - 1) / 2 + y <= n {
        best = y;
        y += 2;
    }
    best
}

/// 4-cycle pair. The accept graph G0 serves each Y-pair with a unique
/// common neighbor, so no two X-vertices share two Y-neighbors and no
/// 4-cycle exists. The reject graph G1 serves each cross pair between the
/// two Y-halves with one X-vertex from each X-half; every edge then lies
/// on exactly one of the x1/2 planted 4-cycles, putting G1 at distance
/// exactly 1/4 from 4-cycle-freeness.
pub fn gen_c4_lb_pair(n: usize) -> Result<LbPair, GenError> {
    if n < 13 {
        return Err(GenError::TooSmall {
            what: "4-cycle pair construction",
            n,
            min: 13,
        });
    }
    let y0 = largest_odd_y_c4(n);
    let x0 = y0 * (y0 - 1) / 2;

    // G0 layout: Y = [0, y0), X = [y0, y0 + x0), rest isolated.
    let mut edges0 = Vec::with_capacity(2 * x0);
    let mut x_next = y0 as u32;
    for i in 0..y0 as u32 {
        for j in i + 1..y0 as u32 {
            edges0.push((x_next, i));
            edges0.push((x_next, j));
            x_next += 1;
        }
    }
    let g0 = Graph::from_edges(n, &edges0)?;

    // G1 layout: Y halves [0, y1/2) and [y1/2, y1), then X halves.
    let y1 = y0 - 1;
    let half = y1 / 2;
    let x1 = y1 * y1 / 2;
    let xa_start = y1 as u32;
    let xb_start = (y1 + x1 / 2) as u32;
    let mut edges1 = Vec::with_capacity(2 * x1);
    let mut planted = Vec::with_capacity(half * half);
    let mut idx = 0u32;
    for u1 in 0..half as u32 {
        for u2 in half as u32..y1 as u32 {
            let xa = xa_start + idx;
            let xb = xb_start + idx;
            idx += 1;
            edges1.push((xa, u1));
            edges1.push((xa, u2));
            edges1.push((xb, u1));
            edges1.push((xb, u2));
            planted.push(vec![u1, xa, u2, xb]);
        }
    }
    let g1 = Graph::from_edges(n, &edges1)?;

    let parts0 = BTreeMap::from([
        ("Y".to_string(), (0..y0 as u32).collect::<Vec<_>>()),
        ("X".to_string(), (y0 as u32..(y0 + x0) as u32).collect()),
    ]);
    let parts1 = BTreeMap::from([
        ("Y".to_string(), (0..y1 as u32).collect::<Vec<_>>()),
        ("X".to_string(), (y1 as u32..(y1 + x1) as u32).collect()),
    ]);
    let meta0 = meta_for(
        "c4-lb-g0",
        &g0,
        4,
        parts0,
        json!({"n": n, "y0": y0, "x0": x0, "z0": n - x0 - y0}),
        None,
    );
    let meta1 = meta_for(
        "c4-lb-g1",
        &g1,
        4,
        parts1,
        json!({"n": n, "y1": y1, "x1": x1, "planted": x1 / 2}),
        Some(planted.clone()),
    );
    Ok(LbPair {
        g0,
        g1,
        meta0,
        meta1,
        planted,
    })
}

/// 5-cycle pair. Y-pairs are served either by a common X-neighbor (an
/// A-gadget: 2 edges) or by an X-edge whose endpoints touch one Y-vertex
/// each (a B-gadget: 3 edges). The accept graph alternates gadget types
/// over pairs, so no pair has both and no 5-cycle closes. The reject graph
/// gives each cross pair both gadgets, closing the 5-cycle
/// (v0, u1, v1, v2, u2) per pair; its planted cycles cover all edges, so
/// it sits at distance exactly 1/5.
pub fn gen_c5_lb_pair(n: usize) -> Result<LbPair, GenError> {
    if n < 7 {
        return Err(GenError::TooSmall {
            what: "5-cycle pair construction",
            n,
            min: 7,
        });
    }
    // X budget for odd y: ceil(P/2) A-gadgets + 2*floor(P/2) B-gadget
    // vertices for the P = y(y-1)/2 pairs.
    let x_budget = |y: usize| {
        let p = y * (y - 1) / 2;
        p.div_ceil(2) + 2 * (p / 2)
    };
    let mut y0 = 0usize;
    let mut y = 3usize;
    while x_budget(y) + y <= n {
        y0 = y;
        y += 2;
    }
    if y0 == 0 {
        return Err(GenError::TooSmall {
            what: "5-cycle pair construction",
            n,
            min: 7,
        });
    }
    let x0 = x_budget(y0);

    let mut edges0 = Vec::new();
    let mut x_next = y0 as u32;
    let mut pair_idx = 0usize;
    for i in 0..y0 as u32 {
        for j in i + 1..y0 as u32 {
            if pair_idx % 2 == 0 {
                let v = x_next;
                x_next += 1;
                edges0.push((v, i));
                edges0.push((v, j));
            } else {
                let v1 = x_next;
                let v2 = x_next + 1;
                x_next += 2;
                edges0.push((v1, v2));
                edges0.push((v1, i));
                edges0.push((v2, j));
            }
            pair_idx += 1;
        }
    }
    let g0 = Graph::from_edges(n, &edges0)?;
    debug_assert_eq!(x_next as usize, y0 + x0);

    let y1 = y0 - 1;
    let half = y1 / 2;
    let pairs1 = half * half;
    let x1 = 3 * pairs1;
    let mut edges1 = Vec::new();
    let mut planted = Vec::with_capacity(pairs1);
    let mut x_next = y1 as u32;
    for u1 in 0..half as u32 {
        for u2 in half as u32..y1 as u32 {
            let v0 = x_next;
            let v1 = x_next + 1;
            let v2 = x_next + 2;
            x_next += 3;
            edges1.push((v0, u1));
            edges1.push((v0, u2));
            edges1.push((v1, v2));
            edges1.push((v1, u1));
            edges1.push((v2, u2));
            planted.push(vec![v0, u1, v1, v2, u2]);
        }
    }
    let g1 = Graph::from_edges(n, &edges1)?;
    debug_assert_eq!(x_next as usize, y1 + x1);

    let parts0 = BTreeMap::from([
        ("Y".to_string(), (0..y0 as u32).collect::<Vec<_>>()),
        ("X".to_string(), (y0 as u32..(y0 + x0) as u32).collect()),
    ]);
    let parts1 = BTreeMap::from([
        ("Y".to_string(), (0..y1 as u32).collect::<Vec<_>>()),
        ("X".to_string(), (y1 as u32..(y1 + x1) as u32).collect()),
    ]);
    let meta0 = meta_for(
        "c5-lb-g0",
        &g0,
        5,
        parts0,
        json!({"n": n, "y0": y0, "x0": x0, "z0": n - x0 - y0}),
        None,
    );
    let meta1 = meta_for(
        "c5-lb-g1",
        &g1,
        5,
        parts1,
        json!({"n": n, "y1": y1, "x1": x1, "planted": pairs1}),
        Some(planted.clone()),
    );
    Ok(LbPair {
        g0,
        g1,
        meta0,
        meta1,
        planted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{count_cycles, greedy_edge_disjoint, is_free};

    #[test]
    fn c4_pair_at_minimum_n() {
        let pair = gen_c4_lb_pair(13).unwrap();
        // y0 = 3 serving x0 = 3 pairs leaves z0 = 7 isolated vertices.
        assert_eq!(pair.g0.m(), 6);
        assert_eq!(pair.meta0.parameters["y0"], 3);
        assert_eq!(pair.meta0.parameters["x0"], 3);
        assert_eq!(pair.meta0.parameters["z0"], 7);
        assert!(is_free(&pair.g0, 4));
        // y1 = 2 gives a single planted 4-cycle covering all 4 edges.
        assert_eq!(pair.g1.m(), 4);
        assert_eq!(pair.planted.len(), 1);
        assert_eq!(count_cycles(&pair.g1, 4), 1);
    }

    #[test]
    fn c4_pair_structure_scales() {
        for n in [64usize, 256, 1024] {
            let pair = gen_c4_lb_pair(n).unwrap();
            assert!(is_free(&pair.g0, 4), "n={n}");
            let x1 = pair.meta1.parameters["x1"].as_u64().unwrap() as usize;
            let greedy = greedy_edge_disjoint(&pair.g1, 4);
            assert_eq!(greedy.len(), x1 / 2, "n={n}");
            assert_eq!(pair.planted.len(), x1 / 2);
            // The planted cycles partition the edges: distance exactly 1/4.
            assert_eq!(pair.g1.m(), 4 * pair.planted.len());
            // Per-part degrees agree across the pair.
            let y0 = pair.meta0.parameters["y0"].as_u64().unwrap() as usize;
            let y1 = y0 - 1;
            for &v in &pair.meta0.parts.as_ref().unwrap()["X"] {
                assert_eq!(pair.g0.degree(v), 2);
            }
            for &v in &pair.meta1.parts.as_ref().unwrap()["X"] {
                assert_eq!(pair.g1.degree(v), 2);
            }
            for &v in &pair.meta0.parts.as_ref().unwrap()["Y"] {
                assert_eq!(pair.g0.degree(v), y0 - 1);
            }
            for &v in &pair.meta1.parts.as_ref().unwrap()["Y"] {
                assert_eq!(pair.g1.degree(v), y1);
            }
        }
    }

    #[test]
    fn c5_pair_free_side_and_planted_side() {
        for n in [16usize, 64, 256] {
            let pair = gen_c5_lb_pair(n).unwrap();
            assert!(is_free(&pair.g0, 5), "n={n}");
            // The accept side is also 4-cycle-free: no Y-pair has two
            // common neighbors and X-edges form a matching.
            assert!(is_free(&pair.g0, 4), "n={n}");
            let planted = pair.planted.len();
            assert!(planted >= 1);
            assert_eq!(count_cycles(&pair.g1, 5), planted as u64, "n={n}");
            assert_eq!(pair.g1.m(), 5 * planted);
            let greedy = greedy_edge_disjoint(&pair.g1, 5);
            assert_eq!(greedy.len(), planted);
            // X-degrees stay in {2, 3} on both sides.
            for &v in &pair.meta0.parts.as_ref().unwrap()["X"] {
                assert!(matches!(pair.g0.degree(v), 2 | 3), "n={n}");
            }
            for &v in &pair.meta1.parts.as_ref().unwrap()["X"] {
                assert!(matches!(pair.g1.degree(v), 2 | 3), "n={n}");
            }
        }
    }

    #[test]
    fn pairs_reject_tiny_n() {
        assert!(gen_c4_lb_pair(12).is_err());
        assert!(gen_c5_lb_pair(6).is_err());
    }

    #[test]
    fn c5_accept_side_has_gadget_mix() {
        let pair = gen_c5_lb_pair(64).unwrap();
        let xs = &pair.meta0.parts.as_ref().unwrap()["X"];
        // B-gadget endpoints are X-vertices with an X-neighbor.
        let with_x_edge = xs
            .iter()
            .filter(|&&v| {
                pair.g0
                    .neighbors(v)
                    .iter()
                    .any(|&w| xs.binary_search(&w).is_ok())
            })
            .count();
        assert!(with_x_edge > 0 && with_x_edge < xs.len());
    }
}
