//! Random biregular bipartite graphs via stub matching with switching
//! repair: pair degree stubs uniformly, then fix parallel edges by edge
//! switches that never introduce new parallels.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::GenError;

/// Samples a simple bipartite graph where every left vertex has degree
/// `dl` and every right vertex degree `dr`. Returned edges use local ids:
/// left 0..left, right 0..right (the caller offsets them).
pub fn sample_regular_bipartite(
    left: usize,
    right: usize,
    dl: usize,
    dr: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(u32, u32)>, GenError> {
    if left * dl != right * dr {
        return Err(GenError::Infeasible(format!(
            "stub mismatch: {left}x{dl} != {right}x{dr}"
        )));
    }
    if dl > right || dr > left {
        return Err(GenError::Infeasible(format!(
            "degree exceeds opposite side: dl={dl} right={right} dr={dr} left={left}"
        )));
    }
    if left == 0 || dl == 0 {
        return Ok(vec![]);
    }
    let m = left * dl;
    const RESTARTS: usize = 10;
    let mut total_attempts = 0usize;
    for _ in 0..RESTARTS {
        let mut right_stubs: Vec<u32> = (0..right as u32)
            .flat_map(|w| std::iter::repeat(w).take(dr))
            .collect();
        for i in (1..right_stubs.len()).rev() {
            let j = rng.gen_range(0..=i);
            right_stubs.swap(i, j);
        }
        let mut edges: Vec<(u32, u32)> = (0..left as u32)
            .flat_map(|u| std::iter::repeat(u).take(dl))
            .zip(right_stubs)
            .collect();
        let mut counts: HashMap<(u32, u32), u32> = HashMap::with_capacity(m);
        for &e in &edges {
            *counts.entry(e).or_insert(0) += 1;
        }
        // For each parallel occurrence beyond the first, switch right
        // endpoints with a random partner edge; the acceptance condition
        // (both new edges absent) keeps the parallel count monotone down.
        let mut dup_indices: Vec<usize> = Vec::new();
        {
            let mut seen: HashMap<(u32, u32), bool> = HashMap::new();
            for (i, &e) in edges.iter().enumerate() {
                if counts[&e] > 1 && seen.insert(e, true).is_some() {
                    dup_indices.push(i);
                }
            }
        }
        let budget = 200 * m + 1000;
        let mut attempts = 0usize;
        let mut ok = true;
        'fix: for &i in &dup_indices {
            loop {
                // A partner switch may have already replaced this occurrence.
                if counts[&edges[i]] <= 1 {
                    break;
                }
                attempts += 1;
                total_attempts += 1;
                if attempts > budget {
                    ok = false;
                    break 'fix;
                }
                let j = rng.gen_range(0..m);
                let (u, v) = edges[i];
                let (x, y) = edges[j];
                if u == x || v == y {
                    continue;
                }
                if counts.get(&(u, y)).copied().unwrap_or(0) > 0
                    || counts.get(&(x, v)).copied().unwrap_or(0) > 0
                {
                    continue;
                }
                *counts.get_mut(&(u, v)).unwrap() -= 1;
                *counts.get_mut(&(x, y)).unwrap() -= 1;
                *counts.entry((u, y)).or_insert(0) += 1;
                *counts.entry((x, v)).or_insert(0) += 1;
                edges[i] = (u, y);
                edges[j] = (x, v);
                break;
            }
        }
        if ok && counts.values().all(|&c| c <= 1) {
            return Ok(edges);
        }
    }
    Err(GenError::RepairBudget {
        attempts: total_attempts,
    })
}
