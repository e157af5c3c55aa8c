//! Finding a modulator: a vertex set `S` such that `G - S` is a forest of
//! cliques. The kernelization pipeline only proceeds when
//! `|S| < 6k/(1-lambda)`; a heuristically large `S` never licenses a YES
//! answer, it is surfaced as its own outcome.

use crate::blocks::{block_decomposition, is_forest_of_cliques};
use crate::graph::{Graph, VertexId};
use crate::properties::Lambda;
use crate::{Error, Rat, Result};
use serde::Serialize;

/// How the modulator was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ModulatorMethod {
    Greedy,
    ExactSearch,
}

/// A vertex set whose removal leaves a forest of cliques.
#[derive(Debug, Clone, Serialize)]
pub struct Modulator {
    /// Sorted vertex ids.
    pub s: Vec<VertexId>,
    pub method: ModulatorMethod,
    /// Whether `|S|` stayed within the requested budget.
    pub size_ok: bool,
}

/// Exact search is all-subsets; refuse beyond this many vertices.
pub const EXACT_VERTEX_CAP: usize = 20;

/// Gate outcome for the modulator size test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Gate {
    Proceed,
    TooLarge,
}

/// Exact rational gate: proceed iff `|S| < 6k/(1-lambda)`.
pub fn modulator_gate(s: &[VertexId], k: Rat, lambda: Lambda) -> Gate {
    let bound = Rat::from_integer(6) * k / (Rat::from_integer(1) - lambda.value());
    if Rat::from_integer(s.len() as i64) < bound {
        Gate::Proceed
    } else {
        Gate::TooLarge
    }
}

/// Largest integer size passing the gate, i.e. the largest `b` with
/// `b < 6k/(1-lambda)`.
pub fn modulator_budget(k: Rat, lambda: Lambda) -> usize {
    let bound = Rat::from_integer(6) * k / (Rat::from_integer(1) - lambda.value());
    let b = if bound.is_integer() { bound.to_integer() - 1 } else { bound.floor().to_integer() };
    b.max(0) as usize
}

/// Greedy phase: while some block of the current graph is not a clique,
/// take the smallest such block and remove its vertex with the most
/// non-edges inside the block (ties: lowest vertex id).
pub fn greedy_modulator(g: &Graph) -> Vec<VertexId> {
    let mut current = g.clone();
    // current id -> original id
    let mut ids: Vec<VertexId> = (0..g.vertex_count()).collect();
    let mut removed = Vec::new();
    loop {
        let blocks = block_decomposition(&current).blocks;
        let target = blocks
            .iter()
            .filter(|b| {
                let within: usize = b
                    .iter()
                    .map(|&v| current.neighbors(v).iter().filter(|w| b.binary_search(w).is_ok()).count())
                    .sum::<usize>()
                    / 2;
                within != b.len() * (b.len() - 1) / 2
            })
            .min_by(|a, b| (a.len(), *a).cmp(&(b.len(), *b)));
        let Some(block) = target else { break };
        let pick = *block
            .iter()
            .max_by_key(|&&v| {
                let deg_in = current.neighbors(v).iter().filter(|w| block.binary_search(w).is_ok()).count();
                // most non-edges first, then lowest id
                (block.len() - 1 - deg_in, std::cmp::Reverse(v))
            })
            .expect("non-clique block is nonempty");
        removed.push(ids[pick]);
        let (next, map) = current.delete_vertices(&[pick]);
        let mut next_ids = vec![0; next.vertex_count()];
        for (old, new) in map.iter().enumerate() {
            if let Some(new) = new {
                next_ids[*new] = ids[old];
            }
        }
        current = next;
        ids = next_ids;
    }
    removed.sort_unstable();
    removed
}

/// Exact phase: the lexicographically first minimum modulator of size at
/// most `max_size`, or `None` when every such subset fails. Errors beyond
/// the feasibility cap.
pub fn exact_modulator(g: &Graph, max_size: usize) -> Result<Option<Vec<VertexId>>> {
    let n = g.vertex_count();
    if n > EXACT_VERTEX_CAP {
        return Err(Error::BudgetExceeded { n, cap: EXACT_VERTEX_CAP });
    }
    for size in 0..=max_size.min(n) {
        let mut found = None;
        for_each_combination(n, size, &mut |subset| {
            if found.is_none() && is_forest_of_cliques(&g.delete_vertices(subset).0) {
                found = Some(subset.to_vec());
                return false;
            }
            true
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Lexicographic enumeration of `size`-subsets of `0..n`; the callback
/// returns `false` to stop early.
fn for_each_combination(n: usize, size: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    let mut subset: Vec<usize> = (0..size).collect();
    if size > n {
        return;
    }
    loop {
        if !f(&subset) {
            return;
        }
        // advance
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if subset[i] != i + n - size {
                break;
            }
            if i == 0 {
                return;
            }
        }
        subset[i] += 1;
        for j in i + 1..size {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Greedy phase, falling back to exact search when the greedy set exceeds
/// `budget`. The result always satisfies the forest-of-cliques invariant;
/// `size_ok` records whether it fits the budget.
pub fn find_modulator(g: &Graph, budget: usize) -> Result<Modulator> {
    let greedy = greedy_modulator(g);
    debug_assert!(is_forest_of_cliques(&g.delete_vertices(&greedy).0));
    if greedy.len() <= budget {
        return Ok(Modulator { s: greedy, method: ModulatorMethod::Greedy, size_ok: true });
    }
    match exact_modulator(g, budget)? {
        Some(s) => Ok(Modulator { s, method: ModulatorMethod::ExactSearch, size_ok: true }),
        // exhaustive search proves the minimum exceeds the budget
        None => Ok(Modulator { s: greedy, method: ModulatorMethod::ExactSearch, size_ok: false }),
    }
}
