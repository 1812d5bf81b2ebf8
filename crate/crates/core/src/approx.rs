//! Greedy heuristic driven by total unmet demand.
//!
//! The deficiency of `S` is `Σ_v max(0, r(v) - sat(v, S))` where a vertex in
//! `S` is fully satisfied and any other vertex is satisfied up to
//! `kappa(v, S ∪ F)`. Each round adds the vertex that lowers the deficiency
//! most, preferring the smallest id on ties, until nothing is missing.

use crate::error::{Error, Result};
use crate::fans::kappa_mask;
use crate::graph::{Vertex, VertexSet};
use crate::instance::Instance;

/// Greedy solution together with the deficiency after every round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyRun {
    pub solution: VertexSet,
    /// `deficiencies[0]` is for the empty set, the last entry is 0.
    pub deficiencies: Vec<u64>,
}

pub fn greedy(inst: &Instance) -> Result<VertexSet> {
    greedy_traced(inst).map(|run| run.solution)
}

pub fn greedy_traced(inst: &Instance) -> Result<GreedyRun> {
    let g = inst.graph();
    if !g.is_connected() {
        return Err(Error::input("greedy needs a connected graph"));
    }
    let n = g.vertex_count();
    let mut in_s = vec![false; n];
    let mut current = deficiency(inst, &in_s);
    let mut deficiencies = vec![current];

    while current > 0 {
        let mut best: Option<(u64, Vertex)> = None;
        for u in 0..n {
            if in_s[u] {
                continue;
            }
            in_s[u] = true;
            let d = deficiency(inst, &in_s);
            in_s[u] = false;
            if best.is_none_or(|(b, _)| d < b) {
                best = Some((d, u));
            }
        }
        let (d, u) = best.expect("a vertex outside S remains while demand is unmet");
        assert!(d < current, "every greedy round lowers the deficiency");
        in_s[u] = true;
        current = d;
        deficiencies.push(d);
    }

    Ok(GreedyRun {
        solution: (0..n).filter(|&u| in_s[u]).collect(),
        deficiencies,
    })
}

/// Total unmet demand of the set marked in `in_s`.
pub fn deficiency(inst: &Instance, in_s: &[bool]) -> u64 {
    let g = inst.graph();
    let mut targets = in_s.to_vec();
    for &f in inst.free() {
        targets[f] = true;
    }
    g.vertices()
        .filter(|&v| !in_s[v] && inst.requirement(v) > 0)
        .map(|v| {
            let r = inst.requirement(v) as usize;
            (r - kappa_mask(g, v, &targets, r)) as u64
        })
        .sum()
}
