//! Vector connectivity with every requirement at most 2, on any connected
//! graph.
//!
//! Leaf blocks whose non-cut vertices all ask for at most one path are
//! peeled off until none remain. If what is left is a single block, two
//! vertices always suffice and the answer is found by trying sets of size
//! one and two. Otherwise one non-cut vertex per remaining leaf block is
//! both enough and necessary: each such leaf hides a violating set, and
//! those sets are pairwise disjoint.

use crate::blocks::block_decomposition;
use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet};
use crate::instance::Instance;
use crate::oracle::is_feasible;

/// Result of the peeling phase, in original vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pruned {
    pub remaining: VertexSet,
    /// Leaf blocks of the pruned graph; empty when it is a single block.
    pub leaf_blocks: Vec<VertexSet>,
    /// Cut vertices of the pruned graph.
    pub cut_vertices: VertexSet,
}

pub fn solve_lowreq(inst: &Instance) -> Result<VertexSet> {
    let g = inst.graph();
    if let Some(v) = g.vertices().find(|&v| inst.requirement(v) > 2) {
        return Err(Error::precondition(format!(
            "vertex {v} has requirement {} > 2",
            inst.requirement(v)
        )));
    }
    if !inst.free().is_empty() {
        return Err(Error::precondition(
            "the low-requirement solver takes no free vertices",
        ));
    }
    if g.vertex_count() == 0 || is_feasible(inst, &VertexSet::new()) {
        return Ok(VertexSet::new());
    }
    if !g.is_connected() {
        return Err(Error::input(
            "the low-requirement solver needs a connected graph",
        ));
    }

    let pruned = prune(inst)?;
    if pruned.leaf_blocks.is_empty() {
        for a in g.vertices() {
            let s: VertexSet = [a].into_iter().collect();
            if is_feasible(inst, &s) {
                return Ok(s);
            }
        }
        for a in g.vertices() {
            for b in a + 1..g.vertex_count() {
                let s: VertexSet = [a, b].into_iter().collect();
                if is_feasible(inst, &s) {
                    return Ok(s);
                }
            }
        }
        return Err(Error::precondition(
            "pruned graph is a single block but no solution of size two exists",
        ));
    }

    Ok(pruned
        .leaf_blocks
        .iter()
        .map(|leaf| {
            let best = leaf
                .iter()
                .copied()
                .filter(|u| !pruned.cut_vertices.contains(u))
                .max_by_key(|&u| (inst.requirement(u), std::cmp::Reverse(u)))
                .expect("a leaf block has a non-cut vertex");
            best
        })
        .collect())
}

/// Repeatedly deletes `V(L) \ {v}` for leaf blocks `L` with cut vertex `v`
/// whose other vertices all have requirement at most 1.
pub fn prune(inst: &Instance) -> Result<Pruned> {
    let mut alive: VertexSet = inst.graph().vertices().collect();
    loop {
        let (sub_inst, sub) = inst.restrict(&alive)?;
        let g = sub_inst.graph();
        let d = block_decomposition(g)?;
        let lift = |b: &Vec<Vertex>| -> VertexSet { b.iter().map(|&u| sub.to_parent(u)).collect() };
        let removable = d.leaf_blocks.iter().find(|&&b| {
            let v = d.leaf_cut_vertex(b).unwrap();
            d.blocks[b]
                .iter()
                .all(|&u| u == v || sub_inst.requirement(u) <= 1)
        });
        match removable {
            Some(&b) => {
                let v = d.leaf_cut_vertex(b).unwrap();
                for &u in &d.blocks[b] {
                    if u != v {
                        alive.remove(&sub.to_parent(u));
                    }
                }
            }
            None => {
                return Ok(Pruned {
                    leaf_blocks: d.leaf_blocks.iter().map(|&b| lift(&d.blocks[b])).collect(),
                    cut_vertices: d.cut_vertices.iter().map(|&u| sub.to_parent(u)).collect(),
                    remaining: alive,
                })
            }
        }
    }
}
