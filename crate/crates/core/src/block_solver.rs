//! Exact solving by peeling leaf blocks off the block tree.
//!
//! [`BlockSolver::solve`] reduces a free-set instance on a connected graph to
//! instances on single blocks. At each step it looks at one leaf block `B`
//! with cut vertex `v` and the rest of the graph `R = G - (B \ {v})`, and asks
//! whether `F ∪ {v}` already satisfies the non-cut vertices of `B` (`beta`)
//! and of `R` (`rho`):
//!
//! * both: `{v}` is optimal;
//! * exactly one: solve the unsatisfied side alone, after folding the other
//!   side's free vertices into `v`'s requirement and making `v` free;
//! * neither: solve `B` once for every demand `i = 0..=r(v)` placed on the
//!   (now free) cut vertex, keep the largest `i*` that costs no more than
//!   `i = 0`, and continue on `R` with `r(v) - i* + 2` (`+ 1` if `v` was
//!   free to begin with).
//!
//! Every step makes at most one further call, so the recursion runs as a
//! loop that accumulates the partial solutions. Biconnected pieces go to
//! [`complete_solver`], [`cycle_solver`] or, for other blocks, an exhaustive
//! fallback.

use crate::blocks::{block_decomposition, classify_block, BlockKind};
use crate::error::{Error, Result};
use crate::fans::{kappa_mask, linked_mask};
use crate::graph::{Vertex, VertexSet};
use crate::instance::Instance;
use crate::oracle::{is_feasible, Oracle};

/// What to do with a block that is neither a clique nor a cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fallback {
    /// Exhaustive search, capped at this many block vertices.
    BruteForce { cap: usize },
    /// Fail with [`Error::Classification`].
    Reject,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockSolver {
    pub fallback: Fallback,
}

/// Counters from one run of [`BlockSolver::solve_traced`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    /// Leaf-block steps taken (not counting the final biconnected call).
    pub steps: usize,
    pub both_satisfied: usize,
    pub one_satisfied: usize,
    pub neither_satisfied: usize,
    /// Calls into the biconnected solvers.
    pub base_calls: usize,
    /// `(i*, r(v))` for every neither-satisfied step.
    pub split_choices: Vec<(u32, u32)>,
}

impl Default for BlockSolver {
    fn default() -> Self {
        BlockSolver::exact()
    }
}

impl BlockSolver {
    /// Total solver: blocks outside the polynomial families are brute-forced.
    pub fn exact() -> Self {
        BlockSolver {
            fallback: Fallback::BruteForce {
                cap: Oracle::default().cap,
            },
        }
    }

    /// Clique and cycle blocks only.
    pub fn strict() -> Self {
        BlockSolver {
            fallback: Fallback::Reject,
        }
    }

    pub fn solve(&self, inst: &Instance) -> Result<VertexSet> {
        self.solve_traced(inst).map(|(s, _)| s)
    }

    pub fn solve_traced(&self, inst: &Instance) -> Result<(VertexSet, Trace)> {
        let g = inst.graph();
        if g.vertex_count() == 0 {
            return Ok((VertexSet::new(), Trace::default()));
        }
        if !g.is_connected() {
            return Err(Error::input("the block solver needs a connected graph"));
        }

        let mut trace = Trace::default();
        let mut solution = VertexSet::new();
        let mut cur = inst.clone();
        // ids of `cur`'s vertices in `inst`
        let mut ids: Vec<Vertex> = g.vertices().collect();

        loop {
            let g = cur.graph();
            let decomposition = block_decomposition(g)?;
            if decomposition.is_single_block() {
                trace.base_calls += 1;
                let part = self.solve_biconnected(&cur)?;
                solution.extend(part.iter().map(|&u| ids[u]));
                break;
            }
            if empty_set_suffices(&cur) {
                break;
            }
            trace.steps += 1;

            // leaf block holding the smallest vertex id
            let leaf = *decomposition
                .leaf_blocks
                .iter()
                .min_by_key(|&&b| decomposition.blocks[b][0])
                .expect("a tree with two or more nodes has leaves");
            let v = decomposition
                .leaf_cut_vertex(leaf)
                .expect("leaf blocks hold one cut vertex");
            let block: VertexSet = decomposition.block_set(leaf);
            let rest: VertexSet = g
                .vertices()
                .filter(|u| *u == v || !block.contains(u))
                .collect();

            let mut targets = g.mask(cur.free());
            targets[v] = true;
            let satisfied = |part: &VertexSet| {
                let mut order: Vec<Vertex> = part.iter().copied().filter(|&u| u != v).collect();
                // demanding vertices first, so a failure is usually found early
                order.sort_by_key(|&u| std::cmp::Reverse(cur.requirement(u)));
                order
                    .into_iter()
                    .all(|u| linked_mask(g, u, &targets, cur.requirement(u) as usize))
            };
            let beta = satisfied(&block);
            let rho = satisfied(&rest);

            match (beta, rho) {
                (true, true) => {
                    trace.both_satisfied += 1;
                    solution.insert(ids[v]);
                    break;
                }
                (true, false) | (false, true) => {
                    trace.one_satisfied += 1;
                    let keep = if beta { &rest } else { &block };
                    let mut next = cur.clone();
                    let outside_free = cur.free().iter().any(|f| !keep.contains(f));
                    if cur.is_free(v) || outside_free {
                        let mut far = vec![false; g.vertex_count()];
                        for &f in cur.free() {
                            if !keep.contains(&f) {
                                far[f] = true;
                            }
                        }
                        let k = kappa_mask(g, v, &far, usize::MAX) as i64;
                        let bonus = i64::from(!cur.is_free(v));
                        let r = (i64::from(cur.requirement(v)) - k + bonus).max(0);
                        next.set_requirement(v, r as u32);
                        next.make_free(v);
                    }
                    let (sub_inst, sub) = next.restrict(keep)?;
                    ids = sub.parent.iter().map(|&u| ids[u]).collect();
                    cur = sub_inst;
                }
                (false, false) => {
                    trace.neither_satisfied += 1;
                    let r_max = cur.max_requirement().max(2);
                    let r_v = cur.requirement(v);

                    let mut with_v_free = cur.clone();
                    with_v_free.make_free(v);
                    let (mut block_inst, block_sub) = with_v_free.restrict(&block)?;
                    let v_local = block_sub
                        .from_parent(v)
                        .expect("cut vertex lies in its block");

                    let mut sizes = Vec::with_capacity(r_v as usize + 1);
                    let mut parts = Vec::with_capacity(r_v as usize + 1);
                    for i in 0..=r_v {
                        block_inst.set_requirement(v_local, i);
                        trace.base_calls += 1;
                        let part = self.solve_biconnected(&block_inst)?;
                        sizes.push(part.len());
                        parts.push(part);
                    }
                    let i_star = (0..=r_v as usize)
                        .rev()
                        .find(|&j| sizes[j] == sizes[0])
                        .unwrap();
                    let chosen = &parts[i_star];
                    assert!(
                        !chosen.contains(&v_local),
                        "the cut vertex never enters the block part of the solution"
                    );
                    // one path for the block side and one for v's own zero-length path,
                    // which a vertex that was already free has counted all along
                    let new_r = r_v - i_star as u32 + 1 + u32::from(!cur.is_free(v));
                    assert!(
                        new_r <= r_max,
                        "rewritten requirement {new_r} exceeds r_max {r_max}"
                    );
                    trace.split_choices.push((i_star as u32, r_v));

                    solution.extend(chosen.iter().map(|&u| ids[block_sub.to_parent(u)]));
                    with_v_free.set_requirement(v, new_r);
                    let (sub_inst, sub) = with_v_free.restrict(&rest)?;
                    ids = sub.parent.iter().map(|&u| ids[u]).collect();
                    cur = sub_inst;
                }
            }
        }
        Ok((solution, trace))
    }

    /// Optimal solution for a biconnected instance (or one with at most two
    /// vertices).
    pub fn solve_biconnected(&self, inst: &Instance) -> Result<VertexSet> {
        let g = inst.graph();
        if g.is_complete() {
            return complete_solver(inst);
        }
        if g.is_cycle() {
            return cycle_solver(inst);
        }
        match self.fallback {
            Fallback::BruteForce { cap } => Oracle::with_cap(cap).brute_force_min(inst),
            Fallback::Reject => Err(Error::Classification(format!(
                "block with {} vertices and {} edges is neither a clique nor a cycle",
                g.vertex_count(),
                g.edge_count()
            ))),
        }
    }
}

fn empty_set_suffices(inst: &Instance) -> bool {
    let g = inst.graph();
    let targets = g.mask(inst.free());
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&u| std::cmp::Reverse(inst.requirement(u)));
    order
        .into_iter()
        .all(|u| linked_mask(g, u, &targets, inst.requirement(u) as usize))
}

/// Minimum solution on any connected graph: block reduction with exhaustive
/// search for blocks that are neither cliques nor cycles.
pub fn fsveccon(inst: &Instance) -> Result<VertexSet> {
    BlockSolver::exact().solve(inst)
}

pub fn fsveccon_biconnect(inst: &Instance) -> Result<VertexSet> {
    BlockSolver::exact().solve_biconnected(inst)
}

/// Block graphs and block-cactus graphs: every block a clique or a cycle.
pub fn solve_block_cactus(inst: &Instance) -> Result<VertexSet> {
    let g = inst.graph();
    if g.vertex_count() > 0 {
        let d = block_decomposition(g)?;
        if let Some(b) = d
            .blocks
            .iter()
            .find(|b| classify_block(g, b) == BlockKind::Other)
        {
            return Err(Error::Classification(format!(
                "block {b:?} is neither a clique nor a cycle"
            )));
        }
    }
    BlockSolver::strict().solve(inst)
}

/// Complete graphs.
///
/// Some optimal solution takes the `k` most demanding free vertices and the
/// `l` most demanding non-free ones, so it is enough to scan the pairs
/// `(k, l)` by increasing `k + l`. In `K_n` a vertex outside `S` sees every
/// other target directly and itself when free, so it is satisfied exactly
/// when `r(v) <= |S ∪ F|`.
pub fn complete_solver(inst: &Instance) -> Result<VertexSet> {
    let g = inst.graph();
    if !g.is_complete() {
        return Err(Error::precondition(
            "complete_solver needs a complete graph",
        ));
    }
    let by_demand = |mut vs: Vec<Vertex>| {
        vs.sort_by_key(|&u| (std::cmp::Reverse(inst.requirement(u)), u));
        vs
    };
    let free = by_demand(inst.free().iter().copied().collect());
    let paid = by_demand(g.vertices().filter(|u| !inst.is_free(*u)).collect());

    let feasible = |k: usize, l: usize| {
        let targets = free.len() + l;
        let mut in_s = vec![false; g.vertex_count()];
        for &u in free[..k].iter().chain(&paid[..l]) {
            in_s[u] = true;
        }
        g.vertices()
            .filter(|&u| !in_s[u])
            .all(|u| inst.requirement(u) as usize <= targets)
    };

    for total in 0..=g.vertex_count() {
        for k in 0..=total.min(free.len()) {
            let l = total - k;
            if l <= paid.len() && feasible(k, l) {
                return Ok(free[..k].iter().chain(&paid[..l]).copied().collect());
            }
        }
    }
    unreachable!("taking every vertex is feasible")
}

/// Cycles.
///
/// A vertex outside the solution has at most `2 + [v ∈ F]` disjoint paths,
/// so anything demanding more is forced in. Once three targets exist every
/// remaining demand is met, so the forced set plus at most two more
/// vertices is optimal; those are found by trying every addition of size
/// 0, 1 and 2.
pub fn cycle_solver(inst: &Instance) -> Result<VertexSet> {
    let g = inst.graph();
    if !g.is_cycle() {
        return Err(Error::precondition("cycle_solver needs a cycle"));
    }
    let forced: VertexSet = g
        .vertices()
        .filter(|&u| inst.requirement(u) > 2 + u32::from(inst.is_free(u)))
        .collect();
    let others: Vec<Vertex> = g.vertices().filter(|u| !forced.contains(u)).collect();

    let try_with = |extra: &[Vertex]| {
        let mut s = forced.clone();
        s.extend(extra.iter().copied());
        is_feasible(inst, &s).then_some(s)
    };
    if let Some(s) = try_with(&[]) {
        return Ok(s);
    }
    for &a in &others {
        if let Some(s) = try_with(&[a]) {
            return Ok(s);
        }
    }
    for (i, &a) in others.iter().enumerate() {
        for &b in &others[i + 1..] {
            if let Some(s) = try_with(&[a, b]) {
                return Ok(s);
            }
        }
    }
    Err(Error::precondition(
        "no solution with at most two vertices beyond the forced ones",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::oracle::brute_force_min;

    fn set(vs: &[Vertex]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn path_of_five() {
        let inst = Instance::uniform(Graph::path(5), 1);
        let s = fsveccon(&inst).unwrap();
        assert_eq!(s.len(), 1);
        assert!(is_feasible(&inst, &s));
    }

    #[test]
    fn bowtie_takes_the_split_branch() {
        // two triangles sharing vertex 2
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let inst = Instance::uniform(g, 2);
        let (s, trace) = BlockSolver::exact().solve_traced(&inst).unwrap();
        assert_eq!(s.len(), 2);
        assert!(is_feasible(&inst, &s));
        assert_eq!(trace.neither_satisfied, 1);
        assert_eq!(brute_force_min(&inst).unwrap().len(), 2);
    }

    #[test]
    fn zero_requirements() {
        let inst = Instance::uniform(Graph::path(6), 0);
        assert!(fsveccon(&inst).unwrap().is_empty());
    }

    #[test]
    fn k2_base_case() {
        let inst = Instance::uniform(Graph::path(2), 1);
        assert_eq!(fsveccon_biconnect(&inst).unwrap().len(), 1);
    }

    #[test]
    fn complete_examples() {
        let k4 = Instance::uniform(Graph::complete(4), 2);
        assert_eq!(complete_solver(&k4).unwrap().len(), 2);

        let k3 = Instance::new(Graph::complete(3), vec![0, 1, 1], set(&[0])).unwrap();
        assert!(complete_solver(&k3).unwrap().is_empty());

        assert!(complete_solver(&Instance::uniform(Graph::complete(5), 0))
            .unwrap()
            .is_empty());
        assert!(complete_solver(&Instance::uniform(Graph::path(3), 1)).is_err());
    }

    #[test]
    fn complete_solver_uses_free_vertices_with_large_demand() {
        // free vertex 0 wants 5 > |S ∪ F| can ever give without paying for it
        let inst = Instance::new(Graph::complete(3), vec![5, 1, 1], set(&[0])).unwrap();
        let s = complete_solver(&inst).unwrap();
        assert_eq!(s, set(&[0]));
        assert!(is_feasible(&inst, &s));
    }

    #[test]
    fn cycle_examples() {
        let c5 = Instance::uniform(Graph::cycle(5).unwrap(), 2);
        assert_eq!(cycle_solver(&c5).unwrap().len(), 2);

        let c4 = Instance::without_free(Graph::cycle(4).unwrap(), vec![3, 0, 0, 0]).unwrap();
        assert_eq!(cycle_solver(&c4).unwrap(), set(&[0]));

        let zero = Instance::uniform(Graph::cycle(7).unwrap(), 0);
        assert!(cycle_solver(&zero).unwrap().is_empty());
        assert!(cycle_solver(&Instance::uniform(Graph::path(3), 1)).is_err());
    }

    #[test]
    fn block_cactus_examples() {
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let inst = Instance::uniform(star, 1);
        assert_eq!(solve_block_cactus(&inst).unwrap().len(), 1);

        // triangle 0-1-2 with the path 2-3-4 hanging off it
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        let inst = Instance::uniform(g, 1);
        assert_eq!(solve_block_cactus(&inst).unwrap().len(), 1);

        let single = Instance::uniform(Graph::new(1), 0);
        assert!(solve_block_cactus(&single).unwrap().is_empty());
    }

    #[test]
    fn strict_solver_rejects_other_blocks() {
        let mut edges: Vec<_> = Graph::complete(4).edges().collect();
        edges.retain(|&e| e != (0, 1));
        let diamond = Graph::from_edges(4, edges).unwrap();
        let inst = Instance::uniform(diamond, 2);
        assert!(matches!(
            solve_block_cactus(&inst),
            Err(Error::Classification(_))
        ));
        let s = fsveccon(&inst).unwrap();
        assert_eq!(s.len(), brute_force_min(&inst).unwrap().len());
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let inst = Instance::uniform(Graph::new(3), 1);
        assert!(matches!(fsveccon(&inst), Err(Error::Input(_))));
    }

    #[test]
    fn split_at_a_cut_vertex_that_is_already_free() {
        // a tree whose cut vertices 0 and 2 start out free; charging them the
        // full +2 in the split step used to force both into the solution
        let g = Graph::from_edges(
            9,
            [
                (0, 1),
                (0, 4),
                (1, 2),
                (1, 5),
                (1, 7),
                (2, 3),
                (5, 6),
                (5, 8),
            ],
        )
        .unwrap();
        let inst = Instance::new(g, vec![3, 2, 3, 2, 2, 1, 0, 2, 2], set(&[0, 2])).unwrap();
        let (s, trace) = BlockSolver::exact().solve_traced(&inst).unwrap();
        assert!(trace.neither_satisfied > 0);
        assert_eq!(s, set(&[3, 4, 7, 8]));
        assert!(is_feasible(&inst, &s));
    }
}
