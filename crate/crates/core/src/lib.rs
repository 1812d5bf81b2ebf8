//! Vector connectivity: choose the fewest vertices `S` such that every vertex
//! `v` outside `S` can reach `S` (together with a fixed set of free vertices)
//! along `r(v)` paths that share only `v`.
//!
//! ```
//! use veccon::{fsveccon, is_feasible, Graph, Instance};
//!
//! let inst = Instance::uniform(Graph::path(5), 1);
//! let s = fsveccon(&inst).unwrap();
//! assert_eq!(s.len(), 1);
//! assert!(is_feasible(&inst, &s));
//! ```
//!
//! Solvers:
//!
//! * [`fsveccon`] is exact on graphs whose blocks are cliques or cycles and
//!   falls back to brute force on other blocks.
//! * [`solve_lowreq`] is exact on any connected graph when every requirement
//!   is at most 2.
//! * [`greedy`] is a fast heuristic.
//! * [`brute_force_min`] and [`min_hitting_set`] over [`violating_family`]
//!   are exponential reference solvers.
//!
//! [`gadgets`] builds the reduction from vertex cover on cubic graphs.

pub mod approx;
pub mod block_solver;
pub mod blocks;
pub mod error;
pub mod fans;
pub mod formats;
pub mod gadgets;
pub mod generators;
pub mod graph;
pub mod instance;
pub mod lowreq;
pub mod oracle;

pub use approx::{greedy, greedy_traced, GreedyRun};
pub use block_solver::{
    complete_solver, cycle_solver, fsveccon, fsveccon_biconnect, solve_block_cactus, BlockSolver,
    Fallback, Trace,
};
pub use blocks::{block_decomposition, classify_block, BlockDecomposition, BlockKind};
pub use error::{Error, Result};
pub use fans::{is_k_linked, kappa, CutWitness, Fan, Linkage};
pub use graph::{Graph, Vertex, VertexSet};
pub use instance::Instance;
pub use lowreq::solve_lowreq;
pub use oracle::{
    brute_force_min, first_violation, is_feasible, min_hitting_set, violating_family, Oracle,
    ViolatingFamily,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fans.md")]
    mod fans {}
    #[doc = include_str!("../../../book/src/feasibility.md")]
    mod feasibility {}
    #[doc = include_str!("../../../book/src/block-solver.md")]
    mod block_solver {}
    #[doc = include_str!("../../../book/src/low-requirements.md")]
    mod low_requirements {}
    #[doc = include_str!("../../../book/src/greedy.md")]
    mod greedy {}
    #[doc = include_str!("../../../book/src/gadgets.md")]
    mod gadgets {}
    #[doc = include_str!("../../../book/src/files-and-cli.md")]
    mod files_and_cli {}
}
