use std::fmt;

use clap::ValueEnum;
use veccon::blocks::{block_decomposition, classify_block, BlockKind};
use veccon::{
    greedy, min_hitting_set, solve_block_cactus, solve_lowreq, BlockSolver, Error, Fallback,
    Instance, Oracle, Result, VertexSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    /// Pick the strongest applicable solver.
    Auto,
    /// Block solver with brute force on blocks that are not cliques or cycles.
    Exact,
    /// Block solver restricted to clique and cycle blocks.
    Block,
    /// Requirements at most 2 and no free vertices.
    Lowreq,
    Greedy,
    Brute,
    /// Minimum hitting set of the violating sets.
    BruteHitting,
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(
            self.to_possible_value()
                .expect("no skipped variants")
                .get_name(),
        )
    }
}

pub struct Solved {
    pub set: VertexSet,
    /// The solver that actually ran; differs from the request under `auto`.
    pub algo: Algo,
    pub warning: Option<String>,
}

fn is_block_cactus(inst: &Instance) -> bool {
    let g = inst.graph();
    g.vertex_count() > 0
        && g.is_connected()
        && block_decomposition(g)
            .map(|d| {
                d.blocks
                    .iter()
                    .all(|b| classify_block(g, b) != BlockKind::Other)
            })
            .unwrap_or(false)
}

/// The solver `auto` would run, with a warning when nothing exact applies.
pub fn dispatch(inst: &Instance, oracle: &Oracle) -> (Algo, Option<String>) {
    if is_block_cactus(inst) {
        (Algo::Block, None)
    } else if inst.max_requirement() <= 2 && inst.free().is_empty() && inst.graph().is_connected() {
        (Algo::Lowreq, None)
    } else if inst.vertex_count() <= oracle.cap {
        (Algo::Brute, None)
    } else {
        let warning = format!(
            "no exact solver applies to this {}-vertex instance; the greedy result may not be optimal",
            inst.vertex_count()
        );
        (Algo::Greedy, Some(warning))
    }
}

pub fn solve(inst: &Instance, algo: Algo, oracle: &Oracle) -> Result<Solved> {
    let (algo, warning) = match algo {
        Algo::Auto => dispatch(inst, oracle),
        other => (other, None),
    };
    let set = run(inst, algo, oracle)?;
    Ok(Solved { set, algo, warning })
}

fn run(inst: &Instance, algo: Algo, oracle: &Oracle) -> Result<VertexSet> {
    match algo {
        Algo::Auto => unreachable!("auto is resolved by dispatch"),
        Algo::Exact => BlockSolver {
            fallback: Fallback::BruteForce { cap: oracle.cap },
        }
        .solve(inst),
        Algo::Block => solve_block_cactus(inst),
        Algo::Lowreq => solve_lowreq(inst),
        Algo::Greedy => greedy(inst),
        Algo::Brute => oracle.brute_force_min(inst),
        Algo::BruteHitting => {
            if !inst.free().is_empty() {
                return Err(Error::Precondition(
                    "brute-hitting needs an instance without free vertices".into(),
                ));
            }
            let fam = oracle.violating_family(inst.graph(), inst.requirements(), true)?;
            min_hitting_set(&fam, &inst.graph().vertices().collect())
        }
    }
}
