use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use veccon::formats::{
    parse_instance, parse_mapping, parse_solution, to_dot, write_family, write_instance,
    write_mapping, write_solution,
};
use veccon::gadgets::{build_bipartite_gadget, build_gadget, extract_vertex_cover};
use veccon::generators::{
    cubic_catalog, gen_block_cactus, gen_block_graph, gen_random_connected, gen_requirements,
    PRNG_ID,
};
use veccon::{Error, Instance, Linkage, Oracle, VertexSet};

mod bench;
mod solve;

use solve::Algo;

#[derive(Parser)]
#[command(name = "veccon", version, about = "Vector connectivity solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print the solution file.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        /// Attach a validated fan for every vertex outside the solution.
        #[arg(long)]
        certify: bool,
    },
    /// Check a solution; exits 1 and prints a separator if it is infeasible.
    Verify {
        instance: PathBuf,
        solution: PathBuf,
    },
    /// Build the vertex-cover gadget of a cubic graph.
    Reduce {
        /// Instance file; only its edges are read.
        graph: PathBuf,
        /// Subdivide every gadget edge 2k+1 times.
        #[arg(long, value_name = "K")]
        bipartite: Option<usize>,
        /// Writes <PREFIX>.vcn and <PREFIX>.map.
        #[arg(short, long, value_name = "PREFIX")]
        output: PathBuf,
    },
    /// Turn a gadget solution back into a vertex cover of the source graph.
    ExtractCover { mapping: PathBuf, solution: PathBuf },
    /// Print the family of violating sets.
    Hypergraph {
        instance: PathBuf,
        /// Only inclusion-minimal sets.
        #[arg(long)]
        minimal: bool,
    },
    /// Generate a seeded instance.
    Gen(GenArgs),
    /// Render an instance, optionally with a solution, as Graphviz DOT.
    Dot {
        instance: PathBuf,
        #[arg(long)]
        solution: Option<PathBuf>,
    },
    /// Run solvers over every `.vcn` file in a directory and print CSV.
    Bench {
        dir: PathBuf,
        /// Comma-separated algorithms.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "auto,greedy")]
        algos: Vec<Algo>,
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long, default_value_t = 12)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    clique_max: usize,
    /// Edge probability for `random`.
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    /// Catalog entry for `cubic`: k4, prism, k33 or petersen.
    #[arg(long, default_value = "k4")]
    name: String,
    #[arg(long, default_value_t = 3)]
    r_max: u32,
    #[arg(long, default_value_t = 0.0)]
    free: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Block,
    Cactus,
    Random,
    Cubic,
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Infeasible,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
            Failure::Infeasible => write!(f, "infeasible"),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Infeasible => 1,
            Failure::Io(..) | Failure::Core(Error::Parse { .. } | Error::Input(_)) => 2,
            Failure::Core(_) => 3,
        }
    }
}

type Outcome<T = ()> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Io(path.to_owned(), e))
}

/// Parse errors are reported with the file name in front.
fn load<T>(path: &Path, parse: impl FnOnce(&str) -> veccon::Result<T>) -> Outcome<T> {
    parse(&read(path)?).map_err(|e| match e {
        Error::Parse {
            line,
            column,
            message,
        } => Failure::Core(Error::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        }),
        e => Failure::Core(e),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Infeasible) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Solve {
            instance,
            algo,
            certify,
        } => {
            let inst = load(&instance, parse_instance)?;
            let solved = solve::solve(&inst, algo, &Oracle::from_env())?;
            if let Some(warning) = &solved.warning {
                eprintln!("warning: {warning}");
            }
            let mut comments = vec![
                format!("algo {}", solved.algo),
                format!("size {}", solved.set.len()),
            ];
            if certify {
                comments.extend(certify_solution(&inst, &solved.set)?);
            }
            print!("{}", write_solution(&solved.set, &comments));
            Ok(())
        }
        Command::Verify { instance, solution } => {
            let inst = load(&instance, parse_instance)?;
            let s = load(&solution, |t| parse_solution(t, inst.vertex_count()))?;
            match veccon::first_violation(&inst, &s)? {
                None => {
                    println!("c feasible");
                    Ok(())
                }
                Some((v, witness)) => {
                    let sep: Vec<String> = witness
                        .separator
                        .iter()
                        .map(|u| (u + 1).to_string())
                        .collect();
                    println!(
                        "c infeasible: vertex {} needs {} paths, separator {{{}}}{} allows {}",
                        v + 1,
                        inst.requirement(v),
                        sep.join(", "),
                        if witness.self_path {
                            " plus itself"
                        } else {
                            ""
                        },
                        witness.bound()
                    );
                    Err(Failure::Infeasible)
                }
            }
        }
        Command::Reduce {
            graph,
            bipartite,
            output,
        } => {
            let source = load(&graph, parse_instance)?;
            let m = match bipartite {
                None => build_gadget(source.graph())?,
                Some(k) => build_bipartite_gadget(source.graph(), k)?,
            };
            let comments = vec![format!(
                "gadget of {} ({} vertices, {} edges)",
                graph.display(),
                m.source.vertex_count(),
                m.source.edge_count()
            )];
            let inst_path = output.with_extension("vcn");
            let map_path = output.with_extension("map");
            write(&inst_path, &write_instance(&m.instance(), &comments))?;
            write(&map_path, &write_mapping(&m))?;
            println!(
                "c wrote {} and {}: {} vertices, {} edges",
                inst_path.display(),
                map_path.display(),
                m.gadget.vertex_count(),
                m.gadget.edge_count()
            );
            Ok(())
        }
        Command::ExtractCover { mapping, solution } => {
            let m = load(&mapping, parse_mapping)?;
            let s = load(&solution, |t| parse_solution(t, m.gadget.vertex_count()))?;
            if !m.is_feasible(&s) {
                eprintln!("error: solution is infeasible for the gadget");
                return Err(Failure::Infeasible);
            }
            let cover = extract_vertex_cover(&m, &s)?;
            print!(
                "{}",
                write_solution(&cover, &[format!("cover size {}", cover.len())])
            );
            Ok(())
        }
        Command::Hypergraph { instance, minimal } => {
            let inst = load(&instance, parse_instance)?;
            if !inst.free().is_empty() {
                return Err(Error::Precondition(
                    "violating sets are defined for instances without free vertices".into(),
                )
                .into());
            }
            let fam =
                Oracle::from_env().violating_family(inst.graph(), inst.requirements(), minimal)?;
            print!("{}", write_family(&fam, inst.vertex_count()));
            Ok(())
        }
        Command::Gen(args) => {
            print!("{}", generate(&args)?);
            Ok(())
        }
        Command::Dot { instance, solution } => {
            let inst = load(&instance, parse_instance)?;
            let s = solution
                .map(|p| load(&p, |t| parse_solution(t, inst.vertex_count())))
                .transpose()?;
            print!("{}", to_dot(&inst, s.as_ref()));
            Ok(())
        }
        Command::Bench {
            dir,
            algos,
            threads,
        } => bench::run(&dir, &algos, threads),
    }
}

/// One validated fan per vertex outside `s`, as comment lines.
fn certify_solution(inst: &Instance, s: &VertexSet) -> Outcome<Vec<String>> {
    let g = inst.graph();
    let targets: VertexSet = s.union(inst.free()).copied().collect();
    let mut lines = Vec::new();
    for v in g.vertices().filter(|v| !s.contains(v)) {
        let k = inst.requirement(v) as usize;
        let fan = match veccon::is_k_linked(g, v, &targets, k)? {
            Linkage::Linked(fan) => fan,
            Linkage::Separated(_) => return Err(Failure::Infeasible),
        };
        fan.validate(g, &targets).map_err(|e| {
            Error::Precondition(format!("fan for vertex {} failed validation: {e}", v + 1))
        })?;
        let paths: Vec<String> = fan
            .paths
            .iter()
            .map(|p| {
                p.iter()
                    .map(|u| (u + 1).to_string())
                    .collect::<Vec<_>>()
                    .join("-")
            })
            .collect();
        lines.push(
            format!("fan {} {}", v + 1, paths.join(" "))
                .trim_end()
                .to_string(),
        );
    }
    Ok(lines)
}

fn generate(args: &GenArgs) -> Outcome<String> {
    let (graph, what) = match args.kind {
        GenKind::Block => (
            gen_block_graph(args.n, args.seed, args.clique_max)?,
            format!("block n {} clique_max {}", args.n, args.clique_max),
        ),
        GenKind::Cactus => (
            gen_block_cactus(args.n, args.seed)?,
            format!("cactus n {}", args.n),
        ),
        GenKind::Random => (
            gen_random_connected(args.n, args.p, args.seed)?,
            format!("random n {} p {}", args.n, args.p),
        ),
        GenKind::Cubic => {
            let (_, g) = cubic_catalog()
                .into_iter()
                .find(|(name, _)| *name == args.name)
                .ok_or_else(|| Error::Input(format!("no cubic graph named `{}`", args.name)))?;
            (g, format!("cubic {}", args.name))
        }
    };
    let inst = gen_requirements(&graph, args.r_max, args.seed, args.free)?;
    let comments = vec![
        format!("generator {what} r_max {} free {}", args.r_max, args.free),
        format!("prng {PRNG_ID} seed {}", args.seed),
    ];
    Ok(write_instance(&inst, &comments))
}
