use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use veccon::formats::parse_instance;
use veccon::{is_feasible, Oracle};

use crate::solve::{solve, Algo};
use crate::{read, Failure, Outcome};

const HEADER: [&str; 8] = [
    "instance", "n", "m", "r_max", "algo", "size", "optimal", "wall_ms",
];

fn corpus(dir: &Path) -> Outcome<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Failure::Io(dir.to_owned(), e))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "vcn"))
        .collect();
    files.sort();
    Ok(files)
}

/// Solves every instance with every algorithm on a pool of threads. Rows
/// are written whole, in completion order. `optimal` is empty when the
/// instance is too large for the exhaustive oracle.
pub fn run(dir: &Path, algos: &[Algo], threads: Option<usize>) -> Outcome {
    let files = corpus(dir)?;
    let oracle = Oracle::from_env();
    let threads = threads
        .or_else(|| std::thread::available_parallelism().ok().map(|n| n.get()))
        .unwrap_or(1)
        .clamp(1, files.len().max(1));

    let out = Mutex::new(csv::Writer::from_writer(std::io::stdout()));
    out.lock()
        .unwrap()
        .write_record(HEADER)
        .map_err(|e| Failure::Io(PathBuf::from("<stdout>"), e.into()))?;
    let next = AtomicUsize::new(0);

    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(path) = files.get(i) else { break };
                for row in bench_one(path, algos, &oracle) {
                    let mut w = out.lock().unwrap();
                    if w.write_record(&row)
                        .and_then(|()| w.flush().map_err(Into::into))
                        .is_err()
                    {
                        return;
                    }
                }
            });
        }
    });
    Ok(())
}

fn bench_one(path: &Path, algos: &[Algo], oracle: &Oracle) -> Vec<Vec<String>> {
    let name = path
        .file_name()
        .unwrap_or_default()
        .to_string_lossy()
        .into_owned();
    let inst = match read(path).and_then(|t| parse_instance(&t).map_err(Failure::Core)) {
        Ok(inst) => inst,
        Err(e) => {
            eprintln!("warning: skipping {name}: {e}");
            return Vec::new();
        }
    };
    let opt = (inst.vertex_count() <= oracle.cap)
        .then(|| oracle.brute_force_min(&inst).ok())
        .flatten()
        .map(|s| s.len());

    algos
        .iter()
        .map(|&algo| {
            let start = Instant::now();
            let result = solve(&inst, algo, oracle);
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            let (label, size, optimal) = match result {
                Ok(solved) => {
                    let label = if algo == Algo::Auto {
                        format!("auto:{}", solved.algo)
                    } else {
                        algo.to_string()
                    };
                    if !is_feasible(&inst, &solved.set) {
                        eprintln!("warning: {label} returned an infeasible set on {name}");
                    }
                    let optimal = opt
                        .map(|o| (o == solved.set.len()).to_string())
                        .unwrap_or_default();
                    (label, solved.set.len().to_string(), optimal)
                }
                Err(e) => {
                    eprintln!("warning: {algo} on {name}: {e}");
                    (algo.to_string(), String::new(), String::new())
                }
            };
            vec![
                name.clone(),
                inst.vertex_count().to_string(),
                inst.graph().edge_count().to_string(),
                inst.max_requirement().to_string(),
                label,
                size,
                optimal,
                format!("{wall_ms:.3}"),
            ]
        })
        .collect()
}
