//! Seeded instance generators.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`. Independent draws for one instance (graph shape,
//! requirements, free set) use separate ChaCha streams of the same seed, so
//! changing how one part is sampled never shifts the others. Files written
//! from these generators record the algorithm as [`PRNG_ID`].

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::instance::Instance;

pub const PRNG_ID: &str = "chacha8";

const GRAPH_STREAM: u64 = 1;
const REQUIREMENT_STREAM: u64 = 2;
const FREE_STREAM: u64 = 3;

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Connected graph whose blocks are all cliques of at most `clique_max`
/// vertices, grown by gluing cliques onto random existing vertices.
pub fn gen_block_graph(n: usize, seed: u64, clique_max: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::input("block graph needs at least one vertex"));
    }
    if clique_max < 2 {
        return Err(Error::input("clique_max must be at least 2"));
    }
    let mut rng = rng(seed, GRAPH_STREAM);
    let mut edges = Vec::new();
    let mut count = 1;
    while count < n {
        let anchor = rng.random_range(0..count);
        let size = rng.random_range(2..=clique_max).min(n - count + 1);
        let members: Vec<Vertex> = std::iter::once(anchor)
            .chain(count..count + size - 1)
            .collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                edges.push((a, b));
            }
        }
        count += size - 1;
    }
    Graph::from_edges(n, edges)
}

/// Connected graph whose blocks are cliques (up to 4 vertices) or cycles
/// (up to 7 vertices), mixed roughly evenly.
pub fn gen_block_cactus(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::input("block-cactus graph needs at least one vertex"));
    }
    let mut rng = rng(seed, GRAPH_STREAM);
    let mut edges = Vec::new();
    let mut count = 1;
    while count < n {
        let anchor = rng.random_range(0..count);
        let room = n - count;
        let cycle = room >= 3 && rng.random_bool(0.5);
        if cycle {
            // cycle through the anchor and `len - 1` new vertices
            let len = rng.random_range(4..=7).min(room + 1);
            let members: Vec<Vertex> = std::iter::once(anchor)
                .chain(count..count + len - 1)
                .collect();
            for i in 0..len {
                edges.push((members[i], members[(i + 1) % len]));
            }
            count += len - 1;
        } else {
            let size = rng.random_range(2..=4).min(room + 1);
            let members: Vec<Vertex> = std::iter::once(anchor)
                .chain(count..count + size - 1)
                .collect();
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    edges.push((a, b));
                }
            }
            count += size - 1;
        }
    }
    Graph::from_edges(n, edges)
}

/// `G(n, p)` resampled until connected.
pub fn gen_random_connected(n: usize, p: f64, seed: u64) -> Result<Graph> {
    const ATTEMPTS: usize = 10_000;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!(
            "edge probability {p} is outside [0, 1]"
        )));
    }
    let mut rng = rng(seed, GRAPH_STREAM);
    for _ in 0..ATTEMPTS {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::input(format!(
        "no connected G({n}, {p}) sample in {ATTEMPTS} attempts"
    )))
}

/// Requirements uniform in `0..=r_max`; each vertex free with probability
/// `free_fraction`.
pub fn gen_requirements(g: &Graph, r_max: u32, seed: u64, free_fraction: f64) -> Result<Instance> {
    if !(0.0..=1.0).contains(&free_fraction) {
        return Err(Error::input(format!(
            "free fraction {free_fraction} is outside [0, 1]"
        )));
    }
    let mut req_rng = rng(seed, REQUIREMENT_STREAM);
    let mut free_rng = rng(seed, FREE_STREAM);
    let requirements = g
        .vertices()
        .map(|_| req_rng.random_range(0..=r_max))
        .collect();
    let free: VertexSet = g
        .vertices()
        .filter(|_| free_rng.random_bool(free_fraction))
        .collect();
    Instance::new(g.clone(), requirements, free)
}

/// Small cubic graphs used as gadget sources: K4, the triangular prism,
/// K3,3 and the Petersen graph.
pub fn cubic_catalog() -> Vec<(&'static str, Graph)> {
    let prism = Graph::from_edges(
        6,
        [
            (0, 1),
            (1, 2),
            (2, 0),
            (3, 4),
            (4, 5),
            (5, 3),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    )
    .unwrap();
    let k33 = Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
    let petersen = Graph::from_edges(
        10,
        (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)]),
    )
    .unwrap();
    vec![
        ("k4", Graph::complete(4)),
        ("prism", prism),
        ("k33", k33),
        ("petersen", petersen),
    ]
}
