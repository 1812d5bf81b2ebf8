//! Vertex cover in cubic graphs, encoded as vector connectivity.
//!
//! Every edge `e = xy` of the cubic source becomes the path
//! `x, w_{x,e}, w_e, w_{y,e}, y` with a triangle over `w_{x,e} w_e` (tip
//! `z_{x,e}`) and one over `w_e w_{y,e}` (tip `z_{y,e}`); the three `w`
//! vertices next to each source vertex form a triangle. The side `w`
//! vertices ask for 4 paths, the middle one for 3, everything else for 0.
//!
//! A set is feasible for the gadget exactly when, for every source edge, it
//! meets `{x, w_{x,e}, z_{x,e}}`, `{z_{x,e}, w_e, z_{y,e}}` and
//! `{z_{y,e}, w_{y,e}, y}`. The optimum is `τ(G) + |E(G)|`, and any feasible
//! set can be turned back into a vertex cover of size at most `|S| - |E|`.
//!
//! The bipartite variant subdivides every gadget edge an odd number of
//! times. Each new vertex is absorbed into the simplicial vertex whose
//! clique contained the edge it was placed on, and the three sets per edge
//! grow accordingly.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::instance::Instance;
use crate::oracle::ViolatingFamily;

/// What a gadget vertex stands for. Vertex ids inside are source ids, edge
/// indices refer to [`GadgetMapping::edge_index`], and a subdivision owner
/// is a gadget id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Original(Vertex),
    WSide { vertex: Vertex, edge: usize },
    WMid { edge: usize },
    ZSide { vertex: Vertex, edge: usize },
    Subdivision { owner: Vertex },
}

impl Role {
    /// Roots of simplicial cliques: original vertices and triangle tips.
    pub fn is_simplicial_root(self) -> bool {
        matches!(self, Role::Original(_) | Role::ZSide { .. })
    }
}

/// Gadget ids for one source edge `x < y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeGadget {
    pub x: Vertex,
    pub y: Vertex,
    pub w_x: Vertex,
    pub w_mid: Vertex,
    pub w_y: Vertex,
    pub z_x: Vertex,
    pub z_y: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetMapping {
    pub source: Graph,
    pub gadget: Graph,
    pub requirements: Vec<u32>,
    pub roles: Vec<Role>,
    /// One entry per source edge, in `source.edges()` order.
    pub edge_index: Vec<EdgeGadget>,
    /// Vertices inserted on every gadget edge; 0 for the plain gadget.
    pub subdivisions: usize,
}

impl GadgetMapping {
    pub fn instance(&self) -> Instance {
        Instance::without_free(self.gadget.clone(), self.requirements.clone())
            .expect("one requirement per gadget vertex")
    }

    /// `A(s)`: a simplicial root together with the subdivision vertices it
    /// absorbs.
    pub fn absorbed(&self, root: Vertex) -> VertexSet {
        let mut set: VertexSet = [root].into_iter().collect();
        if self.subdivisions > 0 {
            set.extend(
                self.roles
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| matches!(r, Role::Subdivision { owner } if *owner == root))
                    .map(|(u, _)| u),
            );
        }
        set
    }

    /// Feasibility through the three-sets-per-edge characterization.
    pub fn is_feasible(&self, s: &VertexSet) -> bool {
        claim1_family(self).is_hit_by(s)
    }

    fn require_feasible(&self, s: &VertexSet) -> Result<()> {
        if s.iter().any(|&u| u >= self.gadget.vertex_count()) {
            return Err(Error::input(
                "solution mentions a vertex outside the gadget",
            ));
        }
        if !self.is_feasible(s) {
            return Err(Error::input("not a vector connectivity set for the gadget"));
        }
        Ok(())
    }
}

fn require_cubic(g: &Graph) -> Result<()> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) != 3) {
        return Err(Error::input(format!(
            "gadget source must be cubic; vertex {v} has degree {}",
            g.degree(v)
        )));
    }
    if !g.is_connected() {
        return Err(Error::input("gadget source must be connected"));
    }
    Ok(())
}

pub fn build_gadget(g: &Graph) -> Result<GadgetMapping> {
    require_cubic(g)?;
    let n = g.vertex_count();
    let source_edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let total = n + 5 * source_edges.len();

    let mut roles: Vec<Role> = (0..n).map(Role::Original).collect();
    let mut requirements = vec![0u32; total];
    let mut edges = Vec::with_capacity(6 * n + 6 * source_edges.len());
    let mut edge_index = Vec::with_capacity(source_edges.len());
    // w vertex on each source vertex's side, collected for the step-3 triangles
    let mut sides: Vec<Vec<Vertex>> = vec![Vec::new(); n];

    for (e, &(x, y)) in source_edges.iter().enumerate() {
        let base = n + 5 * e;
        let eg = EdgeGadget {
            x,
            y,
            w_x: base,
            w_mid: base + 1,
            w_y: base + 2,
            z_x: base + 3,
            z_y: base + 4,
        };
        roles.extend([
            Role::WSide { vertex: x, edge: e },
            Role::WMid { edge: e },
            Role::WSide { vertex: y, edge: e },
            Role::ZSide { vertex: x, edge: e },
            Role::ZSide { vertex: y, edge: e },
        ]);
        requirements[eg.w_x] = 4;
        requirements[eg.w_mid] = 3;
        requirements[eg.w_y] = 4;
        edges.extend([
            (x, eg.w_x),
            (eg.w_x, eg.w_mid),
            (eg.w_mid, eg.w_y),
            (eg.w_y, y),
            (eg.w_x, eg.z_x),
            (eg.z_x, eg.w_mid),
            (eg.w_mid, eg.z_y),
            (eg.z_y, eg.w_y),
        ]);
        sides[x].push(eg.w_x);
        sides[y].push(eg.w_y);
        edge_index.push(eg);
    }
    for w in &sides {
        edges.extend([(w[0], w[1]), (w[0], w[2]), (w[1], w[2])]);
    }

    Ok(GadgetMapping {
        source: g.clone(),
        gadget: Graph::from_edges(total, edges)?,
        requirements,
        roles,
        edge_index,
        subdivisions: 0,
    })
}

/// The plain gadget with every edge subdivided `2k + 1` times. New vertices
/// get requirement 0 and are owned by the simplicial root of the clique the
/// edge came from.
pub fn build_bipartite_gadget(g: &Graph, k: usize) -> Result<GadgetMapping> {
    if k == 0 {
        return Err(Error::input("subdivision parameter k must be at least 1"));
    }
    let plain = build_gadget(g)?;
    let per_edge = 2 * k + 1;
    let base_n = plain.gadget.vertex_count();
    let mut roles = plain.roles.clone();
    let mut edges = Vec::new();
    let mut next = base_n;
    for (a, b) in plain.gadget.edges() {
        let owner = simplicial_owner(&plain, a, b);
        let mut prev = a;
        for _ in 0..per_edge {
            roles.push(Role::Subdivision { owner });
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, b));
    }
    let mut requirements = plain.requirements.clone();
    requirements.resize(next, 0);
    Ok(GadgetMapping {
        gadget: Graph::from_edges(next, edges)?,
        requirements,
        roles,
        subdivisions: per_edge,
        ..plain
    })
}

/// The simplicial root whose closed neighbourhood holds the edge `ab`.
fn simplicial_owner(m: &GadgetMapping, a: Vertex, b: Vertex) -> Vertex {
    let root = |u: Vertex| m.roles[u].is_simplicial_root();
    if root(a) {
        return a;
    }
    if root(b) {
        return b;
    }
    *m.gadget
        .neighbors(a)
        .iter()
        .find(|&&c| root(c) && m.gadget.has_edge(c, b))
        .expect("every gadget edge lies in a simplicial clique")
}

/// The three sets per source edge that every solution must meet (and
/// meeting all of them is enough).
pub fn claim1_family(m: &GadgetMapping) -> ViolatingFamily {
    let mut sets = Vec::with_capacity(3 * m.edge_index.len());
    for eg in &m.edge_index {
        let join = |a: Vertex, mid: Vertex, b: Vertex| {
            let mut s = m.absorbed(a);
            s.insert(mid);
            s.extend(m.absorbed(b));
            s
        };
        sets.push(join(eg.x, eg.w_x, eg.z_x));
        sets.push(join(eg.z_x, eg.w_mid, eg.z_y));
        sets.push(join(eg.z_y, eg.w_y, eg.y));
    }
    ViolatingFamily {
        sets,
        minimal_only: true,
    }
}

/// Extends a vertex cover `c` of the source to a gadget solution of size
/// `|c| + |E|`: per edge one triangle tip, on the side whose endpoint is
/// missing from `c` (the smaller endpoint's side when both are in).
pub fn solution_from_cover(m: &GadgetMapping, c: &VertexSet) -> Result<VertexSet> {
    m.source.check_set(c)?;
    let mut s = c.clone();
    for eg in &m.edge_index {
        let tip = match (c.contains(&eg.x), c.contains(&eg.y)) {
            (false, false) => {
                return Err(Error::input(format!(
                    "edge ({}, {}) is not covered",
                    eg.x, eg.y
                )))
            }
            (true, false) => eg.z_y,
            _ => eg.z_x,
        };
        s.insert(tip);
    }
    Ok(s)
}

/// Rewrites a feasible set so that it holds only original vertices and
/// triangle tips, without growing: a side `w` becomes the tip on its side,
/// the middle `w` the tip on the smaller endpoint's side, and a subdivision
/// vertex its owner.
pub fn normalize_solution(m: &GadgetMapping, s: &VertexSet) -> Result<VertexSet> {
    m.require_feasible(s)?;
    let replaced: VertexSet = s
        .iter()
        .map(|&u| match m.roles[u] {
            Role::WSide { vertex, edge } => {
                let eg = &m.edge_index[edge];
                if vertex == eg.x {
                    eg.z_x
                } else {
                    eg.z_y
                }
            }
            Role::WMid { edge } => m.edge_index[edge].z_x,
            Role::Subdivision { owner } => owner,
            Role::Original(_) | Role::ZSide { .. } => u,
        })
        .collect();
    debug_assert!(m.is_feasible(&replaced));
    Ok(replaced)
}

/// Turns any feasible gadget solution into a source vertex cover with
/// `|C| <= |S| - |E|`.
///
/// After normalizing, each source edge has a tip in the set and every
/// endpoint missing from the set has the tip on its own side. Reading the
/// tips as the two subdivision vertices of the doubly subdivided edge gives a
/// cover of that graph; folding back keeps the endpoints already chosen and,
/// for an edge with neither endpoint chosen (hence both tips present), adds
/// the smaller endpoint in place of the second tip.
pub fn extract_vertex_cover(m: &GadgetMapping, s: &VertexSet) -> Result<VertexSet> {
    let normal = normalize_solution(m, s)?;
    let mut cover: VertexSet = normal
        .iter()
        .copied()
        .filter(|&u| matches!(m.roles[u], Role::Original(_)))
        .collect();
    let chosen = cover.clone();
    for eg in &m.edge_index {
        if !chosen.contains(&eg.x) && !chosen.contains(&eg.y) {
            debug_assert!(normal.contains(&eg.z_x) && normal.contains(&eg.z_y));
            cover.insert(eg.x);
        }
    }
    Ok(cover)
}

pub const VERTEX_COVER_CAP: usize = 24;

/// Minimum vertex cover by branching on a maximum-degree vertex: either it
/// is in the cover or all of its neighbours are.
pub fn exact_vertex_cover(g: &Graph) -> Result<VertexSet> {
    exact_vertex_cover_capped(g, VERTEX_COVER_CAP)
}

pub fn exact_vertex_cover_capped(g: &Graph, cap: usize) -> Result<VertexSet> {
    let n = g.vertex_count();
    if n > cap.min(64) {
        return Err(Error::Size {
            what: "exact_vertex_cover",
            size: n,
            cap: cap.min(64),
        });
    }
    let adj: Vec<u64> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect();
    let all = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let mut best = all;
    cover_search(&adj, all, 0, &mut best);
    Ok((0..n).filter(|&v| best >> v & 1 == 1).collect())
}

fn cover_search(adj: &[u64], alive: u64, chosen: u64, best: &mut u64) {
    let mut top: Option<(u32, usize)> = None;
    let mut edges_left = 0u32;
    let mut rest = alive;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & alive).count_ones();
        edges_left += d;
        if d > 0 && top.is_none_or(|(bd, _)| d > bd) {
            top = Some((d, v));
        }
    }
    let Some((max_deg, v)) = top else {
        if chosen.count_ones() < best.count_ones() {
            *best = chosen;
        }
        return;
    };
    edges_left /= 2;
    let lower = edges_left.div_ceil(max_deg);
    if chosen.count_ones() + lower >= best.count_ones() {
        return;
    }
    let bit = 1u64 << v;
    cover_search(adj, alive & !bit, chosen | bit, best);
    let nb = adj[v] & alive;
    cover_search(adj, alive & !bit & !nb, chosen | nb, best);
}
