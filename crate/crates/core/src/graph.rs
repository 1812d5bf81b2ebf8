//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! Adjacency lists are kept sorted, so `has_edge` is a binary search and
//! every traversal visits neighbours in increasing id order. That ordering is
//! what makes the solvers deterministic.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type VertexSet = BTreeSet<Vertex>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list. Self-loops, repeated edges and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::input(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::input(format!("parallel edge ({u}, {})", w[0])));
            }
        }
        Ok(Graph { adj, edge_count })
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph is simple")
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::input(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.adj.len()
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::input(format!(
                "vertex {v} is not in a graph with {} vertices",
                self.vertex_count()
            )))
        }
    }

    pub(crate) fn check_set(&self, set: &VertexSet) -> Result<()> {
        match set.iter().next_back() {
            Some(&v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.adj.iter().all(|l| l.len() + 1 == n)
    }

    /// True for a single cycle through every vertex (needs `n >= 3`).
    pub fn is_cycle(&self) -> bool {
        self.vertex_count() >= 3 && self.adj.iter().all(|l| l.len() == 2) && self.is_connected()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        n == 0 || bfs_order(self, 0, |_| true).len() == n
    }

    /// Indicator vector of `set`, sized to this graph.
    pub(crate) fn mask(&self, set: &VertexSet) -> Vec<bool> {
        let mut mask = vec![false; self.vertex_count()];
        for &v in set {
            mask[v] = true;
        }
        mask
    }
}

/// Vertices reachable from `start` through vertices accepted by `allow`,
/// in BFS order. `start` itself is always included.
pub(crate) fn bfs_order(g: &Graph, start: Vertex, allow: impl Fn(Vertex) -> bool) -> Vec<Vertex> {
    let mut seen = vec![false; g.vertex_count()];
    let mut order = vec![start];
    seen[start] = true;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in g.neighbors(u) {
            if !seen[w] && allow(w) {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    order
}

/// An induced subgraph together with the ids its vertices had in the parent.
///
/// Local ids are assigned in increasing parent-id order, so `parent` is
/// sorted and the relabeling is monotone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    pub parent: Vec<Vertex>,
}

impl Subgraph {
    pub fn to_parent(&self, v: Vertex) -> Vertex {
        self.parent[v]
    }

    pub fn from_parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent.binary_search(&v).ok()
    }

    pub fn lift(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|&v| self.parent[v]).collect()
    }
}

/// `G[X]`: the vertices of `x` and every edge of `g` with both ends in `x`.
pub fn induced_subgraph(g: &Graph, x: &VertexSet) -> Result<Subgraph> {
    g.check_set(x)?;
    let parent: Vec<Vertex> = x.iter().copied().collect();
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in parent.iter().enumerate() {
        local[v] = i;
    }
    let mut adj = Vec::with_capacity(parent.len());
    let mut degree_sum = 0;
    for &v in &parent {
        let list: Vec<Vertex> = g
            .neighbors(v)
            .iter()
            .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
            .collect();
        degree_sum += list.len();
        adj.push(list);
    }
    Ok(Subgraph {
        graph: Graph {
            adj,
            edge_count: degree_sum / 2,
        },
        parent,
    })
}

/// `N(X)`: vertices outside `x` with a neighbour in `x`.
pub fn open_neighborhood(g: &Graph, x: &VertexSet) -> Result<VertexSet> {
    if x.is_empty() {
        return Err(Error::input("open neighbourhood of the empty set"));
    }
    g.check_set(x)?;
    Ok(x.iter()
        .flat_map(|&v| g.neighbors(v).iter().copied())
        .filter(|w| !x.contains(w))
        .collect())
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        let mut comp = bfs_order(g, s, |_| true);
        for &v in &comp {
            seen[v] = true;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Structure {
    pub is_connected: bool,
    /// 2-connected: more than two vertices and no cut vertex.
    pub is_biconnected: bool,
    pub is_bipartite: bool,
    pub max_degree: usize,
    /// `None` for forests (infinite girth).
    pub girth: Option<usize>,
}

pub fn structural_checks(g: &Graph) -> Structure {
    let is_connected = g.is_connected();
    let is_biconnected = g.vertex_count() > 2
        && is_connected
        && g.vertices().all(|v| {
            let start = if v == 0 { 1 } else { 0 };
            bfs_order(g, start, |w| w != v).len() == g.vertex_count() - 1
        });
    Structure {
        is_connected,
        is_biconnected,
        is_bipartite: two_coloring(g).is_some(),
        max_degree: g.max_degree(),
        girth: girth(g),
    }
}

/// A proper 2-colouring, if one exists.
pub fn two_coloring(g: &Graph) -> Option<Vec<bool>> {
    let mut color: Vec<Option<bool>> = vec![None; g.vertex_count()];
    let mut queue = VecDeque::new();
    for s in g.vertices() {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for &w in g.neighbors(u) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(color.into_iter().map(Option::unwrap).collect())
}

/// Length of a shortest cycle, by BFS from every vertex.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for s in g.vertices() {
        dist.fill(usize::MAX);
        dist[s] = 0;
        parent[s] = usize::MAX;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[Vertex]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        assert!(Graph::from_edges(2, [(0, 0)]).is_err());
        assert!(Graph::from_edges(2, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }

    #[test]
    fn induced_subgraph_cases() {
        let k4 = Graph::complete(4);
        let sub = induced_subgraph(&k4, &set(&[0, 1, 2, 3])).unwrap();
        assert_eq!(sub.graph, k4);

        let p3 = Graph::path(3);
        let sub = induced_subgraph(&p3, &set(&[0, 2])).unwrap();
        assert_eq!(sub.graph.vertex_count(), 2);
        assert_eq!(sub.graph.edge_count(), 0);
        assert_eq!(sub.parent, vec![0, 2]);

        // triangle abc plus pendant c-d
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let sub = induced_subgraph(&g, &set(&[0, 1, 2])).unwrap();
        assert_eq!(sub.graph, Graph::complete(3));

        assert!(induced_subgraph(&p3, &set(&[5])).is_err());
    }

    #[test]
    fn neighbourhoods() {
        let p3 = Graph::path(3);
        assert_eq!(open_neighborhood(&p3, &set(&[0])).unwrap(), set(&[1]));
        assert!(open_neighborhood(&p3, &set(&[0, 1, 2])).unwrap().is_empty());
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(open_neighborhood(&c4, &set(&[0])).unwrap(), set(&[1, 3]));
        assert!(open_neighborhood(&c4, &VertexSet::new()).is_err());
    }

    #[test]
    fn structure_of_small_graphs() {
        let c5 = structural_checks(&Graph::cycle(5).unwrap());
        assert_eq!(
            c5,
            Structure {
                is_connected: true,
                is_biconnected: true,
                is_bipartite: false,
                max_degree: 2,
                girth: Some(5),
            }
        );

        let k4 = structural_checks(&Graph::complete(4));
        assert!(k4.is_biconnected);
        assert_eq!(k4.girth, Some(3));
        assert_eq!(k4.max_degree, 3);

        let k2 = structural_checks(&Graph::path(2));
        assert!(k2.is_connected);
        assert!(!k2.is_biconnected);
        assert!(k2.is_bipartite);
        assert_eq!(k2.girth, None);

        let c6 = structural_checks(&Graph::cycle(6).unwrap());
        assert!(c6.is_bipartite);
        assert_eq!(c6.girth, Some(6));
    }

    #[test]
    fn girth_of_petersen_like_structures() {
        // two squares sharing an edge: girth 4
        let g =
            Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 2)]).unwrap();
        assert_eq!(girth(&g), Some(4));
    }
}
