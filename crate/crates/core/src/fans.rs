//! Fans, k-linkedness and their Menger duals.
//!
//! A `v`–`T` fan of order `k` is a family of `k` paths from `v` into `T`
//! that pairwise share only `v`. When `v` itself lies in `T` it contributes
//! the zero-length path `[v]`, so `kappa(v, T ∪ {v}) = kappa(v, T \ {v}) + 1`.
//!
//! Everything here runs a unit vertex-capacity max flow: each vertex other
//! than the centre is split into an in-node and an out-node joined by a
//! capacity-one arc, targets drain straight into a super-sink, and graph
//! edges become uncapacitated arcs. Augmenting paths are found by BFS and
//! stop as soon as the requested order is reached.

use std::collections::VecDeque;

use crate::error::Result;
use crate::graph::{bfs_order, Graph, Vertex, VertexSet};

/// A fan centred at `center`. Every path starts at the centre.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub center: Vertex,
    pub paths: Vec<Vec<Vertex>>,
}

impl Fan {
    pub fn order(&self) -> usize {
        self.paths.len()
    }

    /// Checks the fan against `g` without trusting how it was built.
    pub fn validate(&self, g: &Graph, targets: &VertexSet) -> std::result::Result<(), String> {
        let mut used = vec![false; g.vertex_count()];
        let mut self_paths = 0;
        for path in &self.paths {
            if path.first() != Some(&self.center) {
                return Err(format!("path {path:?} does not start at {}", self.center));
            }
            let end = *path.last().unwrap();
            if !targets.contains(&end) {
                return Err(format!("path {path:?} ends outside the target set"));
            }
            if path.len() == 1 {
                self_paths += 1;
                continue;
            }
            for w in path.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(format!("{} - {} is not an edge", w[0], w[1]));
                }
            }
            for &u in &path[1..] {
                if u == self.center || !g.contains(u) || used[u] {
                    return Err(format!("vertex {u} is reused in the fan"));
                }
                used[u] = true;
            }
        }
        if self_paths > 1 {
            return Err("more than one zero-length path".into());
        }
        if self_paths == 1 && !targets.contains(&self.center) {
            return Err("zero-length path but the centre is not a target".into());
        }
        Ok(())
    }
}

/// A vertex separator proving that a fan of the requested order cannot
/// exist: every path from the query vertex to a target outside the
/// separator meets the separator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutWitness {
    pub separator: VertexSet,
    /// Set when the query vertex was itself a target and contributes its
    /// zero-length path on top of `separator.len()`.
    pub self_path: bool,
}

impl CutWitness {
    /// Largest fan order this witness allows.
    pub fn bound(&self) -> usize {
        self.separator.len() + usize::from(self.self_path)
    }

    /// Checks that removing the separator cuts `v` off from the remaining
    /// targets and that the witnessed bound is below `k`.
    pub fn validate(
        &self,
        g: &Graph,
        v: Vertex,
        targets: &VertexSet,
        k: usize,
    ) -> std::result::Result<(), String> {
        if self.separator.contains(&v) {
            return Err(format!("separator contains the query vertex {v}"));
        }
        if self.self_path != targets.contains(&v) {
            return Err("self-path flag disagrees with the target set".into());
        }
        if self.bound() >= k {
            return Err(format!("separator bound {} is not below {k}", self.bound()));
        }
        let reach = bfs_order(g, v, |w| !self.separator.contains(&w));
        if let Some(t) = reach.iter().find(|&&w| w != v && targets.contains(&w)) {
            return Err(format!("target {t} is still reachable"));
        }
        Ok(())
    }
}

/// Outcome of a k-linkedness query: exactly one certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Linkage {
    Linked(Fan),
    Separated(CutWitness),
}

impl Linkage {
    pub fn is_linked(&self) -> bool {
        matches!(self, Linkage::Linked(_))
    }
}

/// Maximum order of a `v`–`t` fan.
pub fn kappa(g: &Graph, v: Vertex, t: &VertexSet) -> Result<usize> {
    g.check_vertex(v)?;
    g.check_set(t)?;
    Ok(kappa_mask(g, v, &g.mask(t), usize::MAX))
}

/// Decides whether `v` is `k`-linked to `t` and returns the matching
/// certificate: a fan of order at least `k`, or a separator of size below
/// `k` (after the self-path adjustment).
pub fn is_k_linked(g: &Graph, v: Vertex, t: &VertexSet, k: usize) -> Result<Linkage> {
    g.check_vertex(v)?;
    g.check_set(t)?;
    let self_path = t.contains(&v);
    let need = k.saturating_sub(usize::from(self_path));
    let mut net = FlowNetwork::build(g, v, &g.mask(t));
    let flow = net.augment(need);
    if flow >= need {
        let mut paths = Vec::with_capacity(flow + usize::from(self_path));
        if self_path {
            paths.push(vec![v]);
        }
        paths.extend(net.paths());
        Ok(Linkage::Linked(Fan { center: v, paths }))
    } else {
        Ok(Linkage::Separated(CutWitness {
            separator: net.min_cut(),
            self_path,
        }))
    }
}

/// `kappa` capped at `limit`, on a target indicator vector.
pub(crate) fn kappa_mask(g: &Graph, v: Vertex, targets: &[bool], limit: usize) -> usize {
    let self_path = usize::from(targets[v]);
    if limit <= self_path {
        return limit;
    }
    let need = limit - self_path;
    let target_count = targets.iter().filter(|&&b| b).count() - self_path;
    let bound = need.min(target_count).min(g.degree(v));
    if bound == 0 {
        return self_path;
    }
    let mut net = FlowNetwork::build(g, v, targets);
    self_path + net.augment(bound)
}

/// `kappa(v, targets) >= k`, skipping the flow when a degree or size bound
/// already decides it.
pub(crate) fn linked_mask(g: &Graph, v: Vertex, targets: &[bool], k: usize) -> bool {
    if k == 0 {
        return true;
    }
    let self_path = usize::from(targets[v]);
    if k <= self_path {
        return true;
    }
    if k > g.degree(v) + self_path {
        return false;
    }
    kappa_mask(g, v, targets, k) >= k
}

struct Arc {
    to: usize,
    cap: usize,
}

/// Split-vertex network. Node `2u` is the in-node of `u`, `2u + 1` its
/// out-node, `2n` the sink; the source is the out-node of the centre.
struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    source: usize,
    sink: usize,
    center: Vertex,
    targets: Vec<bool>,
}

impl FlowNetwork {
    fn build(g: &Graph, center: Vertex, targets: &[bool]) -> Self {
        let n = g.vertex_count();
        let big = n + 1;
        let mut net = FlowNetwork {
            arcs: Vec::with_capacity(2 * (2 * n + 2 * g.edge_count())),
            out: vec![Vec::new(); 2 * n + 1],
            source: 2 * center + 1,
            sink: 2 * n,
            center,
            targets: targets.to_vec(),
        };
        net.targets[center] = false;
        for u in g.vertices() {
            if u == center {
                continue;
            }
            if net.targets[u] {
                net.add_arc(2 * u, 2 * n, 1);
            } else {
                net.add_arc(2 * u, 2 * u + 1, 1);
            }
        }
        for (a, b) in g.edges() {
            for (x, y) in [(a, b), (b, a)] {
                if !net.targets[x] && y != center {
                    net.add_arc(2 * x + 1, 2 * y, big);
                }
            }
        }
        net
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: usize) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    /// Pushes up to `limit` units, returning the amount pushed.
    fn augment(&mut self, limit: usize) -> usize {
        let nodes = self.out.len();
        let mut pred = vec![usize::MAX; nodes];
        let mut queue = VecDeque::new();
        let mut flow = 0;
        while flow < limit {
            pred.fill(usize::MAX);
            queue.clear();
            queue.push_back(self.source);
            pred[self.source] = usize::MAX - 1;
            let mut reached = false;
            'bfs: while let Some(x) = queue.pop_front() {
                for &id in &self.out[x] {
                    let arc = &self.arcs[id];
                    if arc.cap > 0 && pred[arc.to] == usize::MAX {
                        pred[arc.to] = id;
                        if arc.to == self.sink {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(arc.to);
                    }
                }
            }
            if !reached {
                break;
            }
            let mut x = self.sink;
            while x != self.source {
                let id = pred[x];
                self.arcs[id].cap -= 1;
                self.arcs[id ^ 1].cap += 1;
                x = self.arcs[id ^ 1].to;
            }
            flow += 1;
        }
        flow
    }

    /// Flow carried by the forward arc `id`.
    fn carried(&self, id: usize) -> usize {
        self.arcs[id ^ 1].cap
    }

    /// Decomposes the current flow into centre-to-target paths.
    fn paths(&self) -> Vec<Vec<Vertex>> {
        let mut used = vec![0usize; self.arcs.len()];
        let mut paths = Vec::new();
        let forward = |id: usize| id.is_multiple_of(2);
        for &first in &self.out[self.source] {
            if !forward(first) || self.carried(first) == 0 {
                continue;
            }
            for _ in 0..self.carried(first) {
                let mut path = vec![self.center];
                let mut id = first;
                loop {
                    used[id] += 1;
                    let node = self.arcs[id].to;
                    let u = node / 2;
                    path.push(u);
                    if self.targets[u] {
                        break;
                    }
                    // through the vertex arc, then along one loaded edge arc
                    let out_node = 2 * u + 1;
                    id = *self.out[out_node]
                        .iter()
                        .find(|&&e| forward(e) && self.carried(e) > used[e])
                        .expect("flow is conserved at every vertex");
                }
                paths.push(path);
            }
        }
        paths
    }

    /// Vertices whose capacity arcs cross the final residual cut.
    fn min_cut(&self) -> VertexSet {
        let mut seen = vec![false; self.out.len()];
        let mut queue = VecDeque::from([self.source]);
        seen[self.source] = true;
        while let Some(x) = queue.pop_front() {
            for &id in &self.out[x] {
                let arc = &self.arcs[id];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        let n = self.targets.len();
        (0..n)
            .filter(|&u| u != self.center && seen[2 * u] && (self.targets[u] || !seen[2 * u + 1]))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[Vertex]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn cycle_values() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(kappa(&c4, 0, &set(&[2])).unwrap(), 1);
        assert_eq!(kappa(&c4, 0, &set(&[1, 3])).unwrap(), 2);
        assert_eq!(kappa(&c4, 0, &set(&[])).unwrap(), 0);
        let k2 = Graph::path(2);
        assert_eq!(kappa(&k2, 0, &set(&[0, 1])).unwrap(), 2);
    }

    #[test]
    fn certificates_on_c4() {
        let c4 = Graph::cycle(4).unwrap();
        match is_k_linked(&c4, 0, &set(&[2]), 2).unwrap() {
            Linkage::Separated(w) => {
                assert!(w.separator.len() <= 1);
                w.validate(&c4, 0, &set(&[2]), 2).unwrap();
            }
            other => panic!("expected a separator, got {other:?}"),
        }
        match is_k_linked(&c4, 0, &set(&[1, 3]), 2).unwrap() {
            Linkage::Linked(fan) => {
                assert_eq!(fan.paths, vec![vec![0, 1], vec![0, 3]]);
                fan.validate(&c4, &set(&[1, 3])).unwrap();
            }
            other => panic!("expected a fan, got {other:?}"),
        }
        match is_k_linked(&c4, 0, &set(&[2]), 0).unwrap() {
            Linkage::Linked(fan) => assert!(fan.paths.is_empty()),
            other => panic!("expected the empty fan, got {other:?}"),
        }
    }

    #[test]
    fn self_path_in_certificates() {
        let p3 = Graph::path(3);
        let t = set(&[0, 2]);
        match is_k_linked(&p3, 0, &t, 2).unwrap() {
            Linkage::Linked(fan) => {
                assert_eq!(fan.paths[0], vec![0]);
                fan.validate(&p3, &t).unwrap();
            }
            other => panic!("{other:?}"),
        }
        match is_k_linked(&p3, 0, &t, 3).unwrap() {
            Linkage::Separated(w) => {
                assert!(w.self_path);
                w.validate(&p3, 0, &t, 3).unwrap();
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn paths_stop_at_first_target() {
        // 0 - 1 - 2 with both 1 and 2 targets: the fan has one path to 1.
        let p3 = Graph::path(3);
        assert_eq!(kappa(&p3, 0, &set(&[1, 2])).unwrap(), 1);
    }

    #[test]
    fn rejects_unknown_vertices() {
        let p3 = Graph::path(3);
        assert!(kappa(&p3, 7, &set(&[1])).is_err());
        assert!(kappa(&p3, 0, &set(&[9])).is_err());
    }

    #[test]
    fn validate_catches_bad_fans() {
        let c4 = Graph::cycle(4).unwrap();
        let t = set(&[2]);
        let shared = Fan {
            center: 0,
            paths: vec![vec![0, 1, 2], vec![0, 3, 2]],
        };
        assert!(shared.validate(&c4, &t).is_err());
        let not_edge = Fan {
            center: 0,
            paths: vec![vec![0, 2]],
        };
        assert!(not_edge.validate(&c4, &t).is_err());
    }
}
