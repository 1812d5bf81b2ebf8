use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, Graph, Subgraph, Vertex, VertexSet};

/// A vector connectivity instance `(G, F, r)`.
///
/// Requirements may exceed degrees; such vertices simply have to be in
/// every solution. With an empty free set this is plain vector
/// connectivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    requirements: Vec<u32>,
    free: VertexSet,
}

impl Instance {
    pub fn new(graph: Graph, requirements: Vec<u32>, free: VertexSet) -> Result<Self> {
        if requirements.len() != graph.vertex_count() {
            return Err(Error::input(format!(
                "{} requirements for {} vertices",
                requirements.len(),
                graph.vertex_count()
            )));
        }
        graph.check_set(&free)?;
        Ok(Instance {
            graph,
            requirements,
            free,
        })
    }

    /// Instance without free vertices.
    pub fn without_free(graph: Graph, requirements: Vec<u32>) -> Result<Self> {
        Instance::new(graph, requirements, VertexSet::new())
    }

    /// Every vertex gets requirement `r`.
    pub fn uniform(graph: Graph, r: u32) -> Self {
        let n = graph.vertex_count();
        Instance::without_free(graph, vec![r; n]).expect("lengths agree")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn requirements(&self) -> &[u32] {
        &self.requirements
    }

    pub fn requirement(&self, v: Vertex) -> u32 {
        self.requirements[v]
    }

    pub fn free(&self) -> &VertexSet {
        &self.free
    }

    pub fn is_free(&self, v: Vertex) -> bool {
        self.free.contains(&v)
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Largest requirement, 0 for the empty graph.
    pub fn max_requirement(&self) -> u32 {
        self.requirements.iter().copied().max().unwrap_or(0)
    }

    pub fn set_requirement(&mut self, v: Vertex, r: u32) {
        self.requirements[v] = r;
    }

    pub fn make_free(&mut self, v: Vertex) {
        self.free.insert(v);
    }

    /// `(G[X], F ∩ X, r|X)` together with the relabeling back to `self`.
    pub fn restrict(&self, x: &VertexSet) -> Result<(Instance, Subgraph)> {
        let sub = induced_subgraph(&self.graph, x)?;
        let requirements = sub.parent.iter().map(|&v| self.requirements[v]).collect();
        let free = self
            .free
            .iter()
            .filter_map(|&v| sub.from_parent(v))
            .collect();
        let inst = Instance {
            graph: sub.graph.clone(),
            requirements,
            free,
        };
        Ok((inst, sub))
    }

    /// Vertices whose requirement exceeds every possible fan: `r(v) >
    /// deg(v) + [v ∈ F]`. They belong to every solution.
    pub fn forced_vertices(&self) -> VertexSet {
        self.graph
            .vertices()
            .filter(|&v| {
                self.requirements[v] as usize > self.graph.degree(v) + usize::from(self.is_free(v))
            })
            .collect()
    }
}
