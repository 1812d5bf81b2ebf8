//! Biconnected components and the block tree.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Blocks of a connected graph and how they hang together.
///
/// `blocks[i]` is sorted. `tree` is the bipartite block tree: for every block
/// it lists the cut vertices it contains, and `blocks_of` gives the reverse
/// direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Vec<Vertex>>,
    pub cut_vertices: VertexSet,
    /// Cut vertices contained in each block.
    pub tree: Vec<Vec<Vertex>>,
    /// Indices into `blocks` of the leaves of the block tree.
    pub leaf_blocks: Vec<usize>,
    blocks_of: Vec<Vec<usize>>,
}

impl BlockDecomposition {
    pub fn is_single_block(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Indices of the blocks containing `v`.
    pub fn blocks_of(&self, v: Vertex) -> &[usize] {
        &self.blocks_of[v]
    }

    /// The unique cut vertex of a leaf block.
    pub fn leaf_cut_vertex(&self, block: usize) -> Option<Vertex> {
        match self.tree[block].as_slice() {
            [v] => Some(*v),
            _ => None,
        }
    }

    pub fn block_set(&self, block: usize) -> VertexSet {
        self.blocks[block].iter().copied().collect()
    }
}

/// Shape of a single block, as far as the polynomial base solvers care.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Clique,
    Cycle,
    Other,
}

/// Classifies `G[block]`. `K1`, `K2` and `K3` count as cliques.
pub fn classify_block(g: &Graph, block: &[Vertex]) -> BlockKind {
    let k = block.len();
    let inside = |v: Vertex| block.binary_search(&v).is_ok();
    let degrees: Vec<usize> = block
        .iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&w| inside(w)).count())
        .collect();
    if degrees.iter().all(|&d| d + 1 == k) {
        BlockKind::Clique
    } else if k >= 3 && degrees.iter().all(|&d| d == 2) {
        // A block is 2-connected, so all-degree-2 means one cycle.
        BlockKind::Cycle
    } else {
        BlockKind::Other
    }
}

/// Hopcroft–Tarjan lowpoint decomposition, iterative so deep graphs do not
/// exhaust the stack.
pub fn block_decomposition(g: &Graph) -> Result<BlockDecomposition> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::input("block decomposition of the empty graph"));
    }
    if !g.is_connected() {
        return Err(Error::input("block decomposition needs a connected graph"));
    }

    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    if n == 1 {
        blocks.push(vec![0]);
    } else {
        const UNSEEN: usize = usize::MAX;
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut stack: Vec<Vertex> = Vec::new();
        // (vertex, parent, next neighbour index)
        let mut frames: Vec<(Vertex, Vertex, usize)> = vec![(0, UNSEEN, 0)];
        let mut time = 0;
        disc[0] = 0;
        low[0] = 0;
        stack.push(0);

        while let Some(frame) = frames.last_mut() {
            let (v, parent, idx) = *frame;
            if idx < g.degree(v) {
                frame.2 += 1;
                let w = g.neighbors(v)[idx];
                if disc[w] == UNSEEN {
                    time += 1;
                    disc[w] = time;
                    low[w] = time;
                    stack.push(w);
                    frames.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if parent == UNSEEN {
                    continue;
                }
                low[parent] = low[parent].min(low[v]);
                if low[v] >= disc[parent] {
                    let mut block = vec![parent];
                    loop {
                        let u = stack.pop().expect("dfs stack holds the subtree");
                        block.push(u);
                        if u == v {
                            break;
                        }
                    }
                    block.sort_unstable();
                    blocks.push(block);
                }
            }
        }
    }

    blocks.sort();
    let mut blocks_of = vec![Vec::new(); n];
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            blocks_of[v].push(i);
        }
    }
    let cut_vertices: VertexSet = (0..n).filter(|&v| blocks_of[v].len() >= 2).collect();
    let tree: Vec<Vec<Vertex>> = blocks
        .iter()
        .map(|b| {
            b.iter()
                .copied()
                .filter(|v| cut_vertices.contains(v))
                .collect()
        })
        .collect();
    let leaf_blocks = if blocks.len() >= 2 {
        (0..blocks.len()).filter(|&i| tree[i].len() == 1).collect()
    } else {
        Vec::new()
    };

    Ok(BlockDecomposition {
        blocks,
        cut_vertices,
        tree,
        leaf_blocks,
        blocks_of,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_splits_into_edges() {
        let d = block_decomposition(&Graph::path(3)).unwrap();
        assert_eq!(d.blocks, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(d.cut_vertices, [1].into_iter().collect());
        assert_eq!(d.leaf_blocks, vec![0, 1]);
        assert_eq!(d.leaf_cut_vertex(0), Some(1));
    }

    #[test]
    fn complete_graph_is_one_block() {
        let d = block_decomposition(&Graph::complete(4)).unwrap();
        assert_eq!(d.blocks, vec![vec![0, 1, 2, 3]]);
        assert!(d.cut_vertices.is_empty());
        assert!(d.leaf_blocks.is_empty());
    }

    #[test]
    fn triangle_with_pendant() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let d = block_decomposition(&g).unwrap();
        assert_eq!(d.blocks, vec![vec![0, 1, 2], vec![2, 3]]);
        assert_eq!(d.cut_vertices, [2].into_iter().collect());
        assert_eq!(classify_block(&g, &d.blocks[0]), BlockKind::Clique);
    }

    #[test]
    fn single_vertex_and_disconnected() {
        let d = block_decomposition(&Graph::new(1)).unwrap();
        assert_eq!(d.blocks, vec![vec![0]]);
        assert!(block_decomposition(&Graph::new(2)).is_err());
    }

    #[test]
    fn classification() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(classify_block(&c5, &[0, 1, 2, 3, 4]), BlockKind::Cycle);
        let k4 = Graph::complete(4);
        assert_eq!(classify_block(&k4, &[0, 1, 2, 3]), BlockKind::Clique);
        let mut edges: Vec<_> = k4.edges().collect();
        edges.retain(|&e| e != (0, 1));
        let diamond = Graph::from_edges(4, edges).unwrap();
        assert_eq!(classify_block(&diamond, &[0, 1, 2, 3]), BlockKind::Other);
    }

    #[test]
    fn long_path_does_not_overflow() {
        let d = block_decomposition(&Graph::path(200_000)).unwrap();
        assert_eq!(d.blocks.len(), 199_999);
        assert_eq!(d.leaf_blocks.len(), 2);
    }
}
