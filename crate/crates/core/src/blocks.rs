//! Block decomposition: maximal 2-connected subgraphs (blocks), cut
//! vertices, the four-way block classification of `G - S`, forests of
//! cliques, and dangling components.
//!
//! Isolated vertices count as degenerate single-vertex blocks, so the
//! isolated class covers single-vertex components.

use crate::graph::{Graph, VertexId};
use crate::{Error, Result};
use serde::Serialize;

/// Blocks and cut vertices of a graph, before any classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    /// Each block as a sorted vertex list; blocks sorted lexicographically.
    pub blocks: Vec<Vec<VertexId>>,
    /// Sorted cut vertices.
    pub cut_vertices: Vec<VertexId>,
}

/// Four-way classification of the blocks of `G - S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BlockClass {
    /// No cut vertex in the block: a whole component.
    B0,
    /// Exactly one cut vertex.
    B1,
    /// Exactly two cut vertices and exactly two block neighbors.
    B2,
    /// Everything else: at least two cut vertices and at least three
    /// block neighbors.
    BGe3,
}

/// Classified block decomposition of `G - S`, reported in the vertex ids of
/// the original graph `G`.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub blocks: Vec<Vec<VertexId>>,
    /// Cut vertices `Q` of `G - S`.
    pub cut_vertices: Vec<VertexId>,
    pub classes: Vec<BlockClass>,
    /// `int(B) = V(B) \ Q` per block.
    pub interiors: Vec<Vec<VertexId>>,
    /// Indices of the block neighbors (blocks sharing a cut vertex).
    pub neighbors: Vec<Vec<usize>>,
}

impl BlockDecomposition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block counts as `[|B0|, |B1|, |B2|, |B>=3|]`.
    pub fn class_counts(&self) -> [usize; 4] {
        let mut counts = [0; 4];
        for c in &self.classes {
            counts[*c as usize] += 1;
        }
        counts
    }

    pub fn is_cut_vertex(&self, v: VertexId) -> bool {
        self.cut_vertices.binary_search(&v).is_ok()
    }

    pub fn blocks_in_class(&self, class: BlockClass) -> impl Iterator<Item = usize> + '_ {
        self.classes.iter().enumerate().filter(move |(_, c)| **c == class).map(|(i, _)| i)
    }
}

/// Iterative Tarjan over one graph: biconnected components plus cut-vertex
/// flags. Isolated vertices become singleton blocks.
fn biconnected(g: &Graph) -> (Vec<Vec<VertexId>>, Vec<bool>) {
    let n = g.vertex_count();
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0usize;
    let mut blocks: Vec<Vec<VertexId>> = Vec::new();
    let mut edge_stack: Vec<(VertexId, VertexId)> = Vec::new();

    struct Frame {
        v: VertexId,
        parent: VertexId,
        idx: usize,
    }

    for start in 0..n {
        if disc[start] != UNSEEN {
            continue;
        }
        disc[start] = timer;
        low[start] = timer;
        timer += 1;
        if g.degree(start) == 0 {
            blocks.push(vec![start]);
            continue;
        }
        let mut root_children = 0usize;
        let mut frames = vec![Frame { v: start, parent: usize::MAX, idx: 0 }];
        while let Some(top) = frames.last_mut() {
            let v = top.v;
            if top.idx < g.neighbors(v).len() {
                let w = g.neighbors(v)[top.idx];
                top.idx += 1;
                if w == top.parent {
                    continue;
                }
                if disc[w] == UNSEEN {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == start {
                        root_children += 1;
                    }
                    frames.push(Frame { v: w, parent: v, idx: 0 });
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(up) = frames.last() {
                    let u = up.v;
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        // u separates v's subtree: the edges above (u, v) on
                        // the stack form one block.
                        let mut verts = Vec::new();
                        while let Some(&(a, _)) = edge_stack.last() {
                            if disc[a] >= disc[v] {
                                let (a, b) = edge_stack.pop().unwrap();
                                verts.push(a);
                                verts.push(b);
                            } else {
                                break;
                            }
                        }
                        let (a, b) = edge_stack.pop().expect("tree edge (u, v) on stack");
                        debug_assert_eq!((a, b), (u, v));
                        verts.push(a);
                        verts.push(b);
                        verts.sort_unstable();
                        verts.dedup();
                        blocks.push(verts);
                        if u != start {
                            is_cut[u] = true;
                        }
                    }
                }
            }
        }
        if root_children >= 2 {
            is_cut[start] = true;
        }
    }
    blocks.sort();
    (blocks, is_cut)
}

/// Cut vertices of `g`, sorted.
pub fn cut_vertices(g: &Graph) -> Vec<VertexId> {
    let (_, is_cut) = biconnected(g);
    is_cut.iter().enumerate().filter(|(_, c)| **c).map(|(v, _)| v).collect()
}

/// All blocks and the cut-vertex set of `g`; `g` may be disconnected.
pub fn block_decomposition(g: &Graph) -> BlockStructure {
    let (blocks, is_cut) = biconnected(g);
    let cut_vertices = is_cut.iter().enumerate().filter(|(_, c)| **c).map(|(v, _)| v).collect();
    BlockStructure { blocks, cut_vertices }
}

/// Decomposes `g - s` and classifies every block, reporting original ids.
pub fn classify_blocks(g: &Graph, s: &[VertexId]) -> BlockDecomposition {
    let (h, map) = g.delete_vertices(s);
    let mut inverse = vec![usize::MAX; h.vertex_count()];
    for (old, new) in map.iter().enumerate() {
        if let Some(new) = new {
            inverse[*new] = old;
        }
    }
    let structure = block_decomposition(&h);
    let blocks: Vec<Vec<VertexId>> = structure
        .blocks
        .iter()
        .map(|b| {
            let mut verts: Vec<VertexId> = b.iter().map(|&v| inverse[v]).collect();
            verts.sort_unstable();
            verts
        })
        .collect();
    let cut_vertices: Vec<VertexId> =
        structure.cut_vertices.iter().map(|&v| inverse[v]).collect();
    let is_q = |v: VertexId| cut_vertices.binary_search(&v).is_ok();

    // Block neighbors share exactly one vertex, necessarily a cut vertex.
    let mut blocks_at_cut: Vec<Vec<usize>> = vec![Vec::new(); cut_vertices.len()];
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            if let Ok(q) = cut_vertices.binary_search(&v) {
                blocks_at_cut[q].push(i);
            }
        }
    }
    let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); blocks.len()];
    for at in &blocks_at_cut {
        for &i in at {
            for &j in at {
                if i != j {
                    neighbors[i].push(j);
                }
            }
        }
    }
    for list in &mut neighbors {
        list.sort_unstable();
        list.dedup();
    }

    let mut classes = Vec::with_capacity(blocks.len());
    let mut interiors = Vec::with_capacity(blocks.len());
    for (i, b) in blocks.iter().enumerate() {
        let q_count = b.iter().filter(|&&v| is_q(v)).count();
        let class = match q_count {
            0 => BlockClass::B0,
            1 => BlockClass::B1,
            2 if neighbors[i].len() == 2 => BlockClass::B2,
            _ => BlockClass::BGe3,
        };
        classes.push(class);
        interiors.push(b.iter().copied().filter(|&v| !is_q(v)).collect());
    }
    BlockDecomposition { blocks, cut_vertices, classes, interiors, neighbors }
}

/// True iff every block of every component of the underlying graph is a
/// clique.
pub fn is_forest_of_cliques(g: &Graph) -> bool {
    block_decomposition(g).blocks.iter().all(|b| {
        let within = b
            .iter()
            .map(|&v| g.neighbors(v).iter().filter(|w| b.binary_search(w).is_ok()).count())
            .sum::<usize>()
            / 2;
        within == b.len() * (b.len() - 1) / 2
    })
}

/// A component of `G - {v}` that together with its root `v` induces a
/// 2-connected almost-clique.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DanglingComponent {
    pub root: VertexId,
    /// The component `X`, sorted; `G[X + root]` is the dangling subgraph.
    pub body: Vec<VertexId>,
}

impl DanglingComponent {
    pub fn vertex_count(&self) -> usize {
        self.body.len() + 1
    }

    /// The induced subgraph `G[X + root]`.
    pub fn subgraph(&self, g: &Graph) -> Graph {
        let mut verts = self.body.clone();
        verts.push(self.root);
        g.induced_subgraph(&verts).0
    }
}

/// All dangling components of a connected graph: pairs `(v, X)` where `v` is
/// a cut vertex, `G[X]` is a component of `G - {v}`, and the underlying
/// graph of `G[X + v]` is a 2-connected almost-clique.
pub fn dangling_components(g: &Graph) -> Result<Vec<DanglingComponent>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut out = Vec::new();
    for v in cut_vertices(g) {
        let (h, map) = g.delete_vertices(&[v]);
        let mut inverse = vec![usize::MAX; h.vertex_count()];
        for (old, new) in map.iter().enumerate() {
            if let Some(new) = new {
                inverse[*new] = old;
            }
        }
        for comp in h.connected_components() {
            let mut body: Vec<VertexId> = comp.iter().map(|&w| inverse[w]).collect();
            body.sort_unstable();
            let mut verts = body.clone();
            verts.push(v);
            let (sub, _) = g.induced_subgraph(&verts);
            let sub = sub.underlying();
            if sub.is_biconnected() && sub.is_almost_clique().is_some() {
                out.push(DanglingComponent { root: v, body });
            }
        }
    }
    out.sort_by(|a, b| (a.root, &a.body).cmp(&(b.root, &b.body)));
    Ok(out)
}
