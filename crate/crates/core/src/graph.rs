//! Graph representation for the working universe: simple underlying graphs
//! optionally carrying a per-edge orientation (oriented class) or a symbol
//! from a finite alphabet (labelled class), plus vertex surgery.
//!
//! Vertex identifiers are dense `0..n`. Surgery operations return a fresh
//! graph together with an old-id-to-new-id map so callers can translate
//! vertex sets they are tracking.

use crate::{Error, Result};
use serde::Serialize;

/// Dense vertex identifier.
pub type VertexId = usize;

/// Which universe the graph lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GraphClass {
    Simple,
    Oriented,
    /// Edges carry a symbol in `0..alphabet`.
    Labelled(u32),
}

impl GraphClass {
    pub fn name(&self) -> &'static str {
        match self {
            GraphClass::Simple => "simple",
            GraphClass::Oriented => "oriented",
            GraphClass::Labelled(_) => "labelled",
        }
    }
}

/// Direction tag on the stored edge `(u, v)` with `u < v`:
/// `Forward` is `u -> v`, `Backward` is `v -> u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Orientation {
    Forward,
    Backward,
}

impl Orientation {
    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::Forward => Orientation::Backward,
            Orientation::Backward => Orientation::Forward,
        }
    }
}

/// An undirected edge with optional class data. Endpoints satisfy `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub orientation: Option<Orientation>,
    pub label: Option<u32>,
}

impl Edge {
    pub fn simple(u: VertexId, v: VertexId) -> Edge {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        Edge { u, v, orientation: None, label: None }
    }

    /// An oriented edge `from -> to`.
    pub fn arc(from: VertexId, to: VertexId) -> Edge {
        let (u, v, orientation) = if from < to {
            (from, to, Orientation::Forward)
        } else {
            (to, from, Orientation::Backward)
        };
        Edge { u, v, orientation: Some(orientation), label: None }
    }

    pub fn labelled(u: VertexId, v: VertexId, label: u32) -> Edge {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        Edge { u, v, orientation: None, label: Some(label) }
    }

    /// For oriented edges, the `(tail, head)` pair of the arc.
    pub fn arc_endpoints(&self) -> Option<(VertexId, VertexId)> {
        self.orientation.map(|o| match o {
            Orientation::Forward => (self.u, self.v),
            Orientation::Backward => (self.v, self.u),
        })
    }

    /// The same edge with endpoints renamed through `map`; data carried along.
    fn renamed(&self, map: impl Fn(VertexId) -> VertexId) -> Edge {
        let (a, b) = (map(self.u), map(self.v));
        let (u, v, orientation) = if a < b {
            (a, b, self.orientation)
        } else {
            (b, a, self.orientation.map(Orientation::reversed))
        };
        Edge { u, v, orientation, label: self.label }
    }
}

/// A graph in the universe: simple underlying structure plus optional
/// per-edge orientation or label, as demanded by its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    class: GraphClass,
    edges: Vec<Edge>,
    adj: Vec<Vec<VertexId>>,
}

impl Graph {
    /// Builds a graph, validating the class invariants: no self-loops, no
    /// parallel edges, orientation/label data present exactly when the class
    /// demands it.
    pub fn new(n: usize, class: GraphClass, mut edges: Vec<Edge>) -> Result<Graph> {
        for e in &edges {
            if e.u >= n || e.v >= n {
                return Err(Error::VertexOutOfRange(e.u.max(e.v), n));
            }
            if e.u == e.v {
                return Err(Error::SelfLoop(e.u));
            }
            match class {
                GraphClass::Simple => {
                    if e.orientation.is_some() || e.label.is_some() {
                        return Err(Error::ClassMismatch(format!(
                            "simple graph edge {}-{} carries orientation/label data",
                            e.u, e.v
                        )));
                    }
                }
                GraphClass::Oriented => {
                    if e.orientation.is_none() || e.label.is_some() {
                        return Err(Error::ClassMismatch(format!(
                            "oriented graph edge {}-{} must carry exactly an orientation",
                            e.u, e.v
                        )));
                    }
                }
                GraphClass::Labelled(alphabet) => match e.label {
                    Some(l) if l < alphabet && e.orientation.is_none() => {}
                    _ => {
                        return Err(Error::ClassMismatch(format!(
                            "labelled graph edge {}-{} must carry a label below {}",
                            e.u, e.v, alphabet
                        )));
                    }
                },
            }
        }
        edges.sort_by_key(|e| (e.u, e.v));
        if let Some(w) = edges.windows(2).find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v)) {
            return Err(Error::ParallelEdge(w[0].u, w[0].v));
        }
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, class, edges, adj })
    }

    /// Simple graph from an undirected edge list.
    pub fn simple(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Graph> {
        Self::new(n, GraphClass::Simple, edges.iter().map(|&(u, v)| Edge::simple(u, v)).collect())
    }

    /// Oriented graph from a list of arcs `from -> to`.
    pub fn oriented(n: usize, arcs: &[(VertexId, VertexId)]) -> Result<Graph> {
        Self::new(n, GraphClass::Oriented, arcs.iter().map(|&(f, t)| Edge::arc(f, t)).collect())
    }

    /// Labelled graph from `(u, v, label)` triples.
    pub fn labelled(n: usize, alphabet: u32, edges: &[(VertexId, VertexId, u32)]) -> Result<Graph> {
        Self::new(
            n,
            GraphClass::Labelled(alphabet),
            edges.iter().map(|&(u, v, l)| Edge::labelled(u, v, l)).collect(),
        )
    }

    /// Complete graph on `n` vertices in the simple class.
    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::simple(n, &edges).expect("complete graph is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn class(&self) -> GraphClass {
        self.class
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u != v && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<&Edge> {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search_by_key(&(u, v), |e| (e.u, e.v)).ok().map(|i| &self.edges[i])
    }

    /// Arcs `(tail, head)` of an oriented graph, in stored edge order.
    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().filter_map(Edge::arc_endpoints)
    }

    /// The underlying simple graph (orientation and labels stripped).
    pub fn underlying(&self) -> Graph {
        Graph {
            n: self.n,
            class: GraphClass::Simple,
            edges: self
                .edges
                .iter()
                .map(|e| Edge { u: e.u, v: e.v, orientation: None, label: None })
                .collect(),
            adj: self.adj.clone(),
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.component_of(0).len() == self.n
    }

    fn component_of(&self, start: VertexId) -> Vec<VertexId> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![start];
        let mut out = Vec::new();
        seen[start] = true;
        while let Some(v) = stack.pop() {
            out.push(v);
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Connected components as sorted vertex lists, ordered by minimum vertex.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if !seen[s] {
                let comp = self.component_of(s);
                for &v in &comp {
                    seen[v] = true;
                }
                comps.push(comp);
            }
        }
        comps
    }

    /// Whether the underlying graph is complete.
    pub fn is_clique(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    /// A vertex whose deletion leaves a clique, if any. Every clique
    /// qualifies (any vertex serves as witness).
    pub fn is_almost_clique(&self) -> Option<VertexId> {
        (0..self.n).find(|&v| {
            let others: Vec<VertexId> = (0..self.n).filter(|&w| w != v).collect();
            others.iter().enumerate().all(|(i, &a)| others[i + 1..].iter().all(|&b| self.has_edge(a, b)))
        })
    }

    /// `n >= 2`, connected, and no cut vertex. A single edge counts.
    pub fn is_biconnected(&self) -> bool {
        self.n >= 2 && self.is_connected() && crate::blocks::cut_vertices(self).is_empty()
    }

    /// Induced subgraph on `verts` (need not be sorted); returns the graph
    /// and the old-id-to-new-id map.
    pub fn induced_subgraph(&self, verts: &[VertexId]) -> (Graph, Vec<Option<VertexId>>) {
        let mut keep = vec![false; self.n];
        for &v in verts {
            keep[v] = true;
        }
        let mut map = vec![None; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if keep[v] {
                map[v] = Some(next);
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep[e.u] && keep[e.v])
            .map(|e| e.renamed(|v| map[v].unwrap()))
            .collect();
        let g = Graph::new(next, self.class, edges).expect("induced subgraph of a valid graph");
        (g, map)
    }

    /// Deletes `verts`, compacting the remaining identifiers.
    pub fn delete_vertices(&self, verts: &[VertexId]) -> (Graph, Vec<Option<VertexId>>) {
        let mut drop = vec![false; self.n];
        for &v in verts {
            drop[v] = true;
        }
        let keep: Vec<VertexId> = (0..self.n).filter(|&v| !drop[v]).collect();
        self.induced_subgraph(&keep)
    }

    /// Merges two non-adjacent vertices with disjoint neighborhoods into one
    /// (the edges of both move to the merged vertex). Rejected when an edge
    /// or a common neighbor would create a parallel edge or loop.
    pub fn identify_vertices(
        &self,
        u1: VertexId,
        u2: VertexId,
    ) -> Result<(Graph, Vec<Option<VertexId>>)> {
        if u1 >= self.n || u2 >= self.n {
            return Err(Error::VertexOutOfRange(u1.max(u2), self.n));
        }
        if u1 == u2 {
            return Err(Error::IdentifyPrecondition(u1, u2, "same vertex".into()));
        }
        if self.has_edge(u1, u2) {
            return Err(Error::IdentifyPrecondition(u1, u2, "vertices are adjacent".into()));
        }
        if self.adj[u1].iter().any(|w| self.adj[u2].binary_search(w).is_ok()) {
            return Err(Error::IdentifyPrecondition(u1, u2, "neighborhoods intersect".into()));
        }
        let (keep, gone) = if u1 < u2 { (u1, u2) } else { (u2, u1) };
        let mut map = vec![None; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if v == gone {
                continue;
            }
            map[v] = Some(next);
            next += 1;
        }
        map[gone] = map[keep];
        let edges = self.edges.iter().map(|e| e.renamed(|v| map[v].unwrap())).collect();
        let g = Graph::new(next, self.class, edges)?;
        Ok((g, map))
    }
}
