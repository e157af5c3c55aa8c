//! The excess calculus: `pt`, `ms`, `ex`, built-in strongly
//! lambda-extendible properties, divergence witnesses, `inf_AK`, and
//! exhaustive axiom checking.
//!
//! For a connected graph on `n` vertices and `m` edges,
//! `pt = lambda*m + (1-lambda)/2*(n-1)` is the guaranteed number of edges of
//! some spanning subgraph with the property; `ms` is the actual maximum and
//! `ex = ms - pt >= 0` the excess. All arithmetic is exact.

use crate::blocks::block_decomposition;
use crate::graph::{Edge, Graph, GraphClass, Orientation, VertexId};
use crate::{rat, Error, Rat, Result};
use num_traits::Zero;
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

/// The extendibility parameter, an exact rational in the open interval (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Lambda(Rat);

impl Lambda {
    pub fn new(value: Rat) -> Result<Lambda> {
        if value <= Rat::zero() || value >= Rat::from_integer(1) {
            return Err(Error::LambdaOutOfRange(value));
        }
        Ok(Lambda(value))
    }

    pub fn value(&self) -> Rat {
        self.0
    }

    /// `(1 - lambda) / 2`, the excess of a single edge.
    pub fn half_complement(&self) -> Rat {
        (Rat::from_integer(1) - self.0) / 2
    }

    pub fn is_half(&self) -> bool {
        self.0 == rat(1, 2)
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Membership machinery behind a property.
#[derive(Clone)]
pub enum PropertyKind {
    Bipartite,
    QColorable(u32),
    AcyclicOriented,
    Custom(Arc<dyn Fn(&Graph) -> bool + Send + Sync>),
}

impl fmt::Debug for PropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyKind::Bipartite => write!(f, "Bipartite"),
            PropertyKind::QColorable(q) => write!(f, "QColorable({q})"),
            PropertyKind::AcyclicOriented => write!(f, "AcyclicOriented"),
            PropertyKind::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// A strongly lambda-extendible property: lambda, graph class, a decidable
/// membership oracle, and declared flags. The flags are validated by
/// [`check_axioms`] and [`is_hereditary_upto`], never assumed.
#[derive(Debug, Clone)]
pub struct PropertySpec {
    name: String,
    lambda: Lambda,
    graph_class: GraphClass,
    declared_hereditary: bool,
    kind: PropertyKind,
}

impl PropertySpec {
    /// Bipartite graphs; lambda = 1/2, simple class.
    pub fn bipartite() -> PropertySpec {
        PropertySpec {
            name: "bipartite".into(),
            lambda: Lambda::new(rat(1, 2)).unwrap(),
            graph_class: GraphClass::Simple,
            declared_hereditary: true,
            kind: PropertyKind::Bipartite,
        }
    }

    /// q-colorable graphs; lambda = 1 - 1/q, simple class. Requires q >= 2.
    pub fn q_colorable(q: u32) -> Result<PropertySpec> {
        if q < 2 {
            return Err(Error::InvalidInstance(format!("qcol requires q >= 2, got {q}")));
        }
        Ok(PropertySpec {
            name: format!("qcol:{q}"),
            lambda: Lambda::new(Rat::from_integer(1) - rat(1, q as i64)).unwrap(),
            graph_class: GraphClass::Simple,
            declared_hereditary: true,
            kind: PropertyKind::QColorable(q),
        })
    }

    /// Acyclic oriented graphs; lambda = 1/2, oriented class.
    pub fn acyclic_oriented() -> PropertySpec {
        PropertySpec {
            name: "acyclic-oriented".into(),
            lambda: Lambda::new(rat(1, 2)).unwrap(),
            graph_class: GraphClass::Oriented,
            declared_hereditary: true,
            kind: PropertyKind::AcyclicOriented,
        }
    }

    /// A user-supplied membership oracle. The oracle must be total and
    /// deterministic over the declared class.
    pub fn custom(
        name: impl Into<String>,
        lambda: Lambda,
        graph_class: GraphClass,
        declared_hereditary: bool,
        oracle: impl Fn(&Graph) -> bool + Send + Sync + 'static,
    ) -> PropertySpec {
        PropertySpec {
            name: name.into(),
            lambda,
            graph_class,
            declared_hereditary,
            kind: PropertyKind::Custom(Arc::new(oracle)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lambda(&self) -> Lambda {
        self.lambda
    }

    pub fn graph_class(&self) -> GraphClass {
        self.graph_class
    }

    pub fn declared_hereditary(&self) -> bool {
        self.declared_hereditary
    }

    pub fn kind(&self) -> &PropertyKind {
        &self.kind
    }

    /// Decides membership of `g`.
    pub fn membership(&self, g: &Graph) -> bool {
        match &self.kind {
            PropertyKind::Bipartite => is_bipartite(g),
            PropertyKind::QColorable(q) => is_q_colorable(g, *q),
            PropertyKind::AcyclicOriented => is_acyclic(g),
            PropertyKind::Custom(f) => f(g),
        }
    }
}

fn is_bipartite(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut color = vec![u8::MAX; n];
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    stack.push(w);
                } else if color[w] == color[v] {
                    return false;
                }
            }
        }
    }
    true
}

fn is_q_colorable(g: &Graph, q: u32) -> bool {
    let n = g.vertex_count();
    let mut colors: Vec<u32> = vec![u32::MAX; n];
    // Backtracking with canonical color introduction order.
    fn go(g: &Graph, colors: &mut Vec<u32>, v: usize, used: u32, q: u32) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        let limit = (used + 1).min(q);
        for c in 0..limit {
            if g.neighbors(v).iter().all(|&w| colors[w] != c) {
                colors[v] = c;
                if go(g, colors, v + 1, used.max(c + 1), q) {
                    return true;
                }
                colors[v] = u32::MAX;
            }
        }
        false
    }
    go(g, &mut colors, 0, 0, q)
}

fn is_acyclic(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut out_adj = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for (from, to) in g.arcs() {
        out_adj[from].push(to);
        indeg[to] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop() {
        seen += 1;
        for &w in &out_adj[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    seen == n
}

/// The Poljak-Turzik guarantee `lambda*m + (1-lambda)/2*(n-1)` for a
/// connected graph with `n >= 1` vertices and `m` edges.
pub fn pt(n: u64, m: u64, lambda: Lambda) -> Rat {
    debug_assert!(n >= 1);
    lambda.value() * Rat::from_integer(m as i64)
        + lambda.half_complement() * Rat::from_integer(n as i64 - 1)
}

/// `pt` generalized to graphs with `c` components:
/// `lambda*m + (1-lambda)/2*(n-c)`.
pub fn pt_components(n: u64, m: u64, c: u64, lambda: Lambda) -> Rat {
    lambda.value() * Rat::from_integer(m as i64)
        + lambda.half_complement() * Rat::from_integer(n as i64 - c as i64)
}

/// Default cap on block edges for the generic (membership-driven) search.
pub const GENERIC_EDGE_CAP: usize = 20;
const BIPARTITE_VERTEX_CAP: usize = 20;
const QCOL_VERTEX_CAP: usize = 14;
const ACYCLIC_VERTEX_CAP: usize = 20;

/// Largest number of edges of a spanning subgraph of `g` with the property.
/// Computed block by block and summed; sound by cut-vertex additivity.
pub fn ms(g: &Graph, pi: &PropertySpec) -> Result<u64> {
    ms_with_edge_cap(g, pi, GENERIC_EDGE_CAP)
}

/// [`ms`] with an explicit cap on block edge counts for the generic search
/// path (built-in properties use closed-form maximizers instead).
pub fn ms_with_edge_cap(g: &Graph, pi: &PropertySpec, edge_cap: usize) -> Result<u64> {
    let mut total = 0u64;
    for block in &block_decomposition(g).blocks {
        let (sub, _) = g.induced_subgraph(block);
        total += block_ms(&sub, pi, edge_cap)?;
    }
    Ok(total)
}

fn block_ms(g: &Graph, pi: &PropertySpec, edge_cap: usize) -> Result<u64> {
    let m = g.edge_count();
    if m == 0 {
        return Ok(0);
    }
    match &pi.kind {
        PropertyKind::Bipartite => {
            check_vertex_cap(g, BIPARTITE_VERTEX_CAP)?;
            Ok(m as u64 - min_monochromatic(g, 2))
        }
        PropertyKind::QColorable(q) => {
            check_vertex_cap(g, QCOL_VERTEX_CAP)?;
            Ok(m as u64 - min_monochromatic(g, *q))
        }
        PropertyKind::AcyclicOriented => {
            check_vertex_cap(g, ACYCLIC_VERTEX_CAP)?;
            Ok(max_acyclic_edges(g))
        }
        PropertyKind::Custom(_) => {
            if m > edge_cap {
                return Err(Error::BlockTooLarge { edges: m, cap: edge_cap });
            }
            Ok(generic_ms(g, pi))
        }
    }
}

fn check_vertex_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.vertex_count() > cap {
        return Err(Error::BlockTooLarge { edges: g.edge_count(), cap: cap * (cap - 1) / 2 });
    }
    Ok(())
}

/// Table of edge counts inside every vertex subset, indexed by bitmask.
fn edges_within_table(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut nbr = vec![0u32; n];
    for e in g.edges() {
        nbr[e.u] |= 1 << e.v;
        nbr[e.v] |= 1 << e.u;
    }
    let mut table = vec![0u32; 1 << n];
    for mask in 1u32..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        table[mask as usize] = table[rest as usize] + (nbr[low] & rest).count_ones();
    }
    table
}

/// Minimum number of monochromatic edges over all partitions of the
/// vertices into at most `q` classes.
fn min_monochromatic(g: &Graph, q: u32) -> u64 {
    let n = g.vertex_count();
    let table = edges_within_table(g);
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut best = table[full as usize];
    // Each recursion level peels off one class pinned to the lowest
    // remaining vertex, so unordered partitions are enumerated once.
    fn go(table: &[u32], remaining: u32, classes_left: u32, acc: u32, best: &mut u32) {
        if acc >= *best {
            return;
        }
        if remaining == 0 {
            *best = acc;
            return;
        }
        if classes_left == 1 {
            let total = acc + table[remaining as usize];
            if total < *best {
                *best = total;
            }
            return;
        }
        let pin = remaining & remaining.wrapping_neg();
        let rest = remaining ^ pin;
        let mut sub = rest;
        loop {
            let class = sub | pin;
            go(table, remaining ^ class, classes_left - 1, acc + table[class as usize], best);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    go(&table, full, q, 0, &mut best);
    best as u64
}

/// Maximum number of arcs in an acyclic spanning subgraph: the best vertex
/// ordering keeps exactly the forward arcs.
fn max_acyclic_edges(g: &Graph) -> u64 {
    let n = g.vertex_count();
    let mut in_mask = vec![0u32; n];
    for (from, to) in g.arcs() {
        in_mask[to] |= 1 << from;
    }
    let full = (1usize << n) - 1;
    let mut f = vec![0u32; full + 1];
    for mask in 1..=full {
        let mut best = 0;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let without = mask & !(1 << v);
            let gain = f[without] + (in_mask[v] & without as u32).count_ones();
            best = best.max(gain);
        }
        f[mask] = best;
    }
    f[full] as u64
}

/// Membership-driven exhaustive search over edge subsets.
fn generic_ms(g: &Graph, pi: &PropertySpec) -> u64 {
    let m = g.edge_count();
    let mut best = 0u64;
    for mask in 0u64..(1 << m) {
        let size = mask.count_ones() as u64;
        if size <= best && mask != 0 {
            continue;
        }
        let edges: Vec<Edge> =
            g.edges().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e).collect();
        let h = Graph::new(g.vertex_count(), g.class(), edges).expect("edge subset is valid");
        if pi.membership(&h) {
            best = best.max(size);
        }
    }
    best
}

/// The excess bookkeeping of one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExcessValue {
    pub ms: u64,
    pub pt: Rat,
    pub ex: Rat,
}

/// `ex(g) = ms(g) - pt(g)` for a connected graph; nonnegative by the
/// Poljak-Turzik theorem.
pub fn excess(g: &Graph, pi: &PropertySpec) -> Result<ExcessValue> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    excess_any(g, pi)
}

/// Excess extended additively to disconnected graphs: `pt` charges
/// `(n - c)` half-complements, so `ex` is the sum over components.
pub fn excess_any(g: &Graph, pi: &PropertySpec) -> Result<ExcessValue> {
    let ms = ms(g, pi)?;
    let c = g.connected_components().len() as u64;
    let pt = pt_components(g.vertex_count() as u64, g.edge_count() as u64, c, pi.lambda());
    Ok(ExcessValue { ms, pt, ex: Rat::from_integer(ms as i64) - pt })
}

/// Enumeration caps for clique variants.
pub fn clique_cap(pi: &PropertySpec) -> usize {
    match (pi.graph_class(), &pi.kind) {
        (GraphClass::Simple, PropertyKind::Custom(_)) => 6,
        (GraphClass::Simple, _) => 8,
        _ => 5,
    }
}

/// Runs `f` over every variant of the given simple underlying graph in the
/// given class (all orientations, or all labellings).
pub fn for_each_variant(underlying: &Graph, class: GraphClass, f: &mut dyn FnMut(&Graph)) {
    let n = underlying.vertex_count();
    let pairs: Vec<(VertexId, VertexId)> = underlying.edges().iter().map(|e| (e.u, e.v)).collect();
    let m = pairs.len();
    match class {
        GraphClass::Simple => f(underlying),
        GraphClass::Oriented => {
            for mask in 0u64..(1 << m) {
                let edges: Vec<Edge> = pairs
                    .iter()
                    .enumerate()
                    .map(|(i, &(u, v))| {
                        if mask >> i & 1 == 1 {
                            Edge::arc(v, u)
                        } else {
                            Edge::arc(u, v)
                        }
                    })
                    .collect();
                f(&Graph::new(n, class, edges).expect("valid orientation"))
            }
        }
        GraphClass::Labelled(alphabet) => {
            let mut digits = vec![0u32; m];
            loop {
                let edges: Vec<Edge> = pairs
                    .iter()
                    .zip(&digits)
                    .map(|(&(u, v), &l)| Edge::labelled(u, v, l))
                    .collect();
                f(&Graph::new(n, class, edges).expect("valid labelling"));
                let mut i = 0;
                while i < m {
                    digits[i] += 1;
                    if digits[i] < alphabet {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if i == m || m == 0 {
                    break;
                }
            }
        }
    }
}

/// Minimum excess over all variants of the complete graph on `j` vertices.
/// For the simple class this is just `ex(K_j)`.
pub fn ex_clique(j: usize, pi: &PropertySpec) -> Result<Rat> {
    let cap = clique_cap(pi);
    if j > cap {
        return Err(Error::CliqueTooLarge { vertices: j, cap });
    }
    let underlying = Graph::complete(j);
    let mut min: Option<Rat> = None;
    let mut err = None;
    for_each_variant(&underlying, pi.graph_class(), &mut |variant| {
        if err.is_some() {
            return;
        }
        match excess(variant, pi) {
            Ok(v) => min = Some(min.map_or(v.ex, |m: Rat| m.min(v.ex))),
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(min.expect("at least one variant"))
}

/// Divergence witness `(j, a)`: the smallest clique size within the cap
/// whose worst-case excess strictly exceeds `(1-lambda)/2`, together with
/// the slack `a = ex(K_j) - (1-lambda)/2`. `None` when no clique within the
/// cap qualifies (as for bipartite).
pub fn divergence_witness(pi: &PropertySpec) -> Result<Option<(usize, Rat)>> {
    let threshold = pi.lambda().half_complement();
    for j in 2..=clique_cap(pi) {
        let ex = ex_clique(j, pi)?;
        if ex > threshold {
            return Ok(Some((j, ex - threshold)));
        }
    }
    Ok(None)
}

/// Enumerates the underlying graphs of all connected almost-cliques on `i`
/// vertices, up to isomorphism: a clique on `i - 1` vertices plus an apex
/// attached to `t` of them, `1 <= t <= i - 1`.
fn for_each_almost_clique_underlying(i: usize, f: &mut dyn FnMut(&Graph)) {
    debug_assert!(i >= 2);
    for t in 1..=i - 1 {
        let mut edges = Vec::new();
        for u in 0..i - 1 {
            for v in u + 1..i - 1 {
                edges.push((u, v));
            }
        }
        for u in 0..t {
            edges.push((u, i - 1));
        }
        f(&Graph::simple(i, &edges).expect("valid almost-clique"));
    }
}

/// `inf_AK`: the minimum of the witness slack `a` and the smallest positive
/// excess over all variants of connected almost-cliques on 2..=j vertices.
/// Strictly positive whenever `(j, a)` is a valid divergence witness.
pub fn inf_ak(pi: &PropertySpec, j: usize, a: Rat) -> Result<Rat> {
    let mut min = a;
    let mut err = None;
    for i in 2..=j {
        for_each_almost_clique_underlying(i, &mut |underlying| {
            for_each_variant(underlying, pi.graph_class(), &mut |variant| {
                if err.is_some() {
                    return;
                }
                match excess(variant, pi) {
                    Ok(v) => {
                        if v.ex > Rat::zero() && v.ex < min {
                            min = v.ex;
                        }
                    }
                    Err(e) => err = Some(e),
                }
            });
        });
    }
    if let Some(e) = err {
        return Err(e);
    }
    Ok(min)
}

/// The constants a divergent property yields: witness `(j, a)` with
/// `ex(K_j) = (1-lambda)/2 + a`, and `inf_AK > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyConstants {
    pub lambda: Lambda,
    pub j: usize,
    pub a: Rat,
    pub inf_ak: Rat,
}

impl PropertyConstants {
    pub fn derive(pi: &PropertySpec) -> Result<PropertyConstants> {
        let (j, a) = divergence_witness(pi)?
            .ok_or_else(|| Error::NoDivergenceWitness(pi.name().to_string()))?;
        let inf_ak = inf_ak(pi, j, a)?;
        Ok(PropertyConstants { lambda: pi.lambda(), j, a, inf_ak })
    }
}

/// The cyclic orientation of the triangle (a directed 3-cycle).
pub fn cyclic_triangle() -> Graph {
    Graph::oriented(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
}

/// The transitive orientation of the triangle.
pub fn transitive_triangle() -> Graph {
    Graph::oriented(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
}

/// Whether an oriented graph on 3 vertices is a directed 3-cycle.
pub fn is_cyclic_triangle(g: &Graph) -> bool {
    if g.vertex_count() != 3 || g.edge_count() != 3 {
        return false;
    }
    let mut indeg = [0usize; 3];
    for (_, to) in g.arcs() {
        indeg[to] += 1;
    }
    indeg == [1, 1, 1]
}

/// Outcome of testing every variant of the triangle for membership.
#[derive(Debug, Clone)]
pub enum TriangleMembership {
    All,
    None,
    Partial(Vec<(Graph, bool)>),
}

impl TriangleMembership {
    pub fn all(&self) -> bool {
        matches!(self, TriangleMembership::All)
    }

    pub fn none(&self) -> bool {
        matches!(self, TriangleMembership::None)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            TriangleMembership::All => "All",
            TriangleMembership::None => "None",
            TriangleMembership::Partial(_) => "Partial",
        }
    }
}

/// Tests every variant of the triangle for membership. For oriented graphs
/// the two isomorphism classes are the cyclic and the transitive triangle.
pub fn triangle_membership(pi: &PropertySpec) -> TriangleMembership {
    let variants: Vec<Graph> = match pi.graph_class() {
        GraphClass::Oriented => vec![cyclic_triangle(), transitive_triangle()],
        class => {
            let mut out = Vec::new();
            for_each_variant(&Graph::complete(3), class, &mut |g| out.push(g.clone()));
            out
        }
    };
    let flags: Vec<(Graph, bool)> =
        variants.into_iter().map(|g| (g.clone(), pi.membership(&g))).collect();
    if flags.iter().all(|(_, b)| *b) {
        TriangleMembership::All
    } else if flags.iter().all(|(_, b)| !*b) {
        TriangleMembership::None
    } else {
        TriangleMembership::Partial(flags)
    }
}

/// Membership flags of the two oriented triangles `(cyclic, transitive)`.
pub fn oriented_triangle_flags(pi: &PropertySpec) -> (bool, bool) {
    (pi.membership(&cyclic_triangle()), pi.membership(&transitive_triangle()))
}

/// Runs `f` over every graph of the class on exactly `n` vertices
/// (including disconnected ones).
pub fn for_each_graph(n: usize, class: GraphClass, f: &mut dyn FnMut(&Graph)) {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| *p).collect();
        let underlying = Graph::simple(n, &edges).expect("valid underlying");
        for_each_variant(&underlying, class, f);
    }
}

/// Report of the exhaustive axiom check: counterexamples per axiom, empty
/// when the axiom holds on every graph within the size bound.
#[derive(Debug, Clone, Default, Serialize)]
pub struct AxiomReport {
    pub n_max: usize,
    pub graphs_checked: usize,
    pub inclusiveness: Vec<String>,
    pub block_additivity: Vec<String>,
    pub extension: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.inclusiveness.is_empty()
            && self.block_additivity.is_empty()
            && self.extension.is_empty()
    }
}

fn describe(g: &Graph) -> String {
    let edges: Vec<String> = g
        .edges()
        .iter()
        .map(|e| match (e.orientation, e.label) {
            (Some(Orientation::Forward), _) => format!("{}>{}", e.u, e.v),
            (Some(Orientation::Backward), _) => format!("{}<{}", e.u, e.v),
            (_, Some(l)) => format!("{}-{}:{}", e.u, e.v, l),
            _ => format!("{}-{}", e.u, e.v),
        })
        .collect();
    format!("n={} [{}]", g.vertex_count(), edges.join(" "))
}

/// Exhaustively checks the three defining axioms on all graphs of the
/// property's class with at most `n_max` vertices:
///
/// 1. inclusiveness — the one-vertex graph and every variant of a single
///    edge belong to the property;
/// 2. block additivity — a graph belongs iff every one of its blocks does;
/// 3. strong lambda-subgraph extension — for every bipartition whose two
///    sides belong, some subgraph keeps both sides entirely plus at least a
///    lambda fraction of the crossing edges (unit weights).
pub fn check_axioms(pi: &PropertySpec, n_max: usize) -> AxiomReport {
    let mut report = AxiomReport { n_max, ..Default::default() };

    let k1 = Graph::new(1, pi.graph_class(), vec![]).expect("single vertex");
    if !pi.membership(&k1) {
        report.inclusiveness.push(describe(&k1));
    }
    for_each_variant(&Graph::complete(2), pi.graph_class(), &mut |g| {
        if !pi.membership(g) {
            report.inclusiveness.push(describe(g));
        }
    });

    for n in 1..=n_max {
        for_each_graph(n, pi.graph_class(), &mut |g| {
            report.graphs_checked += 1;
            let whole = pi.membership(g);
            let blockwise = block_decomposition(g)
                .blocks
                .iter()
                .all(|b| pi.membership(&g.induced_subgraph(b).0));
            if whole != blockwise {
                report.block_additivity.push(format!(
                    "{} (graph {} property, blocks {})",
                    describe(g),
                    if whole { "has" } else { "lacks" },
                    if blockwise { "have" } else { "lack" },
                ));
            }
            if let Some(example) = extension_counterexample(g, pi) {
                report.extension.push(example);
            }
        });
    }
    report
}

/// Checks the strong lambda-subgraph extension property on one graph;
/// returns a description of a violated bipartition if any.
fn extension_counterexample(g: &Graph, pi: &PropertySpec) -> Option<String> {
    let n = g.vertex_count();
    if n < 2 {
        return None;
    }
    let all_edges = g.edges();
    for side_mask in 1u32..(1 << (n - 1)) {
        let side1: Vec<VertexId> = (0..n).filter(|v| side_mask >> v & 1 == 1).collect();
        let side2: Vec<VertexId> = (0..n).filter(|v| side_mask >> v & 1 == 0).collect();
        let (g1, _) = g.induced_subgraph(&side1);
        let (g2, _) = g.induced_subgraph(&side2);
        if !pi.membership(&g1) || !pi.membership(&g2) {
            continue;
        }
        let in_side1 = |v: VertexId| side_mask >> v & 1 == 1;
        let within: Vec<Edge> = all_edges
            .iter()
            .filter(|e| in_side1(e.u) == in_side1(e.v))
            .copied()
            .collect();
        let cross: Vec<Edge> = all_edges
            .iter()
            .filter(|e| in_side1(e.u) != in_side1(e.v))
            .copied()
            .collect();
        let required = (pi.lambda().value() * Rat::from_integer(cross.len() as i64)).ceil();
        let required = required.to_integer().max(0) as usize;
        let mut found = false;
        'subsets: for mask in 0u64..(1 << cross.len()) {
            if (mask.count_ones() as usize) < required {
                continue;
            }
            let mut edges = within.clone();
            edges.extend(
                cross.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e),
            );
            let h = Graph::new(n, g.class(), edges).expect("valid subgraph");
            if pi.membership(&h) {
                found = true;
                break 'subsets;
            }
        }
        if !found {
            return Some(format!(
                "{} with sides {:?} | {:?}: no extension keeps {}/{} crossing edges",
                describe(g),
                side1,
                side2,
                required,
                cross.len()
            ));
        }
    }
    None
}

/// Exhaustively tests heredity on all graphs of the class with at most
/// `n_max` vertices. Checking single-vertex deletions suffices: working up
/// by size covers deeper induced subgraphs inductively.
pub fn is_hereditary_upto(pi: &PropertySpec, n_max: usize) -> bool {
    hereditary_counterexample(pi, n_max).is_none()
}

/// A member graph and a vertex whose deletion leaves a non-member, if any.
pub fn hereditary_counterexample(pi: &PropertySpec, n_max: usize) -> Option<(Graph, VertexId)> {
    for n in 2..=n_max {
        let mut found = None;
        for_each_graph(n, pi.graph_class(), &mut |g| {
            if found.is_some() || !pi.membership(g) {
                return;
            }
            for v in 0..n {
                let (h, _) = g.delete_vertices(&[v]);
                if !pi.membership(&h) {
                    found = Some((g.clone(), v));
                    return;
                }
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}
