//! The reduction rules, YES-thresholds, and case dispatch that turn a
//! gated instance into a verdict: a YES certificate, an equivalent kernel
//! of size polynomial in `k`, or an honest refusal.

use crate::blocks::{
    classify_blocks, dangling_components, is_forest_of_cliques, BlockClass, BlockDecomposition,
};
use crate::graph::{Graph, GraphClass, VertexId};
use crate::modulator::{
    greedy_modulator, exact_modulator, modulator_budget, Modulator, ModulatorMethod,
    EXACT_VERTEX_CAP,
};
use crate::properties::{
    excess, is_cyclic_triangle, oriented_triangle_flags, triangle_membership, PropertyConstants,
    PropertySpec,
};
use crate::{rat, Error, Rat, Result};
use num_traits::Zero;
use serde::Serialize;
use std::fmt;

/// A problem instance: connected graph, positive rational `k` whose
/// denominator divides 4, and the property.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub k: Rat,
    pub property: PropertySpec,
}

impl Instance {
    pub fn new(graph: Graph, k: Rat, property: PropertySpec) -> Result<Instance> {
        if graph.class() != property.graph_class() {
            return Err(Error::InvalidInstance(format!(
                "graph class {} does not match property class {}",
                graph.class().name(),
                property.graph_class().name()
            )));
        }
        if !graph.is_connected() {
            return Err(Error::InvalidInstance("graph must be connected".into()));
        }
        if k <= Rat::zero() {
            return Err(Error::InvalidInstance(format!("k must be positive, got {k}")));
        }
        if !(k * Rat::from_integer(4)).is_integer() {
            return Err(Error::InvalidInstance(format!("k must have denominator dividing 4, got {k}")));
        }
        Ok(Instance { graph, k, property })
    }
}

/// Which kernel-size regime an instance is handled under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KernelCase {
    Quadratic,
    Cubic,
}

/// All YES-thresholds, exact rationals in `k`, `lambda` and the property
/// constants. A count reaching its threshold certifies a YES-instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Thresholds {
    /// Dangling components after exhaustive zero-excess removal.
    pub t_dangling: Rat,
    /// Per-modulator-vertex star bound over block interiors.
    pub t_star: Rat,
    /// Total interior-neighbor incidences over the whole modulator.
    pub t_sneighbor: Rat,
    /// Isolated plus leaf blocks, hence components of `G - S`.
    pub t_components: Rat,
    /// Isolated, leaf, and branching blocks combined.
    pub t_nonpath: Rat,
    /// Blocks of `G - S` with positive excess.
    pub t_posblocks: Rat,
    /// Interior size of any single block (an integer by construction).
    pub t_interior: u64,
    /// Combined scaled size of blocks with at least `j` vertices.
    pub t_bigblocks: Rat,
    /// Per-modulator-vertex bound on cut vertices confined to zero-excess
    /// path blocks; cubic (oriented, lambda = 1/2) case only.
    pub t_q0: Rat,
}

impl Thresholds {
    pub fn new(c: &PropertyConstants, k: Rat) -> Thresholds {
        let one = Rat::from_integer(1);
        let lam = c.lambda.value();
        let inf = c.inf_ak;
        let a = c.a;
        let base = Rat::from_integer(16) / (one - lam) + Rat::from_integer(2) / inf;
        let six_k = Rat::from_integer(6) * k / (one - lam);
        let t_star = base * k - Rat::from_integer(2);
        let t_sneighbor = t_star * six_k;
        let t_dangling = k / inf;
        let t_components = t_sneighbor + t_dangling;
        let t_nonpath = Rat::from_integer(4) * t_components;
        let t_posblocks =
            (base * k - one) * Rat::from_integer(6) * k / (inf * (one - lam)) + k / (inf * inf)
                + (k - one) / inf;
        let t_interior = ((Rat::from_integer(4) * k / a + (one - lam) / (Rat::from_integer(2) * a))
            .ceil()
            .to_integer() as u64)
            * c.j as u64;
        let t_bigblocks = (base * k - one) * Rat::from_integer(6) * k / (a * (one - lam))
            + k / (a * inf)
            + (k - one) / a;
        let t_q0 = t_nonpath + Rat::from_integer(16) * k - Rat::from_integer(2);
        Thresholds {
            t_dangling,
            t_star,
            t_sneighbor,
            t_components,
            t_nonpath,
            t_posblocks,
            t_interior,
            t_bigblocks,
            t_q0,
        }
    }
}

/// The explicit vertex bound a reduced non-YES instance must satisfy,
/// assembled exactly from the thresholds.
pub fn kernel_size_bound(c: &PropertyConstants, k: Rat, case: KernelCase) -> u64 {
    let t = Thresholds::new(c, k);
    let one = Rat::from_integer(1);
    let s_bound = Rat::from_integer(6) * k / (one - c.lambda.value());
    let j = Rat::from_integer(c.j as i64);
    let total = match case {
        KernelCase::Quadratic => {
            // vertices in 1-vertex blocks, small blocks (2..j-1 vertices),
            // and big blocks scaled by j, plus the modulator
            s_bound
                + t.t_components
                + t.t_posblocks * (j - one)
                + Rat::from_integer(2) * t.t_bigblocks * j
        }
        KernelCase::Cubic => {
            let np = t.t_nonpath;
            let p = t.t_posblocks;
            let b2_prime = t.t_sneighbor;
            let q0_ns = t.t_q0 * s_bound;
            let b2_double = Rat::from_integer(2) * (np + p + b2_prime + q0_ns);
            let b2_triple = np + p + b2_prime + b2_double;
            let blocks_total = np + p + b2_prime + b2_double + b2_triple;
            // cut vertices are at most the block count; zero-excess path
            // blocks have at most one interior vertex each
            s_bound
                + blocks_total
                + (np + p) * Rat::from_integer(t.t_interior as i64)
                + (b2_prime + b2_double + b2_triple)
        }
    };
    total.floor().to_integer().max(0) as u64
}

/// Certificate of a YES verdict: the bound that fired and the structure
/// witnessing it.
#[derive(Debug, Clone, Serialize)]
pub enum YesWitness {
    /// `k <= 0`: the guarantee alone suffices.
    Trivial { k: Rat },
    DanglingBound { count: usize, threshold: Rat },
    /// A modulator vertex adjacent to interiors of many distinct blocks;
    /// `chosen` holds one interior neighbor per counted block.
    LeafBound { s: VertexId, chosen: Vec<VertexId>, threshold: Rat },
    SNeighborBound { total: usize, threshold: Rat },
    PositiveExcessBlocks { count: usize, threshold: Rat },
    InteriorBound { block: Vec<VertexId>, interior_size: usize, threshold: u64 },
    /// Combined scaled size of blocks on at least `j` vertices.
    BigCliqueBlocks { scaled_count: u64, threshold: Rat },
    NeighborsBound { s: VertexId, count: usize, threshold: Rat },
}

impl YesWitness {
    /// Short stable tag of the bound that fired.
    pub fn bound_tag(&self) -> &'static str {
        match self {
            YesWitness::Trivial { .. } => "trivial",
            YesWitness::DanglingBound { .. } => "dangling-bound",
            YesWitness::LeafBound { .. } => "leaf-bound",
            YesWitness::SNeighborBound { .. } => "s-neighbor-bound",
            YesWitness::PositiveExcessBlocks { .. } => "positive-excess-blocks",
            YesWitness::InteriorBound { .. } => "interior-bound",
            YesWitness::BigCliqueBlocks { .. } => "big-clique-blocks",
            YesWitness::NeighborsBound { .. } => "q0-neighbors-bound",
        }
    }
}

/// Why an instance is not handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UnsupportedReason {
    /// lambda = 1/2, hereditary, no triangle variant in the property: the
    /// property is exactly bipartiteness and the cubic max-cut kernel is an
    /// external component.
    DelegateMaxCut,
    /// lambda = 1/2 with a non-hereditary property.
    NonHereditaryHalf,
    /// lambda = 1/2, labelled class, triangles not all included.
    LabelledHalf,
    /// Declared flags are contradictory (cyclic triangle in, transitive out
    /// cannot happen for a hereditary oriented property).
    InconsistentTriangleFlags,
    /// No divergence witness within the clique enumeration cap.
    NoDivergenceWithinCap,
}

impl fmt::Display for UnsupportedReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            UnsupportedReason::DelegateMaxCut => {
                "delegate: property is exactly bipartiteness; defer to the external max-cut kernel"
            }
            UnsupportedReason::NonHereditaryHalf => {
                "unsupported: lambda = 1/2 with a non-hereditary property"
            }
            UnsupportedReason::LabelledHalf => {
                "unsupported: labelled class at lambda = 1/2 without all triangle variants"
            }
            UnsupportedReason::InconsistentTriangleFlags => {
                "unsupported: cyclic triangle included but transitive excluded contradicts heredity"
            }
            UnsupportedReason::NoDivergenceWithinCap => {
                "unsupported: no divergence witness within the clique cap"
            }
        };
        f.write_str(msg)
    }
}

/// Modulator details reported with a `ModulatorTooLarge` outcome.
#[derive(Debug, Clone, Serialize)]
pub struct ModulatorDiagnostic {
    pub s_size: usize,
    pub budget: usize,
    pub method: ModulatorMethod,
    /// Whether the exhaustive phase ran (it certifies minimality).
    pub exact_attempted: bool,
}

/// Verdict of the kernelization pipeline.
#[derive(Debug, Clone)]
pub enum Outcome {
    Yes { witness: YesWitness },
    Kernel { graph: Graph, k: Rat },
    Unsupported { reason: UnsupportedReason },
    ModulatorTooLarge { diagnostic: ModulatorDiagnostic },
}

impl Outcome {
    pub fn tag(&self) -> &'static str {
        match self {
            Outcome::Yes { .. } => "yes",
            Outcome::Kernel { .. } => "kernel",
            Outcome::Unsupported { .. } => "unsupported",
            Outcome::ModulatorTooLarge { .. } => "modulator-too-large",
        }
    }
}

/// Outcome plus run accounting.
#[derive(Debug, Clone)]
pub struct Kernelization {
    pub outcome: Outcome,
    pub case: Option<KernelCase>,
    pub rule1_applications: usize,
    pub rule2_applications: usize,
    pub modulator_size: Option<usize>,
    pub vertex_bound: Option<u64>,
}

fn remap(s: &[VertexId], map: &[Option<VertexId>]) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = s.iter().filter_map(|&v| map[v]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn is_valid_modulator(g: &Graph, s: &[VertexId]) -> bool {
    is_forest_of_cliques(&g.delete_vertices(s).0)
}

/// Exhausts the zero-excess dangling rule: while some dangling component
/// has excess exactly zero, delete its body and keep `k`. Components on at
/// least `j + 1` vertices have positive excess and are skipped without
/// search; smaller ones are decided by exact search.
pub fn rule1_exhaust(
    g: &Graph,
    s: &[VertexId],
    pi: &PropertySpec,
    consts: &PropertyConstants,
) -> Result<(Graph, Vec<VertexId>, usize)> {
    let mut g = g.clone();
    let mut s = s.to_vec();
    let mut applications = 0;
    // the modulator stays valid across deletions whenever it was valid
    let track_modulator = cfg!(debug_assertions) && is_valid_modulator(&g, &s);
    'outer: loop {
        for dc in dangling_components(&g)? {
            if dc.vertex_count() >= consts.j + 1 {
                continue;
            }
            let sub = dc.subgraph(&g);
            if excess(&sub, pi)?.ex.is_zero() {
                let (next, map) = g.delete_vertices(&dc.body);
                s = remap(&s, &map);
                g = next;
                applications += 1;
                debug_assert!(g.is_connected());
                debug_assert!(!track_modulator || is_valid_modulator(&g, &s));
                continue 'outer;
            }
        }
        break;
    }
    Ok((g, s, applications))
}

/// Instance-level wrapper of [`rule1_exhaust`]; `k` is unchanged by design.
pub fn rule1_zero_excess_dangling(
    inst: &Instance,
    consts: &PropertyConstants,
) -> Result<(Instance, usize)> {
    let s: Vec<VertexId> = Vec::new();
    let (graph, _, applications) = rule1_exhaust(&inst.graph, &s, &inst.property, consts)?;
    Ok((Instance { graph, k: inst.k, property: inst.property.clone() }, applications))
}

/// Connectivity case of one triangle-path application.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule2Case {
    /// `G - {v}` disconnected: endpoints identified, `k` unchanged.
    DisconnectedIdentify,
    /// `G - {v}` connected: plain deletion, `k` drops by 1/4.
    ConnectedDecrement,
}

/// One application of the triangle-path rule, in pre-application ids.
#[derive(Debug, Clone, Serialize)]
pub struct Rule2Application {
    pub case: Rule2Case,
    pub v: VertexId,
    pub w: [VertexId; 2],
    pub u: [VertexId; 2],
}

struct Rule2Pattern {
    v: VertexId,
    blocks: [Vec<VertexId>; 2],
}

/// The lexicographically first applicable pattern: two cyclic-triangle path
/// blocks sharing `v`, with `v` and both interiors away from `N(S)`.
fn find_rule2_pattern(g: &Graph, s: &[VertexId], bd: &BlockDecomposition) -> Option<Rule2Pattern> {
    let ns = neighbor_flags(g, s);
    for &v in &bd.cut_vertices {
        if ns[v] {
            continue;
        }
        let mut candidates = Vec::new();
        for (i, block) in bd.blocks.iter().enumerate() {
            if bd.classes[i] != BlockClass::B2 || block.len() != 3 || !block.contains(&v) {
                continue;
            }
            if bd.interiors[i].iter().any(|&w| ns[w]) {
                continue;
            }
            if !is_cyclic_triangle(&g.induced_subgraph(block).0) {
                continue;
            }
            candidates.push(i);
        }
        if candidates.len() >= 2 {
            return Some(Rule2Pattern {
                v,
                blocks: [bd.blocks[candidates[0]].clone(), bd.blocks[candidates[1]].clone()],
            });
        }
    }
    None
}

/// Validates and applies the triangle-path rule at an explicit pattern.
/// Returns the new graph, remapped modulator, and the application record;
/// the caller adjusts `k` for the connected case.
pub fn apply_rule2_at(
    g: &Graph,
    s: &[VertexId],
    pi: &PropertySpec,
    v: VertexId,
    block1: &[VertexId],
    block2: &[VertexId],
) -> Result<(Graph, Vec<VertexId>, Rule2Application)> {
    let bd = classify_blocks(g, s);
    let ns = neighbor_flags(g, s);
    let violated = |msg: &str| Err(Error::PreconditionViolated(msg.to_string()));
    if pi.membership(&crate::properties::cyclic_triangle()) {
        return violated("rule requires the cyclic triangle outside the property");
    }
    let mut interiors = [usize::MAX; 2];
    for (slot, block) in [block1, block2].into_iter().enumerate() {
        let Some(idx) = bd.blocks.iter().position(|b| b == block) else {
            return violated("pattern is not a block of G - S");
        };
        if bd.classes[idx] != BlockClass::B2 {
            return violated("block is not a path block");
        }
        if block.len() != 3 || !is_cyclic_triangle(&g.induced_subgraph(block).0) {
            return violated("block is not a cyclic triangle");
        }
        if !block.contains(&v) {
            return violated("blocks do not share the given vertex");
        }
        if bd.interiors[idx].iter().any(|&w| ns[w]) {
            return violated("block interior touches N(S)");
        }
        interiors[slot] = bd.interiors[idx][0];
    }
    if block1 == block2 {
        return violated("the two blocks must be distinct");
    }
    if ns[v] {
        return violated("shared vertex touches N(S)");
    }
    let w = interiors;
    let u = [
        *block1.iter().find(|&&x| x != v && x != w[0]).expect("triangle has a third vertex"),
        *block2.iter().find(|&&x| x != v && x != w[1]).expect("triangle has a third vertex"),
    ];
    let track_modulator = cfg!(debug_assertions) && is_valid_modulator(g, s);
    let disconnects = !g.delete_vertices(&[v]).0.is_connected();
    let (g1, map1) = g.delete_vertices(&[v, w[0], w[1]]);
    if disconnects {
        let (g2, map2) = g1.identify_vertices(map1[u[0]].unwrap(), map1[u[1]].unwrap())?;
        let s2 = remap(&remap(s, &map1), &map2);
        debug_assert!(g2.is_connected());
        debug_assert!(!track_modulator || is_valid_modulator(&g2, &s2));
        Ok((g2, s2, Rule2Application { case: Rule2Case::DisconnectedIdentify, v, w, u }))
    } else {
        let s1 = remap(s, &map1);
        debug_assert!(g1.is_connected());
        debug_assert!(!track_modulator || is_valid_modulator(&g1, &s1));
        Ok((g1, s1, Rule2Application { case: Rule2Case::ConnectedDecrement, v, w, u }))
    }
}

/// Finds and applies one triangle-path reduction, if any pattern matches.
pub fn rule2_step(
    g: &Graph,
    s: &[VertexId],
    pi: &PropertySpec,
) -> Result<Option<(Graph, Vec<VertexId>, Rule2Application)>> {
    let bd = classify_blocks(g, s);
    match find_rule2_pattern(g, s, &bd) {
        Some(p) => apply_rule2_at(g, s, pi, p.v, &p.blocks[0], &p.blocks[1]).map(Some),
        None => Ok(None),
    }
}

/// Exhausts the triangle-path rule on an instance, decrementing `k` by 1/4
/// per connected-case application.
pub fn rule2_triangle_path(
    inst: &Instance,
    s: &[VertexId],
) -> Result<(Instance, Vec<VertexId>, Vec<Rule2Application>)> {
    let mut g = inst.graph.clone();
    let mut s = s.to_vec();
    let mut k = inst.k;
    let mut apps = Vec::new();
    while let Some((g2, s2, app)) = rule2_step(&g, &s, &inst.property)? {
        g = g2;
        s = s2;
        if app.case == Rule2Case::ConnectedDecrement {
            k -= rat(1, 4);
        }
        apps.push(app);
    }
    Ok((Instance { graph: g, k, property: inst.property.clone() }, s, apps))
}

/// Indicator of `N(S)` over all vertices.
fn neighbor_flags(g: &Graph, s: &[VertexId]) -> Vec<bool> {
    let mut ns = vec![false; g.vertex_count()];
    for &x in s {
        for &w in g.neighbors(x) {
            ns[w] = true;
        }
    }
    ns
}

/// Whether a block of a forest of cliques has positive excess. Blocks on at
/// least `j + 1` vertices are positive without search.
pub fn block_has_positive_excess(
    g: &Graph,
    block: &[VertexId],
    pi: &PropertySpec,
    consts: &PropertyConstants,
) -> Result<bool> {
    if block.len() == 1 {
        return Ok(false);
    }
    if block.len() >= consts.j + 1 {
        return Ok(true);
    }
    Ok(excess(&g.induced_subgraph(block).0, pi)?.ex > Rat::zero())
}

/// Zero-excess path blocks without interior modulator neighbors, and the
/// cut vertices confined to them.
#[derive(Debug, Clone)]
pub struct B2ZeroSets {
    /// Indices into the decomposition's block list.
    pub b2_zero: Vec<usize>,
    pub q0: Vec<VertexId>,
}

pub fn b2_zero_sets(
    g: &Graph,
    s: &[VertexId],
    bd: &BlockDecomposition,
    pi: &PropertySpec,
    consts: &PropertyConstants,
) -> Result<B2ZeroSets> {
    let ns = neighbor_flags(g, s);
    let mut in_zero = vec![false; bd.len()];
    for i in 0..bd.len() {
        if bd.classes[i] == BlockClass::B2
            && bd.interiors[i].iter().all(|&w| !ns[w])
            && !block_has_positive_excess(g, &bd.blocks[i], pi, consts)?
        {
            in_zero[i] = true;
        }
    }
    let b2_zero: Vec<usize> = (0..bd.len()).filter(|&i| in_zero[i]).collect();
    let q0: Vec<VertexId> = bd
        .cut_vertices
        .iter()
        .copied()
        .filter(|&q| {
            let containing: Vec<usize> =
                (0..bd.len()).filter(|&i| bd.blocks[i].binary_search(&q).is_ok()).collect();
            !containing.is_empty() && containing.iter().all(|&i| in_zero[i])
        })
        .collect();
    // every vertex confined to zero-excess path blocks sits in exactly two
    debug_assert!(q0.iter().all(|&q| {
        bd.blocks.iter().filter(|b| b.binary_search(&q).is_ok()).count() == 2
    }));
    Ok(B2ZeroSets { b2_zero, q0 })
}

/// The finer partition of the path blocks used by the cubic accounting:
/// positive excess / interior modulator neighbor / cut vertex in `N(S)` /
/// no modulator contact at all.
#[derive(Debug, Clone)]
pub struct B2Partition {
    pub plus: Vec<usize>,
    pub prime: Vec<usize>,
    pub double_prime: Vec<usize>,
    pub triple_prime: Vec<usize>,
}

pub fn b2_partition(
    g: &Graph,
    s: &[VertexId],
    bd: &BlockDecomposition,
    pi: &PropertySpec,
    consts: &PropertyConstants,
) -> Result<B2Partition> {
    let ns = neighbor_flags(g, s);
    let mut out = B2Partition {
        plus: Vec::new(),
        prime: Vec::new(),
        double_prime: Vec::new(),
        triple_prime: Vec::new(),
    };
    for i in bd.blocks_in_class(BlockClass::B2) {
        if block_has_positive_excess(g, &bd.blocks[i], pi, consts)? {
            out.plus.push(i);
        } else if bd.interiors[i].iter().any(|&w| ns[w]) {
            out.prime.push(i);
        } else if bd.blocks[i].iter().any(|&v| bd.is_cut_vertex(v) && ns[v]) {
            out.double_prime.push(i);
        } else {
            out.triple_prime.push(i);
        }
    }
    Ok(out)
}

/// Outcome of running the reduction rules to fixpoint.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub graph: Graph,
    pub modulator: Vec<VertexId>,
    pub k: Rat,
    pub rule1_applications: usize,
    pub rule2_applications: usize,
}

/// Runs the rules to fixpoint: the zero-excess dangling rule throughout,
/// interleaved with the triangle-path rule in the cubic case (deletions
/// can expose new dangling components, so rule 1 reruns after every
/// triangle-path application). `k` can drop to zero or below; callers
/// must treat that as a trivial YES.
pub fn reduce_to_fixpoint(
    g: &Graph,
    s: &[VertexId],
    k: Rat,
    pi: &PropertySpec,
    consts: &PropertyConstants,
    case: KernelCase,
) -> Result<Reduction> {
    let mut red = Reduction {
        graph: g.clone(),
        modulator: s.to_vec(),
        k,
        rule1_applications: 0,
        rule2_applications: 0,
    };
    loop {
        let (g2, s2, c1) = rule1_exhaust(&red.graph, &red.modulator, pi, consts)?;
        red.graph = g2;
        red.modulator = s2;
        red.rule1_applications += c1;
        if case == KernelCase::Quadratic {
            return Ok(red);
        }
        match rule2_step(&red.graph, &red.modulator, pi)? {
            Some((g2, s2, app)) => {
                red.graph = g2;
                red.modulator = s2;
                red.rule2_applications += 1;
                if app.case == Rule2Case::ConnectedDecrement {
                    red.k -= rat(1, 4);
                    if red.k <= Rat::zero() {
                        return Ok(red);
                    }
                }
            }
            None => return Ok(red),
        }
    }
}

/// Evaluates the YES-bounds in order on a reduced, gated instance; the
/// first one to fire wins. Returns `None` when every count stays below its
/// threshold.
pub fn yes_checks(
    g: &Graph,
    s: &[VertexId],
    pi: &PropertySpec,
    consts: &PropertyConstants,
    k: Rat,
    case: KernelCase,
) -> Result<Option<YesWitness>> {
    let t = Thresholds::new(consts, k);
    let bd = classify_blocks(g, s);

    // (1) dangling components
    let danglings = dangling_components(g)?;
    if Rat::from_integer(danglings.len() as i64) >= t.t_dangling {
        return Ok(Some(YesWitness::DanglingBound {
            count: danglings.len(),
            threshold: t.t_dangling,
        }));
    }

    // (2) per-vertex star bound and (3) the total over the modulator
    let mut interior_of = vec![usize::MAX; g.vertex_count()];
    for (i, int) in bd.interiors.iter().enumerate() {
        for &w in int {
            interior_of[w] = i;
        }
    }
    let mut total_incidences = 0usize;
    let mut star_witness: Option<(VertexId, Vec<VertexId>)> = None;
    for &sv in s {
        let mut chosen: Vec<Option<VertexId>> = vec![None; bd.len()];
        for &w in g.neighbors(sv) {
            let b = interior_of[w];
            if b != usize::MAX && chosen[b].is_none() {
                chosen[b] = Some(w);
            }
        }
        let touched: Vec<VertexId> = chosen.into_iter().flatten().collect();
        total_incidences += touched.len();
        if star_witness.is_none() && Rat::from_integer(touched.len() as i64) >= t.t_star {
            star_witness = Some((sv, touched));
        }
    }
    if let Some((sv, chosen)) = star_witness {
        return Ok(Some(YesWitness::LeafBound { s: sv, chosen, threshold: t.t_star }));
    }
    if Rat::from_integer(total_incidences as i64) >= t.t_sneighbor {
        return Ok(Some(YesWitness::SNeighborBound {
            total: total_incidences,
            threshold: t.t_sneighbor,
        }));
    }

    // (4) blocks with positive excess
    let mut positive = 0usize;
    for i in 0..bd.len() {
        if block_has_positive_excess(g, &bd.blocks[i], pi, consts)? {
            positive += 1;
        }
    }
    if Rat::from_integer(positive as i64) >= t.t_posblocks {
        return Ok(Some(YesWitness::PositiveExcessBlocks {
            count: positive,
            threshold: t.t_posblocks,
        }));
    }

    // (5) interior size of any block
    for i in 0..bd.len() {
        if bd.interiors[i].len() as u64 >= t.t_interior {
            return Ok(Some(YesWitness::InteriorBound {
                block: bd.blocks[i].clone(),
                interior_size: bd.interiors[i].len(),
                threshold: t.t_interior,
            }));
        }
    }

    // (6) combined scaled size of big blocks (quadratic accounting)
    if case == KernelCase::Quadratic {
        let d: u64 =
            bd.blocks.iter().filter(|b| b.len() >= consts.j).map(|b| (b.len() / consts.j) as u64).sum();
        if Rat::from_integer(d as i64) >= t.t_bigblocks {
            return Ok(Some(YesWitness::BigCliqueBlocks { scaled_count: d, threshold: t.t_bigblocks }));
        }
    }

    // (7) cut vertices confined to zero-excess path blocks (cubic case)
    if case == KernelCase::Cubic {
        let zero = b2_zero_sets(g, s, &bd, pi, consts)?;
        for &sv in s {
            let count = g.neighbors(sv).iter().filter(|w| zero.q0.binary_search(w).is_ok()).count();
            if Rat::from_integer(count as i64) >= t.t_q0 {
                return Ok(Some(YesWitness::NeighborsBound { s: sv, count, threshold: t.t_q0 }));
            }
        }
    }

    Ok(None)
}

/// The full pipeline: trivial check, modulator and gate, case dispatch,
/// reduction rules to fixpoint, YES-checks, kernel bound.
pub fn kernelize(inst: &Instance) -> Result<Kernelization> {
    let pi = &inst.property;
    let lambda = pi.lambda();
    let mut g = inst.graph.clone();
    let mut k = inst.k;
    let mut rule1_applications = 0usize;
    let mut rule2_applications = 0usize;

    let done = |outcome, case, r1, r2, msize, bound| {
        Ok(Kernelization {
            outcome,
            case,
            rule1_applications: r1,
            rule2_applications: r2,
            modulator_size: msize,
            vertex_bound: bound,
        })
    };

    if k <= Rat::zero() {
        let outcome = Outcome::Yes { witness: YesWitness::Trivial { k } };
        return done(outcome, None, 0, 0, None, None);
    }

    // modulator and gate
    let budget = modulator_budget(k, lambda);
    let greedy = greedy_modulator(&g);
    let modulator = if greedy.len() <= budget {
        Modulator { s: greedy, method: ModulatorMethod::Greedy, size_ok: true }
    } else if g.vertex_count() <= EXACT_VERTEX_CAP {
        match exact_modulator(&g, budget)? {
            Some(s) => Modulator { s, method: ModulatorMethod::ExactSearch, size_ok: true },
            None => Modulator { s: greedy, method: ModulatorMethod::ExactSearch, size_ok: false },
        }
    } else {
        Modulator { s: greedy, method: ModulatorMethod::Greedy, size_ok: false }
    };
    let modulator_size = modulator.s.len();
    if !modulator.size_ok {
        let outcome = Outcome::ModulatorTooLarge {
            diagnostic: ModulatorDiagnostic {
                s_size: modulator.s.len(),
                budget,
                method: modulator.method,
                exact_attempted: modulator.method == ModulatorMethod::ExactSearch,
            },
        };
        return done(outcome, None, 0, 0, Some(modulator_size), None);
    }
    let mut s = modulator.s;

    // dispatch
    let tri = triangle_membership(pi);
    let quadratic = !lambda.is_half() || tri.all();
    if !quadratic {
        if !pi.declared_hereditary() {
            let outcome = Outcome::Unsupported { reason: UnsupportedReason::NonHereditaryHalf };
            return done(outcome, None, 0, 0, Some(modulator_size), None);
        }
        match pi.graph_class() {
            GraphClass::Simple => {
                let outcome = Outcome::Unsupported { reason: UnsupportedReason::DelegateMaxCut };
                return done(outcome, None, 0, 0, Some(modulator_size), None);
            }
            GraphClass::Labelled(_) => {
                let outcome = Outcome::Unsupported { reason: UnsupportedReason::LabelledHalf };
                return done(outcome, None, 0, 0, Some(modulator_size), None);
            }
            GraphClass::Oriented => match oriented_triangle_flags(pi) {
                (false, false) => {
                    let outcome =
                        Outcome::Unsupported { reason: UnsupportedReason::DelegateMaxCut };
                    return done(outcome, None, 0, 0, Some(modulator_size), None);
                }
                (true, false) => {
                    let outcome = Outcome::Unsupported {
                        reason: UnsupportedReason::InconsistentTriangleFlags,
                    };
                    return done(outcome, None, 0, 0, Some(modulator_size), None);
                }
                _ => {} // (false, true): the cubic pipeline below
            },
        }
    }

    let consts = match PropertyConstants::derive(pi) {
        Ok(c) => c,
        Err(Error::NoDivergenceWitness(_)) => {
            let outcome =
                Outcome::Unsupported { reason: UnsupportedReason::NoDivergenceWithinCap };
            return done(outcome, None, 0, 0, Some(modulator_size), None);
        }
        Err(e) => return Err(e),
    };

    let case = if quadratic { KernelCase::Quadratic } else { KernelCase::Cubic };
    let reduction = reduce_to_fixpoint(&g, &s, k, pi, &consts, case)?;
    g = reduction.graph;
    s = reduction.modulator;
    k = reduction.k;
    rule1_applications += reduction.rule1_applications;
    rule2_applications += reduction.rule2_applications;
    if k <= Rat::zero() {
        let outcome = Outcome::Yes { witness: YesWitness::Trivial { k } };
        return done(
            outcome,
            Some(case),
            rule1_applications,
            rule2_applications,
            Some(modulator_size),
            None,
        );
    }

    if let Some(witness) = yes_checks(&g, &s, pi, &consts, k, case)? {
        let outcome = Outcome::Yes { witness };
        return done(
            outcome,
            Some(case),
            rule1_applications,
            rule2_applications,
            Some(modulator_size),
            None,
        );
    }

    let bound = kernel_size_bound(&consts, k, case);
    if g.vertex_count() as u64 > bound {
        return Err(Error::BoundViolation {
            vertices: g.vertex_count(),
            bound,
            detail: format!("case {case:?}, k = {k}, property {}", pi.name()),
        });
    }
    let outcome = Outcome::Kernel { graph: g, k };
    done(
        outcome,
        Some(case),
        rule1_applications,
        rule2_applications,
        Some(modulator_size),
        Some(bound),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::properties::PropertySpec;

    fn qcol3_consts() -> PropertyConstants {
        PropertyConstants::derive(&PropertySpec::q_colorable(3).unwrap()).unwrap()
    }

    fn acyclic_consts() -> PropertyConstants {
        PropertyConstants::derive(&PropertySpec::acyclic_oriented()).unwrap()
    }

    #[test]
    fn instance_validation() {
        let q3 = PropertySpec::q_colorable(3).unwrap();
        assert!(Instance::new(Graph::complete(3), rat(1, 1), q3.clone()).is_ok());
        assert!(Instance::new(Graph::complete(3), rat(1, 3), q3.clone()).is_err()); // denominator
        assert!(Instance::new(Graph::complete(3), rat(0, 1), q3.clone()).is_err()); // positivity
        let disconnected = Graph::simple(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(Instance::new(disconnected, rat(1, 1), q3.clone()).is_err());
        assert!(Instance::new(Graph::oriented(2, &[(0, 1)]).unwrap(), rat(1, 1), q3).is_err());
    }

    #[test]
    fn thresholds_qcol3_at_k1() {
        let t = Thresholds::new(&qcol3_consts(), rat(1, 1));
        assert_eq!(t.t_dangling, rat(6, 1));
        assert_eq!(t.t_star, rat(58, 1));
        assert_eq!(t.t_sneighbor, rat(1044, 1));
        assert_eq!(t.t_components, rat(1050, 1));
        assert_eq!(t.t_nonpath, rat(4200, 1));
        assert_eq!(t.t_posblocks, rat(6408, 1));
        assert_eq!(t.t_interior, 27);
        assert_eq!(t.t_bigblocks, rat(2136, 1));
    }

    #[test]
    fn thresholds_positive_for_k_at_least_one() {
        for consts in [qcol3_consts(), acyclic_consts()] {
            for k in [rat(1, 1), rat(5, 4), rat(2, 1), rat(3, 1)] {
                let t = Thresholds::new(&consts, k);
                for value in [
                    t.t_dangling,
                    t.t_star,
                    t.t_sneighbor,
                    t.t_components,
                    t.t_nonpath,
                    t.t_posblocks,
                    t.t_bigblocks,
                    t.t_q0,
                ] {
                    assert!(value > Rat::zero(), "threshold {value} not positive at k = {k}");
                }
                assert!(t.t_interior > 0);
            }
        }
    }

    #[test]
    fn quadratic_bound_qcol3_k1() {
        // 18 + 1050 + 6408*(3-1) + 2*2136*3 = 26700
        assert_eq!(kernel_size_bound(&qcol3_consts(), rat(1, 1), KernelCase::Quadratic), 26700);
    }

    #[test]
    fn bound_scaling_follows_polynomial_degree() {
        // doubling k asymptotically quadruples the quadratic bound and
        // octuples the cubic one; lower-order terms die off by k = 64
        let c = qcol3_consts();
        let a = acyclic_consts();
        for k in [64i64, 256] {
            let q1 = kernel_size_bound(&c, rat(k, 1), KernelCase::Quadratic);
            let q2 = kernel_size_bound(&c, rat(2 * k, 1), KernelCase::Quadratic);
            assert!(390 * q1 <= 100 * q2 && 100 * q2 <= 410 * q1, "quadratic ratio off: {q1} {q2}");
            let c1 = kernel_size_bound(&a, rat(k, 1), KernelCase::Cubic);
            let c2 = kernel_size_bound(&a, rat(2 * k, 1), KernelCase::Cubic);
            assert!(780 * c1 <= 100 * c2 && 100 * c2 <= 820 * c1, "cubic ratio off: {c1} {c2}");
        }
    }

    /// Cyclic triangle {1,2,3} dangling from vertex 1, which also holds a
    /// pendant edge to 0.
    fn pendant_cyclic_triangle() -> Graph {
        Graph::oriented(4, &[(0, 1), (1, 2), (2, 3), (3, 1)]).unwrap()
    }

    #[test]
    fn rule1_deletes_zero_excess_dangling_triangle() {
        let ao = PropertySpec::acyclic_oriented();
        let consts = acyclic_consts();
        let g = pendant_cyclic_triangle();
        let (g2, _, count) = rule1_exhaust(&g, &[], &ao, &consts).unwrap();
        assert_eq!(count, 1);
        assert_eq!(g2.vertex_count(), 2);
        assert_eq!(g2.edge_count(), 1);
    }

    #[test]
    fn rule1_keeps_positive_excess_danglings() {
        // qcol:3 has no zero-excess almost-cliques at all: a dangling K2 has
        // excess 1/6, so the rule is a no-op.
        let q3 = PropertySpec::q_colorable(3).unwrap();
        let consts = qcol3_consts();
        let g = Graph::simple(3, &[(0, 1), (1, 2)]).unwrap();
        let (g2, _, count) = rule1_exhaust(&g, &[], &q3, &consts).unwrap();
        assert_eq!(count, 0);
        assert_eq!(g2.vertex_count(), 3);
    }

    #[test]
    fn rule1_removes_both_triangles_in_sequence() {
        // two cyclic triangles hanging off the ends of an edge
        let g = Graph::oriented(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 1), // cyclic triangle at 1
                (0, 4),
                (4, 5),
                (5, 0), // cyclic triangle at 0
                (0, 6),
                (6, 7),
                (7, 0), // and another at 0
            ],
        )
        .unwrap();
        let ao = PropertySpec::acyclic_oriented();
        let (g2, _, count) = rule1_exhaust(&g, &[], &ao, &acyclic_consts()).unwrap();
        assert_eq!(count, 3);
        assert_eq!(g2.vertex_count(), 2);
    }

    /// Two cyclic triangles sharing `v`, with pendant arcs on both far ends
    /// so both triangles are path blocks. Vertices: 0 pendant, 1 = u1,
    /// 2 = w1, 3 = v, 4 = w2, 5 = u2, 6 pendant; 7 = optional modulator.
    fn triangle_path_graph(with_bridge: bool) -> (Graph, Vec<VertexId>) {
        let mut arcs = vec![
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 1), // cyclic triangle {1,2,3}
            (3, 4),
            (4, 5),
            (5, 3), // cyclic triangle {3,4,5}
            (5, 6),
        ];
        if with_bridge {
            arcs.push((7, 1));
            arcs.push((7, 5));
            (Graph::oriented(8, &arcs).unwrap(), vec![7])
        } else {
            (Graph::oriented(7, &arcs).unwrap(), vec![])
        }
    }

    #[test]
    fn rule2_connected_case_decrements_k() {
        let (g, s) = triangle_path_graph(true);
        let ao = PropertySpec::acyclic_oriented();
        let (g2, s2, app) = rule2_step(&g, &s, &ao).unwrap().unwrap();
        assert_eq!(app.case, Rule2Case::ConnectedDecrement);
        assert_eq!((app.v, app.w, app.u), (3, [2, 4], [1, 5]));
        assert_eq!(g2.vertex_count(), 5);
        assert_eq!(s2.len(), 1);
        let inst = Instance::new(g, rat(1, 1), ao).unwrap();
        let (reduced, _, apps) = rule2_triangle_path(&inst, &s).unwrap();
        assert_eq!(apps.len(), 1);
        assert_eq!(reduced.k, rat(3, 4));
    }

    #[test]
    fn rule2_disconnected_case_identifies_and_keeps_k() {
        let (g, s) = triangle_path_graph(false);
        let ao = PropertySpec::acyclic_oriented();
        let (g2, _, app) = rule2_step(&g, &s, &ao).unwrap().unwrap();
        assert_eq!(app.case, Rule2Case::DisconnectedIdentify);
        // 7 vertices - 3 deleted - 1 merged away
        assert_eq!(g2.vertex_count(), 3);
        assert!(g2.is_connected());
        let inst = Instance::new(g, rat(1, 1), ao).unwrap();
        let (reduced, _, apps) = rule2_triangle_path(&inst, &s).unwrap();
        assert_eq!(apps.len(), 1);
        assert_eq!(reduced.k, rat(1, 1));
    }

    #[test]
    fn rule2_blocked_by_interior_modulator_neighbor() {
        let (g0, _) = triangle_path_graph(true);
        // extend with a modulator vertex adjacent to the interior w1 = 2
        let mut arcs: Vec<(usize, usize)> = g0.arcs().collect();
        arcs.push((8, 2));
        let g = Graph::oriented(9, &arcs).unwrap();
        let s = vec![7, 8];
        let ao = PropertySpec::acyclic_oriented();
        assert!(rule2_step(&g, &s, &ao).unwrap().is_none());
        let bd = classify_blocks(&g, &s);
        let b1 = bd.blocks.iter().find(|b| b.contains(&2)).unwrap().clone();
        let b2 = bd.blocks.iter().find(|b| b.contains(&4)).unwrap().clone();
        let err = apply_rule2_at(&g, &s, &ao, 3, &b1, &b2).unwrap_err();
        assert!(matches!(err, Error::PreconditionViolated(_)));
    }

    #[test]
    fn yes_check_dangling_bound_fires() {
        // six triangles sharing one center: six dangling components, and
        // t_dangling = k / inf_AK = 6 for qcol:3 at k = 1
        let mut edges = Vec::new();
        for t in 0..6 {
            let a = 1 + 2 * t;
            let b = 2 + 2 * t;
            edges.extend([(0, a), (0, b), (a, b)]);
        }
        let g = Graph::simple(13, &edges).unwrap();
        let q3 = PropertySpec::q_colorable(3).unwrap();
        let w = yes_checks(&g, &[], &q3, &qcol3_consts(), rat(1, 1), KernelCase::Quadratic)
            .unwrap()
            .unwrap();
        assert!(matches!(w, YesWitness::DanglingBound { count: 6, .. }));
        let inst = Instance::new(g, rat(1, 1), q3).unwrap();
        let out = kernelize(&inst).unwrap();
        assert!(matches!(out.outcome, Outcome::Yes { witness: YesWitness::DanglingBound { .. } }));
    }

    #[test]
    fn yes_checks_none_below_thresholds() {
        let g = Graph::simple(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]).unwrap();
        let q3 = PropertySpec::q_colorable(3).unwrap();
        let w = yes_checks(&g, &[], &q3, &qcol3_consts(), rat(1, 1), KernelCase::Quadratic).unwrap();
        assert!(w.is_none());
    }

    #[test]
    fn kernelize_bipartite_delegates() {
        let inst = Instance::new(Graph::complete(3), rat(1, 1), PropertySpec::bipartite()).unwrap();
        let out = kernelize(&inst).unwrap();
        match out.outcome {
            Outcome::Unsupported { reason } => {
                assert_eq!(reason, UnsupportedReason::DelegateMaxCut);
                assert!(reason.to_string().starts_with("delegate"));
            }
            other => panic!("expected Unsupported, got {}", other.tag()),
        }
    }

    #[test]
    fn kernelize_small_forest_of_cliques_is_its_own_kernel() {
        // two transitive triangles sharing a vertex: no rule fires, no
        // threshold is met, and the graph is far below the cubic bound
        let g = Graph::oriented(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        let inst = Instance::new(g, rat(2, 1), PropertySpec::acyclic_oriented()).unwrap();
        let out = kernelize(&inst).unwrap();
        assert_eq!(out.case, Some(KernelCase::Cubic));
        match out.outcome {
            Outcome::Kernel { graph, k } => {
                assert_eq!(graph.vertex_count(), 5);
                assert_eq!(k, rat(2, 1));
                assert!(5 <= out.vertex_bound.unwrap());
            }
            other => panic!("expected Kernel, got {}", other.tag()),
        }
    }

    #[test]
    fn kernelize_labelled_partial_triangles_unsupported() {
        // toy labelled property at lambda 1/2: "every edge carries label 0"
        let pi = PropertySpec::custom(
            "all-zero-labels",
            crate::properties::Lambda::new(rat(1, 2)).unwrap(),
            GraphClass::Labelled(2),
            true,
            |g: &Graph| g.edges().iter().all(|e| e.label == Some(0)),
        );
        let g = Graph::labelled(3, 2, &[(0, 1, 0), (1, 2, 1), (0, 2, 0)]).unwrap();
        let inst = Instance::new(g, rat(1, 1), pi).unwrap();
        let out = kernelize(&inst).unwrap();
        assert!(matches!(
            out.outcome,
            Outcome::Unsupported { reason: UnsupportedReason::LabelledHalf }
        ));
    }

    #[test]
    fn kernelize_reports_modulator_too_large() {
        // Five vertex-disjoint 4-cycles chained by bridges: every cycle
        // needs its own deletion, but the budget at k = 1/4 is only 4.
        let mut edges = Vec::new();
        for t in 0..5usize {
            let b = 4 * t;
            edges.extend([(b, b + 1), (b + 1, b + 2), (b + 2, b + 3), (b, b + 3)]);
            if t + 1 < 5 {
                edges.push((b + 3, b + 4));
            }
        }
        let g = Graph::simple(20, &edges).unwrap();
        let inst = Instance::new(g, rat(1, 4), PropertySpec::q_colorable(3).unwrap()).unwrap();
        let out = kernelize(&inst).unwrap();
        match out.outcome {
            Outcome::ModulatorTooLarge { diagnostic } => {
                assert_eq!(diagnostic.budget, 4);
                assert_eq!(diagnostic.s_size, 5);
                assert!(diagnostic.exact_attempted);
            }
            other => panic!("expected ModulatorTooLarge, got {}", other.tag()),
        }
    }
}
