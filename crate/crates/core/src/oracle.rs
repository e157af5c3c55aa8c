//! Ground truth at desk scale: the brute-force decision procedure, seeded
//! instance generators, and the lemma verification suites that back every
//! claimed inequality with enumerated evidence.

use crate::blocks::classify_blocks;
use crate::graph::{Edge, Graph, GraphClass, VertexId};
use crate::kernelizer::{kernelize, Instance, Outcome};
use crate::properties::{
    excess, excess_any, ex_clique, for_each_variant, pt, PropertyConstants, PropertySpec,
};
use crate::{rat, Error, Rat, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Decides the instance exactly: is there a spanning subgraph with the
/// property and at least `pt(G) + k` edges?
pub fn solve_apt(inst: &Instance) -> Result<bool> {
    let g = &inst.graph;
    let ms = crate::properties::ms(g, &inst.property)?;
    let bound = pt(g.vertex_count() as u64, g.edge_count() as u64, inst.property.lambda()) + inst.k;
    Ok(Rat::from_integer(ms as i64) >= bound)
}

/// Edge cap for the decomposition-free reference search.
pub const NAIVE_EDGE_CAP: usize = 22;

/// Reference `ms`: whole-graph enumeration over all edge subsets, no block
/// decomposition. Validates the block-additive optimization.
pub fn naive_ms(g: &Graph, pi: &PropertySpec) -> Result<u64> {
    let m = g.edge_count();
    if m > NAIVE_EDGE_CAP {
        return Err(Error::BlockTooLarge { edges: m, cap: NAIVE_EDGE_CAP });
    }
    let mut best = 0u64;
    for mask in 0u64..(1 << m) {
        let size = mask.count_ones() as u64;
        if size <= best && mask != 0 {
            continue;
        }
        let edges: Vec<Edge> =
            g.edges().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e).collect();
        let h = Graph::new(g.vertex_count(), g.class(), edges)?;
        if pi.membership(&h) {
            best = size;
        }
    }
    Ok(best)
}

/// What the oracle observed next to a kernelization outcome.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub outcome_tag: &'static str,
    /// Oracle answer on the original instance, when computable.
    pub original_answer: Option<bool>,
    /// Oracle answer on the kernel, for kernel outcomes.
    pub kernel_answer: Option<bool>,
}

/// Runs the kernelizer and checks its contract against the brute-force
/// decision: YES outcomes must be true, kernels must preserve the answer.
pub fn equivalence_check(inst: &Instance) -> Result<EquivalenceReport> {
    let out = kernelize(inst)?;
    match &out.outcome {
        Outcome::Yes { witness } => {
            let answer = solve_apt(inst)?;
            if !answer {
                return Err(Error::ContractViolation(format!(
                    "YES via {} on a NO instance: k = {}, graph {:?}",
                    witness.bound_tag(),
                    inst.k,
                    inst.graph
                )));
            }
            Ok(EquivalenceReport {
                outcome_tag: "yes",
                original_answer: Some(true),
                kernel_answer: None,
            })
        }
        Outcome::Kernel { graph, k } => {
            let original = solve_apt(inst)?;
            let kernel_inst = Instance::new(graph.clone(), *k, inst.property.clone())?;
            let reduced = solve_apt(&kernel_inst)?;
            if original != reduced {
                return Err(Error::ContractViolation(format!(
                    "kernel answer {reduced} differs from original {original}: k = {} -> {}, graph {:?} -> {:?}",
                    inst.k, k, inst.graph, graph
                )));
            }
            Ok(EquivalenceReport {
                outcome_tag: "kernel",
                original_answer: Some(original),
                kernel_answer: Some(reduced),
            })
        }
        Outcome::Unsupported { .. } | Outcome::ModulatorTooLarge { .. } => Ok(EquivalenceReport {
            outcome_tag: out.outcome.tag(),
            original_answer: solve_apt(inst).ok(),
            kernel_answer: None,
        }),
    }
}

/// How orientations/labels are assigned to generated underlying graphs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VariantPolicy {
    /// Keep the simple class.
    Plain,
    /// Orient every edge uniformly at random, except that 3-clique blocks
    /// are oriented cyclically with the given probability (planting
    /// zero-excess patterns for the oriented reductions).
    RandomOriented { cyclic_triangle_prob: f64 },
    /// Uniform random labels from the alphabet.
    RandomLabelled { alphabet: u32 },
}

/// Instance families the generator produces.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Every connected graph on at most `n_max` vertices, in vertex-count
    /// then edge-mask order (labeled enumeration; deduplication is the
    /// caller's choice).
    AllConnected { n_max: usize },
    /// An endless stream of G(n, p) draws, conditioned on connectivity by
    /// rejection.
    RandomGnp { n: usize, p: f64 },
    /// An endless stream of forests of cliques plus `s_size` extra attached
    /// vertices; the extra vertices form a known modulator.
    ForestOfCliquesPlusS { clique_sizes: Vec<usize>, s_size: usize, attach_prob: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub family: Family,
    pub variant_policy: VariantPolicy,
}

/// A generated graph together with the planted modulator, when the family
/// defines one.
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub graph: Graph,
    pub planted_modulator: Vec<VertexId>,
}

/// Deterministic stream of generated instances.
pub struct InstanceStream {
    config: GeneratorConfig,
    rng: ChaCha8Rng,
    // enumeration cursor for AllConnected
    n: usize,
    mask: u64,
    exhausted: bool,
}

/// Streams graphs per the configuration; identical configurations yield
/// identical streams.
pub fn generate(config: &GeneratorConfig) -> impl Iterator<Item = Graph> {
    generate_instances(config).map(|gi| gi.graph)
}

pub fn generate_instances(config: &GeneratorConfig) -> InstanceStream {
    InstanceStream {
        config: config.clone(),
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        n: 1,
        mask: 0,
        exhausted: false,
    }
}

impl Iterator for InstanceStream {
    type Item = GeneratedInstance;

    fn next(&mut self) -> Option<GeneratedInstance> {
        match &self.config.family {
            Family::AllConnected { n_max } => {
                let n_max = *n_max;
                loop {
                    if self.exhausted {
                        return None;
                    }
                    let pairs: Vec<(usize, usize)> =
                        (0..self.n).flat_map(|u| (u + 1..self.n).map(move |v| (u, v))).collect();
                    if self.mask >> pairs.len() != 0 || (pairs.is_empty() && self.mask > 0) {
                        if self.n >= n_max {
                            self.exhausted = true;
                            return None;
                        }
                        self.n += 1;
                        self.mask = 0;
                        continue;
                    }
                    let mask = self.mask;
                    self.mask += 1;
                    let edges: Vec<(usize, usize)> = pairs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, p)| *p)
                        .collect();
                    let g = Graph::simple(self.n, &edges).expect("valid");
                    if !g.is_connected() {
                        continue;
                    }
                    let g = apply_policy(&g, self.config.variant_policy, &mut self.rng, &[]);
                    return Some(GeneratedInstance { graph: g, planted_modulator: Vec::new() });
                }
            }
            Family::RandomGnp { n, p } => {
                let (n, p) = (*n, *p);
                loop {
                    let mut edges = Vec::new();
                    for u in 0..n {
                        for v in u + 1..n {
                            if self.rng.gen_bool(p) {
                                edges.push((u, v));
                            }
                        }
                    }
                    let g = Graph::simple(n, &edges).expect("valid");
                    if !g.is_connected() {
                        continue;
                    }
                    let g = apply_policy(&g, self.config.variant_policy, &mut self.rng, &[]);
                    return Some(GeneratedInstance { graph: g, planted_modulator: Vec::new() });
                }
            }
            Family::ForestOfCliquesPlusS { clique_sizes, s_size, attach_prob } => {
                let (sizes, s_size, attach) = (clique_sizes.clone(), *s_size, *attach_prob);
                Some(forest_of_cliques_plus_s(
                    &sizes,
                    s_size,
                    attach,
                    self.config.variant_policy,
                    &mut self.rng,
                ))
            }
        }
    }
}

/// Builds one forest-of-cliques-plus-modulator instance: cliques are chained
/// by sharing a vertex or by a bridge edge, then `s_size` extra vertices
/// attach to forest vertices with probability `attach_prob` (at least one
/// edge each, so the result is connected).
fn forest_of_cliques_plus_s(
    clique_sizes: &[usize],
    s_size: usize,
    attach_prob: f64,
    policy: VariantPolicy,
    rng: &mut ChaCha8Rng,
) -> GeneratedInstance {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    let mut n = 0usize;
    for (i, &size) in clique_sizes.iter().enumerate() {
        let size = size.max(1);
        let mut members: Vec<usize> = Vec::with_capacity(size);
        let mut fresh = size;
        if i > 0 {
            if rng.gen_bool(0.5) {
                // share an existing vertex
                members.push(rng.gen_range(0..n));
                fresh = size - 1;
            } else {
                // bridge edge from an existing vertex to the new clique
                let anchor = rng.gen_range(0..n);
                edges.push((anchor, n));
            }
        }
        for _ in 0..fresh {
            members.push(n);
            n += 1;
        }
        for a in 0..members.len() {
            for b in a + 1..members.len() {
                edges.push((members[a], members[b]));
            }
        }
        if members.len() == 3 {
            triangles.push([members[0], members[1], members[2]]);
        }
    }
    let forest_n = n;
    let mut planted = Vec::new();
    for _ in 0..s_size {
        let s = n;
        n += 1;
        planted.push(s);
        let mut attached = false;
        for v in 0..forest_n {
            if rng.gen_bool(attach_prob) {
                edges.push((v, s));
                attached = true;
            }
        }
        for &other in &planted {
            if other != s && rng.gen_bool(attach_prob / 2.0) {
                edges.push((other, s));
            }
        }
        if !attached {
            edges.push((rng.gen_range(0..forest_n), s));
        }
    }
    let underlying = Graph::simple(n, &edges).expect("generator builds valid graphs");
    let graph = apply_policy(&underlying, policy, rng, &triangles);
    GeneratedInstance { graph, planted_modulator: planted }
}

fn apply_policy(
    underlying: &Graph,
    policy: VariantPolicy,
    rng: &mut ChaCha8Rng,
    triangles: &[[usize; 3]],
) -> Graph {
    match policy {
        VariantPolicy::Plain => underlying.clone(),
        VariantPolicy::RandomOriented { cyclic_triangle_prob } => {
            let mut arcs: Vec<(usize, usize)> = Vec::with_capacity(underlying.edge_count());
            let mut oriented = vec![false; underlying.edge_count()];
            let index_of = |u: usize, v: usize| {
                underlying
                    .edges()
                    .binary_search_by_key(&(u.min(v), u.max(v)), |e| (e.u, e.v))
                    .expect("edge exists")
            };
            for t in triangles {
                if rng.gen_bool(cyclic_triangle_prob) {
                    for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                        let i = index_of(a, b);
                        if !oriented[i] {
                            oriented[i] = true;
                            arcs.push((a, b));
                        }
                    }
                }
            }
            for (i, e) in underlying.edges().iter().enumerate() {
                if !oriented[i] {
                    if rng.gen_bool(0.5) {
                        arcs.push((e.u, e.v));
                    } else {
                        arcs.push((e.v, e.u));
                    }
                }
            }
            Graph::oriented(underlying.vertex_count(), &arcs).expect("valid orientation")
        }
        VariantPolicy::RandomLabelled { alphabet } => {
            let labelled: Vec<(usize, usize, u32)> = underlying
                .edges()
                .iter()
                .map(|e| (e.u, e.v, rng.gen_range(0..alphabet)))
                .collect();
            Graph::labelled(underlying.vertex_count(), alphabet, &labelled)
                .expect("valid labelling")
        }
    }
}

/// The canonical corpus instance for a seed: a forest of cliques sized to
/// keep exact search tractable, with up to two extra modulator vertices,
/// oriented with a bias towards cyclic triangles when the property is
/// oriented.
pub fn corpus_instance(pi: &PropertySpec, seed: u64, k: Rat) -> Result<Instance> {
    let mut shape_rng = ChaCha8Rng::seed_from_u64(seed ^ 0x636f7270);
    let n_cliques = shape_rng.gen_range(2..=4);
    let mut sizes = Vec::new();
    let mut total = 0usize;
    for _ in 0..n_cliques {
        let size = shape_rng.gen_range(2..=4);
        if total + size > 11 {
            break;
        }
        sizes.push(size);
        total += size;
    }
    if sizes.is_empty() {
        sizes.push(3);
    }
    let s_size = shape_rng.gen_range(0..=2);
    let attach_prob = 0.3 + 0.3 * shape_rng.gen_range(0.0..1.0);
    let policy = match pi.graph_class() {
        GraphClass::Simple => VariantPolicy::Plain,
        GraphClass::Oriented => VariantPolicy::RandomOriented { cyclic_triangle_prob: 0.6 },
        GraphClass::Labelled(alphabet) => VariantPolicy::RandomLabelled { alphabet },
    };
    let config = GeneratorConfig {
        seed,
        family: Family::ForestOfCliquesPlusS { clique_sizes: sizes, s_size, attach_prob },
        variant_policy: policy,
    };
    let gi = generate_instances(&config).next().expect("endless family");
    Instance::new(gi.graph, k, pi.clone())
}

/// Minimal adjacency encoding over all vertex permutations; equal bytes
/// mean isomorphic (orientation/label data included). Exponential, guarded
/// to small graphs.
pub fn canonical_form(g: &Graph) -> Vec<u8> {
    let n = g.vertex_count();
    assert!(n <= 8, "canonical_form is factorial, n = {n}");
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u8>> = None;
    permute(&mut perm, 0, &mut |p| {
        let mut code = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for jj in i + 1..n {
                // vertices p[i], p[jj] in the relabelled graph
                let byte = match g.edge_between(p[i], p[jj]) {
                    None => 0u8,
                    Some(e) => match e.arc_endpoints() {
                        Some((from, _)) => {
                            if from == p[i] {
                                1
                            } else {
                                2
                            }
                        }
                        None => match e.label {
                            Some(l) => 1 + l as u8,
                            None => 1,
                        },
                    },
                };
                code.push(byte);
            }
        }
        match &best {
            Some(b) if *b <= code => {}
            _ => best = Some(code),
        }
    });
    best.unwrap_or_default()
}

fn permute(perm: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
    if i == perm.len() {
        f(perm);
        return;
    }
    for j in i..perm.len() {
        perm.swap(i, j);
        permute(perm, i + 1, f);
        perm.swap(i, j);
    }
}

/// Seeded connected random graph in the given class.
pub fn random_connected_graph(
    rng: &mut ChaCha8Rng,
    n: usize,
    p: f64,
    policy: VariantPolicy,
) -> Graph {
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::simple(n, &edges).expect("valid");
        if g.is_connected() {
            return apply_policy(&g, policy, rng, &[]);
        }
    }
}

/// Reference forest-of-cliques test over bitmask adjacency, restricted to
/// the vertices in `live`: chordal (maximum-cardinality-search elimination)
/// and diamond-free. This route never touches the block decomposition, so
/// it independently checks everything built on it.
pub fn forest_of_cliques_reference(neighbor_masks: &[u32], live: u32) -> bool {
    let n = neighbor_masks.len();
    assert!(n <= 16);
    // diamond-free: the common neighborhood of every edge is a clique
    for u in 0..n {
        if live >> u & 1 == 0 {
            continue;
        }
        let mut vs = neighbor_masks[u] & live & !((1u32 << (u + 1)) - 1);
        while vs != 0 {
            let v = vs.trailing_zeros() as usize;
            vs &= vs - 1;
            let common = neighbor_masks[u] & neighbor_masks[v] & live;
            let mut ws = common;
            while ws != 0 {
                let w = ws.trailing_zeros() as usize;
                ws &= ws - 1;
                if common & !neighbor_masks[w] & !(1 << w) != 0 {
                    return false;
                }
            }
        }
    }
    // chordal: maximum cardinality search order admits perfect elimination
    let count = live.count_ones() as usize;
    let mut picked = 0u32;
    let mut order = Vec::with_capacity(count);
    let mut pick_index = [usize::MAX; 16];
    for step in 0..count {
        let mut best = usize::MAX;
        let mut best_weight = 0;
        let mut vs = live & !picked;
        while vs != 0 {
            let v = vs.trailing_zeros() as usize;
            vs &= vs - 1;
            let weight = (neighbor_masks[v] & picked).count_ones();
            if best == usize::MAX || weight > best_weight {
                best = v;
                best_weight = weight;
            }
        }
        picked |= 1 << best;
        pick_index[best] = step;
        order.push(best);
    }
    for (i, &v) in order.iter().enumerate() {
        let earlier: u32 = order[..i].iter().fold(0, |acc, &w| acc | 1 << w);
        let rn = neighbor_masks[v] & earlier;
        if rn == 0 {
            continue;
        }
        let mut latest = usize::MAX;
        let mut ws = rn;
        while ws != 0 {
            let w = ws.trailing_zeros() as usize;
            ws &= ws - 1;
            if latest == usize::MAX || pick_index[w] > pick_index[latest] {
                latest = w;
            }
        }
        if rn & !(1 << latest) & !neighbor_masks[latest] != 0 {
            return false;
        }
    }
    true
}

fn neighbor_masks_of(g: &Graph) -> Vec<u32> {
    let mut masks = vec![0u32; g.vertex_count()];
    for e in g.edges() {
        masks[e.u] |= 1 << e.v;
        masks[e.v] |= 1 << e.u;
    }
    masks
}

/// The reference test applied to a whole graph.
pub fn is_forest_of_cliques_reference(g: &Graph) -> bool {
    let n = g.vertex_count();
    let live = if n == 0 { 0 } else { (1u32 << n) - 1 };
    forest_of_cliques_reference(&neighbor_masks_of(g), live)
}

/// Minimum modulator by subset enumeration against the reference test
/// (first qualifying subset in mask order at the smallest feasible size).
pub fn minimum_modulator_reference(g: &Graph) -> Vec<VertexId> {
    let n = g.vertex_count();
    assert!(n <= 16);
    let masks = neighbor_masks_of(g);
    let full: u32 = if n == 0 { 0 } else { (1 << n) - 1 };
    for size in 0..=n {
        for subset in 0u32..=full {
            if subset.count_ones() as usize != size {
                continue;
            }
            if forest_of_cliques_reference(&masks, full & !subset) {
                return (0..n).filter(|v| subset >> v & 1 == 1).collect();
            }
        }
    }
    unreachable!("deleting every vertex always yields a forest of cliques");
}

/// A small oriented instance guaranteed to contain a zero-excess dangling
/// component: a cyclic triangle hung off a random forest of cliques.
pub fn plant_rule1_instance(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x72756c31);
    let n_cliques = rng.gen_range(1..=3);
    let sizes: Vec<usize> = (0..n_cliques).map(|_| rng.gen_range(2..=3)).collect();
    let s_size = rng.gen_range(0..=1);
    let gi = forest_of_cliques_plus_s(
        &sizes,
        s_size,
        0.4,
        VariantPolicy::RandomOriented { cyclic_triangle_prob: 0.3 },
        &mut rng,
    );
    let base = gi.graph;
    let n = base.vertex_count();
    let anchor = rng.gen_range(0..n);
    let mut arcs: Vec<(usize, usize)> = base.arcs().collect();
    arcs.push((anchor, n));
    arcs.push((n, n + 1));
    arcs.push((n + 1, anchor));
    Graph::oriented(n + 2, &arcs).expect("planted rule-1 instance is valid")
}

/// A small oriented instance with an applicable triangle-path pattern: two
/// cyclic triangles sharing a vertex, pendant arcs on the far ends, and
/// (depending on the seed) a modulator vertex bridging the two sides so
/// that the shared vertex is not a cut vertex.
pub fn plant_rule2_instance(seed: u64) -> (Graph, Vec<VertexId>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x72756c32);
    // 0 pendant, 1 = u1, 2 = w1, 3 = v, 4 = w2, 5 = u2, 6 pendant
    let mut arcs =
        vec![(0, 1), (1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3), (5, 6)];
    let bridged = rng.gen_bool(0.5);
    let mut n = 7;
    let mut s = Vec::new();
    if bridged {
        let bridge = n;
        n += 1;
        s.push(bridge);
        arcs.push((bridge, 1));
        arcs.push((bridge, 5));
        // occasionally decorate the modulator vertex with a pendant
        if rng.gen_bool(0.4) {
            arcs.push((bridge, n));
            n += 1;
        }
    } else if rng.gen_bool(0.4) {
        // grow one far end into a transitive triangle
        arcs.push((0, n));
        arcs.push((1, n));
        n += 1;
    }
    // randomize pendant arc directions
    let flip = rng.gen_bool(0.5);
    if flip {
        arcs[0] = (1, 0);
        arcs[7] = (6, 5);
    }
    (Graph::oriented(n, &arcs).expect("planted rule-2 instance is valid"), s)
}

/// One named lemma check: how many cases ran and which failed.
#[derive(Debug, Clone)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub cases: usize,
    pub counterexamples: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct LemmaReport {
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.counterexamples.is_empty())
    }
}

/// Scale knobs for [`lemma_suite`].
#[derive(Debug, Clone, Copy)]
pub struct LemmaSuiteConfig {
    pub seed: u64,
    /// Instances for the cut-vertex additivity check (graphs up to 10
    /// vertices).
    pub cutvertex_instances: usize,
    /// Instances for the bipartition inequality (graphs up to 8 vertices,
    /// every bipartition of each).
    pub half_instances: usize,
    /// Random forests of cliques for the branching-block bound.
    pub forest_instances: usize,
}

impl Default for LemmaSuiteConfig {
    fn default() -> Self {
        LemmaSuiteConfig { seed: 1, cutvertex_instances: 100, half_instances: 60, forest_instances: 200 }
    }
}

fn policy_for(pi: &PropertySpec) -> VariantPolicy {
    match pi.graph_class() {
        GraphClass::Simple => VariantPolicy::Plain,
        GraphClass::Oriented => VariantPolicy::RandomOriented { cyclic_triangle_prob: 0.4 },
        GraphClass::Labelled(alphabet) => VariantPolicy::RandomLabelled { alphabet },
    }
}

/// Verifies the additivity/inequality lemmas the reduction machinery leans
/// on, by seeded enumeration. A counterexample indicates an implementation
/// bug; reports carry the offending instance.
pub fn lemma_suite(pi: &PropertySpec, config: &LemmaSuiteConfig) -> Result<LemmaReport> {
    let mut report = LemmaReport::default();
    let lambda = pi.lambda();
    let half_c = lambda.half_complement();

    // exact cut-vertex additivity of the excess
    {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut check =
            LemmaCheck { name: "cut-vertex-additivity", cases: 0, counterexamples: Vec::new() };
        let policy = policy_for(pi);
        let mut produced = 0;
        while produced < config.cutvertex_instances {
            let n = rng.gen_range(4..=10);
            let g = random_connected_graph(&mut rng, n, 2.2 / n as f64, policy);
            let cuts = crate::blocks::cut_vertices(&g);
            if cuts.is_empty() {
                continue;
            }
            produced += 1;
            for v in cuts {
                let (without, map) = g.delete_vertices(&[v]);
                let mut inverse = vec![usize::MAX; without.vertex_count()];
                for (old, new) in map.iter().enumerate() {
                    if let Some(new) = new {
                        inverse[*new] = old;
                    }
                }
                let mut sum = Rat::from_integer(0);
                for comp in without.connected_components() {
                    let mut verts: Vec<usize> = comp.iter().map(|&w| inverse[w]).collect();
                    verts.push(v);
                    sum += excess(&g.induced_subgraph(&verts).0, pi)?.ex;
                }
                check.cases += 1;
                let whole = excess(&g, pi)?.ex;
                if whole != sum {
                    check.counterexamples.push(format!(
                        "cut vertex {v}: ex = {whole}, componentwise sum = {sum}, graph {g:?}"
                    ));
                }
            }
        }
        report.checks.push(check);
    }

    // the bipartition inequality, exhaustive over bipartitions
    {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x68616c66);
        let mut check =
            LemmaCheck { name: "bipartition-inequality", cases: 0, counterexamples: Vec::new() };
        let policy = policy_for(pi);
        for _ in 0..config.half_instances {
            let n = rng.gen_range(3..=8);
            let g = random_connected_graph(&mut rng, n, 0.4, policy);
            let whole = excess(&g, pi)?.ex;
            for mask in 1u32..(1 << (n - 1)) {
                let side1: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                let side2: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 0).collect();
                let (g1, _) = g.induced_subgraph(&side1);
                let (g2, _) = g.induced_subgraph(&side2);
                let e1 = excess_any(&g1, pi)?;
                let e2 = excess_any(&g2, pi)?;
                let c1 = g1.connected_components().len() as i64;
                let c2 = g2.connected_components().len() as i64;
                let floor = e1.ex + e2.ex - half_c * Rat::from_integer(c1 + c2 - 1);
                check.cases += 1;
                if whole < floor {
                    check.counterexamples.push(format!(
                        "sides {side1:?} | {side2:?}: ex = {whole} below {floor}, graph {g:?}"
                    ));
                }
            }
        }
        report.checks.push(check);
    }

    // clique growth and the almost-clique floor, when constants exist
    if let Ok(consts) = PropertyConstants::derive(pi) {
        let cap = crate::properties::clique_cap(pi);
        let mut growth =
            LemmaCheck { name: "clique-growth", cases: 0, counterexamples: Vec::new() };
        let mut r = 1;
        while r * consts.j <= cap {
            let expected = half_c + Rat::from_integer(r as i64) * consts.a;
            let actual = ex_clique(r * consts.j, pi)?;
            growth.cases += 1;
            if actual < expected {
                growth
                    .counterexamples
                    .push(format!("ex over K_{} is {actual}, below {expected}", r * consts.j));
            }
            r += 1;
        }
        report.checks.push(growth);

        let mut floor_check =
            LemmaCheck { name: "almost-clique-floor", cases: 0, counterexamples: Vec::new() };
        let a_prime = ex_clique(consts.j, pi)?;
        let floor = a_prime - half_c;
        for i in consts.j + 1..=(consts.j + 2).min(cap.max(consts.j)) {
            for_each_almost_clique_variants(i, pi, &mut |variant| {
                floor_check.cases += 1;
                match excess(variant, pi) {
                    Ok(v) if v.ex < floor => floor_check
                        .counterexamples
                        .push(format!("almost-clique {variant:?}: ex = {} below {floor}", v.ex)),
                    _ => {}
                }
            });
        }
        report.checks.push(floor_check);
    }

    // |branching blocks| <= 3 |leaf blocks| on forests of cliques
    {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x666f7265);
        let mut check =
            LemmaCheck { name: "branching-vs-leaf-blocks", cases: 0, counterexamples: Vec::new() };
        for _ in 0..config.forest_instances {
            let n_cliques = rng.gen_range(1..=7);
            let sizes: Vec<usize> = (0..n_cliques).map(|_| rng.gen_range(1..=5)).collect();
            let s_size = rng.gen_range(0..=2);
            let attach = 0.2 + rng.gen_range(0.0..0.5);
            let gi = forest_of_cliques_plus_s(&sizes, s_size, attach, VariantPolicy::Plain, &mut rng);
            let bd = classify_blocks(&gi.graph, &gi.planted_modulator);
            let [_, b1, _, bge3] = bd.class_counts();
            check.cases += 1;
            if bge3 > 3 * b1 {
                check.counterexamples.push(format!(
                    "branching {bge3} > 3 x leaf {b1}, graph {:?} minus {:?}",
                    gi.graph, gi.planted_modulator
                ));
            }
        }
        report.checks.push(check);
    }

    // oriented tightness facts at lambda = 1/2
    if pi.graph_class() == GraphClass::Oriented && pi.lambda().is_half() {
        let (cyclic_in, transitive_in) = crate::properties::oriented_triangle_flags(pi);
        let mut check =
            LemmaCheck { name: "oriented-triangle-facts", cases: 0, counterexamples: Vec::new() };
        check.cases += 1;
        if cyclic_in && !transitive_in && pi.declared_hereditary() {
            check.counterexamples.push(
                "cyclic triangle inside but transitive outside a hereditary property".to_string(),
            );
        }
        if transitive_in && !cyclic_in {
            // worst-case tournament excess: zero only at the triangle
            check.cases += 1;
            let four = ex_clique(4, pi)?;
            if four <= rat(1, 4) {
                check.counterexamples.push(format!("ex over K_4 is {four}, not above 1/4"));
            }
            for j in [2usize, 4, 5] {
                check.cases += 1;
                let v = ex_clique(j, pi)?;
                if v <= Rat::from_integer(0) {
                    check.counterexamples.push(format!("ex over K_{j} is {v}, not positive"));
                }
            }
            check.cases += 1;
            if ex_clique(3, pi)? != Rat::from_integer(0) {
                check.counterexamples.push("ex over K_3 is not zero".to_string());
            }
        }
        report.checks.push(check);
    }

    Ok(report)
}

fn for_each_almost_clique_variants(i: usize, pi: &PropertySpec, f: &mut dyn FnMut(&Graph)) {
    // connected almost-cliques: clique on i-1 vertices plus an apex of
    // degree 1..=i-1
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
        let underlying = Graph::simple(i, &edges).expect("valid");
        for_each_variant(&underlying, pi.graph_class(), f);
    }
}

/// Enumerates every connected graph of the property's class with up to
/// `n_max` vertices (all variants for oriented/labelled classes), asserting
/// the guarantee `ms >= pt` exactly. Returns the number checked.
pub fn poljak_turzik_check(pi: &PropertySpec, n_max: usize) -> Result<usize> {
    let mut checked = 0usize;
    assert!(n_max <= 8);
    for n in 1..=n_max {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u64..(1 << pairs.len()) {
            if !mask_connected(n, &pairs, mask) {
                continue;
            }
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| *p)
                .collect();
            let underlying = Graph::simple(n, &edges)?;
            let mut violation = None;
            for_each_variant(&underlying, pi.graph_class(), &mut |variant| {
                if violation.is_some() {
                    return;
                }
                checked += 1;
                match crate::properties::ms(variant, pi) {
                    Ok(ms) => {
                        let bound = pt(n as u64, variant.edge_count() as u64, pi.lambda());
                        if Rat::from_integer(ms as i64) < bound {
                            violation = Some(format!(
                                "ms = {ms} below pt = {bound} on {variant:?}"
                            ));
                        }
                    }
                    Err(e) => violation = Some(format!("ms failed: {e}")),
                }
            });
            if let Some(v) = violation {
                return Err(Error::ContractViolation(v));
            }
        }
    }
    Ok(checked)
}

/// Bitmask connectivity over an edge mask, cheap pre-filter for the
/// exhaustive enumerations.
fn mask_connected(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    if n == 0 {
        return true;
    }
    let mut adj = [0u32; 8];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    let all = (1u32 << n) - 1;
    let mut reach = 1u32;
    loop {
        let mut next = reach;
        let mut bits = reach;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            next |= adj[v];
        }
        if next == reach {
            return reach == all;
        }
        reach = next;
    }
}

/// Independent bipartiteness test by exhaustive 2-coloring, used to
/// instantiate the "the property is exactly bipartiteness" conclusion
/// against the membership oracle on all connected graphs up to `n_max`
/// vertices. Returns the number of graphs compared.
pub fn bipartite_membership_check(n_max: usize) -> Result<usize> {
    let pi = PropertySpec::bipartite();
    let mut checked = 0usize;
    assert!(n_max <= 8);
    for n in 1..=n_max {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u64..(1 << pairs.len()) {
            if !mask_connected(n, &pairs, mask) {
                continue;
            }
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| *p)
                .collect();
            let g = Graph::simple(n, &edges)?;
            // brute force: some 2-coloring with no monochromatic edge
            let mut two_colorable = false;
            for coloring in 0u32..(1 << n) {
                if edges.iter().all(|&(u, v)| (coloring >> u & 1) != (coloring >> v & 1)) {
                    two_colorable = true;
                    break;
                }
            }
            checked += 1;
            if pi.membership(&g) != two_colorable {
                return Err(Error::ContractViolation(format!(
                    "membership disagrees with 2-coloring on {g:?}"
                )));
            }
        }
    }
    Ok(checked)
}
