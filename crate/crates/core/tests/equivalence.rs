//! End-to-end contract checks on the seeded corpus, plus the structural
//! identity of the path-block partition on reduced oriented instances.

use apt_kernel::blocks::classify_blocks;
use apt_kernel::kernelizer::{
    b2_partition, b2_zero_sets, kernelize, reduce_to_fixpoint, KernelCase, Outcome,
};
use apt_kernel::modulator::{find_modulator, modulator_budget};
use apt_kernel::oracle::{corpus_instance, equivalence_check};
use apt_kernel::properties::{PropertyConstants, PropertySpec};
use apt_kernel::{rat, Rat};
use num_traits::Zero;

#[test]
fn corpus_outcomes_match_the_oracle() {
    for pi in [PropertySpec::q_colorable(3).unwrap(), PropertySpec::acyclic_oriented()] {
        for seed in 0..100u64 {
            for k_int in 1..=3i64 {
                let inst = corpus_instance(&pi, seed, rat(k_int, 1)).unwrap();
                equivalence_check(&inst).unwrap_or_else(|e| {
                    panic!("violation for {} seed {seed} k {k_int}: {e}", pi.name())
                });
            }
        }
    }
}

#[test]
fn kernel_outcomes_respect_the_bound() {
    let pi = PropertySpec::acyclic_oriented();
    for seed in 0..60u64 {
        let inst = corpus_instance(&pi, seed, rat(1, 1)).unwrap();
        let out = kernelize(&inst).unwrap();
        if let Outcome::Kernel { graph, .. } = &out.outcome {
            assert!(graph.vertex_count() as u64 <= out.vertex_bound.unwrap());
        }
    }
}

/// On a reduced oriented instance the path blocks split into the four
/// classes, the class with modulator-touching cut vertices is bounded by
/// its neighbors, and the untouched class is bounded by everything else.
#[test]
fn path_block_partition_identity_after_reduction() {
    let pi = PropertySpec::acyclic_oriented();
    let consts = PropertyConstants::derive(&pi).unwrap();
    let mut reduced_checked = 0;
    for seed in 0..120u64 {
        let inst = corpus_instance(&pi, seed, rat(1, 1)).unwrap();
        let budget = modulator_budget(inst.k, pi.lambda());
        let modulator = find_modulator(&inst.graph, budget).unwrap();
        if !modulator.size_ok {
            continue;
        }
        let red = reduce_to_fixpoint(
            &inst.graph,
            &modulator.s,
            inst.k,
            &pi,
            &consts,
            KernelCase::Cubic,
        )
        .unwrap();
        if red.k <= Rat::zero() {
            continue;
        }
        let bd = classify_blocks(&red.graph, &red.modulator);
        let parts = b2_partition(&red.graph, &red.modulator, &bd, &pi, &consts).unwrap();
        let [_, b1, b2, bge3] = bd.class_counts();
        assert_eq!(
            parts.plus.len() + parts.prime.len() + parts.double_prime.len()
                + parts.triple_prime.len(),
            b2,
            "partition must cover the path blocks exactly (seed {seed})"
        );
        let zero = b2_zero_sets(&red.graph, &red.modulator, &bd, &pi, &consts).unwrap();
        let q0_in_ns = {
            let mut flags = vec![false; red.graph.vertex_count()];
            for &s in &red.modulator {
                for &w in red.graph.neighbors(s) {
                    flags[w] = true;
                }
            }
            zero.q0.iter().filter(|&&q| flags[q]).count()
        };
        let others = b1 + bge3 + parts.plus.len() + parts.prime.len();
        assert!(
            parts.double_prime.len() <= 2 * (others + q0_in_ns),
            "seed {seed}: {} double-prime blocks against {} + {}",
            parts.double_prime.len(),
            others,
            q0_in_ns
        );
        assert!(
            parts.triple_prime.len() <= others + parts.double_prime.len(),
            "seed {seed}: {} triple-prime blocks against {}",
            parts.triple_prime.len(),
            others + parts.double_prime.len()
        );
        reduced_checked += 1;
    }
    assert!(reduced_checked >= 100);
}

#[test]
fn zero_excess_path_block_cut_vertices_live_in_two_blocks() {
    let pi = PropertySpec::acyclic_oriented();
    let consts = PropertyConstants::derive(&pi).unwrap();
    for seed in 0..80u64 {
        let inst = corpus_instance(&pi, seed, rat(1, 1)).unwrap();
        let budget = modulator_budget(inst.k, pi.lambda());
        let modulator = find_modulator(&inst.graph, budget).unwrap();
        if !modulator.size_ok {
            continue;
        }
        let bd = classify_blocks(&inst.graph, &modulator.s);
        let zero = b2_zero_sets(&inst.graph, &modulator.s, &bd, &pi, &consts).unwrap();
        for &q in &zero.q0 {
            let containing =
                bd.blocks.iter().filter(|b| b.binary_search(&q).is_ok()).count();
            assert_eq!(containing, 2, "seed {seed}, vertex {q}");
        }
    }
}
