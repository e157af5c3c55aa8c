//! Rule validity against independently computed excess: the zero-excess
//! dangling rule must preserve `ex` exactly, and the triangle-path rule
//! must change it by 0 or -1/4 depending on its connectivity case.

use apt_kernel::kernelizer::{
    rule1_exhaust, rule2_step, Rule2Case,
};
use apt_kernel::oracle::{plant_rule1_instance, plant_rule2_instance};
use apt_kernel::properties::{excess, PropertyConstants, PropertySpec};
use apt_kernel::rat;

#[test]
fn rule1_preserves_excess_on_planted_instances() {
    let pi = PropertySpec::acyclic_oriented();
    let consts = PropertyConstants::derive(&pi).unwrap();
    let mut applications = 0;
    for seed in 0..80u64 {
        let g = plant_rule1_instance(seed);
        assert!(g.vertex_count() <= 12);
        let before = excess(&g, &pi).unwrap().ex;
        let (reduced, _, count) = rule1_exhaust(&g, &[], &pi, &consts).unwrap();
        assert!(count >= 1, "planted pattern must fire (seed {seed})");
        applications += count;
        let after = excess(&reduced, &pi).unwrap().ex;
        assert_eq!(before, after, "excess changed under rule 1 (seed {seed})");
        assert!(reduced.is_connected());
    }
    assert!(applications >= 80);
}

#[test]
fn rule2_shifts_excess_by_connectivity_case() {
    let pi = PropertySpec::acyclic_oriented();
    let mut connected_cases = 0;
    let mut disconnected_cases = 0;
    for seed in 0..80u64 {
        let (g, s) = plant_rule2_instance(seed);
        assert!(g.vertex_count() <= 12);
        let before = excess(&g, &pi).unwrap().ex;
        let (reduced, _, app) = rule2_step(&g, &s, &pi)
            .unwrap()
            .unwrap_or_else(|| panic!("planted pattern must fire (seed {seed})"));
        let after = excess(&reduced, &pi).unwrap().ex;
        match app.case {
            Rule2Case::DisconnectedIdentify => {
                disconnected_cases += 1;
                assert_eq!(after, before, "identify case must preserve excess (seed {seed})");
            }
            Rule2Case::ConnectedDecrement => {
                connected_cases += 1;
                assert_eq!(
                    after,
                    before - rat(1, 4),
                    "deletion case must lower excess by 1/4 (seed {seed})"
                );
            }
        }
        assert!(reduced.is_connected());
    }
    assert!(connected_cases > 10 && disconnected_cases > 10);
}

#[test]
fn rule2_preserves_the_answer_under_adjusted_k() {
    // YES at parameter k means ex >= k; after the rule the same holds for
    // the adjusted parameter.
    let pi = PropertySpec::acyclic_oriented();
    for seed in 0..40u64 {
        let (g, s) = plant_rule2_instance(seed);
        let before = excess(&g, &pi).unwrap().ex;
        let (reduced, _, app) = rule2_step(&g, &s, &pi).unwrap().unwrap();
        let after = excess(&reduced, &pi).unwrap().ex;
        for k_num in 1..=8i64 {
            let k = rat(k_num, 4);
            let k_adjusted = match app.case {
                Rule2Case::DisconnectedIdentify => k,
                Rule2Case::ConnectedDecrement => k - rat(1, 4),
            };
            assert_eq!(before >= k, after >= k_adjusted, "seed {seed}, k {k}");
        }
    }
}
