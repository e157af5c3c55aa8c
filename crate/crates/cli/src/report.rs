//! Run reports: one deterministic record per kernelization run, printable
//! as text or JSON (stable key order; only `timing_ms` varies between
//! identical runs).

use apt_kernel::kernelizer::{Instance, KernelCase, Kernelization, Outcome, YesWitness};
use apt_kernel::Rat;
use serde::Serialize;
use std::time::Duration;

#[derive(Debug, Serialize)]
pub struct InstanceSummary {
    pub n: usize,
    pub m: usize,
    pub k: String,
    pub property: String,
}

#[derive(Debug, Serialize)]
pub struct KernelStats {
    pub n: usize,
    pub m: usize,
    pub k: String,
    pub bound: u64,
    /// Exact ratio `n / bound`.
    pub utilization: String,
}

#[derive(Debug, Serialize)]
pub struct RuleCounts {
    pub rule1: usize,
    pub rule2: usize,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub instance: InstanceSummary,
    pub outcome: String,
    pub case: Option<String>,
    pub witness_lemma: Option<String>,
    pub witness: Option<YesWitness>,
    pub unsupported_reason: Option<String>,
    pub modulator_size: Option<usize>,
    pub kernel: Option<KernelStats>,
    pub rule_applications: RuleCounts,
    pub timing_ms: u64,
}

impl RunReport {
    pub fn build(inst: &Instance, result: &Kernelization, elapsed: Duration) -> RunReport {
        let mut report = RunReport {
            instance: InstanceSummary {
                n: inst.graph.vertex_count(),
                m: inst.graph.edge_count(),
                k: inst.k.to_string(),
                property: inst.property.name().to_string(),
            },
            outcome: result.outcome.tag().to_string(),
            case: result.case.map(|c| {
                match c {
                    KernelCase::Quadratic => "quadratic",
                    KernelCase::Cubic => "cubic",
                }
                .to_string()
            }),
            witness_lemma: None,
            witness: None,
            unsupported_reason: None,
            modulator_size: result.modulator_size,
            kernel: None,
            rule_applications: RuleCounts {
                rule1: result.rule1_applications,
                rule2: result.rule2_applications,
            },
            timing_ms: elapsed.as_millis() as u64,
        };
        match &result.outcome {
            Outcome::Yes { witness } => {
                report.witness_lemma = Some(witness.bound_tag().to_string());
                report.witness = Some(witness.clone());
            }
            Outcome::Kernel { graph, k } => {
                let bound = result.vertex_bound.unwrap_or(0);
                let utilization = if bound > 0 {
                    Rat::new(graph.vertex_count() as i64, bound as i64).to_string()
                } else {
                    "-".to_string()
                };
                report.kernel = Some(KernelStats {
                    n: graph.vertex_count(),
                    m: graph.edge_count(),
                    k: k.to_string(),
                    bound,
                    utilization,
                });
            }
            Outcome::Unsupported { reason } => {
                report.unsupported_reason = Some(reason.to_string());
            }
            Outcome::ModulatorTooLarge { diagnostic } => {
                report.unsupported_reason = Some(format!(
                    "modulator of size {} exceeds budget {}",
                    diagnostic.s_size, diagnostic.budget
                ));
            }
        }
        report
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "instance: n={} m={} k={} property={}\n",
            self.instance.n, self.instance.m, self.instance.k, self.instance.property
        ));
        match &self.case {
            Some(case) => out.push_str(&format!("outcome: {} (case {case})\n", self.outcome)),
            None => out.push_str(&format!("outcome: {}\n", self.outcome)),
        }
        if let Some(lemma) = &self.witness_lemma {
            out.push_str(&format!("witness: {lemma}\n"));
        }
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness detail: {w:?}\n"));
        }
        if let Some(reason) = &self.unsupported_reason {
            out.push_str(&format!("reason: {reason}\n"));
        }
        if let Some(size) = self.modulator_size {
            out.push_str(&format!("modulator: |S| = {size}\n"));
        }
        if let Some(kernel) = &self.kernel {
            out.push_str(&format!(
                "kernel: n'={} m'={} k'={} bound={} utilization={}\n",
                kernel.n, kernel.m, kernel.k, kernel.bound, kernel.utilization
            ));
        }
        out.push_str(&format!(
            "rules: rule1 x{}, rule2 x{}\n",
            self.rule_applications.rule1, self.rule_applications.rule2
        ));
        out.push_str(&format!("timing: {} ms\n", self.timing_ms));
        out
    }
}
