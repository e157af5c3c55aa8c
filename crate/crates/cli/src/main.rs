//! Batch front-end: graph ingestion, kernelization runs, constants
//! inspection, axiom checks, verification corpus runs, and benchmark
//! tables.
//!
//! Exit codes for `kernelize`: 0 kernel, 10 yes, 20 unsupported,
//! 21 modulator too large, 1 error.

mod graphfile;
mod report;

use anyhow::{bail, Context, Result};
use apt_kernel::kernelizer::{kernelize, Instance, KernelCase, Outcome, Thresholds};
use apt_kernel::kernelizer::kernel_size_bound;
use apt_kernel::oracle::{corpus_instance, equivalence_check};
use apt_kernel::properties::{
    check_axioms, is_hereditary_upto, triangle_membership, PropertyConstants, PropertySpec,
};
use apt_kernel::graph::GraphClass;
use apt_kernel::{parse_rat, rat, Error};
use clap::{Parser, Subcommand};
use report::RunReport;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "aptk", version, about = "Kernelization above the Poljak-Turzik bound")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kernelize one instance from a graph file.
    Kernelize {
        /// Input graph in apt-graph v1 format.
        #[arg(long)]
        graph: PathBuf,
        /// Built-in property: bipartite | qcol:q | acyclic-oriented.
        #[arg(long)]
        property: String,
        /// Positive rational with denominator dividing 4, e.g. 2 or 5/4.
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
        /// Write the kernel graph to this file (kernel outcomes only).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the derived constants and all thresholds at k = 1, 2, 3.
    Constants {
        #[arg(long)]
        property: String,
    },
    /// Exhaustively check the defining axioms and the heredity flag.
    CheckAxioms {
        #[arg(long)]
        property: String,
        /// Largest vertex count enumerated (default 5 simple, 4 oriented,
        /// 3 labelled).
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Run the seeded corpus and fail on any outcome-contract violation.
    Verify {
        #[arg(long)]
        property: String,
        /// Seed range, e.g. 1..100 (inclusive) or a single seed.
        #[arg(long)]
        seeds: String,
        /// Parameter range, e.g. 1..3 (inclusive) or a single value.
        #[arg(long)]
        k: String,
    },
    /// Emit a kernel-size-vs-k table over the seeded corpus.
    Bench {
        #[arg(long)]
        property: String,
        /// Parameter range, e.g. 1..4.
        #[arg(long)]
        k: String,
        /// Seeds per row.
        #[arg(long, default_value_t = 50)]
        seeds: u64,
        /// CSV instead of a markdown table.
        #[arg(long)]
        csv: bool,
    },
}

fn parse_property(spec: &str) -> Result<PropertySpec> {
    if spec == "bipartite" {
        return Ok(PropertySpec::bipartite());
    }
    if spec == "acyclic-oriented" {
        return Ok(PropertySpec::acyclic_oriented());
    }
    if let Some(q) = spec.strip_prefix("qcol:") {
        let q: u32 = q.parse().with_context(|| format!("invalid q in `{spec}`"))?;
        return Ok(PropertySpec::q_colorable(q)?);
    }
    bail!("unknown property `{spec}` (expected bipartite | qcol:q | acyclic-oriented)")
}

/// `a..b` inclusive, or a single value.
fn parse_range(spec: &str) -> Result<(i64, i64)> {
    if let Some((a, b)) = spec.split_once("..") {
        let a: i64 = a.trim().parse().with_context(|| format!("invalid range `{spec}`"))?;
        let b: i64 = b.trim().parse().with_context(|| format!("invalid range `{spec}`"))?;
        if a > b {
            bail!("empty range `{spec}`");
        }
        return Ok((a, b));
    }
    let v: i64 = spec.trim().parse().with_context(|| format!("invalid range `{spec}`"))?;
    Ok((v, v))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Kernelize { graph, property, k, json, output } => {
            let text = std::fs::read_to_string(&graph)
                .with_context(|| format!("cannot read {}", graph.display()))?;
            let g = graphfile::parse(&text)?;
            let pi = parse_property(&property)?;
            let k = parse_rat(&k)?;
            let inst = Instance::new(g, k, pi)?;
            let start = Instant::now();
            let result = kernelize(&inst)?;
            let report = RunReport::build(&inst, &result, start.elapsed());
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", report.human());
            }
            if let (Some(path), Outcome::Kernel { graph, .. }) = (&output, &result.outcome) {
                std::fs::write(path, graphfile::write(graph))
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            let code = match result.outcome {
                Outcome::Kernel { .. } => 0,
                Outcome::Yes { .. } => 10,
                Outcome::Unsupported { .. } => 20,
                Outcome::ModulatorTooLarge { .. } => 21,
            };
            Ok(ExitCode::from(code))
        }
        Command::Constants { property } => {
            let pi = parse_property(&property)?;
            let consts = match PropertyConstants::derive(&pi) {
                Ok(c) => c,
                Err(Error::NoDivergenceWitness(name)) => {
                    bail!("property `{name}` has no divergence witness within the clique cap")
                }
                Err(e) => return Err(e.into()),
            };
            println!("property: {}", pi.name());
            println!("lambda: {}", pi.lambda());
            println!("divergence: j = {}, a = {}", consts.j, consts.a);
            println!("inf_AK: {}", consts.inf_ak);
            let oriented_half = pi.graph_class() == GraphClass::Oriented && pi.lambda().is_half();
            for k_int in 1..=3i64 {
                let k = rat(k_int, 1);
                let t = Thresholds::new(&consts, k);
                println!("k = {k_int}:");
                println!("  t_dangling = {}", t.t_dangling);
                println!("  t_star = {}", t.t_star);
                println!("  t_sneighbor = {}", t.t_sneighbor);
                println!("  t_components = {}", t.t_components);
                println!("  t_nonpath = {}", t.t_nonpath);
                println!("  t_posblocks = {}", t.t_posblocks);
                println!("  t_interior = {}", t.t_interior);
                println!("  t_bigblocks = {}", t.t_bigblocks);
                if oriented_half {
                    println!("  t_q0 = {}", t.t_q0);
                }
                println!(
                    "  quadratic_bound = {}",
                    kernel_size_bound(&consts, k, KernelCase::Quadratic)
                );
                if oriented_half {
                    println!(
                        "  cubic_bound = {}",
                        kernel_size_bound(&consts, k, KernelCase::Cubic)
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckAxioms { property, n_max } => {
            let pi = parse_property(&property)?;
            let n_max = n_max.unwrap_or(match pi.graph_class() {
                GraphClass::Simple => 5,
                GraphClass::Oriented => 4,
                GraphClass::Labelled(_) => 3,
            });
            let report = check_axioms(&pi, n_max);
            let hereditary = is_hereditary_upto(&pi, n_max);
            let tri = triangle_membership(&pi);
            println!("property: {} (n_max = {n_max})", pi.name());
            println!("graphs checked: {}", report.graphs_checked);
            let verdict = |c: &Vec<String>| if c.is_empty() { "pass".to_string() } else { format!("FAIL ({})", c.len()) };
            println!("inclusiveness: {}", verdict(&report.inclusiveness));
            println!("block additivity: {}", verdict(&report.block_additivity));
            println!("lambda-subgraph extension: {}", verdict(&report.extension));
            for c in report
                .inclusiveness
                .iter()
                .chain(&report.block_additivity)
                .chain(&report.extension)
            {
                println!("  counterexample: {c}");
            }
            println!(
                "hereditary: measured {hereditary}, declared {}",
                pi.declared_hereditary()
            );
            println!("triangle membership: {}", tri.tag());
            let ok = report.passed() && hereditary == pi.declared_hereditary();
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Verify { property, seeds, k } => {
            let pi = parse_property(&property)?;
            let (s0, s1) = parse_range(&seeds)?;
            let (k0, k1) = parse_range(&k)?;
            let mut tallies: Vec<(String, usize)> = Vec::new();
            let mut violations = Vec::new();
            let mut total = 0usize;
            for seed in s0..=s1 {
                for k_int in k0..=k1 {
                    total += 1;
                    let inst = corpus_instance(&pi, seed as u64, rat(k_int, 1))?;
                    match equivalence_check(&inst) {
                        Ok(rep) => {
                            match tallies.iter_mut().find(|(tag, _)| tag == rep.outcome_tag) {
                                Some((_, count)) => *count += 1,
                                None => tallies.push((rep.outcome_tag.to_string(), 1)),
                            }
                        }
                        Err(e) => violations.push(format!("seed {seed}, k {k_int}: {e}")),
                    }
                }
            }
            tallies.sort();
            println!("instances: {total}");
            for (tag, count) in &tallies {
                println!("  {tag}: {count}");
            }
            if violations.is_empty() {
                println!("contract violations: 0");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("contract violations: {}", violations.len());
                for v in &violations {
                    println!("  {v}");
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Bench { property, k, seeds, csv } => {
            let pi = parse_property(&property)?;
            let (k0, k1) = parse_range(&k)?;
            let mut rows = Vec::new();
            for k_int in k0..=k1 {
                let mut kernels = 0usize;
                let mut yes = 0usize;
                let mut other = 0usize;
                let mut vertex_sum = 0u64;
                let mut bound = None;
                for seed in 0..seeds {
                    let inst = corpus_instance(&pi, seed, rat(k_int, 1))?;
                    match kernelize(&inst) {
                        Ok(result) => match result.outcome {
                            Outcome::Kernel { graph, .. } => {
                                kernels += 1;
                                vertex_sum += graph.vertex_count() as u64;
                                bound = bound.or(result.vertex_bound);
                            }
                            Outcome::Yes { .. } => yes += 1,
                            _ => other += 1,
                        },
                        Err(e) => bail!("bench run failed at seed {seed}, k {k_int}: {e}"),
                    }
                }
                let mean = if kernels > 0 { vertex_sum as f64 / kernels as f64 } else { 0.0 };
                let utilization = match bound {
                    Some(b) if kernels > 0 => mean / b as f64,
                    _ => 0.0,
                };
                rows.push((k_int, seeds as usize, kernels, yes, other, mean, bound, utilization));
            }
            if csv {
                println!("k,instances,kernels,yes,other,mean_kernel_vertices,bound,utilization");
                for (k, n, kern, yes, other, mean, bound, util) in rows {
                    println!(
                        "{k},{n},{kern},{yes},{other},{mean:.2},{},{util:.6}",
                        bound.map_or("-".to_string(), |b| b.to_string())
                    );
                }
            } else {
                println!(
                    "| k | instances | kernels | yes | other | mean kernel vertices | bound | utilization |"
                );
                println!("|---|---|---|---|---|---|---|---|");
                for (k, n, kern, yes, other, mean, bound, util) in rows {
                    println!(
                        "| {k} | {n} | {kern} | {yes} | {other} | {mean:.2} | {} | {util:.6} |",
                        bound.map_or("-".to_string(), |b| b.to_string())
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
