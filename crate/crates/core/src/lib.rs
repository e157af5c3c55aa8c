//! Kernelization engine for graph problems parameterized above the
//! Poljak-Turzik bound.
//!
//! Every connected graph has a spanning subgraph with property `Pi` and at
//! least `lambda*m + (1-lambda)/2*(n-1)` edges, for any strongly
//! lambda-extendible property `Pi`. The decision problem asks for `k` more
//! edges than that guarantee. This crate reduces such instances to
//! equivalent ones of size polynomial in `k`:
//!
//! * [`graph`] — graphs with optional per-edge orientations/labels, block
//!   decomposition, block classification and dangling components;
//! * [`properties`] — the excess calculus (`pt`, `ms`, `ex`), built-in
//!   properties, divergence witnesses and axiom checking;
//! * [`modulator`] — finding a vertex set whose removal leaves a forest of
//!   cliques;
//! * [`kernelizer`] — the reduction rules, YES-thresholds and case dispatch;
//! * [`oracle`] — brute-force ground truth, instance generators and the
//!   lemma verification suites.

pub mod blocks;
pub mod graph;
pub mod kernelizer;
pub mod modulator;
pub mod oracle;
pub mod properties;
mod rational;

pub use rational::{parse_rat, rat, Rat};

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(usize, usize),
    #[error("edge data does not match graph class: {0}")]
    ClassMismatch(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("cannot identify {0} and {1}: {2}")]
    IdentifyPrecondition(usize, usize, String),
    #[error("block with {edges} edges exceeds the search cap of {cap}")]
    BlockTooLarge { edges: usize, cap: usize },
    #[error("clique on {vertices} vertices exceeds the variant-enumeration cap of {cap}")]
    CliqueTooLarge { vertices: usize, cap: usize },
    #[error("property `{0}` has no divergence witness within the clique cap")]
    NoDivergenceWitness(String),
    #[error("lambda must satisfy 0 < lambda < 1, got {0}")]
    LambdaOutOfRange(Rat),
    #[error("exact modulator search requested on {n} vertices (cap {cap})")]
    BudgetExceeded { n: usize, cap: usize },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("reduction rule precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("kernel bound violated: {vertices} vertices against bound {bound} ({detail})")]
    BoundViolation {
        vertices: usize,
        bound: u64,
        detail: String,
    },
    #[error("outcome contract violated: {0}")]
    ContractViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
