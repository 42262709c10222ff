//! Exact bookkeeping of pointwise decay envelopes and the bootstrap that
//! improves them.

pub mod bound;
pub mod engine;
pub mod exponent;
pub mod oracle;
pub mod rules;
pub mod trace_io;

pub use bound::{DecayBound, RegionTag, SourceBound, SourceKind};
pub use engine::{
    run_exterior_iteration, run_interior_iteration, BoundState, EngineConfig, IterationTrace,
    RuleApplication, RuleKind,
};
pub use exponent::{rat, Exponent, Rational};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CalculusError {
    #[error("u-exponent equals 1: logarithmic loss")]
    BoundaryEta,
    #[error("a + b + c equals 3: logarithmic borderline")]
    BorderlineSum,
    #[error("rule precondition violated: {0}")]
    RuleDomain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no admissible split at step {step} for {channel}")]
    NoAdmissibleSplit { step: usize, channel: &'static str },
    #[error("no fixed point after {0} steps")]
    StepCapExceeded(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
