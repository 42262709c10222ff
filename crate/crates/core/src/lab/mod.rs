//! Radial finite-difference laboratory for `□φ + (perturbation) = Q(∂φ, ∂φ)`.

pub mod coeffs;
pub mod config;
pub mod convergence;
pub mod data;
pub mod exact;
pub mod field;
pub mod grid;
pub mod nullform;
pub mod persist;
pub mod solver;
pub mod vector_field;

pub use coeffs::CoefficientProfile;
pub use convergence::{convergence_study, error_ratios, ConvergenceRow};
pub use data::{InitialData, Profile};
pub use exact::free_wave_exact;
pub use field::{FieldSamples, FieldSource};
pub use grid::Grid1D;
pub use nullform::{null_form_eval, NullFormCoeffs};
pub use solver::{evolve, residual_norm, Nonlinearity, SimConfig, Trajectory};
pub use vector_field::{apply_vector_field, parse_word, word_label, FieldSlice, VectorFieldEval, Vf};
pub use persist::{read_trajectory, write_trajectory};

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("blowup detected at t = {time}")]
    BlowupDetected { time: f64 },
    #[error("rotations vanish on radial fields")]
    RadialSymmetry,
    #[error("out of domain: {0}")]
    Domain(String),
    #[error("coefficients violate the null condition")]
    NullConditionViolated,
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("trajectory file: {0}")]
    Format(String),
}
