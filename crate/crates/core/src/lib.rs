//! Decay bookkeeping and numerical experiments for semilinear wave equations
//! with a null-form nonlinearity in `3+1` dimensions.

pub mod calculus;
pub mod checks;
pub mod cli;
pub mod lab;
pub mod norms;
