//! Weighted spacetime norms, dyadic-region suprema, decay fits and energy
//! histories measured on recorded fields.

pub mod energy;
pub mod fit;
pub mod le;
pub mod regions;
pub mod report;
pub mod suites;

pub use energy::energy_history;
pub use fit::{fit_decay_exponents, FitResult};
pub use le::{envelope_sup, region_sup, weighted_dyadic_norm, NormKind, NormReport};
pub use regions::{DyadicRegionSpec, RegionKind};
pub use suites::{decay_fits, envelope_profile, norm_table};

use crate::lab::LabError;

#[derive(Debug, thiserror::Error)]
pub enum NormError {
    #[error("out of domain: {0}")]
    Domain(String),
    #[error("region {0} contains no grid points")]
    EmptyRegion(String),
    #[error(transparent)]
    Lab(#[from] LabError),
}
