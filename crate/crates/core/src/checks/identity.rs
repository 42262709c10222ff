//! `∂_r f = (S f)/r - (t/r)∂_t f`.

use crate::lab::{FieldSource, VectorFieldEval, Vf};

/// Largest relative defect of the radial identity over points with `r ≥ dr`.
pub fn radial_identity_defect(field: &impl FieldSource) -> f64 {
    let s = VectorFieldEval::new(&[Vf::Scaling]).expect("scaling is radial");
    let mut worst = 0.0f64;
    for k in 0..field.n_times() {
        let t = field.time(k);
        for i in 1..field.n_points() {
            let r = field.r(i);
            let lhs = field.phi_r(k, i);
            let rhs = s.at(field, k, i) / r - t / r * field.phi_t(k, i);
            let scale = lhs.abs().max(field.phi_t(k, i).abs() * t / r).max(1e-300);
            worst = worst.max((lhs - rhs).abs() / scale);
        }
    }
    worst
}
