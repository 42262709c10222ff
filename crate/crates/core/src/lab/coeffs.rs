//! Time-independent radial perturbations `amp·⟨r⟩^(-k)`.
//!
//! `h` multiplies the radial second-order part, `B` enters as both `B⁰∂_t`
//! and `B^r∂_r`, `V` is a potential and `g^ω` scales the angular Laplacian.

use num_traits::ToPrimitive;

use super::LabError;
use crate::calculus::Rational;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoefficientProfile {
    pub amp_h: f64,
    pub amp_b: f64,
    pub amp_v: f64,
    pub amp_gw: f64,
    pub sigma: Rational,
}

fn jb(r: f64) -> f64 {
    (1.0 + r * r).sqrt()
}

impl CoefficientProfile {
    pub fn flat() -> Self {
        Self { amp_h: 0.0, amp_b: 0.0, amp_v: 0.0, amp_gw: 0.0, sigma: Rational::new(1, 10) }
    }

    /// Same amplitude in every slot.
    pub fn uniform(amp: f64, sigma: Rational) -> Self {
        Self { amp_h: amp, amp_b: amp, amp_v: amp, amp_gw: amp, sigma }
    }

    pub fn is_flat(&self) -> bool {
        self.amp_h == 0.0 && self.amp_b == 0.0 && self.amp_v == 0.0 && self.amp_gw == 0.0
    }

    pub fn validate(&self) -> Result<(), LabError> {
        for (name, a) in [("h", self.amp_h), ("B", self.amp_b), ("V", self.amp_v), ("g^ω", self.amp_gw)] {
            if !(a.abs() <= 0.1) {
                return Err(LabError::Config(format!("|amp_{name}| = {} exceeds 0.1", a.abs())));
            }
        }
        let s = self.sigma_f64();
        if !(s > 0.0 && s < 0.5) {
            return Err(LabError::Config(format!("σ = {s} outside (0, 1/2)")));
        }
        Ok(())
    }

    pub fn sigma_f64(&self) -> f64 {
        self.sigma.to_f64().unwrap_or(f64::NAN)
    }

    pub fn h(&self, r: f64) -> f64 {
        self.amp_h * jb(r).powf(-1.0 - self.sigma_f64())
    }

    pub fn dh(&self, r: f64) -> f64 {
        let s = self.sigma_f64();
        -self.amp_h * (1.0 + s) * r * jb(r).powf(-3.0 - s)
    }

    pub fn b(&self, r: f64) -> f64 {
        self.amp_b * jb(r).powf(-1.0 - self.sigma_f64())
    }

    pub fn v(&self, r: f64) -> f64 {
        self.amp_v * jb(r).powf(-2.0 - self.sigma_f64())
    }

    pub fn gw(&self, r: f64) -> f64 {
        self.amp_gw * jb(r).powf(-2.0 - self.sigma_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decay_classes() {
        let c = CoefficientProfile::uniform(0.05, Rational::new(1, 10));
        c.validate().unwrap();
        let ratio = c.h(2000.0) / c.h(1000.0);
        assert!((ratio.log2() + 1.1).abs() < 1e-3);
        let ratio = c.v(2000.0) / c.v(1000.0);
        assert!((ratio.log2() + 2.1).abs() < 1e-3);
        let e = 1e-5;
        assert!((c.dh(3.0) - (c.h(3.0 + e) - c.h(3.0 - e)) / (2.0 * e)).abs() < 1e-9);
        assert!(CoefficientProfile::uniform(0.2, Rational::new(1, 10)).validate().is_err());
    }
}
