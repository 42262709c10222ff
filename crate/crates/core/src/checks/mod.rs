//! Functional inequalities measured on recorded or synthetic fields.
//!
//! Every check reports both sides and their ratio; nothing here asserts.
//! Scale stability (max/min ratio over a sweep) is judged by the caller.

mod blocks;
pub mod identity;
pub mod kinds;
pub mod sweeps;

pub use blocks::Block;
pub use identity::radial_identity_defect;
pub use kinds::check_inequality;
pub use sweeps::{default_sweep, run_sweep};

use std::fmt;

use serde::Serialize;

use crate::lab::{CoefficientProfile, FieldSource, Nonlinearity, SimConfig};
use crate::norms::NormError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CheckKind {
    ConeHardy,
    SobolevU,
    SobolevRIn,
    SobolevROut,
    SobolevRR,
    KlainermanSideris,
    MorawetzDyadic,
    MorawetzInterior,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::ConeHardy,
        CheckKind::SobolevU,
        CheckKind::SobolevRIn,
        CheckKind::SobolevROut,
        CheckKind::SobolevRR,
        CheckKind::KlainermanSideris,
        CheckKind::MorawetzDyadic,
        CheckKind::MorawetzInterior,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckKind::ConeHardy => "cone_hardy",
            CheckKind::SobolevU => "sobolev_U",
            CheckKind::SobolevRIn => "sobolev_R_in",
            CheckKind::SobolevROut => "sobolev_R_out",
            CheckKind::SobolevRR => "sobolev_RR",
            CheckKind::KlainermanSideris => "klainerman_sideris",
            CheckKind::MorawetzDyadic => "morawetz_dyadic",
            CheckKind::MorawetzInterior => "morawetz_interior",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub kind: CheckKind,
    pub t_scale: f64,
    /// `U` or `R` where the inequality has a secondary scale.
    pub scale: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

impl CheckReport {
    pub(crate) fn new(kind: CheckKind, t_scale: f64, scale: Option<f64>, lhs: f64, rhs: f64) -> Self {
        let ratio = if rhs > 0.0 { lhs / rhs } else { 0.0 };
        Self { kind, t_scale, scale, lhs, rhs, ratio }
    }

    /// Same column layout as the norm reports: `kind,T,R_or_U,word,value`.
    pub fn csv_rows(&self) -> String {
        let s = self.scale.map(|x| format!("{x:?}")).unwrap_or_default();
        let k = self.kind.as_str();
        let t = self.t_scale;
        format!(
            "check:{k}:lhs,{t:?},{s},id,{:?}\ncheck:{k}:rhs,{t:?},{s},id,{:?}\ncheck:{k}:ratio,{t:?},{s},id,{:?}\n",
            self.lhs, self.rhs, self.ratio
        )
    }
}

/// `max ratio / min ratio` over a sweep; infinite if some ratio vanishes.
pub fn scale_spread(reports: &[CheckReport]) -> f64 {
    let max = reports.iter().map(|r| r.ratio).fold(0.0f64, f64::max);
    let min = reports.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    if min > 0.0 { max / min } else { f64::INFINITY }
}

#[derive(Debug, thiserror::Error)]
pub enum CheckError {
    #[error("under-resolved: {0}")]
    Resolution(String),
    #[error("out of domain: {0}")]
    Domain(String),
    #[error(transparent)]
    Norm(#[from] NormError),
}

/// A field together with the equation it is meant to solve. Without a
/// configuration the operator is the flat wave operator and `Q = 0`.
pub struct Subject<'a, F: FieldSource> {
    pub field: &'a F,
    pub config: Option<&'a SimConfig>,
}

impl<'a, F: FieldSource> Subject<'a, F> {
    pub fn synthetic(field: &'a F) -> Self {
        Self { field, config: None }
    }

    pub fn solved(field: &'a F, config: &'a SimConfig) -> Self {
        Self { field, config: Some(config) }
    }

    fn coeffs(&self) -> CoefficientProfile {
        self.config.map_or_else(CoefficientProfile::flat, |c| c.coeffs)
    }

    /// `Pφ` at a grid point (radial, `ℓ = 0`).
    pub fn p_phi(&self, k: usize, i: usize) -> f64 {
        let f = self.field;
        let c = self.coeffs();
        let r = f.r(i).max(f.dr());
        let (p, pt, pr) = (f.phi(k, i), f.phi_t(k, i), f.phi_r(k, i));
        let lap = f.phi_rr(k, i) + 2.0 * pr / r;
        -f.phi_tt(k, i) + (1.0 + c.h(r)) * lap + c.dh(r) * pr + c.b(r) * (pt + pr) + c.v(r) * p
    }

    /// `(Q, ∂_tQ, ∂_rQ)` at a grid point.
    pub fn q_jet(&self, k: usize, i: usize) -> (f64, f64, f64) {
        let f = self.field;
        let (pt, pr) = (f.phi_t(k, i), f.phi_r(k, i));
        let (ptt, ptr, prr) = (f.phi_tt(k, i), f.phi_tr(k, i), f.phi_rr(k, i));
        match self.config.map(|c| (c.nonlinearity, c.null_scale())) {
            Some((Nonlinearity::NullForm, c)) => (
                c * (pr * pr - pt * pt),
                2.0 * c * (pr * ptr - pt * ptt),
                2.0 * c * (pr * prr - pt * ptr),
            ),
            Some((Nonlinearity::SquareDtPhi, _)) => (pt * pt, 2.0 * pt * ptt, 2.0 * pt * ptr),
            _ => (0.0, 0.0, 0.0),
        }
    }

    /// `Q(∂φ, ∂φ)` at a grid point.
    pub fn q(&self, k: usize, i: usize) -> f64 {
        let f = self.field;
        let (pt, pr) = (f.phi_t(k, i), f.phi_r(k, i));
        match self.config {
            Some(c) => match c.nonlinearity {
                Nonlinearity::NullForm => c.null_coeffs.quadratic(&[pt, pr, 0.0, 0.0]),
                Nonlinearity::SquareDtPhi => pt * pt,
                Nonlinearity::None => 0.0,
            },
            None => 0.0,
        }
    }
}
