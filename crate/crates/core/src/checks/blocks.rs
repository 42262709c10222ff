//! Spacetime blocks with the factor-2 widths used by the embeddings, plus
//! discrete `L²` and supremum over a block (grid-point sums, `4π r² dr dt`).

use std::fmt;

use super::CheckError;
use crate::lab::{FieldSource, VectorFieldEval};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Block {
    /// `T ≤ t ≤ 2T`, `r ≤ t`, `U < t - r < 2U` (`0 ≤ t - r < 2` for `U = 1`).
    Ctu { t: f64, u: f64 },
    /// `T ≤ t ≤ 2T`, `r ≤ t`, `R < r < 2R` (`r < 2` for `R = 1`).
    Ctr { t: f64, r: f64 },
    /// `T ≤ t ≤ 2T`, `R ≤ r ≤ 2R`, `R ≤ r - t ≤ 2R`.
    Crt { t: f64, r: f64 },
    /// `1 ≤ t ≤ R`, `R ≤ r ≤ 2R`, `R/2 ≤ |r - t| ≤ 2R`.
    Crr { r: f64 },
    /// `T ≤ t ≤ 2T`, `r ≤ t`, `r < 3T/4`.
    Bulk { t: f64 },
}

fn band(x: f64, s: f64) -> bool {
    if s <= 1.0 { x >= 0.0 && x < 2.0 } else { x > s && x < 2.0 * s }
}

impl Block {
    pub fn time_range(&self) -> (f64, f64) {
        match *self {
            Block::Ctu { t, .. } | Block::Ctr { t, .. } | Block::Crt { t, .. } | Block::Bulk { t } => (t, 2.0 * t),
            Block::Crr { r } => (1.0, r),
        }
    }

    /// The smaller of the block's radial extents.
    pub fn min_width(&self) -> f64 {
        match *self {
            Block::Ctu { u, .. } => u.max(1.0),
            Block::Ctr { r, .. } => r.max(1.0),
            Block::Crt { r, .. } | Block::Crr { r } => r / 2.0,
            Block::Bulk { t } => 0.75 * t,
        }
    }

    pub fn contains(&self, t: f64, r: f64) -> bool {
        let (t0, t1) = self.time_range();
        if t < t0 || t > t1 {
            return false;
        }
        match *self {
            Block::Ctu { u, .. } => r <= t && band(t - r, u),
            Block::Ctr { r: big, .. } => r <= t && band(r, big),
            Block::Crt { r: big, .. } => r >= big && r <= 2.0 * big && r - t >= big && r - t <= 2.0 * big,
            Block::Crr { r: big } => {
                let d = (r - t).abs();
                r >= big && r <= 2.0 * big && d >= 0.5 * big && d <= 2.0 * big
            }
            Block::Bulk { t: big } => r <= t && r < 0.75 * big,
        }
    }

    pub(crate) fn require_resolved(&self, field: &impl FieldSource) -> Result<(), CheckError> {
        let cells = self.min_width() / field.dr();
        if cells < 32.0 {
            return Err(CheckError::Resolution(format!("{self}: {cells:.1} cells across the smaller scale")));
        }
        let (t0, t1) = self.time_range();
        let snaps = (0..field.n_times()).filter(|&k| field.time(k) >= t0 && field.time(k) <= t1).count();
        if snaps < 4 {
            return Err(CheckError::Resolution(format!("{self}: {snaps} snapshots in the block")));
        }
        let r_end = field.r(field.n_points() - 1);
        let need = match *self {
            Block::Crt { r, .. } | Block::Crr { r } => 2.0 * r,
            _ => t1,
        };
        if need > r_end {
            return Err(CheckError::Resolution(format!("{self}: grid ends at r = {r_end}")));
        }
        Ok(())
    }

    /// Trapezoid weights in time and the member grid points of each snapshot.
    fn cells(&self, field: &impl FieldSource) -> Vec<(usize, f64, Vec<usize>)> {
        let (t0, t1) = self.time_range();
        let ks: Vec<usize> = (0..field.n_times()).filter(|&k| field.time(k) >= t0 && field.time(k) <= t1).collect();
        let mut out = Vec::with_capacity(ks.len());
        for (j, &k) in ks.iter().enumerate() {
            let left = if j > 0 { field.time(k) - field.time(ks[j - 1]) } else { 0.0 };
            let right = if j + 1 < ks.len() { field.time(ks[j + 1]) - field.time(k) } else { 0.0 };
            let t = field.time(k);
            let pts = (0..field.n_points()).filter(|&i| self.contains(t, field.r(i))).collect();
            out.push((k, 0.5 * (left + right), pts));
        }
        out
    }

    /// `(Σ_q ∫∫_block w·q² 4π r² dr dt)^{1/2}`.
    pub fn l2<F: FieldSource>(
        &self,
        field: &F,
        quantities: &[&dyn Fn(usize, usize) -> f64],
        weight: impl Fn(f64, f64) -> f64,
    ) -> f64 {
        let dr = field.dr();
        let mut sum = 0.0;
        for (k, wt, pts) in self.cells(field) {
            let t = field.time(k);
            for i in pts {
                let r = field.r(i);
                let q2: f64 = quantities.iter().map(|q| q(k, i).powi(2)).sum();
                sum += wt * weight(t, r) * q2 * r * r * dr;
            }
        }
        (4.0 * std::f64::consts::PI * sum).sqrt()
    }

    pub fn l2_word(&self, field: &impl FieldSource, e: &VectorFieldEval) -> f64 {
        self.l2(field, &[&|k, i| e.at(field, k, i)], |_, _| 1.0)
    }

    pub fn sup(&self, field: &impl FieldSource, f: impl Fn(usize, usize) -> f64) -> f64 {
        let mut best = 0.0f64;
        for (k, _, pts) in self.cells(field) {
            for i in pts {
                best = best.max(f(k, i).abs());
            }
        }
        best
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Block::Ctu { t, u } => write!(f, "C_T^U(T={t}, U={u})"),
            Block::Ctr { t, r } => write!(f, "C_T^R(T={t}, R={r})"),
            Block::Crt { t, r } => write!(f, "C_R^T(T={t}, R={r})"),
            Block::Crr { r } => write!(f, "C_R^R(R={r})"),
            Block::Bulk { t } => write!(f, "C_T^<3T/4(T={t})"),
        }
    }
}
