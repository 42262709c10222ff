//! Dyadic spacetime blocks.
//!
//! `T` runs over powers of 2, `R` and `U` over powers of 4. A secondary band
//! at scale `S` is `[S, 4S)` (`[0, 4)` for `S = 1`); the top admissible band
//! at a given `T` is stretched to its cap (`r < 3T/4` for `C_T^R`, the cone
//! for `C_T^U`), so the `C_T^R` and `C_T^U` bands together cover `C_T`.

use std::fmt;

use super::NormError;

pub const T_BASE: f64 = 2.0;
pub const RU_BASE: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionKind {
    /// `C_T^R`: `T ≤ t ≤ 2T`, `r ≤ t`, `r` in the `R` band, `R ≤ 3T/8`.
    Ctr,
    /// `C_T^U`: `T ≤ t ≤ 2T`, `r ≤ t`, `t - r` in the `U` band, `U ≤ 3T/8`.
    Ctu,
    /// `C_R^T`: `T ≤ t ≤ 2T`, `R ≤ r ≤ 2R`, `R ≤ r - t ≤ 2R`, `R > T`.
    Crt,
    /// `C_R^R`: `1 ≤ t ≤ R`, `R ≤ r ≤ 2R`, `R/2 ≤ |r - t| ≤ 2R`.
    Crr,
    /// `A_R = {R ≤ ⟨r⟩ ≤ 2R}` over `T ≤ t ≤ 2T`.
    AnnulusAr,
    /// `C_T^{<3T/4}`: `T ≤ t ≤ 2T`, `r ≤ t`, `r < 3T/4`.
    InteriorBulk,
}

impl RegionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionKind::Ctr => "CTR",
            RegionKind::Ctu => "CTU",
            RegionKind::Crt => "CRT",
            RegionKind::Crr => "CRR",
            RegionKind::AnnulusAr => "AR",
            RegionKind::InteriorBulk => "CT<3T/4",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DyadicRegionSpec {
    pub kind: RegionKind,
    pub t_scale: f64,
    /// `R` or `U`; unused (1) for the bulk region.
    pub scale: f64,
}

fn is_power(x: f64, base: f64) -> bool {
    let k = x.ln() / base.ln();
    x >= 1.0 && (k - k.round()).abs() < 1e-9
}

fn jb(r: f64) -> f64 {
    (1.0 + r * r).sqrt()
}

impl DyadicRegionSpec {
    pub fn new(kind: RegionKind, t_scale: f64, scale: f64) -> Result<Self, NormError> {
        let spec = Self { kind, t_scale, scale };
        let bad = |why: &str| Err(NormError::Domain(format!("{spec}: {why}")));
        if !is_power(t_scale, T_BASE) {
            return bad("T must be a power of 2");
        }
        let cap = 3.0 * t_scale / 8.0;
        match kind {
            RegionKind::Ctr | RegionKind::Ctu => {
                if !is_power(scale, RU_BASE) {
                    return bad("secondary scale must be a power of 4");
                }
                if scale > cap {
                    return bad("secondary scale exceeds 3T/8");
                }
            }
            RegionKind::Crt | RegionKind::Crr => {
                if !is_power(scale, RU_BASE) {
                    return bad("R must be a power of 4");
                }
                if kind == RegionKind::Crt && scale <= t_scale {
                    return bad("C_R^T needs R > T");
                }
            }
            RegionKind::AnnulusAr => {
                if !is_power(scale, T_BASE) {
                    return bad("R must be a power of 2");
                }
            }
            RegionKind::InteriorBulk => {}
        }
        Ok(spec)
    }

    fn is_top(&self) -> bool {
        RU_BASE * self.scale > 3.0 * self.t_scale / 8.0
    }

    /// Band `[lo, hi)` of the secondary variable.
    fn band(&self, cap: f64) -> (f64, f64) {
        let lo = if self.scale == 1.0 { 0.0 } else { self.scale };
        let hi = if self.is_top() { cap } else { RU_BASE * self.scale };
        (lo, hi)
    }

    pub fn time_range(&self) -> (f64, f64) {
        let t = self.t_scale;
        match self.kind {
            RegionKind::Crr => (1.0, self.scale),
            _ if t == 1.0 => (0.0, 2.0),
            _ => (t, 2.0 * t),
        }
    }

    pub fn contains(&self, t: f64, r: f64) -> bool {
        let (t0, t1) = self.time_range();
        if t < t0 || t > t1 {
            return false;
        }
        let big = self.scale;
        match self.kind {
            RegionKind::Ctr => {
                let (lo, hi) = self.band(0.75 * self.t_scale);
                r <= t && r >= lo && r < hi
            }
            RegionKind::Ctu => {
                let (lo, hi) = self.band(f64::INFINITY);
                let u = t - r;
                u >= 0.0 && u >= lo && u < hi
            }
            RegionKind::Crt => r >= big && r <= 2.0 * big && r - t >= big && r - t <= 2.0 * big,
            RegionKind::Crr => {
                let d = (r - t).abs();
                r >= big && r <= 2.0 * big && d >= 0.5 * big && d <= 2.0 * big
            }
            RegionKind::AnnulusAr => jb(r) >= big && jb(r) <= 2.0 * big,
            RegionKind::InteriorBulk => r <= t && r < 0.75 * self.t_scale,
        }
    }

    /// Radii that can lie in the region at time `t`, as `[lo, hi]`.
    pub fn radial_window(&self, t: f64) -> (f64, f64) {
        let big = self.scale;
        match self.kind {
            RegionKind::Ctr | RegionKind::InteriorBulk | RegionKind::Ctu => (0.0, t),
            RegionKind::Crt | RegionKind::Crr => (big.min(t), 2.0 * big + t),
            RegionKind::AnnulusAr => (0.0, 2.0 * big),
        }
    }
}

impl fmt::Display for DyadicRegionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(T={}, S={})", self.kind.as_str(), self.t_scale, self.scale)
    }
}

/// `T = 1, 2, 4, …` with `2T ≤ t_max`.
pub fn dyadic_times(t_max: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut t = 1.0;
    while 2.0 * t <= t_max + 1e-9 {
        out.push(t);
        t *= T_BASE;
    }
    out
}

/// `1, 4, 16, …` up to `3T/8`.
pub fn interior_scales(t_scale: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut s = 1.0;
    while s <= 3.0 * t_scale / 8.0 {
        out.push(s);
        s *= RU_BASE;
    }
    out
}

/// Every `C_T^R` and `C_T^U` block at scale `T`.
pub fn cone_cover(t_scale: f64) -> Vec<DyadicRegionSpec> {
    let mut out = Vec::new();
    for kind in [RegionKind::Ctr, RegionKind::Ctu] {
        for s in interior_scales(t_scale) {
            out.push(DyadicRegionSpec { kind, t_scale, scale: s });
        }
    }
    out
}
