//! Local energy norms over the annuli `A_R = {R ≤ ⟨r⟩ ≤ 2R}` and
//! pointwise suprema over dyadic blocks.
//!
//! Radial integrals use three-point Gauss rules per grid cell on the
//! linear interpolant, with the measure `4π r² dr`; time integrals use the
//! trapezoid rule over the recorded snapshots.

use std::fmt;

use super::regions::DyadicRegionSpec;
use super::NormError;
use crate::lab::{word_label, FieldSource, VectorFieldEval, Vf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum NormKind {
    LE,
    LE1,
    LEstar,
    RegionSup,
}

impl NormKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            NormKind::LE => "LE",
            NormKind::LE1 => "LE1",
            NormKind::LEstar => "LEstar",
            NormKind::RegionSup => "sup",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "LE" | "le" => Some(NormKind::LE),
            "LE1" | "le1" => Some(NormKind::LE1),
            "LEstar" | "lestar" => Some(NormKind::LEstar),
            "sup" => Some(NormKind::RegionSup),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct NormReport {
    pub kind: NormKind,
    pub value: f64,
    /// `T` of a dyadic block, or the upper end of a time interval.
    pub t_scale: f64,
    /// `R` or `U` of a dyadic block; absent for interval norms.
    pub scale: Option<f64>,
    pub word: String,
    pub region: String,
}

impl fmt::Display for NormReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} [{}] = {:.6e}", self.kind.as_str(), self.region, self.word, self.value)
    }
}

const GAUSS3: [(f64, f64); 3] = [
    (-0.774_596_669_241_483_4, 5.0 / 9.0),
    (0.0, 8.0 / 9.0),
    (0.774_596_669_241_483_4, 5.0 / 9.0),
];

pub(crate) fn jb(r: f64) -> f64 {
    (1.0 + r * r).sqrt()
}

/// `(R, r_lo, r_hi)` for every annulus lying wholly inside `[0, r_max]`.
pub(crate) fn annuli(r_max: f64) -> Vec<(f64, f64, f64)> {
    let mut out = Vec::new();
    let mut big = 1.0f64;
    loop {
        let lo = (big * big - 1.0).max(0.0).sqrt();
        let hi = (4.0 * big * big - 1.0).sqrt();
        if hi > r_max + 1e-12 {
            return out;
        }
        out.push((big, lo, hi));
        big *= 2.0;
    }
}

/// `4π ∫_lo^hi w(r) Σ_q f_q(r)² r² dr` with `f_q` piecewise linear on the grid.
pub(crate) fn annulus_sq(vals: &[&[f64]], dr: f64, lo: f64, hi: f64, w: impl Fn(f64) -> f64) -> f64 {
    let n = vals.first().map_or(0, |v| v.len());
    if n < 2 || hi <= lo {
        return 0.0;
    }
    let first = ((lo / dr).floor() as usize).min(n - 2);
    let mut sum = 0.0;
    let mut i = first;
    while i + 1 < n {
        let (c0, c1) = (i as f64 * dr, (i + 1) as f64 * dr);
        let (a, b) = (c0.max(lo), c1.min(hi));
        if a >= hi {
            break;
        }
        if b > a {
            let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
            for (x, wt) in GAUSS3 {
                let r = mid + half * x;
                let s = (r - c0) / dr;
                let f2: f64 = vals.iter().map(|v| {
                    let f = v[i] + s * (v[i + 1] - v[i]);
                    f * f
                }).sum();
                sum += wt * half * w(r) * f2 * r * r;
            }
        }
        i += 1;
    }
    4.0 * std::f64::consts::PI * sum
}

/// Trapezoid weights for the snapshots whose times fall in `[t0, t1]`.
pub(crate) fn time_weights(field: &impl FieldSource, t0: f64, t1: f64) -> Result<Vec<(usize, f64)>, NormError> {
    let nt = field.n_times();
    let tol = 1e-9 * t1.abs().max(1.0);
    if nt == 0 || !(t1 > t0) || t0 < field.time(0) - tol || t1 > field.time(nt - 1) + tol {
        return Err(NormError::Domain(format!("[{t0}, {t1}] outside the recorded span")));
    }
    let ks: Vec<usize> = (0..nt).filter(|&k| field.time(k) >= t0 - tol && field.time(k) <= t1 + tol).collect();
    if ks.len() < 2 {
        return Err(NormError::Domain(format!("[{t0}, {t1}] holds fewer than two snapshots")));
    }
    let mut out: Vec<(usize, f64)> = ks.iter().map(|&k| (k, 0.0)).collect();
    for j in 0..ks.len() - 1 {
        let h = field.time(ks[j + 1]) - field.time(ks[j]);
        out[j].1 += 0.5 * h;
        out[j + 1].1 += 0.5 * h;
    }
    Ok(out)
}

fn row(field: &impl FieldSource, k: usize, f: impl Fn(usize, usize) -> f64) -> Vec<f64> {
    (0..field.n_points()).map(|i| f(k, i)).collect()
}

/// `Σ_k w_k · 4π∫_{A_R} weight·Σ_q q² r² dr` for each annulus.
fn pieces<F: FieldSource>(
    field: &F,
    tw: &[(usize, f64)],
    quantities: &[fn(&F, usize, usize) -> f64],
    weight: fn(f64) -> f64,
) -> Vec<f64> {
    let r_max = field.r(field.n_points() - 1);
    let ann = annuli(r_max);
    let mut acc = vec![0.0; ann.len()];
    for &(k, w) in tw {
        let rows: Vec<Vec<f64>> = quantities.iter().map(|q| row(field, k, |k, i| q(field, k, i))).collect();
        let refs: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
        for (slot, &(_, lo, hi)) in acc.iter_mut().zip(&ann) {
            *slot += w * annulus_sq(&refs, field.dr(), lo, hi, weight);
        }
    }
    acc
}

fn sup_sqrt(p: &[f64]) -> f64 {
    p.iter().fold(0.0f64, |m, x| m.max(x.sqrt()))
}

/// `LE`, `LE¹ = ‖∂φ‖_LE + ‖⟨r⟩⁻¹φ‖_LE` or `LE*` of the field over `[t0, t1]`.
/// `∂` is the spacetime gradient `(∂_t, ∂_r)`.
pub fn weighted_dyadic_norm<F: FieldSource>(field: &F, kind: NormKind, t0: f64, t1: f64) -> Result<NormReport, NormError> {
    let tw = time_weights(field, t0, t1)?;
    let phi: fn(&F, usize, usize) -> f64 = |f, k, i| f.phi(k, i);
    let phi_t: fn(&F, usize, usize) -> f64 = |f, k, i| f.phi_t(k, i);
    let phi_r: fn(&F, usize, usize) -> f64 = |f, k, i| f.phi_r(k, i);
    let value = match kind {
        NormKind::LE => sup_sqrt(&pieces(field, &tw, &[phi], |r| 1.0 / jb(r))),
        NormKind::LEstar => pieces(field, &tw, &[phi], jb).iter().map(|p| p.sqrt()).sum(),
        NormKind::LE1 => {
            sup_sqrt(&pieces(field, &tw, &[phi_t, phi_r], |r| 1.0 / jb(r)))
                + sup_sqrt(&pieces(field, &tw, &[phi], |r| jb(r).powi(-3)))
        }
        NormKind::RegionSup => {
            return Err(NormError::Domain("region suprema go through region_sup".into()));
        }
    };
    Ok(NormReport {
        kind,
        value,
        t_scale: t1,
        scale: None,
        word: "id".into(),
        region: format!("[{t0},{t1}]"),
    })
}

/// `max |Z^word φ|` over the grid points of a dyadic block.
pub fn region_sup(field: &impl FieldSource, region: &DyadicRegionSpec, word: &[Vf]) -> Result<NormReport, NormError> {
    let eval = VectorFieldEval::new(word)?;
    let (t0, t1) = region.time_range();
    let dr = field.dr();
    let n = field.n_points();
    let mut best = 0.0f64;
    let mut count = 0usize;
    for k in 0..field.n_times() {
        let t = field.time(k);
        if t < t0 || t > t1 {
            continue;
        }
        let (lo, hi) = region.radial_window(t);
        let i0 = (lo / dr).floor().max(0.0) as usize;
        let i1 = ((hi / dr).ceil() as usize).min(n - 1);
        for i in i0..=i1 {
            if region.contains(t, field.r(i)) {
                count += 1;
                best = best.max(eval.at(field, k, i).abs());
            }
        }
    }
    if count == 0 {
        return Err(NormError::EmptyRegion(region.to_string()));
    }
    Ok(NormReport {
        kind: NormKind::RegionSup,
        value: best,
        t_scale: region.t_scale,
        scale: Some(region.scale),
        word: word_label(word),
        region: region.to_string(),
    })
}

/// `max |φ|·⟨v⟩·⟨u⟩^(-u_power)` over a block, `u = t - r`, `v = t + r`.
pub fn envelope_sup(field: &impl FieldSource, region: &DyadicRegionSpec, u_power: f64) -> Result<f64, NormError> {
    let (t0, t1) = region.time_range();
    let mut best = None::<f64>;
    for k in 0..field.n_times() {
        let t = field.time(k);
        if t < t0 || t > t1 {
            continue;
        }
        for i in 0..field.n_points() {
            let r = field.r(i);
            if region.contains(t, r) {
                let v = field.phi(k, i).abs() * jb(t + r) * jb(t - r).powf(-u_power);
                best = Some(best.map_or(v, |b| b.max(v)));
            }
        }
    }
    best.ok_or_else(|| NormError::EmptyRegion(region.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::FieldSamples;
    use crate::norms::regions::{cone_cover, RegionKind};

    fn direct(w: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
        let n = 200_000;
        let h = (hi - lo) / n as f64;
        (0..n).map(|j| {
            let r = lo + (j as f64 + 0.5) * h;
            w(r) * r * r * h
        }).sum::<f64>() * 4.0 * std::f64::consts::PI
    }

    #[test]
    fn unit_field_le_matches_quadrature() {
        let t_end = 3.0;
        let times: Vec<f64> = (0..=30).map(|k| k as f64 * 0.1).collect();
        let f = FieldSamples::from_fns(|_, _| 1.0, |_, _| 0.0, |_, _| 0.0, &times, 8.0, 64);
        let le = weighted_dyadic_norm(&f, NormKind::LE, 0.0, t_end).unwrap().value;
        let expect = [1.0f64, 2.0, 4.0]
            .iter()
            .map(|&r| {
                let (lo, hi) = ((r * r - 1.0).max(0.0).sqrt(), (4.0 * r * r - 1.0).sqrt());
                (t_end * direct(|x| 1.0 / jb(x), lo, hi)).sqrt()
            })
            .fold(0.0, f64::max);
        assert!((le - expect).abs() < 1e-6 * expect, "{le} vs {expect}");
        let star = weighted_dyadic_norm(&f, NormKind::LEstar, 0.0, t_end).unwrap().value;
        assert!(le <= star);
    }

    #[test]
    fn zero_field_is_zero() {
        let f = FieldSamples::from_fns(|_, _| 0.0, |_, _| 0.0, |_, _| 0.0, &[0.0, 1.0, 2.0], 8.0, 64);
        for kind in [NormKind::LE, NormKind::LE1, NormKind::LEstar] {
            assert_eq!(weighted_dyadic_norm(&f, kind, 0.0, 2.0).unwrap().value, 0.0);
        }
    }

    #[test]
    fn span_is_checked() {
        let f = FieldSamples::from_fns(|_, _| 1.0, |_, _| 0.0, |_, _| 0.0, &[0.0, 1.0], 8.0, 64);
        assert!(matches!(weighted_dyadic_norm(&f, NormKind::LE, 0.0, 5.0), Err(NormError::Domain(_))));
    }

    #[test]
    fn cone_sup_equals_max_over_cover() {
        let times: Vec<f64> = (0..=64).map(|k| 16.0 + k as f64 * 0.25).collect();
        let g = |t: f64, r: f64| ((t - r) * 0.3).sin() / (1.0 + t + r);
        let f = FieldSamples::from_fns(g, |_, _| 0.0, |_, _| 0.0, &times, 40.0, 400);
        let mut direct = 0.0f64;
        for k in 0..f.n_times() {
            for i in 0..f.n_points() {
                if f.r(i) <= f.time(k) {
                    direct = direct.max(f.phi(k, i).abs());
                }
            }
        }
        let cover = cone_cover(16.0)
            .iter()
            .map(|c| region_sup(&f, c, &[]).unwrap().value)
            .fold(0.0, f64::max);
        assert_eq!(cover, direct);
    }

    #[test]
    fn empty_region() {
        let f = FieldSamples::from_fns(|_, _| 1.0, |_, _| 0.0, |_, _| 0.0, &[0.0, 1.0], 8.0, 64);
        let c = DyadicRegionSpec::new(RegionKind::Ctu, 64.0, 4.0).unwrap();
        assert!(matches!(region_sup(&f, &c, &[]), Err(NormError::EmptyRegion(_))));
    }
}
