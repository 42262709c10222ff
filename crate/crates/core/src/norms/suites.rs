//! Fixed measurement batteries run on a whole recorded field.

use super::fit::fit_decay_exponents;
use super::le::{envelope_sup, region_sup, weighted_dyadic_norm, NormKind, NormReport};
use super::regions::{cone_cover, dyadic_times, interior_scales, DyadicRegionSpec, RegionKind};
use super::report::NamedFit;
use super::NormError;
use crate::lab::FieldSource;

/// Smallest `T` used by fits and envelope profiles.
pub const FIT_T_MIN: f64 = 16.0;

fn t_end(field: &impl FieldSource) -> f64 {
    field.time(field.n_times() - 1)
}

fn named(name: &str, samples: Vec<(f64, f64)>) -> Result<NamedFit, NormError> {
    let fit = fit_decay_exponents(&samples)?;
    Ok(NamedFit { name: name.into(), fit, samples })
}

/// `u_decay`: `sup_{C_T^U} |φ|` against `U ≥ 4` at the top `T`.
/// `v_decay`: `sup_{C_T^1} |φ|` against `T ≥ 16`.
pub fn decay_fits(field: &impl FieldSource) -> Result<Vec<NamedFit>, NormError> {
    let ts = dyadic_times(t_end(field));
    let top = *ts.last().ok_or_else(|| NormError::Domain("recording too short for a dyadic block".into()))?;
    let sup = |t: f64, s: f64| -> Result<f64, NormError> {
        Ok(region_sup(field, &DyadicRegionSpec::new(RegionKind::Ctu, t, s)?, &[])?.value)
    };
    let mut us = Vec::new();
    for u in interior_scales(top).into_iter().filter(|&u| u >= 4.0) {
        us.push((u, sup(top, u)?));
    }
    let mut vs = Vec::new();
    for t in ts.into_iter().filter(|&t| t >= FIT_T_MIN) {
        vs.push((t, sup(t, 1.0)?));
    }
    Ok(vec![named("u_decay", us)?, named("v_decay", vs)?])
}

/// `(T, max over the cone cover at T of |φ|⟨v⟩⟨u⟩^(-u_power) / scale)`.
pub fn envelope_profile(field: &impl FieldSource, u_power: f64, scale: f64) -> Result<Vec<(f64, f64)>, NormError> {
    let mut out = Vec::new();
    for t in dyadic_times(t_end(field)).into_iter().filter(|&t| t >= FIT_T_MIN) {
        let mut best = 0.0f64;
        for region in cone_cover(t) {
            best = best.max(envelope_sup(field, &region, u_power)?);
        }
        out.push((t, best / scale));
    }
    Ok(out)
}

/// `LE`, `LE¹`, `LE*` over the whole recording, then `sup |φ|` on every
/// block of every cone cover.
pub fn norm_table(field: &impl FieldSource) -> Result<Vec<NormReport>, NormError> {
    let (t0, t1) = (field.time(0), t_end(field));
    let mut out = Vec::new();
    for kind in [NormKind::LE, NormKind::LE1, NormKind::LEstar] {
        out.push(weighted_dyadic_norm(field, kind, t0, t1)?);
    }
    for t in dyadic_times(t1) {
        for region in cone_cover(t) {
            out.push(region_sup(field, &region, &[])?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::FieldSamples;

    fn inverse_uv(t: f64, r: f64) -> f64 {
        ((1.0 + (t - r).powi(2)) * (1.0 + (t + r).powi(2))).sqrt().recip()
    }

    #[test]
    fn fits_recover_product_decay() {
        let times: Vec<f64> = (0..=256).map(|k| 2.0 * k as f64).collect();
        let f = FieldSamples::from_fn(inverse_uv, &times, 520.0, 2600);
        let fits = decay_fits(&f).unwrap();
        assert_eq!(fits[0].samples.iter().map(|s| s.0).collect::<Vec<_>>(), vec![4.0, 16.0, 64.0]);
        assert!((fits[0].fit.slope + 1.0).abs() < 0.15, "{:?}", fits[0].fit);
        assert!((fits[1].fit.slope + 1.0).abs() < 0.15, "{:?}", fits[1].fit);
    }

    #[test]
    fn envelope_of_exact_profile_is_flat() {
        let times: Vec<f64> = (0..=128).map(|k| k as f64).collect();
        let f = FieldSamples::from_fn(|t, r| 2.0 * inverse_uv(t, r), &times, 140.0, 1400);
        for (_, c) in envelope_profile(&f, 1.0, 2.0).unwrap() {
            assert!(c > 0.5 && c <= 1.0 + 1e-12, "{c}");
        }
    }

    #[test]
    fn table_layout() {
        let times: Vec<f64> = (0..=16).map(|k| k as f64).collect();
        let f = FieldSamples::from_fn(inverse_uv, &times, 20.0, 200);
        let table = norm_table(&f).unwrap();
        assert_eq!(table[0].kind, NormKind::LE);
        assert_eq!(table[2].kind, NormKind::LEstar);
        let blocks: usize = dyadic_times(16.0).iter().map(|&t| cone_cover(t).len()).sum();
        assert_eq!(table.len(), 3 + blocks);
    }
}
