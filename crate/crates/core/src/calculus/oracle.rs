//! Numerical cross-check of the conversion rules: integrate the source
//! envelope over the backward light cone and fit the resulting decay.

use super::bound::{DecayBound, RegionTag, SourceBound, SourceKind};
use super::engine::{RuleApplication, RuleKind};
use super::exponent::Exponent;

fn jb(x: f64) -> f64 {
    (1.0 + x * x).sqrt()
}

/// `r⁻¹ ∫∫_D ρ ⟨ρ⟩^(-a) ⟨s+ρ⟩^(-b) ⟨s-ρ⟩^(-c) ds dρ` over
/// `D = {|t-r| ≤ s+ρ ≤ t+r, -(t+r) ≤ s-ρ ≤ t-r, s ≥ 0}` by the midpoint rule
/// in `α = s+ρ`, `β = s-ρ`.
pub fn quadrature_oracle(src: &SourceBound, t: f64, r: f64, resolution: usize) -> f64 {
    let n = resolution.max(64);
    let (a, b, c) = (src.a.to_f64(), src.b.to_f64(), src.c.to_f64());
    let (a0, a1) = ((t - r).abs(), t + r);
    let (b0, b1) = (-(t + r), t - r);
    let (da, db) = ((a1 - a0) / n as f64, (b1 - b0) / n as f64);
    let mut sum = 0.0;
    for i in 0..n {
        let al = a0 + (i as f64 + 0.5) * da;
        let wa = jb(al).powf(-b);
        for j in 0..n {
            let be = b0 + (j as f64 + 0.5) * db;
            if al + be < 0.0 {
                continue;
            }
            let rho = 0.5 * (al - be);
            sum += rho * jb(rho).powf(-a) * wa * jb(be).powf(-c);
        }
    }
    0.5 * sum * da * db / r
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Sample ray `r = t/2` inside the cone, `r = 2t` outside.
pub fn ray(region: RegionTag, t: f64) -> f64 {
    match region {
        RegionTag::Interior => 0.5 * t,
        _ => 2.0 * t,
    }
}

/// Fitted `log t` slope of the oracle along the region's ray.
pub fn oracle_slope(src: &SourceBound, region: RegionTag, ts: &[f64], resolution: usize) -> f64 {
    let x: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let y: Vec<f64> = ts
        .iter()
        .map(|&t| quadrature_oracle(src, t, ray(region, t), resolution).ln())
        .collect();
    fit_slope(&x, &y)
}

/// Along either ray `⟨r⟩, ⟨u⟩, ⟨v⟩ ∝ t`, so a bound decays like `t` to the
/// minus the sum of its exponents.
pub fn predicted_slope(out: &DecayBound) -> f64 {
    let k = out.canonical();
    -(k.a + k.b + k.c).to_f64()
}

#[derive(Clone, Debug)]
pub struct OracleCheck {
    pub application: RuleApplication,
    pub predicted: f64,
    pub fitted: f64,
}

impl OracleCheck {
    pub fn error(&self) -> f64 {
        (self.fitted - self.predicted).abs()
    }
}

/// Applications the oracle can test: plain-type conversions whose
/// `⟨u⟩`-exponent is below 1 (above it the rule is not sharp), and
/// time-derivative conversions through their `⟨u⟩`-gained source.
pub fn checkable(app: &RuleApplication) -> Option<SourceBound> {
    let (a, b, c) = app.input;
    let src = match app.rule {
        RuleKind::Interior | RuleKind::Exterior | RuleKind::FarField => SourceBound::plain(a, b, c),
        RuleKind::TimeDerivative => {
            SourceBound::new(SourceKind::TimeDerivative, a, Exponent::zero(), c).time_gained()
        }
        RuleKind::RToT => return None,
    };
    if src.c.to_f64() >= 1.0 {
        return None;
    }
    Some(src.in_region(app.output.region))
}

pub fn check_application(app: &RuleApplication, ts: &[f64], resolution: usize) -> Option<OracleCheck> {
    let src = checkable(app)?;
    let fitted = oracle_slope(&src, app.output.region, ts, resolution);
    Some(OracleCheck { application: app.clone(), predicted: predicted_slope(&app.output), fitted })
}
