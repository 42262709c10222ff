//! Power-law fits on log-log pairs.

use super::NormError;

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of `log value` about the fitted line.
    pub residual: f64,
    pub n: usize,
}

/// Least squares for `log value = intercept + slope·log scale`.
pub fn fit_decay_exponents(samples: &[(f64, f64)]) -> Result<FitResult, NormError> {
    if samples.len() < 3 {
        return Err(NormError::Domain(format!("{} samples; need at least 3", samples.len())));
    }
    if let Some(&(s, v)) = samples.iter().find(|(s, v)| !(*s > 0.0) || !(*v > 0.0)) {
        return Err(NormError::Domain(format!("nonpositive sample ({s}, {v})")));
    }
    let x: Vec<f64> = samples.iter().map(|(s, _)| s.ln()).collect();
    let y: Vec<f64> = samples.iter().map(|(_, v)| v.ln()).collect();
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(NormError::Domain("all scales coincide".into()));
    }
    let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = x.iter().zip(&y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    Ok(FitResult { slope, intercept, residual: (ss / n).sqrt(), n: samples.len() })
}
