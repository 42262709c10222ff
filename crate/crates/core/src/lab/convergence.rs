//! Mesh-doubling study of the linear flat solver against d'Alembert.

use serde::Serialize;

use super::exact::free_wave_exact;
use super::field::FieldSource;
use super::solver::{evolve, residual_norm, Nonlinearity, SimConfig};
use super::LabError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n_cells: usize,
    /// `max_r |φ - φ_exact|` at the probe time.
    pub error: f64,
    pub residual: f64,
}

/// Runs `config` at each resolution (same `cfl`) and measures the error at
/// the snapshot nearest `t_probe`.
pub fn convergence_study(config: &SimConfig, resolutions: &[usize], t_probe: f64) -> Result<Vec<ConvergenceRow>, LabError> {
    if config.nonlinearity != Nonlinearity::None || !config.coeffs.is_flat() {
        return Err(LabError::Config("convergence study needs a flat linear configuration".into()));
    }
    let mut rows = Vec::new();
    for &n in resolutions {
        let cfg = config.with_override("n_cells", &n.to_string())?;
        let traj = evolve(&cfg)?;
        let k = traj.snapshot_near(t_probe);
        let t = traj.time(k);
        if (t - t_probe).abs() > 1e-9 * t_probe.max(1.0) {
            return Err(LabError::Domain(format!("no snapshot at t = {t_probe} for n_cells = {n}")));
        }
        let error = (0..traj.n_points())
            .map(|i| (traj.phi(k, i) - free_wave_exact(&cfg.data, t, traj.r(i))).abs())
            .fold(0.0, f64::max);
        rows.push(ConvergenceRow { n_cells: n, error, residual: residual_norm(&traj, &cfg) });
    }
    Ok(rows)
}

/// Successive `error(n) / error(2n)`.
pub fn error_ratios(rows: &[ConvergenceRow]) -> Vec<f64> {
    rows.windows(2).map(|w| w[0].error / w[1].error).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_order_on_small_grid() {
        let cfg = SimConfig::from_text("r_max = 16\nt_final = 4\nnonlinearity = none\nrecord_stride = 4\nphi0 = gaussian:1").unwrap();
        let rows = convergence_study(&cfg, &[512, 1024], 4.0).unwrap();
        let q = error_ratios(&rows)[0];
        assert!((3.5..=4.5).contains(&q), "{rows:?}");
    }

    #[test]
    fn rejects_nonlinear() {
        let cfg = SimConfig::from_text("r_max = 20\nt_final = 4\nnonlinearity = null_form").unwrap();
        assert!(convergence_study(&cfg, &[256], 4.0).is_err());
    }
}
