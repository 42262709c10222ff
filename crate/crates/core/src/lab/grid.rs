use super::LabError;

/// Uniform radial grid `r_i = i·dr`, `i = 0..=n_cells`, with time step `dt`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    pub r_max: f64,
    pub n_cells: usize,
    pub dt: f64,
}

pub const DEFAULT_CFL: f64 = 0.5;

impl Grid1D {
    /// Grid with `dt = cfl·dr`.
    pub fn with_cfl(r_max: f64, n_cells: usize, cfl: f64) -> Self {
        let dr = r_max / n_cells as f64;
        Self { r_max, n_cells, dt: cfl * dr }
    }

    pub fn dr(&self) -> f64 {
        self.r_max / self.n_cells as f64
    }

    pub fn n_points(&self) -> usize {
        self.n_cells + 1
    }

    pub fn r(&self, i: usize) -> f64 {
        i as f64 * self.dr()
    }

    pub fn cfl(&self) -> f64 {
        self.dt / self.dr()
    }

    pub fn validate(&self, t_final: f64, support: f64) -> Result<(), LabError> {
        if self.n_cells < 8 || !(self.r_max > 0.0) || !(self.dt > 0.0) {
            return Err(LabError::Config(format!("degenerate grid {self:?}")));
        }
        if self.cfl() > DEFAULT_CFL + 1e-12 {
            return Err(LabError::Config(format!(
                "CFL violation: dt/dr = {} > {DEFAULT_CFL}",
                self.cfl()
            )));
        }
        let need = t_final + support + 4.0 * self.dr();
        if self.r_max < need {
            return Err(LabError::Config(format!(
                "r_max = {} < t_final + support + 4dr = {need}",
                self.r_max
            )));
        }
        Ok(())
    }
}
