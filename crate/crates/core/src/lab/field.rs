//! Radial fields sampled on a uniform grid at a list of times.

/// Read-only access to `φ`, `∂_tφ`, `∂_t²φ` at snapshot `k`, grid point `i`.
/// Spatial derivatives are centered differences, using that `φ` is even in
/// `r` at the origin and one-sided second-order stencils at the far end.
pub trait FieldSource: Sync {
    fn n_times(&self) -> usize;
    fn time(&self, k: usize) -> f64;
    fn n_points(&self) -> usize;
    fn dr(&self) -> f64;
    fn phi(&self, k: usize, i: usize) -> f64;
    fn phi_t(&self, k: usize, i: usize) -> f64;
    fn phi_tt(&self, k: usize, i: usize) -> f64;

    fn r(&self, i: usize) -> f64 {
        i as f64 * self.dr()
    }

    fn phi_r(&self, k: usize, i: usize) -> f64 {
        d1(|j| self.phi(k, j), i, self.n_points(), self.dr())
    }

    fn phi_rr(&self, k: usize, i: usize) -> f64 {
        d2(|j| self.phi(k, j), i, self.n_points(), self.dr())
    }

    fn phi_tr(&self, k: usize, i: usize) -> f64 {
        d1(|j| self.phi_t(k, j), i, self.n_points(), self.dr())
    }

    /// Index of the snapshot nearest to `t`.
    fn snapshot_near(&self, t: f64) -> usize {
        let mut best = 0;
        for k in 1..self.n_times() {
            if (self.time(k) - t).abs() < (self.time(best) - t).abs() {
                best = k;
            }
        }
        best
    }
}

fn d1(f: impl Fn(usize) -> f64, i: usize, n: usize, h: f64) -> f64 {
    if i == 0 {
        0.0
    } else if i + 1 < n {
        (f(i + 1) - f(i - 1)) / (2.0 * h)
    } else {
        (3.0 * f(i) - 4.0 * f(i - 1) + f(i - 2)) / (2.0 * h)
    }
}

fn d2(f: impl Fn(usize) -> f64, i: usize, n: usize, h: f64) -> f64 {
    if i == 0 {
        2.0 * (f(1) - f(0)) / (h * h)
    } else if i + 1 < n {
        (f(i + 1) - 2.0 * f(i) + f(i - 1)) / (h * h)
    } else {
        (2.0 * f(i) - 5.0 * f(i - 1) + 4.0 * f(i - 2) - f(i - 3)) / (h * h)
    }
}

/// Synthetic field stored on a grid, for checks that do not need the solver.
#[derive(Clone, Debug)]
pub struct FieldSamples {
    pub times: Vec<f64>,
    pub dr: f64,
    pub n_points: usize,
    phi: Vec<f64>,
    phi_t: Vec<f64>,
    phi_tt: Vec<f64>,
}

impl FieldSamples {
    /// Samples `f` and its time derivatives (fourth-order differences).
    pub fn from_fn(f: impl Fn(f64, f64) -> f64, times: &[f64], r_max: f64, n_cells: usize) -> Self {
        let h = 1e-3 * times.iter().fold(1.0f64, |m, t| m.max(t.abs())).powf(0.5);
        let ft = |t: f64, r: f64| {
            (-f(t + 2.0 * h, r) + 8.0 * f(t + h, r) - 8.0 * f(t - h, r) + f(t - 2.0 * h, r)) / (12.0 * h)
        };
        let ftt = |t: f64, r: f64| {
            (-f(t + 2.0 * h, r) + 16.0 * f(t + h, r) - 30.0 * f(t, r) + 16.0 * f(t - h, r)
                - f(t - 2.0 * h, r))
                / (12.0 * h * h)
        };
        Self::from_fns(&f, ft, ftt, times, r_max, n_cells)
    }

    pub fn from_fns(
        f: impl Fn(f64, f64) -> f64,
        ft: impl Fn(f64, f64) -> f64,
        ftt: impl Fn(f64, f64) -> f64,
        times: &[f64],
        r_max: f64,
        n_cells: usize,
    ) -> Self {
        let n_points = n_cells + 1;
        let dr = r_max / n_cells as f64;
        let mut out = Self {
            times: times.to_vec(),
            dr,
            n_points,
            phi: Vec::with_capacity(times.len() * n_points),
            phi_t: Vec::with_capacity(times.len() * n_points),
            phi_tt: Vec::with_capacity(times.len() * n_points),
        };
        for &t in times {
            for i in 0..n_points {
                let r = i as f64 * dr;
                out.phi.push(f(t, r));
                out.phi_t.push(ft(t, r));
                out.phi_tt.push(ftt(t, r));
            }
        }
        out
    }
}

impl FieldSource for FieldSamples {
    fn n_times(&self) -> usize {
        self.times.len()
    }
    fn time(&self, k: usize) -> f64 {
        self.times[k]
    }
    fn n_points(&self) -> usize {
        self.n_points
    }
    fn dr(&self) -> f64 {
        self.dr
    }
    fn phi(&self, k: usize, i: usize) -> f64 {
        self.phi[k * self.n_points + i]
    }
    fn phi_t(&self, k: usize, i: usize) -> f64 {
        self.phi_t[k * self.n_points + i]
    }
    fn phi_tt(&self, k: usize, i: usize) -> f64 {
        self.phi_tt[k * self.n_points + i]
    }
}
