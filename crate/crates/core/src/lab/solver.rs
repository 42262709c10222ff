//! Leapfrog evolution of `ψ = rφ`.
//!
//! With `□ = -∂_t² + Δ` the equation `□φ + ∇·(h∇φ) + B(∂_t + ∂_r)φ + Vφ
//! + g^ωΔ_ωφ = Q(∂φ, ∂φ)` becomes, for a single spherical harmonic `ℓ`,
//!
//! ```text
//! ψ_tt = (1+h)ψ_rr + (h' + B)(ψ_r - ψ/r) + Bψ_t + Vψ - ℓ(ℓ+1)(r⁻² + g^ω)ψ - rQ
//! ```
//!
//! with `rQ` expressed through `ψ_t` and `ψ_r - ψ/r = r∂_rφ`.

use std::sync::OnceLock;

use super::coeffs::CoefficientProfile;
use super::data::InitialData;
use super::field::FieldSource;
use super::grid::Grid1D;
use super::nullform::NullFormCoeffs;
use super::LabError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nonlinearity {
    NullForm,
    /// `Q = (∂_tφ)²`, which violates the null condition.
    SquareDtPhi,
    None,
}

impl Nonlinearity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Nonlinearity::NullForm => "null_form",
            Nonlinearity::SquareDtPhi => "square_dt",
            Nonlinearity::None => "none",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "null_form" => Some(Nonlinearity::NullForm),
            "square_dt" => Some(Nonlinearity::SquareDtPhi),
            "none" => Some(Nonlinearity::None),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub grid: Grid1D,
    pub coeffs: CoefficientProfile,
    pub null_coeffs: NullFormCoeffs,
    pub data: InitialData,
    pub t_final: f64,
    pub mode_ell: u32,
    pub record_stride: usize,
    pub nonlinearity: Nonlinearity,
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), LabError> {
        self.grid.validate(self.t_final, self.data.support())?;
        self.coeffs.validate()?;
        self.data.validate()?;
        if self.record_stride == 0 {
            return Err(LabError::Config("record_stride must be positive".into()));
        }
        if self.nonlinearity != Nonlinearity::None && self.mode_ell != 0 {
            return Err(LabError::Config("nonlinear runs are radial: mode_ell must be 0".into()));
        }
        NullFormCoeffs::new(*self.null_coeffs.matrix())?;
        Ok(())
    }

    pub fn n_steps(&self) -> usize {
        (self.t_final / self.grid.dt - 1e-9).ceil() as usize
    }
}

/// Recorded snapshots of `φ`, `∂_tφ`, `∂_t²φ` at times `k·stride·dt`.
#[derive(Debug)]
pub struct Trajectory {
    pub config: SimConfig,
    pub times: Vec<f64>,
    n_points: usize,
    dr: f64,
    phi: Vec<f64>,
    phi_t: Vec<f64>,
    phi_tt: Vec<f64>,
    phi_r: OnceLock<Vec<f64>>,
}

impl Trajectory {
    pub(crate) fn from_parts(
        config: SimConfig,
        times: Vec<f64>,
        phi: Vec<f64>,
        phi_t: Vec<f64>,
        phi_tt: Vec<f64>,
    ) -> Self {
        let n_points = config.grid.n_points();
        let dr = config.grid.dr();
        Self { config, times, n_points, dr, phi, phi_t, phi_tt, phi_r: OnceLock::new() }
    }

    pub fn snapshot(&self, k: usize) -> &[f64] {
        &self.phi[k * self.n_points..(k + 1) * self.n_points]
    }

    pub fn snapshot_t(&self, k: usize) -> &[f64] {
        &self.phi_t[k * self.n_points..(k + 1) * self.n_points]
    }

    pub fn snapshot_tt(&self, k: usize) -> &[f64] {
        &self.phi_tt[k * self.n_points..(k + 1) * self.n_points]
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().unwrap_or(&0.0)
    }

    fn phi_r_cache(&self) -> &[f64] {
        self.phi_r.get_or_init(|| {
            let n = self.n_points;
            let mut out = vec![0.0; self.phi.len()];
            for k in 0..self.times.len() {
                let row = self.snapshot(k);
                let dst = &mut out[k * n..(k + 1) * n];
                for i in 1..n - 1 {
                    dst[i] = (row[i + 1] - row[i - 1]) / (2.0 * self.dr);
                }
                dst[n - 1] = (3.0 * row[n - 1] - 4.0 * row[n - 2] + row[n - 3]) / (2.0 * self.dr);
            }
            out
        })
    }
}

impl FieldSource for Trajectory {
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
    fn phi_r(&self, k: usize, i: usize) -> f64 {
        self.phi_r_cache()[k * self.n_points + i]
    }
}

struct Stencil {
    r: Vec<f64>,
    h: Vec<f64>,
    hb: Vec<f64>,
    b: Vec<f64>,
    v: Vec<f64>,
    ang: Vec<f64>,
    dr: f64,
    q: NullFormCoeffs,
    nl: Nonlinearity,
}

impl Stencil {
    fn new(cfg: &SimConfig) -> Self {
        let g = &cfg.grid;
        let c = &cfg.coeffs;
        let n = g.n_points();
        let l = cfg.mode_ell as f64;
        let r: Vec<f64> = (0..n).map(|i| g.r(i)).collect();
        let ang = r
            .iter()
            .map(|&x| if x > 0.0 { l * (l + 1.0) * (1.0 / (x * x) + c.gw(x)) } else { 0.0 })
            .collect();
        Self {
            h: r.iter().map(|&x| c.h(x)).collect(),
            hb: r.iter().map(|&x| c.dh(x) + c.b(x)).collect(),
            b: r.iter().map(|&x| c.b(x)).collect(),
            v: r.iter().map(|&x| c.v(x)).collect(),
            ang,
            r,
            dr: g.dr(),
            q: cfg.null_coeffs,
            nl: cfg.nonlinearity,
        }
    }

    /// `ψ_tt` at interior points; the endpoints stay zero.
    fn acc(&self, psi: &[f64], psi_t: &[f64], out: &mut [f64]) {
        let n = psi.len();
        let (idr, idr2) = (0.5 / self.dr, 1.0 / (self.dr * self.dr));
        out[0] = 0.0;
        out[n - 1] = 0.0;
        for i in 1..n - 1 {
            let r = self.r[i];
            let p = psi[i];
            let pt = psi_t[i];
            let prr = (psi[i + 1] - 2.0 * p + psi[i - 1]) * idr2;
            let x = (psi[i + 1] - psi[i - 1]) * idr - p / r;
            let rq = match self.nl {
                Nonlinearity::None => 0.0,
                Nonlinearity::NullForm => self.q.quadratic(&[pt, x, 0.0, 0.0]) / r,
                Nonlinearity::SquareDtPhi => pt * pt / r,
            };
            out[i] = (1.0 + self.h[i]) * prr + self.hb[i] * x + self.b[i] * pt + self.v[i] * p
                - self.ang[i] * p
                - rq;
        }
    }
}

/// `f/r`, with the origin value from the one-sided slope of `f` (`f(0) = 0`).
fn divide_by_r(f: &[f64], r: &[f64], dr: f64, out: &mut Vec<f64>) {
    out.push((4.0 * f[1] - f[2]) / (2.0 * dr));
    out.extend(f.iter().zip(r).skip(1).map(|(a, b)| a / b));
}

pub fn evolve(config: &SimConfig) -> Result<Trajectory, LabError> {
    config.validate()?;
    let g = config.grid;
    let n = g.n_points();
    let (dt, dr) = (g.dt, g.dr());
    let st = Stencil::new(config);
    let d = &config.data;

    let mut prev: Vec<f64> = st.r.iter().map(|&r| r * d.phi0(r)).collect();
    let mut psi_t: Vec<f64> = st.r.iter().map(|&r| r * d.phi1(r)).collect();
    prev[0] = 0.0;
    psi_t[0] = 0.0;
    prev[n - 1] = 0.0;
    psi_t[n - 1] = 0.0;
    let mut acc = vec![0.0; n];
    st.acc(&prev, &psi_t, &mut acc);

    let n_steps = config.n_steps();
    let stride = config.record_stride;
    let n_rec = n_steps / stride + 1;
    let mut times = Vec::with_capacity(n_rec);
    let mut phi = Vec::with_capacity(n_rec * n);
    let mut phi_t = Vec::with_capacity(n_rec * n);
    let mut phi_tt = Vec::with_capacity(n_rec * n);
    let record = |step: usize, psi: &[f64], psi_t: &[f64], acc: &[f64],
                  times: &mut Vec<f64>, phi: &mut Vec<f64>, phi_t: &mut Vec<f64>, phi_tt: &mut Vec<f64>| {
        times.push(step as f64 * dt);
        divide_by_r(psi, &st.r, dr, phi);
        divide_by_r(psi_t, &st.r, dr, phi_t);
        divide_by_r(acc, &st.r, dr, phi_tt);
    };
    record(0, &prev, &psi_t, &acc, &mut times, &mut phi, &mut phi_t, &mut phi_tt);

    let threshold = 1e3 * d.eps.abs();
    let mut cur: Vec<f64> = (0..n).map(|i| prev[i] + dt * psi_t[i] + 0.5 * dt * dt * acc[i]).collect();
    cur[0] = 0.0;
    cur[n - 1] = 0.0;
    let mut acc_prev = acc.clone();
    for step in 1..=n_steps {
        for i in 0..n {
            psi_t[i] = (cur[i] - prev[i]) / dt + 0.5 * dt * acc_prev[i];
        }
        st.acc(&cur, &psi_t, &mut acc);
        let mut worst = 0.0f64;
        let mut finite = true;
        for i in 1..n {
            let v = (cur[i] / st.r[i]).abs();
            finite &= v.is_finite();
            worst = worst.max(v);
        }
        if !finite || (threshold > 0.0 && worst > threshold) {
            return Err(LabError::BlowupDetected { time: step as f64 * dt });
        }
        if step % stride == 0 {
            record(step, &cur, &psi_t, &acc, &mut times, &mut phi, &mut phi_t, &mut phi_tt);
        }
        if step == n_steps {
            break;
        }
        for i in 1..n - 1 {
            let next = 2.0 * cur[i] - prev[i] + dt * dt * acc[i];
            prev[i] = cur[i];
            cur[i] = next;
        }
        std::mem::swap(&mut acc_prev, &mut acc);
    }
    Ok(Trajectory::from_parts(config.clone(), times, phi, phi_t, phi_tt))
}

/// Largest `|Pφ - Q(∂φ, ∂φ)|` over snapshots and interior points, with
/// fourth-order spatial stencils.
pub fn residual_norm(field: &impl FieldSource, config: &SimConfig) -> f64 {
    let c = &config.coeffs;
    let l = config.mode_ell as f64;
    let dr = field.dr();
    let n = field.n_points();
    let mut worst = 0.0f64;
    for k in 0..field.n_times() {
        let f = |i: usize| field.phi(k, i);
        for i in 2..n.saturating_sub(2) {
            let r = field.r(i);
            let fr = (-f(i + 2) + 8.0 * f(i + 1) - 8.0 * f(i - 1) + f(i - 2)) / (12.0 * dr);
            let frr = (-f(i + 2) + 16.0 * f(i + 1) - 30.0 * f(i) + 16.0 * f(i - 1) - f(i - 2))
                / (12.0 * dr * dr);
            let (p, pt, ptt) = (f(i), field.phi_t(k, i), field.phi_tt(k, i));
            let lap = frr + 2.0 * fr / r;
            let lhs = -ptt + (1.0 + c.h(r)) * lap + c.dh(r) * fr + c.b(r) * (pt + fr) + c.v(r) * p
                - l * (l + 1.0) * (1.0 / (r * r) + c.gw(r)) * p;
            let q = match config.nonlinearity {
                Nonlinearity::None => 0.0,
                Nonlinearity::NullForm => config.null_coeffs.quadratic(&[pt, fr, 0.0, 0.0]),
                Nonlinearity::SquareDtPhi => pt * pt,
            };
            worst = worst.max((lhs - q).abs());
        }
    }
    worst
}
