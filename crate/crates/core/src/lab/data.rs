//! Radial initial data `φ(0) = ε·φ0`, `∂_tφ(0) = ε·φ1`.

use std::fmt;
use std::str::FromStr;

use super::LabError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Profile {
    Zero,
    /// `exp(-(r/w)²)`, cut at `r = 6w`.
    Gaussian { width: f64 },
    /// `(1 - (r/R)²)⁴` on `r < R`.
    Bump { radius: f64 },
    /// `⟨r⟩^(-2)` switched off smoothly between `inner` and `outer`.
    Tail { inner: f64, outer: f64 },
}

fn smootherstep(x: f64) -> (f64, f64) {
    let x = x.clamp(0.0, 1.0);
    let s = x * x * x * (x * (6.0 * x - 15.0) + 10.0);
    let ds = 30.0 * x * x * (x - 1.0) * (x - 1.0);
    (s, ds)
}

impl Profile {
    pub fn support(&self) -> f64 {
        match *self {
            Profile::Zero => 0.0,
            Profile::Gaussian { width } => 6.0 * width,
            Profile::Bump { radius } => radius,
            Profile::Tail { outer, .. } => outer,
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        let r = r.abs();
        match *self {
            Profile::Zero => 0.0,
            Profile::Gaussian { width } => {
                if r > 6.0 * width {
                    0.0
                } else {
                    (-(r / width).powi(2)).exp()
                }
            }
            Profile::Bump { radius } => {
                if r >= radius {
                    0.0
                } else {
                    (1.0 - (r / radius).powi(2)).powi(4)
                }
            }
            Profile::Tail { inner, outer } => {
                let (s, _) = smootherstep((r - inner) / (outer - inner));
                (1.0 - s) / (1.0 + r * r)
            }
        }
    }

    /// `d/dr` on `r ≥ 0`.
    pub fn deriv(&self, r: f64) -> f64 {
        match *self {
            Profile::Zero => 0.0,
            Profile::Gaussian { width } => {
                if r > 6.0 * width {
                    0.0
                } else {
                    -2.0 * r / (width * width) * (-(r / width).powi(2)).exp()
                }
            }
            Profile::Bump { radius } => {
                if r >= radius {
                    0.0
                } else {
                    let q = 1.0 - (r / radius).powi(2);
                    -8.0 * r / (radius * radius) * q.powi(3)
                }
            }
            Profile::Tail { inner, outer } => {
                let w = outer - inner;
                let (s, ds) = smootherstep((r - inner) / w);
                let base = 1.0 / (1.0 + r * r);
                -ds / w * base + (1.0 - s) * (-2.0 * r) * base * base
            }
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Profile::Zero => write!(f, "zero"),
            Profile::Gaussian { width } => write!(f, "gaussian:{width}"),
            Profile::Bump { radius } => write!(f, "bump:{radius}"),
            Profile::Tail { inner, outer } => write!(f, "tail:{inner}:{outer}"),
        }
    }
}

impl FromStr for Profile {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |i: usize| -> Result<f64, LabError> {
            let v: f64 = parts
                .get(i)
                .ok_or_else(|| LabError::Config(format!("profile {s:?} is missing a parameter")))?
                .parse()
                .map_err(|_| LabError::Config(format!("bad number in profile {s:?}")))?;
            if v > 0.0 {
                Ok(v)
            } else {
                Err(LabError::Config(format!("profile {s:?} needs positive parameters")))
            }
        };
        let p = match parts[0] {
            "zero" => Profile::Zero,
            "gaussian" => Profile::Gaussian { width: num(1)? },
            "bump" => Profile::Bump { radius: num(1)? },
            "tail" => {
                let (inner, outer) = (num(1)?, num(2)?);
                if outer <= inner {
                    return Err(LabError::Config(format!("tail needs inner < outer in {s:?}")));
                }
                Profile::Tail { inner, outer }
            }
            other => return Err(LabError::Config(format!("unknown profile {other:?}"))),
        };
        Ok(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InitialData {
    pub phi0: Profile,
    pub phi1: Profile,
    pub eps: f64,
}

/// Amplitudes above this are only meant for blowup contrast runs.
pub const SMALL_DATA: f64 = 0.05;
pub const MAX_AMPLITUDE: f64 = 0.5;

impl InitialData {
    pub fn new(phi0: Profile, phi1: Profile, eps: f64) -> Self {
        Self { phi0, phi1, eps }
    }

    pub fn support(&self) -> f64 {
        self.phi0.support().max(self.phi1.support())
    }

    pub fn is_small(&self) -> bool {
        self.eps.abs() <= SMALL_DATA
    }

    pub fn validate(&self) -> Result<(), LabError> {
        if !(self.eps.abs() <= MAX_AMPLITUDE) {
            return Err(LabError::Config(format!("|ε| = {} exceeds {MAX_AMPLITUDE}", self.eps.abs())));
        }
        Ok(())
    }

    pub fn phi0(&self, r: f64) -> f64 {
        self.eps * self.phi0.eval(r)
    }

    pub fn phi1(&self, r: f64) -> f64 {
        self.eps * self.phi1.eval(r)
    }
}
