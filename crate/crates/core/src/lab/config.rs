//! `key = value` configuration text for [`SimConfig`].
//!
//! Unknown keys are rejected; missing keys take the defaults below. The
//! canonical rendering lists every key in a fixed order with shortest
//! round-trip floats, so equal configs render to identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::coeffs::CoefficientProfile;
use super::data::{InitialData, Profile};
use super::grid::{Grid1D, DEFAULT_CFL};
use super::nullform::NullFormCoeffs;
use super::solver::{Nonlinearity, SimConfig};
use super::LabError;
use crate::calculus::{exponent::format_rational, Rational};

const KEYS: [&str; 16] = [
    "r_max",
    "n_cells",
    "cfl",
    "t_final",
    "record_stride",
    "mode_ell",
    "nonlinearity",
    "null_scale",
    "eps",
    "phi0",
    "phi1",
    "amp_h",
    "amp_b",
    "amp_v",
    "amp_gw",
    "sigma",
];

/// Accepted spellings that map onto a canonical key.
fn canonical_key(k: &str) -> &str {
    match k {
        "epsilon" => "eps",
        _ => k,
    }
}

fn cfg_err(msg: impl Into<String>) -> LabError {
    LabError::Config(msg.into())
}

pub fn parse_rational(s: &str) -> Result<Rational, LabError> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: i64 = n.trim().parse().map_err(|_| cfg_err(format!("bad rational {s:?}")))?;
    let d: i64 = d.trim().parse().map_err(|_| cfg_err(format!("bad rational {s:?}")))?;
    if d == 0 {
        return Err(cfg_err(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Raw `key = value` pairs; `#` starts a comment.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>, LabError> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| cfg_err(format!("line {}: expected key = value", n + 1)))?;
        let k = canonical_key(k.trim());
        if !KEYS.contains(&k) {
            return Err(cfg_err(format!("line {}: unknown key {k:?}", n + 1)));
        }
        if out.insert(k.to_string(), v.trim().to_string()).is_some() {
            return Err(cfg_err(format!("line {}: duplicate key {k:?}", n + 1)));
        }
    }
    Ok(out)
}

fn num<T: std::str::FromStr>(m: &BTreeMap<String, String>, k: &str, default: T) -> Result<T, LabError> {
    match m.get(k) {
        None => Ok(default),
        Some(v) => v.parse().map_err(|_| cfg_err(format!("bad value for {k}: {v:?}"))),
    }
}

impl SimConfig {
    pub fn from_pairs(m: &BTreeMap<String, String>) -> Result<Self, LabError> {
        let r_max = num(m, "r_max", 40.0)?;
        let n_cells = num(m, "n_cells", 2048usize)?;
        let cfl = num(m, "cfl", DEFAULT_CFL)?;
        let nl = match m.get("nonlinearity") {
            None => Nonlinearity::NullForm,
            Some(v) => Nonlinearity::parse(v).ok_or_else(|| cfg_err(format!("bad nonlinearity {v:?}")))?,
        };
        let profile = |k: &str, d: Profile| -> Result<Profile, LabError> {
            m.get(k).map_or(Ok(d), |v| v.parse().map_err(|e| cfg_err(format!("{k}: {e}"))))
        };
        let sigma = m.get("sigma").map_or(Ok(Rational::new(1, 10)), |v| parse_rational(v))?;
        let cfg = SimConfig {
            grid: Grid1D::with_cfl(r_max, n_cells, cfl),
            coeffs: CoefficientProfile {
                amp_h: num(m, "amp_h", 0.0)?,
                amp_b: num(m, "amp_b", 0.0)?,
                amp_v: num(m, "amp_v", 0.0)?,
                amp_gw: num(m, "amp_gw", 0.0)?,
                sigma,
            },
            null_coeffs: NullFormCoeffs::minkowski(num(m, "null_scale", 1.0)?),
            data: InitialData::new(
                profile("phi0", Profile::Gaussian { width: 1.0 })?,
                profile("phi1", Profile::Zero)?,
                num(m, "eps", 0.01)?,
            ),
            t_final: num(m, "t_final", 20.0)?,
            mode_ell: num(m, "mode_ell", 0u32)?,
            record_stride: num(m, "record_stride", 8usize)?,
            nonlinearity: nl,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_text(text: &str) -> Result<Self, LabError> {
        Self::from_pairs(&parse_pairs(text)?)
    }

    /// Replace one key and re-validate.
    pub fn with_override(&self, key: &str, value: &str) -> Result<Self, LabError> {
        let key = canonical_key(key.trim());
        let mut m = parse_pairs(&self.to_text())?;
        if !KEYS.contains(&key) {
            return Err(cfg_err(format!("unknown key {key:?}")));
        }
        m.insert(key.to_string(), value.to_string());
        Self::from_pairs(&m)
    }

    pub fn null_scale(&self) -> f64 {
        -self.null_coeffs.matrix()[0][0]
    }

    pub fn to_text(&self) -> String {
        let c = &self.coeffs;
        let vals: [String; 16] = [
            format!("{:?}", self.grid.r_max),
            self.grid.n_cells.to_string(),
            format!("{:?}", self.grid.cfl()),
            format!("{:?}", self.t_final),
            self.record_stride.to_string(),
            self.mode_ell.to_string(),
            self.nonlinearity.as_str().to_string(),
            format!("{:?}", self.null_scale()),
            format!("{:?}", self.data.eps),
            self.data.phi0.to_string(),
            self.data.phi1.to_string(),
            format!("{:?}", c.amp_h),
            format!("{:?}", c.amp_b),
            format!("{:?}", c.amp_v),
            format!("{:?}", c.amp_gw),
            format_rational(c.sigma),
        ];
        let mut s = String::new();
        for (k, v) in KEYS.iter().zip(vals) {
            let _ = writeln!(s, "{k} = {v}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trip() {
        let text = "eps = 0.02\nt_final = 10\nr_max = 20\nn_cells = 1024\nphi0 = bump:2\nsigma = 1/6\n";
        let cfg = SimConfig::from_text(text).unwrap();
        let canon = cfg.to_text();
        assert_eq!(SimConfig::from_text(&canon).unwrap(), cfg);
        assert_eq!(SimConfig::from_text(&canon).unwrap().to_text(), canon);
        assert!(canon.contains("sigma = 1/6"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(SimConfig::from_text("bogus = 1"), Err(LabError::Config(_))));
        assert!(matches!(SimConfig::from_text("eps"), Err(LabError::Config(_))));
        assert!(matches!(SimConfig::from_text("cfl = 0.9"), Err(LabError::Config(_))));
        assert!(matches!(SimConfig::from_text("sigma = 1/0"), Err(LabError::Config(_))));
        assert!(matches!(
            SimConfig::from_text("nonlinearity = none\nmode_ell = 2\n").map(|c| c.mode_ell),
            Ok(2)
        ));
        assert!(SimConfig::from_text("mode_ell = 2").is_err());
    }

    #[test]
    fn override_one_key() {
        let cfg = SimConfig::from_text("").unwrap();
        let hi = cfg.with_override("eps", "0.03").unwrap();
        assert_eq!(hi.data.eps, 0.03);
        assert!(cfg.with_override("nope", "1").is_err());
    }
}
