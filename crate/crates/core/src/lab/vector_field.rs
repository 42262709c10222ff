//! Commuting vector fields `∂_t`, `∂_r`, `S = t∂_t + r∂_r` applied to a
//! recorded field.
//!
//! A word is expanded symbolically into `Σ c·t^p r^q ∂_t^a ∂_r^b φ` and then
//! evaluated from the field's finite-difference jet (`a + b ≤ 2`).

use std::fmt;
use std::str::FromStr;

use super::field::FieldSource;
use super::LabError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vf {
    Dt,
    Dr,
    Scaling,
    Rotation,
}

impl fmt::Display for Vf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Vf::Dt => "dt",
            Vf::Dr => "dr",
            Vf::Scaling => "S",
            Vf::Rotation => "Omega",
        })
    }
}

impl FromStr for Vf {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Self, LabError> {
        match s {
            "dt" => Ok(Vf::Dt),
            "dr" => Ok(Vf::Dr),
            "S" | "s" => Ok(Vf::Scaling),
            "Omega" | "omega" => Ok(Vf::Rotation),
            _ => Err(LabError::Config(format!("unknown vector field {s:?}"))),
        }
    }
}

/// `"dt.S"`; the empty word prints as `id`.
pub fn word_label(word: &[Vf]) -> String {
    if word.is_empty() {
        return "id".into();
    }
    word.iter().map(|z| z.to_string()).collect::<Vec<_>>().join(".")
}

pub fn parse_word(s: &str) -> Result<Vec<Vf>, LabError> {
    let s = s.trim();
    if s.is_empty() || s == "id" {
        return Ok(Vec::new());
    }
    s.split('.').map(str::parse).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Term {
    c: f64,
    p: u32,
    q: u32,
    a: u32,
    b: u32,
}

/// Expansion of `Z₁⋯Z_k φ`; the rightmost field acts first.
fn expand(word: &[Vf]) -> Result<Vec<Term>, LabError> {
    if word.contains(&Vf::Rotation) {
        return Err(LabError::RadialSymmetry);
    }
    if word.len() > 2 {
        return Err(LabError::Domain(format!("word of length {} exceeds 2", word.len())));
    }
    let mut terms = vec![Term { c: 1.0, p: 0, q: 0, a: 0, b: 0 }];
    for z in word.iter().rev() {
        let mut next = Vec::new();
        for t in &terms {
            match z {
                Vf::Dt => {
                    if t.p > 0 {
                        next.push(Term { c: t.c * t.p as f64, p: t.p - 1, ..*t });
                    }
                    next.push(Term { a: t.a + 1, ..*t });
                }
                Vf::Dr => {
                    if t.q > 0 {
                        next.push(Term { c: t.c * t.q as f64, q: t.q - 1, ..*t });
                    }
                    next.push(Term { b: t.b + 1, ..*t });
                }
                Vf::Scaling => {
                    if t.p + t.q > 0 {
                        next.push(Term { c: t.c * (t.p + t.q) as f64, ..*t });
                    }
                    next.push(Term { p: t.p + 1, a: t.a + 1, ..*t });
                    next.push(Term { q: t.q + 1, b: t.b + 1, ..*t });
                }
                Vf::Rotation => unreachable!(),
            }
        }
        terms = next;
    }
    Ok(terms)
}

fn jet(field: &impl FieldSource, k: usize, i: usize, a: u32, b: u32) -> f64 {
    match (a, b) {
        (0, 0) => field.phi(k, i),
        (1, 0) => field.phi_t(k, i),
        (2, 0) => field.phi_tt(k, i),
        (0, 1) => field.phi_r(k, i),
        (0, 2) => field.phi_rr(k, i),
        (1, 1) => field.phi_tr(k, i),
        _ => unreachable!("jet order above 2"),
    }
}

/// `Z^J φ` at one snapshot, on every grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldSlice {
    pub word: Vec<Vf>,
    pub snapshot: usize,
    pub time: f64,
    pub dr: f64,
    pub values: Vec<f64>,
}

impl FieldSlice {
    pub fn r(&self, i: usize) -> f64 {
        i as f64 * self.dr
    }
}

/// Pointwise evaluator for a fixed word; reuse it across many points.
#[derive(Clone, Debug)]
pub struct VectorFieldEval {
    terms: Vec<Term>,
}

impl VectorFieldEval {
    pub fn new(word: &[Vf]) -> Result<Self, LabError> {
        Ok(Self { terms: expand(word)? })
    }

    pub fn at(&self, field: &impl FieldSource, k: usize, i: usize) -> f64 {
        let t = field.time(k);
        let r = field.r(i);
        self.terms
            .iter()
            .map(|m| m.c * t.powi(m.p as i32) * r.powi(m.q as i32) * jet(field, k, i, m.a, m.b))
            .sum()
    }
}

pub fn apply_vector_field(field: &impl FieldSource, word: &[Vf], snapshot: usize) -> Result<FieldSlice, LabError> {
    let eval = VectorFieldEval::new(word)?;
    if snapshot >= field.n_times() {
        return Err(LabError::Domain(format!("snapshot {snapshot} of {}", field.n_times())));
    }
    let n = field.n_points();
    let spatial = word.iter().filter(|z| **z != Vf::Dt).count();
    if n < 2 * spatial + 3 {
        return Err(LabError::Domain(format!("{n} grid points cannot carry a stencil")));
    }
    let values = (0..n).map(|i| eval.at(field, snapshot, i)).collect();
    Ok(FieldSlice { word: word.to_vec(), snapshot, time: field.time(snapshot), dr: field.dr(), values })
}
