//! Plain-text traces: one line per state, standard parts as `num/den`.
//!
//! ```text
//! # sigma=1/10
//! step=0 region=exterior phi=(1/2,0/1,0/1,0/1) dphi=(...) dbar=(...)
//! ```

use std::fmt::Write as _;

use super::bound::{DecayBound, RegionTag};
use super::engine::IterationTrace;
use super::exponent::{format_rational, Rational};
use super::CalculusError;

pub type Quad = [Rational; 4];

#[derive(Clone, Debug, PartialEq)]
pub struct TraceRow {
    pub step: usize,
    pub region: RegionTag,
    pub phi: Quad,
    pub dphi: Quad,
    pub dbar: Quad,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TraceFile {
    pub comments: Vec<String>,
    pub rows: Vec<TraceRow>,
}

fn quad(b: &DecayBound) -> Quad {
    b.canonical().standard()
}

fn write_quad(out: &mut String, q: &Quad) {
    out.push('(');
    for (i, x) in q.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format_rational(*x));
    }
    out.push(')');
}

impl TraceRow {
    pub fn from_bounds(step: usize, phi: &DecayBound, dphi: &DecayBound, dbar: &DecayBound) -> Self {
        Self { step, region: phi.region, phi: quad(phi), dphi: quad(dphi), dbar: quad(dbar) }
    }

    pub fn to_line(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "step={} region={} phi=", self.step, self.region);
        write_quad(&mut s, &self.phi);
        s.push_str(" dphi=");
        write_quad(&mut s, &self.dphi);
        s.push_str(" dbar=");
        write_quad(&mut s, &self.dbar);
        s
    }
}

impl TraceFile {
    pub fn from_trace(trace: &IterationTrace) -> Self {
        let mut comments = vec![format!("sigma={}", format_rational(trace.sigma))];
        comments.extend(trace.notes.iter().map(|n| format!("note: {n}")));
        let rows = trace
            .states
            .iter()
            .map(|s| TraceRow::from_bounds(s.step_index, &s.phi, &s.dphi, &s.dbar))
            .collect();
        Self { comments, rows }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.comments {
            let _ = writeln!(s, "# {c}");
        }
        for r in &self.rows {
            s.push_str(&r.to_line());
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, CalculusError> {
        let mut out = TraceFile::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(c) = line.strip_prefix('#') {
                out.comments.push(c.trim().to_string());
                continue;
            }
            out.rows.push(parse_row(line).map_err(|msg| CalculusError::Parse { line: i + 1, msg })?);
        }
        Ok(out)
    }

    /// Rows compare equal; comments are ignored.
    pub fn same_rows(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: i64 = n.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let d: i64 = d.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if d == 0 {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(n, d))
}

fn parse_quad(s: &str) -> Result<Quad, String> {
    let inner = s
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| format!("expected (a,b,c,p), got {s:?}"))?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected 4 exponents, got {}", parts.len()));
    }
    let mut q = [Rational::from_integer(0); 4];
    for (slot, p) in q.iter_mut().zip(parts) {
        *slot = parse_rational(p)?;
    }
    Ok(q)
}

fn parse_row(line: &str) -> Result<TraceRow, String> {
    let mut step = None;
    let mut region = None;
    let (mut phi, mut dphi, mut dbar) = (None, None, None);
    for field in line.split_whitespace() {
        let (k, v) = field.split_once('=').ok_or_else(|| format!("expected key=value, got {field:?}"))?;
        match k {
            "step" => step = Some(v.parse::<usize>().map_err(|_| format!("bad step {v:?}"))?),
            "region" => region = Some(RegionTag::parse(v).ok_or_else(|| format!("bad region {v:?}"))?),
            "phi" => phi = Some(parse_quad(v)?),
            "dphi" => dphi = Some(parse_quad(v)?),
            "dbar" => dbar = Some(parse_quad(v)?),
            other => return Err(format!("unknown key {other:?}")),
        }
    }
    let missing = |n: &str| format!("missing {n}");
    Ok(TraceRow {
        step: step.ok_or_else(|| missing("step"))?,
        region: region.ok_or_else(|| missing("region"))?,
        phi: phi.ok_or_else(|| missing("phi"))?,
        dphi: dphi.ok_or_else(|| missing("dphi"))?,
        dbar: dbar.ok_or_else(|| missing("dbar"))?,
    })
}
