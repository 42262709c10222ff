//! Report serialization.
//!
//! CSV: header `kind,T,R_or_U,word,value`; interval norms leave `R_or_U`
//! empty and put the interval's upper end in `T`.
//!
//! JSON summary:
//! ```text
//! { "reports": [ {kind, value, t_scale, scale, word, region} ],
//!   "fits":    [ {name, slope, intercept, residual, n, samples: [[scale, value]]} ],
//!   "energy":  [ {order, history: [[t, E]]} ] }
//! ```
//!
//! Fit files: `# slope=… intercept=… residual=… n=…` then `scale value` lines.

use std::fmt::Write as _;

use serde::Serialize;

use super::fit::FitResult;
use super::le::NormReport;

pub const CSV_HEADER: &str = "kind,T,R_or_U,word,value";

pub fn csv_row(r: &NormReport) -> String {
    let scale = r.scale.map(|s| format!("{s:?}")).unwrap_or_default();
    format!("{},{:?},{},{},{:?}", r.kind.as_str(), r.t_scale, scale, r.word, r.value)
}

pub fn to_csv(reports: &[NormReport]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in reports {
        s.push_str(&csv_row(r));
        s.push('\n');
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedFit {
    pub name: String,
    #[serde(flatten)]
    pub fit: FitResult,
    pub samples: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnergyTrack {
    pub order: usize,
    pub history: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub reports: Vec<NormReport>,
    pub fits: Vec<NamedFit>,
    pub energy: Vec<EnergyTrack>,
}

impl Summary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

pub fn fit_file(f: &NamedFit) -> String {
    let mut s = format!(
        "# {} slope={:?} intercept={:?} residual={:?} n={}\n",
        f.name, f.fit.slope, f.fit.intercept, f.fit.residual, f.fit.n
    );
    for (x, y) in &f.samples {
        let _ = writeln!(s, "{x:?} {y:?}");
    }
    s
}
