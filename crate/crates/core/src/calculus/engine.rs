//! The bootstrap: sources from the current envelopes, conversion back to
//! envelopes on `φ`, repeat until nothing improves.

use num_traits::ToPrimitive;

use super::bound::{DecayBound, RegionTag, SourceBound, SourceKind};
use super::exponent::{format_rational, Exponent, Rational};
use super::rules;
use super::CalculusError;

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub sigma: Rational,
    /// Defaults to `4⌈1/σ⌉`.
    pub max_steps: Option<usize>,
    /// Offsets tried when splitting a source; defaults to [`EngineConfig::default_grid`].
    pub lambda_grid: Option<Vec<Exponent>>,
    /// Run with `σ + ε` so that rational `σ` behaves generically.
    pub generic: bool,
}

impl EngineConfig {
    pub fn new(sigma: Rational) -> Self {
        Self { sigma, max_steps: None, lambda_grid: None, generic: true }
    }

    pub fn sigma_eff(&self) -> Exponent {
        let s = Exponent::from(self.sigma);
        if self.generic {
            s + Exponent::epsilon()
        } else {
            s
        }
    }

    pub fn step_cap(&self) -> usize {
        self.max_steps.unwrap_or_else(|| {
            let inv = (Rational::from_integer(1) / self.sigma).ceil();
            4 * inv.to_integer().to_usize().unwrap_or(usize::MAX / 4)
        })
    }

    /// `{k/10} ∪ {σ} ∪ {k/10 + σ}` below 1, with `σ` both plain and tilted.
    pub fn default_grid(&self) -> Vec<Exponent> {
        let mut grid = Vec::new();
        let sigmas = [Exponent::from(self.sigma), self.sigma_eff()];
        for k in 1..10 {
            grid.push(Exponent::frac(k, 10));
        }
        for s in sigmas {
            grid.push(s);
            for k in 1..10 {
                let x = Exponent::frac(k, 10) + s;
                if x < Exponent::one() {
                    grid.push(x);
                }
            }
        }
        grid.sort();
        grid.dedup();
        grid
    }

    fn grid(&self) -> Vec<Exponent> {
        self.lambda_grid.clone().unwrap_or_else(|| self.default_grid())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundState {
    pub phi: DecayBound,
    pub dphi: DecayBound,
    pub dbar: DecayBound,
    pub step_index: usize,
    /// Sharper `(∂φ, ∂̄φ)` envelopes valid for the quadratic term only; the
    /// exterior seed has them from the null structure of the data.
    pub null_basis: Option<(DecayBound, DecayBound)>,
}

impl BoundState {
    pub fn new(phi: DecayBound, dphi: DecayBound, dbar: DecayBound, step_index: usize) -> Self {
        Self { phi, dphi, dbar, step_index, null_basis: None }
    }

    pub fn exterior_seed() -> Self {
        let b = |a, c| DecayBound::from_fracs(RegionTag::Exterior, a, (0, 1), c);
        let mut s = Self::new(b((1, 2), (0, 1)), b((1, 2), (1, 1)), b((3, 2), (0, 1)), 0);
        s.null_basis = Some((b((1, 1), (1, 2)), b((2, 1), (-1, 2))));
        s
    }

    pub fn interior_seed() -> Self {
        let b = |a, bb, c| DecayBound::from_fracs(RegionTag::Interior, a, bb, c);
        Self::new(
            b((0, 1), (1, 1), (-1, 2)),
            b((1, 1), (0, 1), (1, 2)),
            b((1, 1), (1, 1), (-1, 2)),
            0,
        )
    }

    pub fn region(&self) -> RegionTag {
        self.phi.region
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleKind {
    Interior,
    Exterior,
    TimeDerivative,
    FarField,
    RToT,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RuleApplication {
    pub step: usize,
    pub channel: &'static str,
    pub rule: RuleKind,
    pub input: (Exponent, Exponent, Exponent),
    pub output: DecayBound,
}

#[derive(Clone, Debug)]
pub struct IterationTrace {
    pub region: RegionTag,
    pub sigma: Rational,
    pub seed: BoundState,
    /// `states[0]` is the seed.
    pub states: Vec<BoundState>,
    pub terminated: bool,
    /// Last state, set once `φ` stops improving.
    pub fixed_point: Option<BoundState>,
    pub notes: Vec<String>,
    pub applications: Vec<RuleApplication>,
    /// First state whose `∂_t` source admits the time-derivative rule.
    pub dt_switch: Option<usize>,
}

impl IterationTrace {
    pub fn final_state(&self) -> &BoundState {
        self.states.last().expect("trace has a seed")
    }
}

/// Source envelopes generated by a state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sources {
    /// Lower-order metric terms away from the cone.
    pub h1: SourceBound,
    /// `g` in the cone-supported `∂_t g` term, before the derivative is taken.
    pub h2: SourceBound,
    /// The null form.
    pub h3: SourceBound,
}

pub fn assemble_sources(state: &BoundState, cfg: &EngineConfig) -> Sources {
    let sigma = cfg.sigma_eff();
    let z = Exponent::zero();
    let one = Exponent::one();
    let two = Exponent::int(2);
    let main = state.phi.weighted(two + sigma, z, z);
    let off = state.dphi.weighted(one + sigma, z, z);
    let h1 = main.envelope_off_cone(&off);
    let h2 = state.phi.weighted(one + sigma, z, z);
    let h3 = match &state.null_basis {
        Some((d, db)) => d.times(db),
        None => state.dphi.times(&state.dbar),
    };
    Sources {
        h1: SourceBound::from_bound(SourceKind::Plain, &h1),
        h2: SourceBound::from_bound(SourceKind::TimeDerivative, &h2),
        h3: SourceBound::from_bound(SourceKind::NullForm, &h3),
    }
}

fn splits(bound: &DecayBound, grid: &[Exponent]) -> Vec<(Exponent, Exponent, Exponent)> {
    let k = bound.corners();
    let k0 = bound.canonical();
    let (p, q, s) = (k.cone, k.inner, k.diagonal);
    let (two, three, z) = (Exponent::int(2), Exponent::int(3), Exponent::zero());
    let half = Exponent::frac(1, 2);
    let interior = bound.region == RegionTag::Interior;

    let mut a_cands: Vec<Exponent> = grid.iter().map(|&l| two + l).collect();
    a_cands.extend([k0.a, p]);
    a_cands.retain(|&a| a > two && a < three && a <= p);
    a_cands.sort();
    a_cands.dedup();

    let mut out = Vec::new();
    for &a in &a_cands {
        let mut b_cands = vec![p - a, z, k0.b];
        b_cands.extend(grid.iter().map(|&l| p - a - l));
        b_cands.retain(|&b| b >= z && b <= p - a);
        b_cands.sort();
        b_cands.dedup();
        for &b in &b_cands {
            let c_max = if interior { (q - b).min(s - a - b) } else { s - a - b };
            let mut c_cands = vec![c_max];
            c_cands.extend(grid.iter().map(|&l| c_max - l));
            for c in c_cands {
                if c >= -half {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

fn better(cand: &DecayBound, best: &DecayBound) -> bool {
    if cand.strictly_stronger(best) {
        return true;
    }
    if best.strictly_stronger(cand) {
        return false;
    }
    let score = |x: &DecayBound| {
        let k = x.corners();
        k.cone + k.inner + k.diagonal
    };
    let (x, y) = (cand.canonical(), best.canonical());
    (score(cand), x.c, x.a) > (score(best), y.c, y.a)
}

struct Search<'a> {
    step: usize,
    channel: &'static str,
    best: Option<(DecayBound, RuleApplication)>,
    grid: &'a [Exponent],
}

impl Search<'_> {
    fn offer(&mut self, rule: RuleKind, input: (Exponent, Exponent, Exponent), out: DecayBound) {
        let out = out.canonical();
        // among equal outputs keep the split with the smallest ⟨u⟩ weight
        let replace = match &self.best {
            None => true,
            Some((b, app)) => better(&out, b) || (out == *b && input.2 < app.input.2),
        };
        if replace {
            let app = RuleApplication { step: self.step, channel: self.channel, rule, input, output: out };
            self.best = Some((out, app));
        }
    }

    fn plain(&mut self, bound: &DecayBound) {
        let region = bound.region;
        for (a, b, c) in splits(bound, self.grid) {
            let src = SourceBound::plain(a, b, c).in_region(region);
            let (rule, res) = match region {
                RegionTag::Interior => (RuleKind::Interior, rules::apply_interior_conversion(&src)),
                _ => (RuleKind::Exterior, rules::apply_exterior_conversion(&src)),
            };
            if let Ok(mut out) = res {
                out.region = region;
                self.offer(rule, (a, b, c), out);
            }
        }
    }

    fn time_derivative(&mut self, g: &DecayBound) -> bool {
        let region = g.region;
        let mut admissible = false;
        for (a, b, c) in splits(g, self.grid) {
            let src = SourceBound::new(SourceKind::TimeDerivative, a, b, c).in_region(region);
            if let Ok(out) = rules::apply_dt_conversion(&src) {
                admissible = true;
                self.offer(RuleKind::TimeDerivative, (a, b, c), out);
            }
        }
        let gained = SourceBound::from_bound(SourceKind::TimeDerivative, g).time_gained();
        let gained_bound = gained.as_bound();
        self.plain(&gained_bound);
        if region != RegionTag::Interior {
            if let Ok(out) = rules::far_field_conversion(&gained) {
                self.offer(RuleKind::FarField, (gained.a, gained.b, gained.c), out);
            }
        }
        admissible
    }

    fn finish(self) -> Result<(DecayBound, RuleApplication), CalculusError> {
        self.best
            .ok_or(CalculusError::NoAdmissibleSplit { step: self.step, channel: self.channel })
    }
}

/// Best envelope on `φ` obtainable from one source by any admissible split.
pub fn convert_source(
    source: &DecayBound,
    kind: SourceKind,
    step: usize,
    channel: &'static str,
    cfg: &EngineConfig,
) -> Result<(DecayBound, RuleApplication), CalculusError> {
    let grid = cfg.grid();
    let mut search = Search { step, channel, best: None, grid: &grid };
    match kind {
        SourceKind::TimeDerivative => {
            search.time_derivative(source);
        }
        _ => search.plain(source),
    }
    search.finish()
}

fn dt_admissible(g: &DecayBound, cfg: &EngineConfig) -> bool {
    // the gained-plain fallback inside `time_derivative` does not count

    let grid = cfg.grid();
    let mut search = Search { step: 0, channel: "h2", best: None, grid: &grid };
    search.time_derivative(g)
}

fn run(seed: BoundState, cfg: &EngineConfig) -> Result<IterationTrace, CalculusError> {
    let region = seed.region();
    let sigma = cfg.sigma_eff();
    let cap = cfg.step_cap();
    let mut trace = IterationTrace {
        region,
        sigma: cfg.sigma,
        seed: seed.clone(),
        states: vec![seed],
        terminated: false,
        fixed_point: None,
        notes: Vec::new(),
        applications: Vec::new(),
        dt_switch: None,
    };
    let mut saturated = false;
    for step in 1..=cap {
        let prev = trace.final_state().clone();
        let src = assemble_sources(&prev, cfg);
        if trace.dt_switch.is_none() && dt_admissible(&src.h2.as_bound(), cfg) {
            trace.dt_switch = Some(prev.step_index);
        }
        let mut phi: Option<DecayBound> = None;
        let mut h3_out = None;
        for (channel, bound, kind) in [
            ("h1", src.h1.as_bound(), SourceKind::Plain),
            ("h2", src.h2.as_bound(), SourceKind::TimeDerivative),
            ("h3", src.h3.as_bound(), SourceKind::NullForm),
        ] {
            let (out, app) = convert_source(&bound, kind, step, channel, cfg)?;
            trace.applications.push(app);
            if channel == "h3" {
                h3_out = Some(out);
            }
            phi = Some(match phi {
                Some(p) => p.envelope(&out),
                None => out,
            });
        }
        let mut phi = phi.expect("three channels");
        if step == 1 && region == RegionTag::Interior {
            if let Some(h3) = h3_out {
                if h3.strictly_stronger(&phi) {
                    trace.notes.push(format!(
                        "step 1: quadratic channel alone gives ⟨r⟩^-1⟨u⟩^-({}), stronger than the \
                         ⟨u⟩^-({}) carried forward",
                        format_rational(h3.c.value()),
                        format_rational(phi.canonical().c.value())
                    ));
                }
            }
        }
        if !saturated {
            if let Some(h3) = h3_out {
                let k = phi.canonical();
                if k == h3 && k.a == Exponent::one() && k.c == Exponent::one() {
                    saturated = true;
                    trace.notes.push(format!(
                        "step {step}: u-exponent saturates at 1 (quadratic term binds)"
                    ));
                }
            }
        }
        if region == RegionTag::Interior {
            let lifted = rules::convert_r_to_t(&phi, &prev.dphi, sigma)?;
            trace.applications.push(RuleApplication {
                step,
                channel: "phi",
                rule: RuleKind::RToT,
                input: (phi.a, phi.b, phi.c),
                output: lifted,
            });
            phi = lifted;
        }
        let mut next = BoundState::new(phi.canonical(), phi, phi, step);
        next.dphi = rules::derivative_gain(&next).canonical();
        next.dbar = rules::tangential_bound(&next);
        if next.phi.same_standard(&prev.phi) {
            trace.terminated = true;
            trace.fixed_point = Some(prev);
            return Ok(trace);
        }
        if !next.phi.c.is_standard() && next.phi.c.value() == Rational::from_integer(0) {
            trace.notes.push(format!(
                "step {step}: u-exponent of φ displays as 0; the generic value sits just above"
            ));
        }
        trace.states.push(next);
    }
    Err(CalculusError::StepCapExceeded(cap))
}

pub fn run_exterior_iteration(cfg: &EngineConfig) -> Result<IterationTrace, CalculusError> {
    run(BoundState::exterior_seed(), cfg)
}

/// The interior sees the exterior through the cone, so the exterior run must
/// have reached `⟨r⟩^(-1)⟨u⟩^(-1)` first.
pub fn run_interior_iteration(
    cfg: &EngineConfig,
    exterior: &IterationTrace,
) -> Result<IterationTrace, CalculusError> {
    let target = DecayBound::new(RegionTag::Exterior, Exponent::one(), Exponent::zero(), Exponent::one());
    match &exterior.fixed_point {
        Some(fp) if exterior.region == RegionTag::Exterior && fp.phi.same_standard(&target) => {}
        _ => {
            return Err(CalculusError::RuleDomain(
                "interior iteration needs an exterior trace at its fixed point".into(),
            ))
        }
    }
    run(BoundState::interior_seed(), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::exponent::rat;
    use crate::calculus::trace_io::TraceFile;

    fn cfg(k: i64) -> EngineConfig {
        EngineConfig::new(rat(1, k))
    }

    fn golden(name: &str) -> TraceFile {
        let path = format!("{}/golden/{name}", env!("CARGO_MANIFEST_DIR"));
        TraceFile::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    fn std3(b: &DecayBound) -> [Rational; 3] {
        let s = b.canonical().standard();
        [s[0], s[1], s[2]]
    }

    #[test]
    fn golden_traces_sigma_tenth() {
        let ext = run_exterior_iteration(&cfg(10)).unwrap();
        assert!(TraceFile::from_trace(&ext).same_rows(&golden("exterior_sigma_1_10.trace")));
        let int = run_interior_iteration(&cfg(10), &ext).unwrap();
        assert!(TraceFile::from_trace(&int).same_rows(&golden("interior_sigma_1_10.trace")));
    }

    #[test]
    fn exterior_phase_one_length() {
        for k in [6i64, 10, 14, 22] {
            let tr = run_exterior_iteration(&cfg(k)).unwrap();
            let first_r1 = tr
                .states
                .iter()
                .position(|s| s.phi.canonical().a == Exponent::one())
                .unwrap();
            assert_eq!(first_r1 as i64, k / 2, "σ = 1/{k}");
        }
    }

    #[test]
    fn fixed_points_and_termination() {
        for k in [6i64, 10, 14, 22] {
            let c = cfg(k);
            let ext = run_exterior_iteration(&c).unwrap();
            let int = run_interior_iteration(&c, &ext).unwrap();
            for (tr, want) in [(&ext, [1, 0, 1]), (&int, [0, 1, 1])] {
                assert!(tr.terminated);
                let fp = tr.fixed_point.as_ref().unwrap();
                assert_eq!(std3(&fp.phi), want.map(Rational::from_integer), "σ = 1/{k}");
                assert!(tr.states.len() <= c.step_cap());
            }
        }
    }

    #[test]
    fn phi_strictly_improves() {
        let ext = run_exterior_iteration(&cfg(14)).unwrap();
        for w in ext.states.windows(2) {
            assert!(w[1].phi.strictly_stronger(&w[0].phi));
        }
    }

    #[test]
    fn quadratic_channel_never_exceeds_one() {
        let ext = run_exterior_iteration(&cfg(10)).unwrap();
        let h3: Vec<_> = ext.applications.iter().filter(|a| a.channel == "h3").collect();
        assert!(!h3.is_empty());
        for app in &h3 {
            if app.output.a == Exponent::one() {
                assert!(app.output.c.value() <= Rational::from_integer(1));
            }
        }
        assert!(ext.notes.iter().any(|n| n.contains("saturates")));
    }

    #[test]
    fn dt_switch_indices() {
        let ext = run_exterior_iteration(&cfg(10)).unwrap();
        assert_eq!(ext.dt_switch, Some(4));
        let int = run_interior_iteration(&cfg(10), &ext).unwrap();
        assert_eq!(int.dt_switch, Some(0));
    }

    #[test]
    fn interior_needs_finished_exterior() {
        let mut ext = run_exterior_iteration(&cfg(10)).unwrap();
        ext.fixed_point = None;
        assert!(matches!(
            run_interior_iteration(&cfg(10), &ext),
            Err(CalculusError::RuleDomain(_))
        ));
    }

    #[test]
    fn step_cap_is_enforced() {
        let mut c = cfg(10);
        c.max_steps = Some(3);
        assert_eq!(run_exterior_iteration(&c).unwrap_err(), CalculusError::StepCapExceeded(3));
    }

    #[test]
    fn sources_from_seeds() {
        let c = cfg(10);
        let sig = c.sigma_eff();
        let s = assemble_sources(&BoundState::exterior_seed(), &c);
        assert_eq!(s.h1.a, Exponent::frac(5, 2) + sig);
        assert_eq!(s.h2.time_gained().as_bound(), DecayBound::new(
            RegionTag::Exterior,
            Exponent::frac(3, 2) + sig,
            Exponent::zero(),
            Exponent::one(),
        ));
        // at least as strong as ⟨r⟩^{-2-λ}⟨u⟩^{-1+λ} for every λ
        for l in c.default_grid() {
            let weak = DecayBound::new(RegionTag::Exterior, Exponent::int(2) + l, Exponent::zero(), l - Exponent::one());
            assert!(s.h3.as_bound().stronger_or_equal(&weak));
        }

        let s = assemble_sources(&BoundState::interior_seed(), &c);
        let want_h1 = DecayBound::new(RegionTag::Interior, Exponent::int(2) + sig, Exponent::one(), Exponent::frac(-1, 2));
        assert!(s.h1.as_bound().equivalent(&want_h1));
        let want_h2 = DecayBound::new(RegionTag::Interior, Exponent::one() + sig, Exponent::one(), Exponent::frac(1, 2));
        assert!(s.h2.time_gained().as_bound().equivalent(&want_h2));
        assert_eq!(s.h2.kind, SourceKind::TimeDerivative);
        let want_h3 = DecayBound::new(RegionTag::Interior, Exponent::int(2), Exponent::one(), Exponent::zero());
        assert!(s.h3.as_bound().equivalent(&want_h3));
    }

    #[test]
    fn sources_at_phase_boundary() {
        let c = cfg(10);
        let ext = run_exterior_iteration(&c).unwrap();
        let s = assemble_sources(&ext.states[5], &c);
        assert_eq!(std3(&s.h1.as_bound()), [rat(31, 10), rat(0, 1), rat(0, 1)]);
        assert_eq!(std3(&s.h2.as_bound()), [rat(21, 10), rat(0, 1), rat(0, 1)]);
        assert_eq!(std3(&s.h3.as_bound()), [rat(3, 1), rat(0, 1), rat(1, 1)]);
    }
}
