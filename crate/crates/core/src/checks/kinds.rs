//! Both sides of each inequality, in radial symmetry (`Ω` terms drop and
//! angular integrals become `4π`).

use super::blocks::Block;
use super::{CheckError, CheckKind, CheckReport, Subject};
use crate::lab::{FieldSource, VectorFieldEval, Vf};
use crate::norms::le::{annulus_sq, jb};

fn eval(word: &[Vf]) -> VectorFieldEval {
    VectorFieldEval::new(word).expect("radial word of length ≤ 2")
}

fn need_scale(kind: CheckKind, scale: Option<f64>) -> Result<f64, CheckError> {
    scale.ok_or_else(|| CheckError::Domain(format!("{kind} needs a secondary scale")))
}

pub fn check_inequality<F: FieldSource>(
    kind: CheckKind,
    subject: &Subject<'_, F>,
    t_scale: f64,
    scale: Option<f64>,
) -> Result<CheckReport, CheckError> {
    if !(t_scale >= 1.0) || scale.is_some_and(|s| !(s >= 1.0)) {
        return Err(CheckError::Domain("scales must be at least 1".into()));
    }
    match kind {
        CheckKind::ConeHardy => cone_hardy(subject.field, t_scale),
        CheckKind::SobolevU => {
            let u = need_scale(kind, scale)?;
            if u > 3.0 * t_scale / 8.0 {
                return Err(CheckError::Domain(format!("U = {u} exceeds 3T/8")));
            }
            sobolev(kind, subject.field, Block::Ctu { t: t_scale, u }, t_scale, u)
        }
        CheckKind::SobolevRIn => {
            let r = need_scale(kind, scale)?;
            if r > 3.0 * t_scale / 8.0 {
                return Err(CheckError::Domain(format!("R = {r} exceeds 3T/8")));
            }
            sobolev(kind, subject.field, Block::Ctr { t: t_scale, r }, t_scale, r)
        }
        CheckKind::SobolevROut | CheckKind::SobolevRR => {
            let r = need_scale(kind, scale)?;
            if r <= t_scale {
                return Err(CheckError::Domain(format!("R = {r} must exceed T = {t_scale}")));
            }
            let block = if kind == CheckKind::SobolevROut { Block::Crt { t: t_scale, r } } else { Block::Crr { r } };
            sobolev(kind, subject.field, block, t_scale, r)
        }
        CheckKind::KlainermanSideris => {
            let r = need_scale(kind, scale)?;
            klainerman_sideris(subject, t_scale, r)
        }
        CheckKind::MorawetzDyadic => {
            let u = need_scale(kind, scale)?;
            morawetz_dyadic(subject, t_scale, u)
        }
        CheckKind::MorawetzInterior => morawetz_interior(subject, t_scale),
    }
}

/// `∫_{t/2}^{3t/2} ⟨t-r⟩⁻² f² ≲ ∫_{t/4}^{7t/4} |∂_r f|² + t⁻²(∫_{t/4}^{t/2} + ∫_{3t/2}^{7t/4}) f²`
/// at the snapshot nearest `t`.
fn cone_hardy(field: &impl FieldSource, t: f64) -> Result<CheckReport, CheckError> {
    let k = field.snapshot_near(t);
    let ts = field.time(k);
    let spacing = if field.n_times() > 1 { field.time(1) - field.time(0) } else { 0.0 };
    if (ts - t).abs() > 0.5 * spacing + 1e-9 {
        return Err(CheckError::Domain(format!("no snapshot near t = {t}")));
    }
    let dr = field.dr();
    if t / dr < 32.0 {
        return Err(CheckError::Resolution(format!("t = {t} spans {:.1} cells", t / dr)));
    }
    if 1.75 * ts > field.r(field.n_points() - 1) {
        return Err(CheckError::Resolution(format!("grid ends before 7t/4 = {}", 1.75 * ts)));
    }
    let phi: Vec<f64> = (0..field.n_points()).map(|i| field.phi(k, i)).collect();
    let phi_r: Vec<f64> = (0..field.n_points()).map(|i| field.phi_r(k, i)).collect();
    let lhs = annulus_sq(&[&phi], dr, 0.5 * ts, 1.5 * ts, |r| jb(ts - r).powi(-2));
    let grad = annulus_sq(&[&phi_r], dr, 0.25 * ts, 1.75 * ts, |_| 1.0);
    let edges = annulus_sq(&[&phi], dr, 0.25 * ts, 0.5 * ts, |_| 1.0)
        + annulus_sq(&[&phi], dr, 1.5 * ts, 1.75 * ts, |_| 1.0);
    Ok(CheckReport::new(CheckKind::ConeHardy, t, None, lhs, grad + edges / (ts * ts)))
}

/// `‖w‖_∞ ≲ Σ_{i≤1} a‖S^i w‖ + b‖∂ S^i w‖` with the block's weights.
fn sobolev(kind: CheckKind, field: &impl FieldSource, block: Block, t: f64, s: f64) -> Result<CheckReport, CheckError> {
    block.require_resolved(field)?;
    let (a, b, d) = match kind {
        CheckKind::SobolevU => ((t.powi(3) * s).powf(-0.5), (s / t.powi(3)).sqrt(), Vf::Dr),
        CheckKind::SobolevRIn => ((s.powi(3) * t).powf(-0.5), (s * t).powf(-0.5), Vf::Dr),
        CheckKind::SobolevROut => ((s.powi(3) * t).powf(-0.5), (s * t).powf(-0.5), Vf::Dt),
        _ => (s.powi(-2), 1.0 / s, Vf::Dt),
    };
    let lhs = block.sup(field, |k, i| field.phi(k, i));
    let mut rhs = 0.0;
    for w in [vec![], vec![Vf::Scaling]] {
        rhs += a * block.l2_word(field, &eval(&w));
        let mut dw = vec![d];
        dw.extend_from_slice(&w);
        rhs += b * block.l2_word(field, &eval(&dw));
    }
    Ok(CheckReport::new(kind, t, Some(s), lhs, rhs))
}

fn words_up_to(order: usize) -> Vec<Vec<Vf>> {
    let zs = [Vf::Dt, Vf::Dr, Vf::Scaling];
    let mut out = vec![vec![]];
    if order >= 1 {
        out.extend(zs.iter().map(|z| vec![*z]));
    }
    if order >= 2 {
        for a in zs {
            for b in zs {
                out.push(vec![a, b]);
            }
        }
    }
    out
}

fn norm_at(evals: &[VectorFieldEval], field: &impl FieldSource, k: usize, i: usize) -> f64 {
    evals.iter().map(|e| e.at(field, k, i).powi(2)).sum::<f64>().sqrt()
}

/// Radius below which the pointwise second-derivative bound is not sampled.
pub const KS_MIN_RADIUS: f64 = 8.0;

/// Worst pointwise ratio of `|∂²φ|` to
/// `(1/⟨r⟩ + 1/⟨u⟩)|∂φ_{≤1}| + (1 + t/⟨u⟩)(⟨r⟩⁻²|φ_{≤2}| + |Pφ|)` on `C_T^R`, `r ≥ 8`.
fn klainerman_sideris<F: FieldSource>(s: &Subject<'_, F>, t_scale: f64, big: f64) -> Result<CheckReport, CheckError> {
    let field = s.field;
    let block = Block::Ctr { t: t_scale, r: big };
    block.require_resolved(field)?;
    let second: Vec<VectorFieldEval> =
        [[Vf::Dt, Vf::Dt], [Vf::Dt, Vf::Dr], [Vf::Dr, Vf::Dr]].iter().map(|w| eval(w)).collect();
    let first: Vec<VectorFieldEval> = words_up_to(1)
        .iter()
        .flat_map(|w| {
            [Vf::Dt, Vf::Dr].into_iter().map(move |d| {
                let mut x = vec![d];
                x.extend_from_slice(w);
                eval(&x)
            })
        })
        .collect();
    let low: Vec<VectorFieldEval> = words_up_to(2).iter().map(|w| eval(w)).collect();
    let (t0, t1) = block.time_range();
    let mut worst = (0.0, 0.0, 1.0);
    for k in 0..field.n_times() {
        let t = field.time(k);
        if t < t0 || t > t1 {
            continue;
        }
        for i in 0..field.n_points() {
            let r = field.r(i);
            if r < KS_MIN_RADIUS || !block.contains(t, r) {
                continue;
            }
            let u = jb(t - r);
            let lhs = norm_at(&second, field, k, i);
            let rhs = (1.0 / jb(r) + 1.0 / u) * norm_at(&first, field, k, i)
                + (1.0 + t / u) * (norm_at(&low, field, k, i) / (jb(r) * jb(r)) + s.p_phi(k, i).abs());
            if rhs > 0.0 && lhs / rhs > worst.0 {
                worst = (lhs / rhs, lhs, rhs);
            }
        }
    }
    let (_, lhs, rhs) = worst;
    Ok(CheckReport::new(CheckKind::KlainermanSideris, t_scale, Some(big), lhs, rhs))
}

/// `‖∂φ‖_{L²(C_T^U)} ≲ ‖φ_{≤2}/ν‖_{L²(C̃)} + ‖⟨r⟩Pφ‖_{L²(C̃)}`, `ν = min(⟨r⟩, ⟨u⟩)`,
/// with `C̃` the `U/2, U, 2U` bands at the same `T`.
fn morawetz_dyadic<F: FieldSource>(s: &Subject<'_, F>, t_scale: f64, u: f64) -> Result<CheckReport, CheckError> {
    let field = s.field;
    if 2.0 * u > 3.0 * t_scale / 8.0 {
        return Err(CheckError::Domain(format!("2U = {} exceeds 3T/8", 2.0 * u)));
    }
    let block = Block::Ctu { t: t_scale, u };
    block.require_resolved(field)?;
    let lhs = block.l2(field, &[&|k, i| field.phi_t(k, i), &|k, i| field.phi_r(k, i)], |_, _| 1.0);
    let low: Vec<VectorFieldEval> = words_up_to(2).iter().map(|w| eval(w)).collect();
    let mut bands = vec![block, Block::Ctu { t: t_scale, u: 2.0 * u }];
    if u >= 2.0 {
        bands.push(Block::Ctu { t: t_scale, u: u / 2.0 });
    }
    let q: Vec<Box<dyn Fn(usize, usize) -> f64 + '_>> =
        low.iter().map(|e| Box::new(move |k, i| e.at(field, k, i)) as Box<dyn Fn(usize, usize) -> f64>).collect();
    let refs: Vec<&dyn Fn(usize, usize) -> f64> = q.iter().map(|f| f.as_ref()).collect();
    let (mut a, mut b) = (0.0, 0.0);
    for band in bands {
        a += band.l2(field, &refs, |t, r| jb(r).min(jb(t - r)).powi(-2)).powi(2);
        b += band.l2(field, &[&|k, i| s.p_phi(k, i)], |_, r| jb(r).powi(2)).powi(2);
    }
    Ok(CheckReport::new(CheckKind::MorawetzDyadic, t_scale, Some(u), lhs, a.sqrt() + b.sqrt()))
}

/// Annuli `A_R` (base 2) meeting `r < 3T/4`.
fn bulk_annuli(t_scale: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut big = 1.0f64;
    while (big * big - 1.0).max(0.0).sqrt() < 0.75 * t_scale {
        out.push(((big * big - 1.0).max(0.0).sqrt(), (4.0 * big * big - 1.0).sqrt()));
        big *= 2.0;
    }
    out
}

/// Per-annulus `‖·‖_{L²(C_T^{<3T/4} ∩ A_R)}` of a list of quantities.
fn bulk_pieces<F: FieldSource>(
    field: &F,
    block: Block,
    quantities: &[&dyn Fn(usize, usize) -> f64],
    weight: impl Fn(f64) -> f64 + Copy,
) -> Vec<f64> {
    bulk_annuli(block.min_width() / 0.75)
        .into_iter()
        .map(|(lo, hi)| block.l2(field, quantities, move |_, r| if r >= lo && r <= hi { weight(r) } else { 0.0 }))
        .collect()
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(*x))
}

/// `‖φ‖_{LE¹(C)} ≲ T⁻¹‖⟨r⟩φ_{≤1}‖_{LE¹(C)} + ‖Q_{≤1}‖_{LE*(C)}`, `C = C_T^{<3T/4}`.
fn morawetz_interior<F: FieldSource>(s: &Subject<'_, F>, t_scale: f64) -> Result<CheckReport, CheckError> {
    let field = s.field;
    let block = Block::Bulk { t: t_scale };
    block.require_resolved(field)?;
    let le_w = |r: f64| 1.0 / jb(r);
    let lo_w = |r: f64| jb(r).powi(-3);
    let lhs = sup(&bulk_pieces(field, block, &[&|k, i| field.phi_t(k, i), &|k, i| field.phi_r(k, i)], le_w))
        + sup(&bulk_pieces(field, block, &[&|k, i| field.phi(k, i)], lo_w));

    let mut grad: Vec<Box<dyn Fn(usize, usize) -> f64 + '_>> = Vec::new();
    let mut vals: Vec<Box<dyn Fn(usize, usize) -> f64 + '_>> = Vec::new();
    for w in words_up_to(1) {
        let g = eval(&w);
        let gt = {
            let mut x = vec![Vf::Dt];
            x.extend_from_slice(&w);
            eval(&x)
        };
        let gr = {
            let mut x = vec![Vf::Dr];
            x.extend_from_slice(&w);
            eval(&x)
        };
        let g2 = g.clone();
        grad.push(Box::new(move |k, i| jb(field.r(i)) * gt.at(field, k, i)));
        grad.push(Box::new(move |k, i| {
            let r = field.r(i);
            jb(r) * gr.at(field, k, i) + r / jb(r) * g2.at(field, k, i)
        }));
        vals.push(Box::new(move |k, i| jb(field.r(i)) * g.at(field, k, i)));
    }
    let grad_refs: Vec<&dyn Fn(usize, usize) -> f64> = grad.iter().map(|f| f.as_ref()).collect();
    let val_refs: Vec<&dyn Fn(usize, usize) -> f64> = vals.iter().map(|f| f.as_ref()).collect();
    let weighted =
        sup(&bulk_pieces(field, block, &grad_refs, le_w)) + sup(&bulk_pieces(field, block, &val_refs, lo_w));

    let qz: [&dyn Fn(usize, usize) -> f64; 4] = [
        &|k, i| s.q_jet(k, i).0,
        &|k, i| s.q_jet(k, i).1,
        &|k, i| s.q_jet(k, i).2,
        &|k, i| {
            let (_, qt, qr) = s.q_jet(k, i);
            field.time(k) * qt + field.r(i) * qr
        },
    ];
    let forcing: f64 = bulk_pieces(field, block, &qz, jb).iter().sum();
    Ok(CheckReport::new(CheckKind::MorawetzInterior, t_scale, None, lhs, weighted / t_scale + forcing))
}
