//! `E_N(t) = ‖∂φ_{≤N}‖_{L∞[0,t]L²} + ‖φ_{≤N}‖_{LE¹[0,t]}` with
//! `φ_{≤N} = {Z^J φ : |J| ≤ N}`, `Z ∈ {∂_t, ∂_r, S}`.
//!
//! Derivatives of `Z^J φ` come from the field's jet while the total order
//! stays within two; beyond that they are differenced across snapshots
//! (time) or grid points (space).

use super::le::{annuli, annulus_sq, jb};
use super::NormError;
use crate::lab::{FieldSource, VectorFieldEval, Vf};

pub const MAX_ORDER: usize = 2;

fn words(order: usize) -> Vec<Vec<Vf>> {
    let mut out = vec![Vec::new()];
    let mut last = vec![Vec::new()];
    for _ in 0..order {
        let mut next = Vec::new();
        for w in &last {
            for z in [Vf::Dt, Vf::Dr, Vf::Scaling] {
                let mut x = vec![z];
                x.extend_from_slice(w);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        last = next;
    }
    out
}

struct Piece {
    value: VectorFieldEval,
    dt: Option<VectorFieldEval>,
    dr: Option<VectorFieldEval>,
}

fn prepend(z: Vf, w: &[Vf]) -> Option<VectorFieldEval> {
    if w.len() + 1 > 2 {
        return None;
    }
    let mut x = vec![z];
    x.extend_from_slice(w);
    VectorFieldEval::new(&x).ok()
}

fn slice(field: &impl FieldSource, e: &VectorFieldEval, k: usize) -> Vec<f64> {
    (0..field.n_points()).map(|i| e.at(field, k, i)).collect()
}

fn spatial_diff(g: &[f64], dr: f64) -> Vec<f64> {
    let n = g.len();
    (0..n)
        .map(|i| match i {
            0 => 0.0,
            _ if i == n - 1 => (3.0 * g[i] - 4.0 * g[i - 1] + g[i - 2]) / (2.0 * dr),
            _ => (g[i + 1] - g[i - 1]) / (2.0 * dr),
        })
        .collect()
}

/// Discrete `E_order` at each snapshot time.
pub fn energy_history(field: &impl FieldSource, order: usize) -> Result<Vec<(f64, f64)>, NormError> {
    if order > MAX_ORDER {
        return Err(NormError::Domain(format!("order {order} exceeds {MAX_ORDER}")));
    }
    let nt = field.n_times();
    if nt < 2 || field.n_points() < 3 {
        return Err(NormError::Domain("need at least two snapshots".into()));
    }
    let pieces: Vec<Piece> = words(order)
        .iter()
        .map(|w| {
            Ok(Piece {
                value: VectorFieldEval::new(w)?,
                dt: prepend(Vf::Dt, w),
                dr: prepend(Vf::Dr, w),
            })
        })
        .collect::<Result<_, NormError>>()?;
    let dr = field.dr();
    let r_max = field.r(field.n_points() - 1);
    let ann = annuli(r_max);

    let mut grad_cum = vec![0.0; ann.len()];
    let mut low_cum = vec![0.0; ann.len()];
    let (mut prev_grad, mut prev_low) = (vec![0.0; ann.len()], vec![0.0; ann.len()]);
    let mut sup_energy = 0.0f64;
    let mut out = Vec::with_capacity(nt);
    for k in 0..nt {
        let mut rows: Vec<Vec<f64>> = Vec::new();
        let mut grads: Vec<Vec<f64>> = Vec::new();
        for p in &pieces {
            let g = slice(field, &p.value, k);
            let gt = match &p.dt {
                Some(e) => slice(field, e, k),
                None => {
                    let (a, b) = (k.saturating_sub(1), (k + 1).min(nt - 1));
                    let (ga, gb) = (slice(field, &p.value, a), slice(field, &p.value, b));
                    let h = field.time(b) - field.time(a);
                    ga.iter().zip(&gb).map(|(x, y)| (y - x) / h).collect()
                }
            };
            let gr = match &p.dr {
                Some(e) => slice(field, e, k),
                None => spatial_diff(&g, dr),
            };
            rows.push(g);
            grads.push(gt);
            grads.push(gr);
        }
        let grad_refs: Vec<&[f64]> = grads.iter().map(|v| v.as_slice()).collect();
        let row_refs: Vec<&[f64]> = rows.iter().map(|v| v.as_slice()).collect();
        let energy = annulus_sq(&grad_refs, dr, 0.0, r_max, |_| 1.0).sqrt();
        sup_energy = sup_energy.max(energy);

        let cur_grad: Vec<f64> =
            ann.iter().map(|&(_, lo, hi)| annulus_sq(&grad_refs, dr, lo, hi, |r| 1.0 / jb(r))).collect();
        let cur_low: Vec<f64> =
            ann.iter().map(|&(_, lo, hi)| annulus_sq(&row_refs, dr, lo, hi, |r| jb(r).powi(-3))).collect();
        if k > 0 {
            let h = 0.5 * (field.time(k) - field.time(k - 1));
            for j in 0..ann.len() {
                grad_cum[j] += h * (prev_grad[j] + cur_grad[j]);
                low_cum[j] += h * (prev_low[j] + cur_low[j]);
            }
        }
        prev_grad = cur_grad;
        prev_low = cur_low;
        let sup = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.sqrt()));
        out.push((field.time(k), sup_energy + sup(&grad_cum) + sup(&low_cum)));
    }
    Ok(out)
}
