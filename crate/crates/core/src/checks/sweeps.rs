//! Configured dyadic sweeps, sized for a recording to `t = 256` with data
//! supported inside `r ≈ 400` and `dr ≤ 0.05`.

use super::{check_inequality, CheckError, CheckKind, CheckReport, Subject};
use crate::lab::FieldSource;

const INTERIOR: &[(f64, Option<f64>)] = &[
    (32.0, Some(4.0)),
    (64.0, Some(4.0)),
    (128.0, Some(4.0)),
    (64.0, Some(8.0)),
    (128.0, Some(16.0)),
    (128.0, Some(32.0)),
];

/// `(T, U or R)` pairs visited for one kind.
pub fn default_sweep(kind: CheckKind) -> &'static [(f64, Option<f64>)] {
    match kind {
        CheckKind::ConeHardy | CheckKind::MorawetzInterior => &[(32.0, None), (64.0, None), (128.0, None)],
        CheckKind::SobolevU | CheckKind::SobolevRIn => INTERIOR,
        CheckKind::SobolevROut => &[(16.0, Some(32.0)), (32.0, Some(64.0)), (64.0, Some(128.0))],
        CheckKind::SobolevRR => &[(8.0, Some(16.0)), (8.0, Some(32.0)), (8.0, Some(64.0)), (8.0, Some(128.0))],
        CheckKind::KlainermanSideris => &[(32.0, Some(8.0)), (64.0, Some(16.0)), (128.0, Some(32.0))],
        CheckKind::MorawetzDyadic => &[(32.0, Some(4.0)), (64.0, Some(4.0)), (64.0, Some(8.0)), (128.0, Some(16.0))],
    }
}

pub fn run_sweep<F: FieldSource>(kind: CheckKind, subject: &Subject<'_, F>) -> Result<Vec<CheckReport>, CheckError> {
    default_sweep(kind).iter().map(|&(t, s)| check_inequality(kind, subject, t, s)).collect()
}
