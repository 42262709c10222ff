//! Constant-coefficient quadratic forms `S^{αβ}ξ_αξ_β` in `(t, x, y, z)`.

use super::LabError;

const ETA: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NullFormCoeffs {
    s: [[f64; 4]; 4],
}

/// Fixed sample of null covectors `(±|ξ|, ξ)`.
pub fn sample_null_covectors(n: usize) -> Vec<[f64; 4]> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| {
            let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
            let rho = (1.0 - z * z).sqrt();
            let th = golden * k as f64;
            let scale = 0.5 + (k % 7) as f64 * 0.25;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            [sign * scale, scale * rho * th.cos(), scale * rho * th.sin(), scale * z]
        })
        .collect()
}

impl NullFormCoeffs {
    /// Accepts `S` only if it is symmetric and annihilates null covectors.
    pub fn new(s: [[f64; 4]; 4]) -> Result<Self, LabError> {
        let scale = s.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
        for i in 0..4 {
            for j in 0..4 {
                if (s[i][j] - s[j][i]).abs() > 1e-12 * scale {
                    return Err(LabError::NullConditionViolated);
                }
            }
        }
        let out = Self { s };
        let basis = [
            [1.0, 1.0, 0.0, 0.0],
            [1.0, -1.0, 0.0, 0.0],
            [1.0, 0.0, 1.0, 0.0],
            [1.0, 0.0, 0.0, -1.0],
            [1.0, 0.6, 0.8, 0.0],
            [1.0, 0.0, 0.6, -0.8],
        ];
        for xi in basis.into_iter().chain(sample_null_covectors(64)) {
            let n2: f64 = xi.iter().map(|x| x * x).sum();
            if out.quadratic(&xi).abs() > 1e-12 * scale * n2 {
                return Err(LabError::NullConditionViolated);
            }
        }
        Ok(out)
    }

    /// `Q₀ = -(∂_tφ)² + |∇φ|²`.
    pub fn q0() -> Self {
        Self::minkowski(1.0)
    }

    pub fn minkowski(c: f64) -> Self {
        let mut s = [[0.0; 4]; 4];
        for (i, row) in s.iter_mut().enumerate() {
            row[i] = c * ETA[i];
        }
        Self { s }
    }

    pub fn matrix(&self) -> &[[f64; 4]; 4] {
        &self.s
    }

    pub fn quadratic(&self, xi: &[f64; 4]) -> f64 {
        let mut acc = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                acc += self.s[i][j] * xi[i] * xi[j];
            }
        }
        acc
    }
}

/// `S^{αβ}∂_αφ∂_βφ` for a radial field; `angular_terms` is the tangential
/// gradient magnitude (zero in radial symmetry).
pub fn null_form_eval(dt_phi: f64, dr_phi: f64, angular_terms: f64, coeffs: &NullFormCoeffs) -> f64 {
    coeffs.quadratic(&[dt_phi, dr_phi, angular_terms, 0.0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q0_examples() {
        let q = NullFormCoeffs::q0();
        assert_eq!(null_form_eval(1.0, 1.0, 0.0, &q), 0.0);
        assert_eq!(null_form_eval(2.0, 1.0, 0.0, &q), -3.0);
    }

    #[test]
    fn rejects_non_null() {
        let mut s = [[0.0; 4]; 4];
        s[0][1] = 0.5;
        s[1][0] = 0.5;
        assert!(matches!(NullFormCoeffs::new(s), Err(LabError::NullConditionViolated)));
        let mut asym = [[0.0; 4]; 4];
        asym[0][1] = 1.0;
        assert!(NullFormCoeffs::new(asym).is_err());
        assert!(NullFormCoeffs::new(*NullFormCoeffs::minkowski(-2.5).matrix()).is_ok());
    }

    #[test]
    fn annihilates_sampled_null_covectors() {
        let q = NullFormCoeffs::q0();
        for xi in sample_null_covectors(1000) {
            assert!(q.quadratic(&xi).abs() < 1e-13);
        }
    }
}
