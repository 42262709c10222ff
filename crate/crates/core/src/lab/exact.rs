//! Closed-form radial free waves: `rφ` solves the 1+1 wave equation, so
//! d'Alembert applies to the odd extension of `r·φ(0)`.

use super::data::InitialData;

const GL5: [(f64, f64); 5] = [
    (0.0, 0.568_888_888_888_888_9),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (-0.906_179_845_938_664_0, 0.236_926_885_056_189_1),
    (0.906_179_845_938_664_0, 0.236_926_885_056_189_1),
];

/// Composite 5-point Gauss–Legendre on panels no wider than `h`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, h: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let n = ((b - a) / h).ceil().max(1.0) as usize;
    let w = (b - a) / n as f64;
    let mut acc = 0.0;
    for k in 0..n {
        let mid = a + (k as f64 + 0.5) * w;
        for (x, wt) in GL5 {
            acc += wt * f(mid + 0.5 * w * x);
        }
    }
    0.5 * w * acc
}

/// `φ(t, r)` for the free wave with the given data.
pub fn free_wave_exact(data: &InitialData, t: f64, r: f64) -> f64 {
    let r = r.abs();
    if t == 0.0 {
        return data.phi0(r);
    }
    let f = |s: f64| s * data.phi0(s.abs());
    let g = |s: f64| s * data.phi1(s);
    let small = 1e-9 * t.max(1.0);
    let mut out = if r < small {
        data.eps * (data.phi0.eval(t) + t * data.phi0.deriv(t))
    } else {
        (f(r + t) + f(r - t)) / (2.0 * r)
    };
    if data.phi1.support() > 0.0 {
        out += if r < small {
            t * data.phi1(t)
        } else {
            let lo = (r - t).abs().min(data.phi1.support());
            let hi = (r + t).min(data.phi1.support());
            integrate(g, lo, hi, 0.05) / (2.0 * r)
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::data::Profile;

    fn gauss(eps: f64) -> InitialData {
        InitialData::new(Profile::Gaussian { width: 1.0 }, Profile::Zero, eps)
    }

    #[test]
    fn origin_limit() {
        let d = gauss(1.0);
        for t in [0.5, 1.0, 2.0] {
            let want = (1.0 - 2.0 * t * t) * (-t * t as f64).exp();
            assert!((free_wave_exact(&d, t, 0.0) - want).abs() < 1e-14);
            assert!((free_wave_exact(&d, t, 1e-4) - want).abs() < 1e-7);
        }
    }

    #[test]
    fn initial_time_and_huygens() {
        let d = gauss(0.01);
        assert_eq!(free_wave_exact(&d, 0.0, 1.3), d.phi0(1.3));
        let bump = InitialData::new(Profile::Bump { radius: 2.0 }, Profile::Bump { radius: 2.0 }, 0.01);
        assert_eq!(free_wave_exact(&bump, 10.0, 5.0), 0.0);
    }

    #[test]
    fn velocity_data() {
        // φ1 = e^{-r²}: φ(t,0) = t e^{-t²}; check against the integral form
        let d = InitialData::new(Profile::Zero, Profile::Gaussian { width: 1.0 }, 1.0);
        let t = 0.7;
        let want = t * (-t * t as f64).exp();
        assert!((free_wave_exact(&d, t, 0.0) - want).abs() < 1e-14);
        assert!((free_wave_exact(&d, t, 1e-3) - want).abs() < 1e-5);
    }

    #[test]
    fn tail_free_wave_closed_form() {
        // φ0 = ⟨r⟩^{-2} gives φ = (1 - uv)/((1+u²)(1+v²)) inside the cutoff
        let d = InitialData::new(Profile::Tail { inner: 100.0, outer: 120.0 }, Profile::Zero, 1.0);
        for (t, r) in [(10.0, 3.0), (40.0, 20.0), (5.0, 30.0)] {
            let (u, v) = (t - r, t + r);
            let want = (1.0 - u * v) / ((1.0 + u * u) * (1.0 + v * v));
            assert!((free_wave_exact(&d, t, r) - want).abs() < 1e-14);
        }
    }
}
