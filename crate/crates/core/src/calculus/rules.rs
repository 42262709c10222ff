//! Decay-conversion rules.
//!
//! Each rule turns an envelope on a source (or on the solution) into a new
//! pointwise envelope. Preconditions are checked exactly; nothing is rounded.

use super::bound::{DecayBound, RegionTag, SourceBound, SourceKind};
use super::engine::BoundState;
use super::exponent::Exponent;
use super::CalculusError;

fn half() -> Exponent {
    Exponent::frac(1, 2)
}

/// `η̃ = η − 2` for `η < 1`, `−1` for `η > 1`.
pub fn tilde_eta(eta: Exponent) -> Result<Exponent, CalculusError> {
    if eta < -half() {
        return Err(CalculusError::RuleDomain(format!("η = {eta} < -1/2")));
    }
    if eta == Exponent::one() {
        return Err(CalculusError::BoundaryEta);
    }
    if eta < Exponent::one() {
        Ok(eta - Exponent::int(2))
    } else {
        Ok(-Exponent::one())
    }
}

fn check_triple(src: &SourceBound) -> Result<(), CalculusError> {
    let two = Exponent::int(2);
    let three = Exponent::int(3);
    if src.a <= two || src.a >= three {
        return Err(CalculusError::RuleDomain(format!("need 2 < a < 3, got a = {}", src.a)));
    }
    if src.b < Exponent::zero() {
        return Err(CalculusError::RuleDomain(format!("need b ≥ 0, got b = {}", src.b)));
    }
    if src.c < -half() {
        return Err(CalculusError::RuleDomain(format!("need c ≥ -1/2, got c = {}", src.c)));
    }
    if src.c == Exponent::one() {
        return Err(CalculusError::BoundaryEta);
    }
    Ok(())
}

fn r_inverse_u(region: RegionTag, c: Exponent) -> DecayBound {
    DecayBound::new(region, Exponent::one(), Exponent::zero(), c)
}

/// Source envelope `⟨r⟩^(-a)⟨v⟩^(-b)⟨u⟩^(-c)` ⇒ `ψ ≲ ⟨r⟩^(-1)⟨u⟩^(-(a+b+η̃-1))`
/// inside the cone.
pub fn apply_interior_conversion(src: &SourceBound) -> Result<DecayBound, CalculusError> {
    check_triple(src)?;
    let c = src.a + src.b + tilde_eta(src.c)? - Exponent::one();
    Ok(r_inverse_u(RegionTag::Interior, c))
}

/// Outside the cone the output depends on whether `a + b + c` exceeds 3.
pub fn apply_exterior_conversion(src: &SourceBound) -> Result<DecayBound, CalculusError> {
    check_triple(src)?;
    let sum = src.sum();
    let three = Exponent::int(3);
    if sum == three {
        return Err(CalculusError::BorderlineSum);
    }
    if sum > three {
        let c = src.a + src.b + tilde_eta(src.c)? - Exponent::one();
        Ok(r_inverse_u(RegionTag::Exterior, c))
    } else {
        Ok(DecayBound::new(
            RegionTag::Exterior,
            sum - Exponent::int(2),
            Exponent::zero(),
            Exponent::zero(),
        ))
    }
}

/// The sub-3 exterior estimate `ψ ≲ r^(2-(a+b+c))` under the weaker
/// hypotheses its proof actually uses (`a + b ≥ 1`, `c ≥ -1/2`). Needed for
/// the `∂_t`-gained cone source early in the exterior iteration, where the
/// `⟨r⟩` exponent sits below 2.
pub fn far_field_conversion(src: &SourceBound) -> Result<DecayBound, CalculusError> {
    let sum = src.sum();
    if sum >= Exponent::int(3) {
        return Err(CalculusError::RuleDomain(format!("need a+b+c < 3, got {sum}")));
    }
    if src.a + src.b < Exponent::one() || src.b < Exponent::zero() {
        return Err(CalculusError::RuleDomain(format!(
            "need a+b ≥ 1 and b ≥ 0, got a = {}, b = {}",
            src.a, src.b
        )));
    }
    if src.c < -half() {
        return Err(CalculusError::RuleDomain(format!("need c ≥ -1/2, got c = {}", src.c)));
    }
    Ok(DecayBound::new(
        RegionTag::Exterior,
        sum - Exponent::int(2),
        Exponent::zero(),
        Exponent::zero(),
    ))
}

/// `□ψ = ∂_t g` with `g` cone-supported: one `⟨u⟩` better than the plain
/// conversion with `b = 0`. Any `⟨v⟩` weight on the source is dropped.
///
/// Outside the cone the output is admitted when `a + c > 2`; the
/// `⟨t−r⟩|∂h|` control in the hypothesis supplies the missing power. The
/// remaining sub-2 exterior case is unsupported.
pub fn apply_dt_conversion(src: &SourceBound) -> Result<DecayBound, CalculusError> {
    let region = src.region;
    if src.kind != SourceKind::TimeDerivative {
        return Err(CalculusError::RuleDomain(format!(
            "time-derivative rule applied to a {:?} source",
            src.kind
        )));
    }
    let mut probe = *src;
    probe.b = Exponent::zero();
    check_triple(&probe)?;
    if region != RegionTag::Interior && src.a + src.c <= Exponent::int(2) {
        return Err(CalculusError::Unsupported(format!(
            "exterior time-derivative source with a+c = {} ≤ 2",
            src.a + src.c
        )));
    }
    let c = src.a + tilde_eta(src.c)?;
    Ok(r_inverse_u(region, c))
}

/// `∂φ ≲ φ-envelope · ν^(-1)`.
pub fn derivative_gain(state: &BoundState) -> DecayBound {
    state.phi.canonical().with_nu(Exponent::one())
}

/// `∂̄φ ≲ (⟨u⟩/⟨r⟩)·|∂φ| + ⟨r⟩^(-1)|Zφ|`; inside the cone `⟨t⟩` replaces `⟨r⟩`.
pub fn tangential_bound(state: &BoundState) -> DecayBound {
    let region = state.phi.region;
    let one = Exponent::one();
    let zero = Exponent::zero();
    let (from_d, from_z) = match region {
        RegionTag::Interior => (
            state.dphi.weighted(zero, one, -one),
            state.phi.weighted(zero, one, zero),
        ),
        _ => (
            state.dphi.weighted(one, zero, -one),
            state.phi.weighted(one, zero, zero),
        ),
    };
    from_d.envelope(&from_z).canonical()
}

/// Interior `⟨r⟩^(-1)⟨u⟩^(-q)` plus matching derivative control gives
/// `⟨t⟩^(-1)⟨u⟩^(-q)` on the bulk `r < 3t/4`.
pub fn convert_r_to_t(
    phi: &DecayBound,
    dphi: &DecayBound,
    sigma: Exponent,
) -> Result<DecayBound, CalculusError> {
    let phi = phi.canonical();
    if phi.region != RegionTag::Interior {
        return Err(CalculusError::RuleDomain("r-to-t conversion is interior only".into()));
    }
    if phi.a != Exponent::one() || phi.b != Exponent::zero() {
        return Err(CalculusError::RuleDomain(format!(
            "need φ ≲ ⟨r⟩^-1⟨u⟩^-q, got {phi}"
        )));
    }
    let q = phi.c;
    if q < -half() {
        return Err(CalculusError::RuleDomain(format!("need q ≥ -1/2, got q = {q}")));
    }
    if q <= sigma * 2 - Exponent::one() {
        return Err(CalculusError::RuleDomain(format!("need q > -1 + 2σ, got q = {q}")));
    }
    let needed = DecayBound::new(
        RegionTag::Interior,
        Exponent::one(),
        Exponent::zero(),
        Exponent::one() + q - sigma,
    );
    if !dphi.stronger_or_equal(&needed) {
        return Err(CalculusError::RuleDomain(format!(
            "need ∂φ ≲ {needed}, have {}",
            dphi.canonical()
        )));
    }
    Ok(DecayBound::new(RegionTag::Interior, Exponent::zero(), Exponent::one(), q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use RegionTag::*;

    fn e(n: i64, d: i64) -> Exponent {
        Exponent::frac(n, d)
    }

    fn src(a: Exponent, b: Exponent, c: Exponent) -> SourceBound {
        SourceBound::plain(a, b, c)
    }

    #[test]
    fn tilde_eta_branches() {
        assert_eq!(tilde_eta(e(-1, 2)).unwrap(), e(-5, 2));
        assert_eq!(tilde_eta(e(2, 1)).unwrap(), e(-1, 1));
        assert!(matches!(tilde_eta(e(1, 1)), Err(CalculusError::BoundaryEta)));
        assert!(matches!(tilde_eta(e(-3, 4)), Err(CalculusError::RuleDomain(_))));
    }

    #[test]
    fn interior_examples() {
        let sigma = e(1, 10);
        let out = apply_interior_conversion(&src(e(2, 1) + sigma, e(1, 1), e(-1, 2))).unwrap();
        assert_eq!(out, DecayBound::new(Interior, e(1, 1), e(0, 1), e(-2, 5)));
        let out = apply_interior_conversion(&src(e(5, 2), e(1, 2), sigma)).unwrap();
        assert_eq!(out.c, e(1, 10));
        let out = apply_interior_conversion(&src(e(2, 1) + sigma, e(1, 1), e(2, 1))).unwrap();
        assert_eq!(out.c, e(11, 10));
    }

    #[test]
    fn interior_rejects_out_of_range() {
        let err = apply_interior_conversion(&src(e(3, 1), e(0, 1), e(0, 1))).unwrap_err();
        assert!(matches!(err, CalculusError::RuleDomain(m) if m.contains("2 < a < 3")));
        let err = apply_interior_conversion(&src(e(5, 2), e(-1, 10), e(0, 1))).unwrap_err();
        assert!(matches!(err, CalculusError::RuleDomain(m) if m.contains("b ≥ 0")));
    }

    #[test]
    fn exterior_examples() {
        let sigma = e(1, 10);
        let out = apply_exterior_conversion(&src(e(5, 2) + sigma, e(0, 1), e(0, 1))).unwrap();
        assert_eq!(out, DecayBound::new(Exterior, e(3, 5), e(0, 1), e(0, 1)));
        let out = apply_exterior_conversion(&src(e(2, 1) + sigma, e(0, 1), e(1, 2))).unwrap();
        assert_eq!(out.a, e(3, 5));
        let out = apply_exterior_conversion(&src(e(2, 1) + sigma, e(1, 1), e(0, 1))).unwrap();
        assert_eq!(out, DecayBound::new(Exterior, e(1, 1), e(0, 1), e(1, 10)));
        assert!(matches!(
            apply_exterior_conversion(&src(e(5, 2), e(1, 2), e(0, 1))),
            Err(CalculusError::BorderlineSum)
        ));
    }

    #[test]
    fn dt_examples() {
        let sigma = e(1, 10);
        let td = |a, c, region| {
            SourceBound::new(SourceKind::TimeDerivative, a, Exponent::zero(), c).in_region(region)
        };
        for region in [Interior, Exterior] {
            let out = apply_dt_conversion(&td(e(2, 1) + sigma, e(0, 1), region)).unwrap();
            assert_eq!(out, DecayBound::new(region, e(1, 1), e(0, 1), e(1, 10)));
        }
        let out = apply_dt_conversion(&td(e(2, 1) + sigma, e(1, 2), Interior)).unwrap();
        assert_eq!(out.c, e(3, 5));
        assert!(matches!(
            apply_dt_conversion(&td(e(2, 1) + sigma, e(1, 1), Interior)),
            Err(CalculusError::BoundaryEta)
        ));
        let plain = src(e(5, 2), e(0, 1), e(0, 1));
        assert!(matches!(apply_dt_conversion(&plain), Err(CalculusError::RuleDomain(_))));
        assert!(matches!(
            apply_dt_conversion(&td(e(21, 10), e(-1, 2), Exterior)),
            Err(CalculusError::Unsupported(_))
        ));
    }

    #[test]
    fn far_field_matches_exterior_below_three() {
        let s = src(e(13, 5), e(0, 1), e(1, 10));
        assert_eq!(far_field_conversion(&s).unwrap(), apply_exterior_conversion(&s).unwrap());
        let low = src(e(3, 2) + e(1, 10), e(0, 1), e(1, 1));
        assert_eq!(far_field_conversion(&low).unwrap().a, e(3, 5));
    }

    fn state(phi: DecayBound, dphi: DecayBound) -> BoundState {
        BoundState::new(phi, dphi, DecayBound::constant(phi.region), 0)
    }

    #[test]
    fn derivative_gain_examples() {
        let phi = DecayBound::new(Interior, e(1, 1), e(0, 1), e(3, 10));
        let d = derivative_gain(&state(phi, phi));
        assert_eq!(d.nu_pow, e(1, 1));
        assert_eq!((d.a, d.b, d.c), (phi.a, phi.b, phi.c));
        // away from the cone ν = ⟨u⟩ ≤ ⟨r⟩: ⟨r⟩^{-1}⟨u⟩^{-1-q}
        let ext = DecayBound::new(Exterior, e(1, 1), e(0, 1), e(3, 10));
        let d = derivative_gain(&state(ext, ext)).canonical();
        assert_eq!(d, DecayBound::new(Exterior, e(1, 1), e(0, 1), e(13, 10)));
        // ⟨v⟩^{-1}⟨u⟩^{-1/2+σ} ↦ ⟨r⟩^{-1}⟨u⟩^{-1/2-σ}
        let phi = DecayBound::new(Interior, e(0, 1), e(1, 1), e(-2, 5));
        let d = derivative_gain(&state(phi, phi)).canonical();
        assert_eq!(d, DecayBound::new(Interior, e(1, 1), e(0, 1), e(3, 5)));
        let d = derivative_gain(&state(DecayBound::constant(Interior), phi));
        assert_eq!(d, DecayBound::constant(Interior).with_nu(e(1, 1)));
    }

    #[test]
    fn tangential_examples() {
        let st = state(
            DecayBound::new(Exterior, e(1, 1), e(0, 1), e(-1, 2)),
            DecayBound::new(Exterior, e(1, 1), e(0, 1), e(1, 2)),
        );
        assert_eq!(tangential_bound(&st), DecayBound::new(Exterior, e(2, 1), e(0, 1), e(-1, 2)));
        let st = state(
            DecayBound::new(Interior, e(0, 1), e(1, 1), e(-1, 2)),
            DecayBound::new(Interior, e(1, 1), e(0, 1), e(1, 2)),
        );
        assert_eq!(tangential_bound(&st), DecayBound::new(Interior, e(1, 1), e(1, 1), e(-1, 2)));
        let st = state(
            DecayBound::new(Exterior, e(1, 1), e(0, 1), e(1, 1)),
            DecayBound::new(Exterior, e(1, 1), e(0, 1), e(1, 1)).with_nu(e(1, 1)),
        );
        assert_eq!(tangential_bound(&st), DecayBound::new(Exterior, e(2, 1), e(0, 1), e(1, 1)));
    }

    #[test]
    fn r_to_t_examples() {
        let sigma = e(1, 10);
        let seed_dphi = DecayBound::new(Interior, e(1, 1), e(0, 1), e(1, 2));
        let phi = DecayBound::new(Interior, e(1, 1), e(0, 1), e(-2, 5));
        let out = convert_r_to_t(&phi, &seed_dphi, sigma).unwrap();
        assert_eq!(out, DecayBound::new(Interior, e(0, 1), e(1, 1), e(-2, 5)));

        let phi = DecayBound::new(Interior, e(1, 1), e(0, 1), e(1, 1));
        let dphi = DecayBound::new(Interior, e(1, 1), e(0, 1), e(2, 1));
        let out = convert_r_to_t(&phi, &dphi, sigma).unwrap();
        assert_eq!(out, DecayBound::new(Interior, e(0, 1), e(1, 1), e(1, 1)));

        let phi = DecayBound::new(Interior, e(1, 1), e(0, 1), e(-1, 2));
        let out = convert_r_to_t(&phi, &seed_dphi, sigma).unwrap();
        assert_eq!(out.c, e(-1, 2));

        // derivative control too weak
        let phi = DecayBound::new(Interior, e(1, 1), e(0, 1), e(1, 1));
        assert!(convert_r_to_t(&phi, &seed_dphi, sigma).is_err());
    }
}
