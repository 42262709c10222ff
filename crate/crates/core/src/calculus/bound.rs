//! Pointwise envelopes `⟨r⟩^(-a) ⟨v⟩^(-b) ⟨u⟩^(-c) ν^(-p)` and their order.
//!
//! Inside a region the weights are not independent (`⟨v⟩ ∼ ⟨r⟩` outside the
//! cone, `⟨v⟩ ∼ ⟨t⟩ ∼ max(⟨r⟩, ⟨u⟩)` inside it), so a bound is identified by
//! its log-exponent at the corners of the region:
//!
//! * exterior (`r > t + 1`, `⟨u⟩ ≤ ⟨r⟩`, `ν = ⟨u⟩`): `a + b` at `u ∼ 1` and
//!   `a + b + c + p` at `u ∼ r`;
//! * interior (`r < t - 1`, `ν = min(⟨r⟩, ⟨u⟩)`): `a + b` at `r ∼ t`,
//!   `b + c` at `r ∼ 1` and `a + b + c + p` at `r ∼ u ∼ t/2`.
//!
//! The exponent is affine along each edge of the region, so one bound is
//! stronger than another exactly when every corner functional is at least as
//! large. The order is a lattice and the least upper bound is the cornerwise
//! minimum.

use std::fmt;

use super::exponent::Exponent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionTag {
    /// `r > t + 1`
    Exterior,
    /// `r < t - 1`
    Interior,
    /// `t/2 ≤ r ≤ 3t/2`
    ConeBand,
}

impl RegionTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionTag::Exterior => "exterior",
            RegionTag::Interior => "interior",
            RegionTag::ConeBand => "cone",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "exterior" => Some(RegionTag::Exterior),
            "interior" => Some(RegionTag::Interior),
            "cone" => Some(RegionTag::ConeBand),
            _ => None,
        }
    }

    fn has_inner_corner(&self) -> bool {
        matches!(self, RegionTag::Interior)
    }
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Claim `|field| ≲ ⟨r⟩^(-a) ⟨v⟩^(-b) ⟨u⟩^(-c) ν^(-nu_pow)` on `region`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DecayBound {
    pub region: RegionTag,
    pub a: Exponent,
    pub b: Exponent,
    pub c: Exponent,
    pub nu_pow: Exponent,
}

/// Corner functionals of a bound. `inner` is only meaningful in the interior.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corners {
    pub cone: Exponent,
    pub inner: Exponent,
    pub diagonal: Exponent,
}

impl DecayBound {
    pub fn new(region: RegionTag, a: Exponent, b: Exponent, c: Exponent) -> Self {
        Self { region, a, b, c, nu_pow: Exponent::zero() }
    }

    pub fn with_nu(mut self, nu_pow: Exponent) -> Self {
        self.nu_pow = nu_pow;
        self
    }

    /// Builds a bound from standard rationals `a/ad`, etc. Handy in tests.
    pub fn from_fracs(region: RegionTag, a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Self {
        Self::new(
            region,
            Exponent::frac(a.0, a.1),
            Exponent::frac(b.0, b.1),
            Exponent::frac(c.0, c.1),
        )
    }

    /// The trivial bound `1`.
    pub fn constant(region: RegionTag) -> Self {
        Self::new(region, Exponent::zero(), Exponent::zero(), Exponent::zero())
    }

    pub fn corners(&self) -> Corners {
        let cone = self.a + self.b;
        let diagonal = self.a + self.b + self.c + self.nu_pow;
        let inner = if self.region.has_inner_corner() {
            self.b + self.c
        } else {
            diagonal
        };
        Corners { cone, inner, diagonal }
    }

    pub fn from_corners(region: RegionTag, k: Corners) -> Self {
        if region.has_inner_corner() {
            Self::new(
                region,
                k.diagonal - k.inner,
                k.cone + k.inner - k.diagonal,
                k.diagonal - k.cone,
            )
        } else {
            Self::new(region, k.cone, Exponent::zero(), k.diagonal - k.cone)
        }
    }

    /// Unique representative with `nu_pow = 0`; in the exterior also `b = 0`.
    pub fn canonical(&self) -> Self {
        Self::from_corners(self.region, self.corners())
    }

    /// `self ≲ other` everywhere on the region.
    pub fn stronger_or_equal(&self, other: &Self) -> bool {
        debug_assert_eq!(self.region, other.region);
        let (x, y) = (self.corners(), other.corners());
        x.cone >= y.cone
            && x.diagonal >= y.diagonal
            && (!self.region.has_inner_corner() || x.inner >= y.inner)
    }

    pub fn strictly_stronger(&self, other: &Self) -> bool {
        self.stronger_or_equal(other) && !other.stronger_or_equal(self)
    }

    pub fn equivalent(&self, other: &Self) -> bool {
        self.stronger_or_equal(other) && other.stronger_or_equal(self)
    }

    /// Least upper bound: the strongest envelope implied by each of the two.
    pub fn envelope(&self, other: &Self) -> Self {
        debug_assert_eq!(self.region, other.region);
        let (x, y) = (self.corners(), other.corners());
        Self::from_corners(
            self.region,
            Corners {
                cone: x.cone.min(y.cone),
                inner: x.inner.min(y.inner),
                diagonal: x.diagonal.min(y.diagonal),
            },
        )
    }

    /// Least upper bound of `self` with a term that only lives away from the
    /// cone (`r ≥ 3t/2` or `r ≤ t/2`), where `⟨u⟩ ∼ max(⟨r⟩, ⟨t⟩)` and the
    /// cone corner is never reached.
    pub fn envelope_off_cone(&self, off_cone: &Self) -> Self {
        let (x, y) = (self.corners(), off_cone.corners());
        Self::from_corners(
            self.region,
            Corners {
                cone: x.cone,
                inner: x.inner.min(y.inner),
                diagonal: x.diagonal.min(y.diagonal),
            },
        )
    }

    /// Product of envelopes.
    pub fn times(&self, other: &Self) -> Self {
        debug_assert_eq!(self.region, other.region);
        Self {
            region: self.region,
            a: self.a + other.a,
            b: self.b + other.b,
            c: self.c + other.c,
            nu_pow: self.nu_pow + other.nu_pow,
        }
    }

    /// Multiplies by `⟨r⟩^(-a) ⟨v⟩^(-b) ⟨u⟩^(-c)`.
    pub fn weighted(&self, a: Exponent, b: Exponent, c: Exponent) -> Self {
        self.times(&Self::new(self.region, a, b, c))
    }

    /// Standard parts of `(a, b, c, p)`.
    pub fn standard(&self) -> [num_rational::Rational64; 4] {
        [self.a.value(), self.b.value(), self.c.value(), self.nu_pow.value()]
    }

    /// Equality of standard parts after canonicalization.
    pub fn same_standard(&self, other: &Self) -> bool {
        self.region == other.region && self.canonical().standard() == other.canonical().standard()
    }

    pub fn eval(&self, r: f64, t: f64) -> f64 {
        let jb = |x: f64| (1.0 + x * x).sqrt();
        let (rr, v, u) = (jb(r), jb(t + r), jb(t - r));
        let nu = rr.min(u);
        rr.powf(-self.a.to_f64())
            * v.powf(-self.b.to_f64())
            * u.powf(-self.c.to_f64())
            * nu.powf(-self.nu_pow.to_f64())
    }
}

impl fmt::Display for DecayBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b, self.c, self.nu_pow)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SourceKind {
    /// Lower-order and off-cone derivative terms.
    Plain,
    /// `∂_t g` with `g` supported in `t/2 ≤ r ≤ 3t/2`.
    TimeDerivative,
    /// The null form itself.
    NullForm,
}

/// Envelope of the angular `L²` norm of a source term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceBound {
    pub region: RegionTag,
    pub a: Exponent,
    pub b: Exponent,
    pub c: Exponent,
    pub kind: SourceKind,
    pub cone_supported: bool,
}

impl SourceBound {
    pub fn new(kind: SourceKind, a: Exponent, b: Exponent, c: Exponent) -> Self {
        Self {
            region: RegionTag::Interior,
            a,
            b,
            c,
            kind,
            cone_supported: kind == SourceKind::TimeDerivative,
        }
    }

    pub fn in_region(mut self, region: RegionTag) -> Self {
        self.region = region;
        self
    }

    pub fn plain(a: Exponent, b: Exponent, c: Exponent) -> Self {
        Self::new(SourceKind::Plain, a, b, c)
    }

    pub fn from_bound(kind: SourceKind, bound: &DecayBound) -> Self {
        let k = bound.canonical();
        Self::new(kind, k.a, k.b, k.c).in_region(bound.region)
    }

    pub fn as_bound(&self) -> DecayBound {
        DecayBound::new(self.region, self.a, self.b, self.c)
    }

    pub fn sum(&self) -> Exponent {
        self.a + self.b + self.c
    }

    /// Envelope of `∂_t` of a cone-supported source: one extra `⟨u⟩^(-1)`.
    pub fn time_gained(&self) -> SourceBound {
        let mut out = *self;
        out.c += Exponent::one();
        out.kind = SourceKind::Plain;
        out
    }
}

impl fmt::Display for SourceBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({},{},{})", self.kind, self.a, self.b, self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use RegionTag::*;

    fn b(region: RegionTag, a: (i64, i64), bb: (i64, i64), c: (i64, i64)) -> DecayBound {
        DecayBound::from_fracs(region, a, bb, c)
    }

    #[test]
    fn exterior_trades_u_for_r() {
        // ⟨u⟩^{1/2}/⟨r⟩ is weaker than nothing but implies ⟨r⟩^{-1/2}
        let sharp = b(Exterior, (1, 1), (0, 1), (-1, 2));
        let weak = b(Exterior, (1, 2), (0, 1), (0, 1));
        assert!(sharp.stronger_or_equal(&weak));
        assert!(!weak.stronger_or_equal(&sharp));
    }

    #[test]
    fn interior_t_dominates_r() {
        let t2 = b(Interior, (0, 1), (2, 1), (0, 1));
        let rt = b(Interior, (1, 1), (1, 1), (0, 1));
        assert!(t2.stronger_or_equal(&rt));
        assert_eq!(t2.envelope(&rt), rt);
    }

    #[test]
    fn nu_specializes_exactly() {
        // ⟨t⟩^{-1} ν^{-1} ≡ ⟨r⟩^{-1} ⟨u⟩^{-1} in the interior
        let with_nu = b(Interior, (0, 1), (1, 1), (0, 1)).with_nu(Exponent::one());
        let display = b(Interior, (1, 1), (0, 1), (1, 1));
        assert!(with_nu.equivalent(&display));
        assert_eq!(with_nu.canonical(), display);
        // ν = ⟨u⟩ outside
        let ext = b(Exterior, (1, 2), (0, 1), (0, 1)).with_nu(Exponent::one());
        assert_eq!(ext.canonical(), b(Exterior, (1, 2), (0, 1), (1, 1)));
    }

    #[test]
    fn canonical_is_idempotent_and_equivalent() {
        let x = b(Interior, (5, 2), (1, 3), (-1, 2)).with_nu(Exponent::frac(1, 4));
        let k = x.canonical();
        assert!(k.equivalent(&x));
        assert_eq!(k.canonical(), k);
    }
}
