//! Exact exponents with an optional infinitesimal tilt.
//!
//! A decay exponent is stored as `value + tilt·ε` where `ε` is a positive
//! infinitesimal. With `tilt = 0` this is plain rational arithmetic. The
//! bootstrap engine runs with `σ + ε` in place of `σ`, which keeps every
//! comparison exact while reproducing the behaviour of a generic (irrational)
//! `σ` just above the chosen rational: sums like `5/2 + 5σ` land strictly
//! above 3 instead of on the logarithmic borderline.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Zero};

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = Rational64;

/// Shorthand for `Rational::new(num, den)`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Exponent {
    value: Rational,
    tilt: Rational,
}

impl Exponent {
    pub const fn new(value: Rational, tilt: Rational) -> Self {
        Self { value, tilt }
    }

    pub fn zero() -> Self {
        Self::from(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from(Rational::one())
    }

    pub fn int(n: i64) -> Self {
        Self::from(Rational::from_integer(n))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Self::from(rat(num, den))
    }

    /// The infinitesimal `ε` itself.
    pub fn epsilon() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    /// Standard part, dropping the infinitesimal.
    pub fn value(&self) -> Rational {
        self.value
    }

    pub fn tilt(&self) -> Rational {
        self.tilt
    }

    pub fn is_standard(&self) -> bool {
        self.tilt.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        *self.value.numer() as f64 / *self.value.denom() as f64
    }
}

impl From<Rational> for Exponent {
    fn from(value: Rational) -> Self {
        Self::new(value, Rational::zero())
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .cmp(&other.value)
            .then_with(|| self.tilt.cmp(&other.tilt))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.value + rhs.value, self.tilt + rhs.tilt)
    }
}

impl AddAssign for Exponent {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.value - rhs.value, self.tilt - rhs.tilt)
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Self {
        Self::new(-self.value, -self.tilt)
    }
}

impl Mul<i64> for Exponent {
    type Output = Exponent;
    fn mul(self, k: i64) -> Self {
        let k = Rational::from_integer(k);
        Self::new(self.value * k, self.tilt * k)
    }
}

impl Add<Rational> for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Rational) -> Self {
        self + Exponent::from(rhs)
    }
}

impl Sub<Rational> for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Rational) -> Self {
        self - Exponent::from(rhs)
    }
}

impl PartialEq<Rational> for Exponent {
    fn eq(&self, other: &Rational) -> bool {
        self.tilt.is_zero() && self.value == *other
    }
}

/// Writes the standard part as `num/den`; a nonzero tilt is appended as `+kε`.
impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational(f, self.value)?;
        if !self.tilt.is_zero() {
            if self.tilt > Rational::zero() {
                write!(f, "+")?;
            }
            write_rational(f, self.tilt)?;
            write!(f, "ε")?;
        }
        Ok(())
    }
}

/// Rationals are always written with an explicit denominator.
pub fn write_rational(f: &mut impl fmt::Write, q: Rational) -> fmt::Result {
    write!(f, "{}/{}", q.numer(), q.denom())
}

pub fn format_rational(q: Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}
