//! The geometric real field.
//!
//! A [`GReal`] is a positive real `e^t` stored as its exponent `t`. The field
//! operations are
//!
//! | operation | value domain      | exponent domain |
//! |-----------|-------------------|-----------------|
//! | `x ⊕ y`   | `x · y`           | `s + t`         |
//! | `x ⊖ y`   | `x / y`           | `s - t`         |
//! | `x ⊙ y`   | `x^(ln y)`        | `s · t`         |
//! | `x ⊘ y`   | `x^(1 / ln y)`    | `s / t`         |
//!
//! with geometric zero `e^0 = 1` and geometric unity `e^1 = e`. Values only
//! appear at the construction and display boundaries.
//!
//! The arithmetic is the one generated by `exp`; other generators are not
//! provided, but nothing outside this module depends on the exponent
//! representation except through [`GReal::exponent`].

use core::cmp::Ordering;
use core::hash::{Hash, Hasher};
use core::iter::Sum;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// An element of the geometric real field.
///
/// The exponent is always finite and never negative zero, which makes
/// equality, ordering and hashing agree with each other.
#[derive(Clone, Copy, Debug)]
pub struct GReal {
    exponent: f64,
}

impl GReal {
    /// Geometric zero, `e^0 = 1`.
    pub const ZERO: GReal = GReal { exponent: 0.0 };
    /// Geometric unity, `e^1 = e`.
    pub const ONE: GReal = GReal { exponent: 1.0 };

    /// Builds `e^t`. Rejects non-finite exponents.
    pub fn from_exponent(t: f64) -> Result<Self> {
        if t.is_finite() {
            Ok(Self::raw(t))
        } else {
            Err(Error::Domain("exponent must be finite"))
        }
    }

    /// Builds the geometric real whose value is `v`.
    pub fn from_value(v: f64) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::Domain("value must be finite"));
        }
        if v <= 0.0 {
            return Err(Error::Domain("value must be positive"));
        }
        Ok(Self::raw(libm::log(v)))
    }

    /// `e^k` for an integer `k`; exact.
    pub fn from_int(k: i64) -> Self {
        Self::raw(k as f64)
    }

    #[inline]
    fn raw(t: f64) -> Self {
        // normalizes -0.0 to +0.0
        GReal { exponent: t + 0.0 }
    }

    #[inline]
    pub fn exponent(self) -> f64 {
        self.exponent
    }

    /// The ordinary positive real `e^t`. Overflows to infinity or underflows
    /// to zero outside roughly `|t| < 709`.
    pub fn value(self) -> f64 {
        libm::exp(self.exponent)
    }

    pub fn is_zero(self) -> bool {
        self.exponent == 0.0
    }

    /// The exponent as an integer, when it is one.
    pub fn as_int(self) -> Option<i64> {
        let t = self.exponent;
        if t == libm::trunc(t) && t.abs() < 9.0e15 {
            Some(t as i64)
        } else {
            None
        }
    }

    /// `x ⊕ y`.
    #[inline]
    pub fn gadd(self, rhs: GReal) -> GReal {
        Self::raw(self.exponent + rhs.exponent)
    }

    /// `x ⊖ y`.
    #[inline]
    pub fn gsub(self, rhs: GReal) -> GReal {
        Self::raw(self.exponent - rhs.exponent)
    }

    /// `x ⊙ y`.
    #[inline]
    pub fn gmul(self, rhs: GReal) -> GReal {
        Self::raw(self.exponent * rhs.exponent)
    }

    /// `x ⊘ y`. Fails when `y` is geometric zero.
    pub fn gdiv(self, rhs: GReal) -> Result<GReal> {
        if rhs.exponent == 0.0 {
            return Err(Error::Domain("division by geometric zero"));
        }
        Self::from_exponent(self.exponent / rhs.exponent)
    }

    /// Additive inverse `e^-t`.
    #[inline]
    pub fn gneg(self) -> GReal {
        Self::raw(-self.exponent)
    }

    /// Multiplicative inverse `e^(1/t)`.
    pub fn ginv(self) -> Result<GReal> {
        GReal::ONE.gdiv(self)
    }

    /// Geometric absolute value `e^|t|`.
    #[inline]
    pub fn gabs(self) -> GReal {
        Self::raw(self.exponent.abs())
    }

    /// Geometric distance `|x ⊖ y|_G`.
    #[inline]
    pub fn gdist(self, rhs: GReal) -> GReal {
        self.gsub(rhs).gabs()
    }
}

/// Geometric sum of a collection; empty input gives geometric zero.
///
/// Exponents are accumulated with Neumaier compensation, so the result does
/// not depend on the order of the terms beyond the last few ulps.
pub fn gsum<I>(xs: I) -> GReal
where
    I: IntoIterator<Item = GReal>,
{
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in xs {
        let t = x.exponent;
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    GReal::raw(sum + comp)
}

impl PartialEq for GReal {
    fn eq(&self, other: &Self) -> bool {
        self.exponent == other.exponent
    }
}

impl Eq for GReal {}

impl PartialOrd for GReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exponent.total_cmp(&other.exponent)
    }
}

impl Hash for GReal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exponent.to_bits().hash(state);
    }
}

impl Default for GReal {
    fn default() -> Self {
        GReal::ZERO
    }
}

impl Add for GReal {
    type Output = GReal;
    fn add(self, rhs: GReal) -> GReal {
        self.gadd(rhs)
    }
}

impl AddAssign for GReal {
    fn add_assign(&mut self, rhs: GReal) {
        *self = self.gadd(rhs);
    }
}

impl Sub for GReal {
    type Output = GReal;
    fn sub(self, rhs: GReal) -> GReal {
        self.gsub(rhs)
    }
}

impl SubAssign for GReal {
    fn sub_assign(&mut self, rhs: GReal) {
        *self = self.gsub(rhs);
    }
}

impl Mul for GReal {
    type Output = GReal;
    fn mul(self, rhs: GReal) -> GReal {
        self.gmul(rhs)
    }
}

impl Neg for GReal {
    type Output = GReal;
    fn neg(self) -> GReal {
        self.gneg()
    }
}

impl Sum for GReal {
    fn sum<I: Iterator<Item = GReal>>(iter: I) -> GReal {
        gsum(iter)
    }
}

impl<'a> Sum<&'a GReal> for GReal {
    fn sum<I: Iterator<Item = &'a GReal>>(iter: I) -> GReal {
        gsum(iter.copied())
    }
}

/// Comparison threshold in exponent units.
///
/// Two geometric reals are equal under `tau` when their exponents differ by
/// at most `tau`. The geometric epsilon of a Cauchy-style bound is `e^tau`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    tau: f64,
}

impl Tolerance {
    pub const EXACT: Tolerance = Tolerance { tau: 0.0 };
    pub const DEFAULT: Tolerance = Tolerance { tau: 1e-9 };

    pub fn new(tau: f64) -> Result<Self> {
        if tau.is_finite() && tau >= 0.0 {
            Ok(Tolerance { tau: tau + 0.0 })
        } else {
            Err(Error::Domain("tolerance must be finite and non-negative"))
        }
    }

    /// The tolerance whose geometric epsilon is `eps` (requires `eps ≥ e^0`).
    pub fn from_epsilon(eps: GReal) -> Result<Self> {
        Self::new(eps.exponent())
    }

    pub fn tau(self) -> f64 {
        self.tau
    }

    pub fn epsilon(self) -> GReal {
        GReal::raw(self.tau)
    }

    pub fn eq(self, x: GReal, y: GReal) -> bool {
        (x.exponent - y.exponent).abs() <= self.tau
    }

    /// Whether `x` is within tolerance of geometric zero.
    pub fn is_zero(self, x: GReal) -> bool {
        x.exponent.abs() <= self.tau
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::DEFAULT
    }
}
