//! Coefficient fields for the series/operator algebra.
//!
//! Everything structural (series, Euler polynomials, operators, Frobenius
//! recurrences) is generic over [`Scalar`]. Two fields are provided:
//! `Complex64` for evaluation and [`Rat`] (arbitrary-precision rationals)
//! for exact identity tests. Rational mode exists because typo adjudication
//! needs exactness; evaluation needs speed.

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::fmath;

/// Tolerance for recognizing integers in floating-point lattice arithmetic.
const INT_TOL: f64 = 1e-9;

/// A commutative field usable as series/operator coefficients.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Sized
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// num/den as an element of the field. `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// |x| as f64 (approximate for rationals). Used for residual norms and
    /// pivoting decisions only, never for exact logic.
    fn magnitude(&self) -> f64;
    /// The nearest integer if the value is one (within tolerance for
    /// floating-point scalars, exactly for rationals).
    fn nearest_i64(&self) -> Option<i64>;
    /// Relative magnitude below which a coefficient is considered rounding
    /// noise (None for exact fields: exact zeros are the only zeros).
    fn noise_floor() -> Option<f64> {
        None
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn magnitude(&self) -> f64 {
        fmath::hypot(self.re, self.im)
    }

    fn nearest_i64(&self) -> Option<i64> {
        if fmath::abs(self.im) > INT_TOL {
            return None;
        }
        let r = fmath::round(self.re);
        if fmath::abs(self.re - r) > INT_TOL || fmath::abs(r) > 9.0e15 {
            return None;
        }
        Some(r as i64)
    }

    fn noise_floor() -> Option<f64> {
        Some(1e-9)
    }
}

/// Exact rational scalar (a thin wrapper so we can implement by-value ops).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat(self.0 + rhs.0)
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        Rat(self.0 - rhs.0)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat(self.0 * rhs.0)
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        Rat(self.0 / rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }

    fn one() -> Self {
        Rat::int(1)
    }

    fn from_i64(n: i64) -> Self {
        Rat::int(n)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rat::ratio(num, den)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn magnitude(&self) -> f64 {
        fmath::abs(self.to_f64())
    }

    fn nearest_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_arithmetic_is_exact() {
        let a = Rat::ratio(1, 3);
        let b = Rat::ratio(1, 6);
        assert_eq!(a.clone() + b.clone(), Rat::ratio(1, 2));
        assert_eq!(a.clone() * b, Rat::ratio(1, 18));
        assert_eq!(a.nearest_i64(), None);
        assert_eq!(Rat::ratio(14, 7).nearest_i64(), Some(2));
    }

    #[test]
    fn complex_nearest_integer() {
        let z = Complex64::new(3.0 + 1e-12, -1e-12);
        assert_eq!(z.nearest_i64(), Some(3));
        assert_eq!(Complex64::new(0.5, 0.0).nearest_i64(), None);
        assert_eq!(Complex64::new(1.0, 0.1).nearest_i64(), None);
    }
}
