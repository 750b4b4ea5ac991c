//! Truncated graded series `sum_n c_n var^(gamma + n/L)`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::scalar::Scalar;
use crate::Result;

/// The expansion variable of a series, with its base point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    /// t near 0
    T0,
    /// s = 1 - t near 0
    S0,
    /// 1/t near t = infinity
    InvT,
    /// z near 0
    Z0,
    /// y near 0
    Y0,
    /// x near 0
    X0,
}

/// A truncated series on the exponent lattice `gamma + n/L`.
///
/// `coeffs[n]` multiplies `var^(gamma + n/denom)`; the stored window is the
/// *reliable* part: coefficients beyond it are unknown, coefficients below
/// `gamma` are exactly zero. Binary operations compute the resulting
/// reliable window pessimistically.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedSeries<K> {
    pub var: Var,
    pub denom: u32,
    pub gamma: K,
    pub coeffs: Vec<K>,
}

impl<K: Scalar> GradedSeries<K> {
    /// Construct and normalize: leading exact zeros are stripped so that the
    /// stored `gamma` carries a nonzero first coefficient unless the series
    /// is identically zero.
    pub fn new(var: Var, denom: u32, gamma: K, coeffs: Vec<K>) -> Self {
        let mut s = GradedSeries {
            var,
            denom,
            gamma,
            coeffs,
        };
        s.normalize();
        s
    }

    /// Construct without stripping (arithmetic results keep cancellation
    /// zeros so truncation windows stay honest).
    pub fn raw(var: Var, denom: u32, gamma: K, coeffs: Vec<K>) -> Self {
        GradedSeries {
            var,
            denom,
            gamma,
            coeffs,
        }
    }

    pub fn zero_window(var: Var, denom: u32, gamma: K, window: usize) -> Self {
        GradedSeries {
            var,
            denom,
            gamma,
            coeffs: vec![K::zero(); window],
        }
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) | None => {}
            Some(k) => {
                self.gamma = self.gamma.clone() + K::from_ratio(k as i64, self.denom as i64);
                self.coeffs.drain(0..k);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Number of reliable coefficients.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of coefficient `n`.
    pub fn exponent(&self, n: usize) -> K {
        self.gamma.clone() + K::from_ratio(n as i64, self.denom as i64)
    }

    pub fn coeff(&self, n: usize) -> K {
        self.coeffs.get(n).cloned().unwrap_or_else(K::zero)
    }

    /// Multiply every term by `var^(steps/denom)`.
    pub fn shift_exponent_steps(&self, steps: i64) -> Self {
        let mut out = self.clone();
        out.gamma = out.gamma + K::from_ratio(steps, self.denom as i64);
        out
    }

    /// Refine the lattice to denominator `new_denom` (a multiple of the
    /// current one), spreading coefficients with zeros in between.
    pub fn with_denom(&self, new_denom: u32) -> Self {
        assert!(
            new_denom.is_multiple_of(self.denom),
            "lattice refinement must be integral"
        );
        let f = (new_denom / self.denom) as usize;
        if f == 1 {
            return self.clone();
        }
        let mut coeffs = vec![K::zero(); self.coeffs.len().saturating_sub(1) * f + 1];
        if self.coeffs.is_empty() {
            coeffs.clear();
        }
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs[n * f] = c.clone();
        }
        GradedSeries {
            var: self.var,
            denom: new_denom,
            gamma: self.gamma.clone(),
            coeffs,
        }
    }

    pub fn truncate(&self, window: usize) -> Self {
        let mut out = self.clone();
        out.coeffs.truncate(window);
        out
    }

    pub fn scale(&self, s: &K) -> Self {
        GradedSeries {
            var: self.var,
            denom: self.denom,
            gamma: self.gamma.clone(),
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-K::one())
    }

    /// Euler derivative `D = var * d/dvar`: multiplies each coefficient by
    /// its exponent.
    pub fn euler_derivative(&self) -> Self {
        let mut out = self.clone();
        for (n, c) in out.coeffs.iter_mut().enumerate() {
            let e = self.gamma.clone() + K::from_ratio(n as i64, self.denom as i64);
            *c = c.clone() * e;
        }
        out
    }

    fn common_lattice(&self, other: &Self) -> Result<(Self, Self)> {
        if self.var != other.var {
            return Err(Error::VariableMismatch);
        }
        let l = lcm(self.denom as u64, other.denom as u64);
        if l > u32::MAX as u64 {
            return Err(Error::LatticeMismatch);
        }
        Ok((self.with_denom(l as u32), other.with_denom(l as u32)))
    }

    /// Offset of `other.gamma` relative to `self.gamma` in lattice steps,
    /// assuming equal denominators.
    fn gamma_offset(&self, other: &Self) -> Result<i64> {
        let d = (other.gamma.clone() - self.gamma.clone()) * K::from_i64(self.denom as i64);
        d.nearest_i64().ok_or(Error::LatticeMismatch)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common_lattice(other)?;
        if a.is_empty() {
            return Ok(b);
        }
        if b.is_empty() {
            return Ok(a);
        }
        let d = a.gamma_offset(&b)?; // b.gamma = a.gamma + d steps
        let (base, lo, hi, off_lo, off_hi) = if d >= 0 {
            (a.gamma.clone(), &a, &b, 0i64, d)
        } else {
            (b.gamma.clone(), &b, &a, 0i64, -d)
        };
        // Reliable window end: min of both ends, measured from `base`.
        let end_lo = off_lo + lo.coeffs.len() as i64 - 1;
        let end_hi = off_hi + hi.coeffs.len() as i64 - 1;
        let end = end_lo.min(end_hi);
        if end < 0 {
            return Ok(GradedSeries::raw(a.var, a.denom, base, Vec::new()));
        }
        let mut coeffs = vec![K::zero(); end as usize + 1];
        for (n, c) in lo.coeffs.iter().enumerate() {
            let k = off_lo + n as i64;
            if (0..=end).contains(&k) {
                coeffs[k as usize] = coeffs[k as usize].clone() + c.clone();
            }
        }
        for (n, c) in hi.coeffs.iter().enumerate() {
            let k = off_hi + n as i64;
            if (0..=end).contains(&k) {
                coeffs[k as usize] = coeffs[k as usize].clone() + c.clone();
            }
        }
        Ok(GradedSeries::raw(a.var, a.denom, base, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Product, truncated at the minimum resulting reliable order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common_lattice(other)?;
        let gamma = a.gamma.clone() + b.gamma.clone();
        if a.is_empty() || b.is_empty() {
            return Ok(GradedSeries::raw(a.var, a.denom, gamma, Vec::new()));
        }
        let window = a.coeffs.len().min(b.coeffs.len());
        let mut coeffs = vec![K::zero(); window];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if i >= window {
                break;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if i + j >= window {
                    break;
                }
                coeffs[i + j] = coeffs[i + j].clone() + ca.clone() * cb.clone();
            }
        }
        Ok(GradedSeries::raw(a.var, a.denom, gamma, coeffs))
    }

    /// Largest coefficient magnitude (0 for the empty series).
    pub fn max_coeff_magnitude(&self) -> f64 {
        let mut m = 0.0;
        for c in &self.coeffs {
            let v = c.magnitude();
            if v > m {
                m = v;
            }
        }
        m
    }
}

impl GradedSeries<Complex64> {
    /// Evaluate at `x` using principal branches for the fractional powers.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        if self.coeffs.is_empty() {
            return Complex64::new(0.0, 0.0);
        }
        let step = x.powf(1.0 / self.denom as f64);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * step + c;
        }
        acc * x.powc(self.gamma)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn rs(gamma: Rat, c: &[i64]) -> GradedSeries<Rat> {
        GradedSeries::new(Var::T0, 1, gamma, c.iter().map(|&n| Rat::int(n)).collect())
    }

    #[test]
    fn constructor_normalizes_leading_zeros() {
        let s = rs(Rat::int(0), &[0, 0, 3, 1]);
        assert_eq!(s.gamma, Rat::int(2));
        assert_eq!(s.coeffs.len(), 2);
    }

    #[test]
    fn add_respects_windows() {
        // a = t^0 (1 + t + t^2), b = t^1 (1 + t): sum reliable through t^2.
        let a = rs(Rat::int(0), &[1, 1, 1]);
        let b = rs(Rat::int(1), &[1, 1]);
        let c = a.add(&b).unwrap();
        assert_eq!(c.gamma, Rat::int(0));
        assert_eq!(c.coeffs, vec![Rat::int(1), Rat::int(2), Rat::int(2)]);
    }

    #[test]
    fn mul_truncates_to_min_window() {
        let a = rs(Rat::int(0), &[1, 1, 1, 1]);
        let b = rs(Rat::int(0), &[1, -1]);
        let c = a.mul(&b).unwrap();
        assert_eq!(c.coeffs.len(), 2);
        assert_eq!(c.coeffs, vec![Rat::int(1), Rat::int(0)]);
    }

    #[test]
    fn mixed_lattice_alignment() {
        let a = GradedSeries::new(Var::Z0, 2, Rat::ratio(1, 2), vec![Rat::int(1), Rat::int(2)]);
        let b = GradedSeries::new(Var::Z0, 1, Rat::int(1), vec![Rat::int(5)]);
        let c = a.add(&b).unwrap();
        assert_eq!(c.denom, 2);
        assert_eq!(c.gamma, Rat::ratio(1, 2));
        // exponents 1/2 and 1: coefficients 1, 2+5; window ends at b's end (exp 1).
        assert_eq!(c.coeffs, vec![Rat::int(1), Rat::int(7)]);
    }

    #[test]
    fn euler_derivative_multiplies_by_exponent() {
        let s = GradedSeries::new(Var::T0, 2, Rat::ratio(1, 2), vec![Rat::int(4), Rat::int(4)]);
        let d = s.euler_derivative();
        assert_eq!(d.coeffs, vec![Rat::int(2), Rat::int(4)]);
    }

    #[test]
    fn complex_eval_geometric() {
        let s = GradedSeries::new(
            Var::T0,
            1,
            Complex64::new(0.0, 0.0),
            vec![Complex64::new(1.0, 0.0); 60],
        );
        let x = Complex64::new(0.25, 0.0);
        let got = s.eval(x);
        assert!((got - Complex64::new(4.0 / 3.0, 0.0)).norm() < 1e-12);
    }
}
