//! Truncated Laurent jets in the root-deformation parameter mu.
//!
//! The nilpotent-parameter Frobenius construction perturbs an indicial root
//! `gamma -> gamma + mu` and runs the coefficient recurrence over these
//! jets; resonant lattice points contribute exact `mu` factors in the
//! denominators, which is where the poles (and ultimately the logarithms)
//! come from.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::Scalar;

/// `sum_i coeffs[i] mu^(min + i)` with a fixed coefficient window.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct MuJet<K> {
    pub min: i32,
    pub coeffs: Vec<K>,
}

impl<K: Scalar> MuJet<K> {
    pub fn zero(window: usize) -> Self {
        MuJet {
            min: 0,
            coeffs: vec![K::zero(); window],
        }
    }

    pub fn constant(c: K, window: usize) -> Self {
        let mut coeffs = vec![K::zero(); window];
        coeffs[0] = c;
        MuJet { min: 0, coeffs }
    }

    /// `c + mu`, the linear factor with constant part `c`. When `c` is an
    /// exact zero this is exactly `mu` (valuation 1).
    pub fn linear(c: K, window: usize) -> Self {
        let mut j = Self::constant(c, window);
        if j.coeffs.len() > 1 {
            j.coeffs[1] = K::one();
        }
        j.normalized()
    }

    /// From Taylor coefficients `sum tc[i] mu^i`.
    pub fn from_taylor(tc: &[K], window: usize) -> Self {
        let mut coeffs = vec![K::zero(); window];
        for (i, c) in tc.iter().take(window).enumerate() {
            coeffs[i] = c.clone();
        }
        MuJet { min: 0, coeffs }.normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Valuation (lowest mu power with nonzero coefficient), when nonzero.
    pub fn valuation(&self) -> Option<i32> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|k| self.min + k as i32)
    }

    /// Strip exact leading zeros (raising `min`) so pole orders are read
    /// off structurally; window length is preserved.
    fn normalized(mut self) -> Self {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => self,
            Some(k) => {
                self.min += k as i32;
                self.coeffs.drain(0..k);
                let w = self.coeffs.len() + k;
                self.coeffs.resize(w, K::zero());
                self
            }
            None => {
                self.min = 0;
                self
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let w = self.coeffs.len().max(other.coeffs.len());
        let min = self.min.min(other.min);
        let mut coeffs = vec![K::zero(); w];
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = (self.min - min) as usize + i;
            if k < w {
                coeffs[k] = coeffs[k].clone() + c.clone();
            }
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let k = (other.min - min) as usize + i;
            if k < w {
                coeffs[k] = coeffs[k].clone() + c.clone();
            }
        }
        MuJet { min, coeffs }.normalized()
    }

    pub fn neg(&self) -> Self {
        MuJet {
            min: self.min,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let w = self.coeffs.len().max(other.coeffs.len());
        if self.is_zero() || other.is_zero() {
            return Self::zero(w);
        }
        let mut coeffs = vec![K::zero(); w];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= w {
                    break;
                }
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        MuJet {
            min: self.min + other.min,
            coeffs,
        }
        .normalized()
    }

    /// Division; the divisor's leading window coefficient must be nonzero
    /// (guaranteed when denominators are assembled from linear root
    /// factors).
    pub fn div(&self, other: &Self) -> Self {
        let w = self.coeffs.len().max(other.coeffs.len());
        if self.is_zero() {
            return Self::zero(w);
        }
        debug_assert!(
            !other.coeffs[0].is_zero(),
            "jet division by zero leading coefficient"
        );
        let mut out = vec![K::zero(); w];
        let inv0 = K::one() / other.coeffs[0].clone();
        for k in 0..w {
            let mut acc = self.coeffs.get(k).cloned().unwrap_or_else(K::zero);
            for j in 1..=k {
                let b = other.coeffs.get(j).cloned().unwrap_or_else(K::zero);
                acc = acc - b * out[k - j].clone();
            }
            out[k] = acc * inv0.clone();
        }
        MuJet {
            min: self.min - other.min,
            coeffs: out,
        }
        .normalized()
    }

    /// Multiply by `mu^p`.
    pub fn shift(&self, p: i32) -> Self {
        MuJet {
            min: self.min + p,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Strip leading coefficients that sit below the field's noise floor
    /// relative to the largest coefficient (resonance/pole decisions in
    /// floating point must not be driven by rounding dirt; exact fields are
    /// untouched).
    pub fn weeded(&self) -> Self {
        let Some(floor) = K::noise_floor() else {
            return self.clone();
        };
        let scale = self
            .coeffs
            .iter()
            .map(|c| c.magnitude())
            .fold(0.0, crate::fmath::max);
        if scale == 0.0 {
            return self.clone();
        }
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            if c.magnitude() < floor * scale {
                *c = K::zero();
            } else {
                break;
            }
        }
        out.normalized()
    }

    /// Coefficient of `mu^k`.
    pub fn coeff(&self, k: i32) -> K {
        if k < self.min {
            return K::zero();
        }
        self.coeffs
            .get((k - self.min) as usize)
            .cloned()
            .unwrap_or_else(K::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    #[test]
    fn pole_bookkeeping() {
        // 1 / (mu (2 + mu)) has valuation -1 and expansion (1/2) mu^-1 - 1/4 + ...
        let num = MuJet::constant(Rat::int(1), 4);
        let den = MuJet::linear(Rat::int(0), 4).mul(&MuJet::linear(Rat::int(2), 4));
        let q = num.div(&den);
        assert_eq!(q.valuation(), Some(-1));
        assert_eq!(q.coeff(-1), Rat::ratio(1, 2));
        assert_eq!(q.coeff(0), Rat::ratio(-1, 4));
        assert_eq!(q.coeff(1), Rat::ratio(1, 8));
    }

    #[test]
    fn zero_over_pole_is_zero() {
        let num = MuJet::<Rat>::zero(4);
        let den = MuJet::linear(Rat::int(0), 4);
        assert!(num.div(&den).is_zero());
    }

    #[test]
    fn mul_div_roundtrip() {
        let a = MuJet::from_taylor(&[Rat::int(3), Rat::int(-1), Rat::ratio(1, 2)], 5);
        let b = MuJet::linear(Rat::int(5), 5);
        let p = a.mul(&b);
        let back = p.div(&b);
        for k in 0..3 {
            assert_eq!(back.coeff(k), a.coeff(k));
        }
    }
}
