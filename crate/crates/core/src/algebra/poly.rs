//! Polynomials in the Euler derivative, stored in the monomial basis.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::Scalar;

/// `p_0 + p_1 D + ... + p_d D^d` with coefficients in `K`.
///
/// Trailing zero coefficients are stripped on construction, so `degree`
/// is meaningful; the zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerPolynomial<K> {
    coeffs: Vec<K>,
}

impl<K: Scalar> EulerPolynomial<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        EulerPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        EulerPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: K) -> Self {
        EulerPolynomial::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    /// The bare Euler derivative `D`.
    pub fn euler() -> Self {
        EulerPolynomial::new(vec![K::zero(), K::one()])
    }

    /// Monic product `prod (D - roots[i])`.
    pub fn monic_from_roots(roots: &[K]) -> Self {
        let mut p = Self::one();
        for r in roots {
            p = p.mul(&EulerPolynomial::new(vec![-r.clone(), K::one()]));
        }
        p
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(K::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(K::zero);
            out.push(a + b);
        }
        EulerPolynomial::new(out)
    }

    pub fn neg(&self) -> Self {
        EulerPolynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, s: &K) -> Self {
        EulerPolynomial::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        EulerPolynomial::new(out)
    }

    /// `P(D + c)`, the reordering shift `D o var^c = var^c o (D + c)`.
    pub fn shift_arg(&self, c: &K) -> Self {
        // Horner: fold from the top coefficient, multiplying by (x + c).
        let mut acc = Self::zero();
        let shift = EulerPolynomial::new(vec![c.clone(), K::one()]);
        for k in self.coeffs.iter().rev() {
            acc = acc.mul(&shift).add(&Self::constant(k.clone()));
        }
        acc
    }

    /// Formal derivative with respect to the argument.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.clone() * K::from_i64(i as i64));
        }
        EulerPolynomial::new(out)
    }

    /// k-th derivative divided by k! (the coefficient of `h^k` in `P(x+h)`).
    pub fn taylor_coeff(&self, x: &K, k: usize) -> K {
        // Direct binomial extraction keeps rational mode exact.
        let mut acc = K::zero();
        for (i, c) in self.coeffs.iter().enumerate().skip(k) {
            // C(i, k) * c_i * x^(i-k)
            let mut binom = K::one();
            for j in 0..k {
                binom = binom * K::from_i64((i - j) as i64) / K::from_i64((j + 1) as i64);
            }
            let mut pw = K::one();
            for _ in 0..(i - k) {
                pw = pw * x.clone();
            }
            acc = acc + binom * c.clone() * pw;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;
    use num_complex::Complex64;

    #[test]
    fn monic_product_and_eval() {
        // D(D+1)(D-2) at D=3: 3*4*1 = 12
        let p = EulerPolynomial::monic_from_roots(&[Rat::int(0), Rat::int(-1), Rat::int(2)]);
        assert_eq!(p.eval(&Rat::int(3)), Rat::int(12));
        assert_eq!(p.degree(), 3);
    }

    #[test]
    fn shift_matches_eval() {
        let p = EulerPolynomial::new(vec![Rat::int(1), Rat::int(-3), Rat::int(2)]);
        let q = p.shift_arg(&Rat::ratio(1, 2));
        for x in [-2i64, 0, 5] {
            let lhs = q.eval(&Rat::int(x));
            let rhs = p.eval(&(Rat::int(x) + Rat::ratio(1, 2)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn taylor_coeff_recovers_shift() {
        let p = EulerPolynomial::new(vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.5),
        ]);
        let x = Complex64::new(0.7, -0.2);
        // P(x + h) = sum taylor_coeff(x, k) h^k; check against shift_arg.
        let shifted = p.shift_arg(&x);
        for k in 0..4 {
            let want = shifted.coeffs().get(k).cloned().unwrap_or_default();
            let got = p.taylor_coeff(&x, k);
            assert!((want - got).norm() < 1e-12);
        }
    }
}
