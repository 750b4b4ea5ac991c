//! Gamma/Beta/digamma machinery, Bernoulli numbers, symmetric polynomials,
//! and the determinant of a quadratic form restricted to a hyperplane.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::fmath;
use crate::scalar::{Rat, Scalar};
use crate::{Result, C64};

pub const PI: f64 = core::f64::consts::PI;
/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// Rational-coefficient approximation for Gamma (Pugh's variant of the
// Lanczos scheme, r = 10.900511, 11 terms; ~1e-14 relative on the right
// half-plane).
const GAMMA_DK: [f64; 11] = [
    2.485_740_891_387_535_5e-5,
    1.051_423_785_817_219_7,
    -3.456_870_972_220_162_5,
    4.512_277_094_668_948,
    -2.982_852_253_235_766_4,
    1.056_397_115_771_267,
    -1.954_287_731_916_458_7e-1,
    1.709_705_434_044_412e-2,
    -5.719_261_174_043_057e-4,
    4.633_994_733_599_057e-6,
    -2.719_949_084_886_077_2e-9,
];
const GAMMA_R: f64 = 10.900511;
const TWO_SQRT_E_OVER_PI: f64 = 1.860_382_734_205_265_7;

fn gamma_right_half(z: C64) -> C64 {
    let mut s = Complex64::new(GAMMA_DK[0], 0.0);
    for (i, d) in GAMMA_DK.iter().enumerate().skip(1) {
        s += d / (z + (i as f64 - 1.0));
    }
    let base = (z - 0.5 + GAMMA_R) / core::f64::consts::E;
    s * TWO_SQRT_E_OVER_PI * base.powc(z - 0.5)
}

/// Euler Gamma function for complex arguments.
///
/// Arguments with `Re z < 0.5` always route through the reflection identity
/// so the rational approximation is used on a single region.
pub fn gamma(z: C64) -> Result<C64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == fmath::floor(z.re) {
        return Err(Error::Pole("Gamma"));
    }
    if z.re < 0.5 {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        let s = (PI * z).sin();
        Ok(PI / (s * gamma_right_half(Complex64::new(1.0, 0.0) - z)))
    } else {
        Ok(gamma_right_half(z))
    }
}

/// Digamma: upward recurrence into `|z| > 12`, then the Bernoulli-number
/// asymptotic series truncated at n = 8.
pub fn digamma(z: C64) -> Result<C64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == fmath::floor(z.re) {
        return Err(Error::Pole("digamma"));
    }
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    // Reflect far-left arguments so the recurrence stays short:
    // psi(z) = psi(1 - z) - pi cot(pi z).
    if z.re < -6.0 {
        let cot = (PI * z).cos() / (PI * z).sin();
        acc -= PI * cot;
        z = Complex64::new(1.0, 0.0) - z;
    }
    while z.norm() <= 12.0 {
        acc -= 1.0 / z;
        z += 1.0;
    }
    let mut s = z.ln() - 0.5 / z;
    let z2 = 1.0 / (z * z);
    let mut zp = z2;
    for n in 1..=8u32 {
        let b = bernoulli_f64(2 * n as usize);
        s -= zp * (b / (2.0 * n as f64));
        zp *= z2;
    }
    Ok(acc + s)
}

/// Exact Bernoulli number B_{2n} via the defining convolution recurrence,
/// 2n <= 40.
pub fn bernoulli(two_n: usize) -> Result<Rat> {
    if two_n > 40 {
        return Err(Error::Domain("Bernoulli numbers supported for 2n <= 40"));
    }
    if two_n % 2 == 1 {
        return Ok(if two_n == 1 {
            Rat::ratio(-1, 2)
        } else {
            Rat::int(0)
        });
    }
    Ok(bernoulli_list(two_n).pop().unwrap())
}

/// B_0, B_1, ..., B_m (with B_1 = -1/2).
pub fn bernoulli_list(m: usize) -> Vec<Rat> {
    // sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1.
    let mut b = vec![Rat::int(1)];
    for n in 1..=m {
        let mut acc = Rat::int(0);
        let mut binom = Rat::int(1); // C(n+1, 0)
        for (j, bj) in b.iter().enumerate() {
            acc = acc + binom.clone() * bj.clone();
            // C(n+1, j+1) = C(n+1, j) * (n+1-j)/(j+1)
            binom = binom * Rat::int((n + 1 - j) as i64) / Rat::int((j + 1) as i64);
        }
        b.push(-acc / Rat::int((n + 1) as i64));
    }
    b
}

pub fn bernoulli_f64(two_n: usize) -> f64 {
    bernoulli(two_n).map(|r| r.to_f64()).unwrap_or(f64::NAN)
}

/// Elementary symmetric polynomials e_0..e_n of the given values, computed
/// by stable Horner updates on `prod (x + lambda_j)`.
pub fn elementary_symmetric<K: Scalar>(values: &[K]) -> Vec<K> {
    let mut e = vec![K::zero(); values.len() + 1];
    e[0] = K::one();
    for (j, lam) in values.iter().enumerate() {
        for k in (1..=j + 1).rev() {
            e[k] = e[k].clone() + lam.clone() * e[k - 1].clone();
        }
    }
    e
}

/// Complete homogeneous symmetric polynomial h_p(x, y) = sum_{k+l=p} x^k y^l.
pub fn complete_homogeneous_two<K: Scalar>(x: &K, y: &K, p: usize) -> K {
    let mut acc = K::zero();
    let mut xk = K::one();
    for k in 0..=p {
        let mut yl = K::one();
        for _ in 0..(p - k) {
            yl = yl * y.clone();
        }
        acc = acc + xk.clone() * yl;
        xk = xk * x.clone();
    }
    acc
}

/// Determinant of `sum lambda_j theta_j^2` restricted to `sum theta_j = 0`,
/// in the basis obtained by eliminating theta_1. Equals the q-th elementary
/// symmetric polynomial of the q+1 values.
pub fn restricted_quadform_det<K: Scalar>(lams: &[K]) -> Result<K> {
    if lams.len() < 2 {
        return Err(Error::Domain(
            "restricted determinant needs at least two values",
        ));
    }
    let e = elementary_symmetric(lams);
    Ok(e[lams.len() - 1].clone())
}

/// Oracle for [`restricted_quadform_det`]: substitute
/// `theta_1 = -theta_2 - ... - theta_{q+1}`, build the q x q matrix of the
/// substituted form explicitly and compute its determinant by LU.
pub fn brute_force_restricted_det(lams: &[C64]) -> Result<C64> {
    if lams.len() < 2 {
        return Err(Error::Domain(
            "restricted determinant needs at least two values",
        ));
    }
    let q = lams.len() - 1;
    // Form: lambda_1 (sum_{j>=2} theta_j)^2 + sum_{j>=2} lambda_j theta_j^2.
    let mut m = vec![vec![Complex64::new(0.0, 0.0); q]; q];
    for i in 0..q {
        for j in 0..q {
            m[i][j] = lams[0];
            if i == j {
                m[i][j] += lams[i + 1];
            }
        }
    }
    lu_det(m)
}

/// Determinant of a dense complex matrix by LU with partial pivoting.
pub fn lu_det(mut m: Vec<Vec<C64>>) -> Result<C64> {
    let n = m.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut piv = col;
        let mut best = m[col][col].norm();
        for r in col + 1..n {
            let v = m[r][col].norm();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= m[col][col];
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                let sub = f * m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    Ok(det)
}

/// Solve a dense complex linear system by LU with partial pivoting.
/// Returns the solution and the 1-norm condition number (computed from the
/// explicit inverse; systems here are tiny).
pub fn lu_solve(a: &[Vec<C64>], b: &[C64]) -> Result<(Vec<C64>, f64)> {
    let n = a.len();
    let mut m: Vec<Vec<C64>> = a.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let mut piv = col;
        let mut best = m[col][col].norm();
        for r in col + 1..n {
            let v = m[r][col].norm();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return Err(Error::SingularSystem);
        }
        if piv != col {
            m.swap(piv, col);
            perm.swap(piv, col);
        }
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            m[r][col] = f;
            for c in col + 1..n {
                let sub = f * m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    let x = lu_resolve(&m, &perm, b);
    let norm_a = one_norm(a);
    let mut norm_inv = 0.0f64;
    for k in 0..n {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[k] = Complex64::new(1.0, 0.0);
        let col = lu_resolve(&m, &perm, &e);
        let s: f64 = col.iter().map(|v| v.norm()).sum();
        if s > norm_inv {
            norm_inv = s;
        }
    }
    Ok((x, norm_a * norm_inv))
}

fn one_norm(a: &[Vec<C64>]) -> f64 {
    let n = a.len();
    let mut best = 0.0f64;
    for c in 0..n {
        let s: f64 = (0..n).map(|r| a[r][c].norm()).sum();
        if s > best {
            best = s;
        }
    }
    best
}

/// Forward/back substitution on a packed LU factorization.
fn lu_resolve(m: &[Vec<C64>], perm: &[usize], b: &[C64]) -> Vec<C64> {
    let n = m.len();
    let mut x: Vec<C64> = perm.iter().map(|&p| b[p]).collect();
    for col in 0..n {
        for r in col + 1..n {
            let sub = m[r][col] * x[col];
            x[r] -= sub;
        }
    }
    for col in (0..n).rev() {
        for r in col + 1..n {
            let sub = m[col][r] * x[r];
            x[col] -= sub;
        }
        x[col] /= m[col][col];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn gamma_factorial_and_half() {
        assert!((gamma(c(5.0)).unwrap() - c(24.0)).norm() < 1e-10);
        let sqrt_pi = fmath::sqrt(PI);
        assert!((gamma(c(0.5)).unwrap() - c(sqrt_pi)).norm() < 1e-12);
        assert!(gamma(c(-3.0)).is_err());
    }

    #[test]
    fn gamma_reflection_product() {
        // Gamma(1+l) Gamma(1-l) = pi l / sin(pi l) at l = 0.3.
        let l = 0.3;
        let lhs = gamma(c(1.0 + l)).unwrap() * gamma(c(1.0 - l)).unwrap();
        let rhs = PI * l / fmath::sin(PI * l);
        assert!((lhs - c(rhs)).norm() < 1e-13);
    }

    #[test]
    fn gamma_functional_equation_large_modulus() {
        let z = Complex64::new(20.0, 35.0);
        let a = gamma(z + 1.0).unwrap();
        let b = z * gamma(z).unwrap();
        assert!((a - b).norm() / a.norm() < 1e-12);
        let w = Complex64::new(-10.3, 4.0);
        let a = gamma(w + 1.0).unwrap();
        let b = w * gamma(w).unwrap();
        assert!((a - b).norm() / a.norm() < 1e-12);
    }

    #[test]
    fn digamma_values() {
        assert!((digamma(c(1.0)).unwrap() - c(-EULER_GAMMA)).norm() < 1e-12);
        assert!((digamma(c(2.0)).unwrap() - c(1.0 - EULER_GAMMA)).norm() < 1e-12);
        let z = Complex64::new(0.3, 0.7);
        let lhs = digamma(z + 1.0).unwrap();
        let rhs = digamma(z).unwrap() + 1.0 / z;
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn digamma_reflection_with_cot() {
        // psi(1+z) - psi(1-z) + pi cot(pi z) - 1/z = 0 on non-integer z.
        for &z in &[
            Complex64::new(0.37, 0.0),
            Complex64::new(2.6, 1.1),
            Complex64::new(-4.55, 0.2),
        ] {
            let lhs = digamma(1.0 + z).unwrap() - digamma(1.0 - z).unwrap()
                + PI * (PI * z).cos() / (PI * z).sin()
                - 1.0 / z;
            assert!(lhs.norm() < 1e-10, "z = {z}, lhs = {lhs}");
        }
    }

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(2).unwrap(), Rat::ratio(1, 6));
        assert_eq!(bernoulli(4).unwrap(), Rat::ratio(-1, 30));
        assert_eq!(bernoulli(6).unwrap(), Rat::ratio(1, 42));
        assert_eq!(bernoulli(12).unwrap(), Rat::ratio(-691, 2730));
        assert!(bernoulli(42).is_err());
    }

    #[test]
    fn restricted_det_examples() {
        let two = restricted_quadform_det(&[c(1.0), c(1.0)]).unwrap();
        assert!((two - c(2.0)).norm() < 1e-14);
        let three = restricted_quadform_det(&[c(1.0), c(1.0), c(1.0)]).unwrap();
        assert!((three - c(3.0)).norm() < 1e-14);
        let eleven = restricted_quadform_det(&[c(1.0), c(2.0), c(3.0)]).unwrap();
        assert!((eleven - c(11.0)).norm() < 1e-13);
        for lams in [
            vec![c(1.0), c(1.0)],
            vec![c(1.0), c(1.0), c(1.0)],
            vec![c(1.0), c(2.0), c(3.0)],
        ] {
            let a = restricted_quadform_det(&lams).unwrap();
            let b = brute_force_restricted_det(&lams).unwrap();
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn symmetric_identities_exact() {
        // e_k(l1..lk, lj) e_k(l1..l_{k+1}) - (l1...lk)^2
        //   = e_{k-1}(l1..lk) e_{k+1}(l1..l_{k+1}, lj)
        let l = [Rat::int(2), Rat::int(-3), Rat::int(5), Rat::int(7)];
        let k = 2usize;
        let lj = Rat::int(-4);
        let head: Vec<Rat> = l[..k].to_vec();
        let head1: Vec<Rat> = l[..k + 1].to_vec();
        let mut head_j = head.clone();
        head_j.push(lj.clone());
        let mut head1_j = head1.clone();
        head1_j.push(lj.clone());
        let e_head = elementary_symmetric(&head);
        let e_head1 = elementary_symmetric(&head1);
        let e_head_j = elementary_symmetric(&head_j);
        let e_head1_j = elementary_symmetric(&head1_j);
        let prod: Rat = head.iter().cloned().fold(Rat::int(1), |a, b| a * b);
        let lhs = e_head_j[k].clone() * e_head1[k].clone() - prod.clone() * prod.clone();
        let rhs = e_head[k - 1].clone() * e_head1_j[k + 1].clone();
        assert_eq!(lhs, rhs);
        // e_k(l1..l_{k+1}) - l1...lk = l_{k+1} e_{k-1}(l1..lk)
        let lhs2 = e_head1[k].clone() - prod;
        let rhs2 = l[k].clone() * e_head[k - 1].clone();
        assert_eq!(lhs2, rhs2);
    }

    #[test]
    fn h_p_generating_function() {
        // sum_{k+l<=P} x^k y^l/(k+l)! -> (x e^x - y e^y)/(x - y)
        let x = 0.4;
        let y = -0.3;
        let mut acc = 0.0;
        let mut fact = 1.0;
        for p in 0..=30usize {
            if p > 0 {
                fact *= p as f64;
            }
            let h = complete_homogeneous_two(&c(x), &c(y), p);
            acc += h.re / fact;
        }
        let want = (x * fmath::exp(x) - y * fmath::exp(y)) / (x - y);
        assert!(fmath::abs(acc - want) < 1e-12);
    }

    #[test]
    fn lu_solve_small_system() {
        let a = vec![vec![c(2.0), c(1.0)], vec![c(1.0), c(3.0)]];
        let b = vec![c(5.0), c(10.0)];
        let (x, cond) = lu_solve(&a, &b).unwrap();
        assert!((x[0] - c(1.0)).norm() < 1e-13);
        assert!((x[1] - c(3.0)).norm() < 1e-13);
        assert!(cond > 1.0 && cond < 10.0);
    }
}
