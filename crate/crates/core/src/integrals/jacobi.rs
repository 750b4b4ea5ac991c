//! Gauss-Jacobi quadrature on [0, 1] for weights `(1-tau)^a tau^b`.
//!
//! Nodes and weights come from the Golub-Welsch eigenvalue method: the
//! symmetric tridiagonal Jacobi matrix of the monic orthogonal-polynomial
//! recurrence is diagonalized with an implicit-shift QL sweep that also
//! accumulates the first eigenvector components.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::fmath;
use crate::special::gamma;
use crate::{Result, C64};

/// Quadrature data: `integral over [0,1] of f(tau) (1-tau)^a tau^b dtau
/// ~ sum w_i f(tau_i)`.
#[derive(Clone, Debug)]
pub struct GaussJacobi {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub alpha: f64,
    pub beta: f64,
}

impl GaussJacobi {
    pub fn apply<F: FnMut(f64) -> C64>(&self, mut f: F) -> C64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(*x) * *w;
        }
        acc
    }
}

/// Build an n-point rule for the weight `(1-tau)^a tau^b` on [0, 1]
/// (exponents must exceed -1).
pub fn gauss_jacobi_01(n: usize, a: f64, b: f64) -> Result<GaussJacobi> {
    if !(a > -1.0 && b > -1.0) {
        return Err(Error::Domain("Jacobi weight exponents must exceed -1"));
    }
    if n == 0 {
        return Err(Error::Domain("quadrature needs at least one node"));
    }
    // Monic Jacobi recurrence on [-1, 1] with weight (1-x)^a (1+x)^b.
    let mut diag = vec![0.0f64; n];
    let mut off = vec![0.0f64; n];
    let ab = a + b;
    diag[0] = (b - a) / (ab + 2.0);
    for k in 1..n {
        let kf = k as f64;
        let den = (2.0 * kf + ab) * (2.0 * kf + ab + 2.0);
        diag[k] = (b * b - a * a) / den;
        let beta_k = if k == 1 {
            4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0))
        } else {
            4.0 * kf * (kf + a) * (kf + b) * (kf + ab)
                / ((2.0 * kf + ab)
                    * (2.0 * kf + ab)
                    * (2.0 * kf + ab + 1.0)
                    * (2.0 * kf + ab - 1.0))
        };
        off[k - 1] = fmath::sqrt(beta_k);
    }
    // Total mass mu0 = 2^{a+b+1} B(a+1, b+1).
    let mu0 = fmath::powf(2.0, ab + 1.0)
        * (gamma(Complex64::new(a + 1.0, 0.0))? * gamma(Complex64::new(b + 1.0, 0.0))?
            / gamma(Complex64::new(ab + 2.0, 0.0))?)
        .re;
    let mut z = vec![0.0f64; n];
    z[0] = 1.0;
    tql_implicit(&mut diag, &mut off, &mut z)?;
    // Sort nodes ascending, map [-1,1] -> [0,1] and scale weights.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
    let scale = fmath::powf(2.0, -ab - 1.0);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for &i in &order {
        nodes.push((1.0 + diag[i]) / 2.0);
        weights.push(mu0 * z[i] * z[i] * scale);
    }
    Ok(GaussJacobi {
        nodes,
        weights,
        alpha: a,
        beta: b,
    })
}

/// Implicit-shift QL on a symmetric tridiagonal matrix, accumulating the
/// first row of the eigenvector matrix into `z`.
fn tql_implicit(d: &mut [f64], e: &mut [f64], z: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    // e[i] couples i and i+1; e[n-1] is scratch.
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = fmath::abs(d[m]) + fmath::abs(d[m + 1]);
                if fmath::abs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::RootFinding(alloc::string::String::from(
                    "tridiagonal QL did not converge",
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = fmath::hypot(g, 1.0);
            let sign_r = if g >= 0.0 {
                fmath::abs(r)
            } else {
                -fmath::abs(r)
            };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut i = m;
            while i > l {
                i -= 1;
                let mut f = s * e[i];
                let b = c * e[i];
                r = fmath::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if r == 0.0 && i > l {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beta_fn(x: f64, y: f64) -> f64 {
        let g = |v: f64| gamma(Complex64::new(v, 0.0)).unwrap().re;
        g(x) * g(y) / g(x + y)
    }

    #[test]
    fn moments_match_beta_function() {
        // int tau^j (1-tau)^a tau^b dtau = B(j + b + 1, a + 1)
        for &(a, b) in &[(0.0, 0.0), (0.5, 0.0), (2.3, -0.4), (-0.5, 1.7)] {
            let rule = gauss_jacobi_01(20, a, b).unwrap();
            for j in 0..12usize {
                let got = rule
                    .apply(&|t| Complex64::new(fmath::powi(t, j as i32), 0.0))
                    .re;
                let want = beta_fn(j as f64 + b + 1.0, a + 1.0);
                assert!(
                    fmath::abs(got - want) < 1e-12 * (1.0 + want.abs()),
                    "a={a} b={b} j={j}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn legendre_special_case() {
        // a = b = 0 is plain Gauss-Legendre on [0,1]: int exp(t) = e - 1.
        let rule = gauss_jacobi_01(12, 0.0, 0.0).unwrap();
        let got = rule.apply(&|t| Complex64::new(fmath::exp(t), 0.0)).re;
        assert!(fmath::abs(got - (core::f64::consts::E - 1.0)) < 1e-13);
    }

    #[test]
    fn endpoint_singular_weight() {
        // int (1-t)^{-1/2} cos(t) dt via 24 nodes vs a reference value.
        let rule = gauss_jacobi_01(24, -0.5, 0.0).unwrap();
        let got = rule.apply(&|t| Complex64::new(fmath::cos(t), 0.0)).re;
        // Reference by substitution u = sqrt(1-t): 2 int_0^1 cos(1-u^2) du,
        // computed with a fine midpoint rule.
        let mut want = 0.0;
        let m = 400_000;
        for k in 0..m {
            let u = (k as f64 + 0.5) / m as f64;
            want += fmath::cos(1.0 - u * u);
        }
        want *= 2.0 / m as f64;
        assert!(fmath::abs(got - want) < 1e-9, "{got} vs {want}");
    }

    #[test]
    fn invalid_exponent_rejected() {
        assert!(gauss_jacobi_01(8, -1.0, 0.0).is_err());
    }
}
