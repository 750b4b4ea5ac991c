//! Fundamental-matrix conjugation between a perturbed Airy equation and the
//! Airy equation itself.
//!
//! With `psi~(t; mu) = psi(mu^2 t, mu^3)` the equations `u'' = (t + mu psi~) u`
//! and `u'' = t u` share initial data at 0; the matrix `Q = F F0^-1` of their
//! fundamental systems is analytic, has determinant 1 (unit Wronskians) and
//! reduces to the identity at `mu = 0`. Expanded in `(t, mu)` its monomials
//! obey a mod-3 grading equivalent to `P = C Q C^-1` containing only integer
//! powers of the original small parameter.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::{Result, C64};

/// Truncated bivariate series `sum c[i][j] t^i mu^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bivariate {
    pub t_order: usize,
    pub mu_order: usize,
    pub c: Vec<Vec<C64>>,
}

impl Bivariate {
    pub fn zero(t_order: usize, mu_order: usize) -> Self {
        Bivariate {
            t_order,
            mu_order,
            c: vec![vec![Complex64::new(0.0, 0.0); mu_order + 1]; t_order + 1],
        }
    }

    pub fn constant(v: C64, t_order: usize, mu_order: usize) -> Self {
        let mut b = Self::zero(t_order, mu_order);
        b.c[0][0] = v;
        b
    }

    pub fn coeff(&self, i: usize, j: usize) -> C64 {
        self.c
            .get(i)
            .and_then(|r| r.get(j))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.t_order.min(o.t_order), self.mu_order.min(o.mu_order));
        for i in 0..=out.t_order {
            for j in 0..=out.mu_order {
                out.c[i][j] = self.coeff(i, j) + o.coeff(i, j);
            }
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.t_order.min(o.t_order), self.mu_order.min(o.mu_order));
        for i in 0..=out.t_order {
            for j in 0..=out.mu_order {
                out.c[i][j] = self.coeff(i, j) - o.coeff(i, j);
            }
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.t_order.min(o.t_order), self.mu_order.min(o.mu_order));
        for i1 in 0..=self.t_order.min(out.t_order) {
            for j1 in 0..=self.mu_order.min(out.mu_order) {
                let a = self.c[i1][j1];
                if a.norm() == 0.0 {
                    continue;
                }
                for i2 in 0..=(out.t_order - i1).min(o.t_order) {
                    for j2 in 0..=(out.mu_order - j1).min(o.mu_order) {
                        out.c[i1 + i2][j1 + j2] += a * o.c[i2][j2];
                    }
                }
            }
        }
        out
    }

    pub fn max_coeff(&self) -> f64 {
        let mut m = 0.0f64;
        for row in &self.c {
            for v in row {
                let n = v.norm();
                if n > m {
                    m = n;
                }
            }
        }
        m
    }
}

/// The conjugating matrix `Q(t; mu)` as four truncated bivariate series.
#[derive(Clone, Debug)]
pub struct WasowTransform {
    pub entries: [[Bivariate; 2]; 2],
}

impl WasowTransform {
    pub fn det(&self) -> Bivariate {
        self.entries[0][0]
            .mul(&self.entries[1][1])
            .sub(&self.entries[0][1].mul(&self.entries[1][0]))
    }

    /// Check the mod-3 exponent grading: with analytic `psi(x; eps)`, every
    /// monomial `mu^a t^b` satisfies `a = 2b (mod 3)` on the diagonal,
    /// `a = 2b + 1 (mod 3)` in entry (1,2) and `a = 2b - 1 (mod 3)` in
    /// entry (2,1) — i.e. the conjugated matrix has only integer powers of
    /// `eps = mu^3`. Returns the largest offending coefficient magnitude.
    pub fn grading_violation(&self) -> f64 {
        let mut worst = 0.0f64;
        for (r, row) in self.entries.iter().enumerate() {
            for (cidx, entry) in row.iter().enumerate() {
                let shift: i64 = match (r, cidx) {
                    (0, 1) => 1,
                    (1, 0) => -1,
                    _ => 0,
                };
                for (b, rowc) in entry.c.iter().enumerate() {
                    for (a, v) in rowc.iter().enumerate() {
                        let want = ((2 * b as i64 + shift) % 3 + 3) % 3;
                        if (a as i64) % 3 != want {
                            let n = v.norm();
                            if n > worst {
                                worst = n;
                            }
                        }
                    }
                }
            }
        }
        worst
    }
}

/// Solve `u'' = (t + mu psi~) u` and `u'' = t u` as power series in t with
/// coefficients polynomial in mu, and return `Q = F F0^-1`.
///
/// `psi` lists the coefficients of the analytic germ `psi(x; eps)` as
/// `(i, j, c)` for `c x^i eps^j`; the substitution `x = mu^2 t, eps = mu^3`
/// turns it into `psi~`.
pub fn wasow_transform(
    psi: &[(usize, usize, C64)],
    t_order: usize,
    mu_order: usize,
) -> Result<WasowTransform> {
    // mu * psi~ as t-coefficient rows over mu.
    let mut pert: Vec<Vec<C64>> = vec![vec![Complex64::new(0.0, 0.0); mu_order + 1]; t_order + 1];
    for &(i, j, c) in psi {
        let mu_pow = 2 * i + 3 * j + 1;
        if i <= t_order && mu_pow <= mu_order {
            pert[i][mu_pow] += c;
        }
    }
    let tn = t_order + 2;
    let f = fundamental_pair(&pert, tn, mu_order);
    let zero_pert: Vec<Vec<C64>> = vec![vec![Complex64::new(0.0, 0.0); mu_order + 1]; t_order + 1];
    let f0 = fundamental_pair(&zero_pert, tn, mu_order);
    // F0^{-1} = [[f0.d22, -f0.12], [-f0.21, f0.11]] since det F0 = 1.
    let inv = [
        [f0[1][1].clone(), neg(&f0[0][1])],
        [neg(&f0[1][0]), f0[0][0].clone()],
    ];
    let mut entries: Vec<Vec<Bivariate>> = Vec::with_capacity(2);
    for r in 0..2 {
        let mut row = Vec::with_capacity(2);
        for csel in 0..2 {
            let mut acc = Bivariate::zero(t_order, mu_order);
            for k in 0..2 {
                acc = acc.add(&f[r][k].mul(&inv[k][csel]));
            }
            row.push(acc);
        }
        entries.push(row);
    }
    let e10 = entries.remove(1);
    let e00 = entries.remove(0);
    let transform = WasowTransform {
        entries: [
            [e00[0].clone(), e00[1].clone()],
            [e10[0].clone(), e10[1].clone()],
        ],
    };
    // Construction invariant: Q reduces to the identity at mu = 0.
    for r in 0..2 {
        for cidx in 0..2 {
            let want = if r == cidx { 1.0 } else { 0.0 };
            let got = transform.entries[r][cidx].coeff(0, 0);
            if (got - want).norm() > 1e-9 {
                return Err(Error::Domain(
                    "conjugation does not reduce to the identity at mu = 0",
                ));
            }
        }
    }
    Ok(transform)
}

fn neg(b: &Bivariate) -> Bivariate {
    let mut out = b.clone();
    for row in out.c.iter_mut() {
        for v in row.iter_mut() {
            *v = -*v;
        }
    }
    out
}

/// Fundamental matrix [[v1, v2], [v1', v2']] for `u'' = (t + pert(t; mu)) u`
/// with initial data (1,0) and (0,1), as bivariate series.
fn fundamental_pair(pert: &[Vec<C64>], tn: usize, mu_order: usize) -> [[Bivariate; 2]; 2] {
    let v1 = series_solution(pert, tn, mu_order, true);
    let v2 = series_solution(pert, tn, mu_order, false);
    let d1 = t_derivative(&v1);
    let d2 = t_derivative(&v2);
    [[v1, v2], [d1, d2]]
}

fn series_solution(pert: &[Vec<C64>], tn: usize, mu_order: usize, first: bool) -> Bivariate {
    let mut a: Vec<Vec<C64>> = vec![vec![Complex64::new(0.0, 0.0); mu_order + 1]; tn + 3];
    if first {
        a[0][0] = Complex64::new(1.0, 0.0);
    } else {
        a[1][0] = Complex64::new(1.0, 0.0);
    }
    for n in 0..=tn {
        // (n+2)(n+1) a_{n+2} = a_{n-1} + sum_i pert_i * a_{n-i} (mu-convolved)
        let mut rhs = vec![Complex64::new(0.0, 0.0); mu_order + 1];
        if n >= 1 {
            rhs.clone_from_slice(&a[n - 1]);
        }
        for (i, prow) in pert.iter().enumerate() {
            if i > n {
                break;
            }
            for (j1, p) in prow.iter().enumerate() {
                if p.norm() == 0.0 {
                    continue;
                }
                for j2 in 0..=(mu_order - j1) {
                    let add = *p * a[n - i][j2];
                    rhs[j1 + j2] += add;
                }
            }
        }
        let den = ((n + 2) * (n + 1)) as f64;
        for j in 0..=mu_order {
            a[n + 2][j] = rhs[j] / den;
        }
    }
    let mut out = Bivariate::zero(tn, mu_order);
    for i in 0..=tn {
        out.c[i].clone_from_slice(&a[i][..=mu_order]);
    }
    out
}

fn t_derivative(b: &Bivariate) -> Bivariate {
    let mut out = Bivariate::zero(b.t_order, b.mu_order);
    for i in 0..b.t_order {
        for j in 0..=b.mu_order {
            out.c[i][j] = b.c[i + 1][j] * (i as f64 + 1.0);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_perturbation_gives_identity() {
        let q = wasow_transform(&[], 10, 6).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                let want = if r == c { 1.0 } else { 0.0 };
                let mut diff = q.entries[r][c].clone();
                diff.c[0][0] -= want;
                assert!(diff.max_coeff() < 1e-12);
            }
        }
    }

    #[test]
    fn determinant_is_one() {
        let one = Complex64::new(1.0, 0.0);
        let q = wasow_transform(&[(2, 0, one)], 14, 10).unwrap();
        let mut det = q.det();
        det.c[0][0] -= 1.0;
        assert!(
            det.max_coeff() < 1e-10,
            "det Q - 1 = {:.3e}",
            det.max_coeff()
        );
    }

    #[test]
    fn quadratic_perturbation_enters_at_mu5() {
        // psi(x; eps) = x^2 -> mu psi~ = mu^5 t^2.
        let one = Complex64::new(1.0, 0.0);
        let q = wasow_transform(&[(2, 0, one)], 12, 8).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                for j in 1..5usize {
                    for i in 0..=12usize {
                        assert!(
                            q.entries[r][c].coeff(i, j).norm() < 1e-13,
                            "unexpected mu^{j} t^{i} term in entry ({r},{c})"
                        );
                    }
                }
            }
        }
        // mu^5 slice is nonzero somewhere.
        let mut seen = 0.0f64;
        for i in 0..=12usize {
            seen = crate::fmath::max(seen, q.entries[0][0].coeff(i, 5).norm());
        }
        assert!(seen > 1e-6);
    }

    #[test]
    fn constant_eps_perturbation_enters_at_mu4() {
        // psi(x; eps) = eps -> mu psi~ = mu^4.
        let one = Complex64::new(1.0, 0.0);
        let q = wasow_transform(&[(0, 1, one)], 10, 6).unwrap();
        for j in 1..4usize {
            for i in 0..=10usize {
                assert!(q.entries[0][0].coeff(i, j).norm() < 1e-13);
            }
        }
        let mut seen = 0.0f64;
        for i in 0..=10usize {
            seen = crate::fmath::max(seen, q.entries[0][0].coeff(i, 4).norm());
        }
        assert!(seen > 1e-6);
    }

    #[test]
    fn grading_invariant_for_quadratic_psi() {
        let one = Complex64::new(1.0, 0.0);
        let q = wasow_transform(&[(2, 0, one)], 16, 10).unwrap();
        assert!(q.grading_violation() < 1e-12);
    }
}
