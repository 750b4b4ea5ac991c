//! Connection coefficients: express a target function in a Frobenius basis
//! by matching value and derivatives at one interior point.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::basis::FrobeniusBasis;
use crate::algebra::LogStackSolution;
use crate::error::Error;
use crate::special::lu_solve;
use crate::{Result, C64};

/// Result of a connection solve.
#[derive(Clone, Debug)]
pub struct ConnectionData {
    pub coefficients: Vec<C64>,
    pub matching_point: C64,
    pub condition_number: f64,
    pub residual: f64,
}

/// Solve `target = sum c_j * basis_j` by matching the value and the first
/// n-1 derivatives at `point` (n = basis size). `target(point)` must return
/// `[f, f', ..., f^(n-1)]` with respect to the basis variable.
pub fn solve_connection(
    target: &dyn Fn(C64) -> Vec<C64>,
    basis: &FrobeniusBasis<C64>,
    point: C64,
) -> Result<ConnectionData> {
    let n = basis.solutions.len();
    if n == 0 {
        return Err(Error::SingularSystem);
    }
    let b = target(point);
    if b.len() < n {
        return Err(Error::Domain("target must supply n-1 derivatives"));
    }
    let mut a = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (j, sol) in basis.solutions.iter().enumerate() {
        let derivs = stack_derivatives(sol, point, n);
        for (i, row) in a.iter_mut().enumerate() {
            row[j] = derivs[i];
        }
    }
    let (coefficients, condition_number) = lu_solve(&a, &b[..n])?;
    // Residual of the square fit (roundoff scale).
    let mut residual = 0.0f64;
    for i in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..n {
            acc += a[i][j] * coefficients[j];
        }
        residual += (acc - b[i]).norm();
    }
    Ok(ConnectionData {
        coefficients,
        matching_point: point,
        condition_number,
        residual,
    })
}

/// `[f, f', ..., f^(count-1)]` of a log-stack solution at a point, via Euler
/// derivatives and the Stirling triangle `(x d/dx)^n = sum S2(n,k) x^k d^k`.
pub fn stack_derivatives(sol: &LogStackSolution<C64>, point: C64, count: usize) -> Vec<C64> {
    // Euler powers D^j f evaluated at the point.
    let mut euler_vals = Vec::with_capacity(count);
    let mut cur = sol.clone();
    euler_vals.push(cur.eval(point));
    for _ in 1..count {
        cur = cur.euler_derivative();
        euler_vals.push(cur.eval(point));
    }
    // D^j = sum_k S2(j, k) x^k f^(k): triangular solve for the f^(k).
    let s2 = stirling2(count);
    let mut out = vec![Complex64::new(0.0, 0.0); count];
    out[0] = euler_vals[0];
    let mut xpow = vec![Complex64::new(1.0, 0.0); count];
    for k in 1..count {
        xpow[k] = xpow[k - 1] * point;
    }
    for j in 1..count {
        let mut acc = euler_vals[j];
        for k in 1..j {
            acc -= xpow[k] * out[k] * s2[j][k] as f64;
        }
        out[j] = acc / xpow[j]; // S2(j, j) = 1
    }
    out
}

fn stirling2(n: usize) -> Vec<Vec<u64>> {
    let mut s = vec![vec![0u64; n]; n];
    if n > 0 {
        s[0][0] = 1;
    }
    for j in 1..n {
        for k in 1..=j {
            s[j][k] = k as u64 * s[j - 1][k] + s[j - 1][k - 1];
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GradedSeries, Var};
    use crate::fmath;

    #[test]
    fn stack_derivatives_of_a_polynomial() {
        // f = 1 + 2 s + 3 s^2: f' = 2 + 6 s, f'' = 6.
        let s = GradedSeries::new(
            Var::S0,
            1,
            Complex64::new(0.0, 0.0),
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(2.0, 0.0),
                Complex64::new(3.0, 0.0),
            ],
        );
        let sol = LogStackSolution::from_series(s);
        let x = Complex64::new(0.4, 0.0);
        let d = stack_derivatives(&sol, x, 3);
        assert!((d[0] - Complex64::new(1.0 + 0.8 + 0.48, 0.0)).norm() < 1e-13);
        assert!((d[1] - Complex64::new(2.0 + 2.4, 0.0)).norm() < 1e-12);
        assert!((d[2] - Complex64::new(6.0, 0.0)).norm() < 1e-11);
    }

    #[test]
    fn derivatives_see_the_log_branch() {
        // f = ln s: D f = 1, f' = 1/s.
        let one = GradedSeries::new(
            Var::S0,
            1,
            Complex64::new(0.0, 0.0),
            vec![Complex64::new(1.0, 0.0)],
        );
        let sol = LogStackSolution::new(vec![
            GradedSeries::zero_window(Var::S0, 1, Complex64::new(0.0, 0.0), 1),
            one,
        ])
        .unwrap();
        let x = Complex64::new(0.3, 0.0);
        let d = stack_derivatives(&sol, x, 2);
        assert!((d[0] - Complex64::new(fmath::ln(0.3), 0.0)).norm() < 1e-13);
        assert!((d[1] - Complex64::new(1.0 / 0.3, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn identity_connection() {
        // target = third basis element -> coefficients (0, 0, 1).
        let mk = |gamma: f64, c0: f64, c1: f64| {
            LogStackSolution::from_series(GradedSeries::new(
                Var::S0,
                1,
                Complex64::new(gamma, 0.0),
                vec![Complex64::new(c0, 0.0), Complex64::new(c1, 0.0)],
            ))
        };
        let basis = FrobeniusBasis {
            point: super::super::basis::ExpansionPoint::One,
            solutions: vec![mk(1.0, 1.0, 0.5), mk(2.0, 1.0, -0.25), mk(0.0, 1.0, 0.0)],
            indicial_roots: vec![],
        };
        let v3 = basis.solutions[2].clone();
        let target = move |s: C64| stack_derivatives(&v3, s, 3);
        let conn = solve_connection(&target, &basis, Complex64::new(0.5, 0.0)).unwrap();
        assert!(conn.coefficients[0].norm() < 1e-12);
        assert!(conn.coefficients[1].norm() < 1e-12);
        assert!((conn.coefficients[2] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(conn.residual < 1e-12);
        assert!(conn.condition_number >= 1.0);
    }
}
