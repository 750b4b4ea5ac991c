//! Indicial-polynomial root finding with multiplicities, in both
//! coefficient fields.
//!
//! Floating point: Durand-Kerner iteration, cluster detection, and a Newton
//! polish on the (m-1)-th derivative for an m-fold cluster. Rational:
//! locate roots in f64, rationalize by continued fractions, verify exactly,
//! deflate exactly.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::fmath;
use crate::scalar::{Rat, Scalar};
use crate::{Result, C64};

/// Scalar fields over which indicial roots can be extracted.
pub trait IndicialField: Scalar {
    /// Roots with multiplicities of `sum coeffs[k] x^k`; multiplicities sum
    /// to the degree.
    fn poly_roots(coeffs: &[Self]) -> Result<Vec<(Self, usize)>>;
}

impl IndicialField for Complex64 {
    fn poly_roots(coeffs: &[Self]) -> Result<Vec<(Self, usize)>> {
        let mut c: Vec<C64> = coeffs.to_vec();
        while c.last().is_some_and(|v| v.norm() == 0.0) {
            c.pop();
        }
        if c.len() <= 1 {
            return Err(Error::RootFinding(String::from(
                "constant polynomial has no roots",
            )));
        }
        // Exact zero roots first (operators assembled from monic products
        // produce exact zero low coefficients).
        let mut zero_mult = 0usize;
        while c.first().is_some_and(|v| v.norm() == 0.0) {
            c.remove(0);
            zero_mult += 1;
        }
        let mut out: Vec<(C64, usize)> = Vec::new();
        if zero_mult > 0 {
            out.push((Complex64::new(0.0, 0.0), zero_mult));
        }
        let d = c.len() - 1;
        if d > 0 {
            let lead = *c.last().unwrap();
            let monic: Vec<C64> = c.iter().map(|v| v / lead).collect();
            let roots = durand_kerner(&monic)?;
            let clusters = cluster(&roots);
            for (center, mult) in clusters {
                let polished = polish(&monic, center, mult);
                out.push((polished, mult));
            }
        }
        Ok(out)
    }
}

fn poly_eval(c: &[C64], x: C64) -> C64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for v in c.iter().rev() {
        acc = acc * x + v;
    }
    acc
}

fn poly_derivative(c: &[C64]) -> Vec<C64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(k, v)| v * k as f64)
        .collect()
}

fn durand_kerner(monic: &[C64]) -> Result<Vec<C64>> {
    let d = monic.len() - 1;
    let radius = 1.0 + monic.iter().map(|v| v.norm()).fold(0.0, fmath::max);
    let mut z: Vec<C64> = (0..d)
        .map(|k| {
            Complex64::from_polar(
                0.5 * radius,
                2.0 * core::f64::consts::PI * k as f64 / d as f64 + 0.7,
            )
        })
        .collect();
    for _ in 0..600 {
        let mut max_step = 0.0f64;
        for k in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                // coincident iterates: nudge
                z[k] += Complex64::new(1e-6 * radius, 1e-6 * radius);
                continue;
            }
            let step = poly_eval(monic, z[k]) / denom;
            z[k] -= step;
            let s = step.norm();
            if s > max_step {
                max_step = s;
            }
        }
        if max_step < 1e-14 * radius {
            break;
        }
    }
    Ok(z)
}

fn cluster(roots: &[C64]) -> Vec<(C64, usize)> {
    let scale = 1.0 + roots.iter().map(|r| r.norm()).fold(0.0, fmath::max);
    let tol = 1e-5 * scale;
    let mut used = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let mut members = vec![roots[i]];
        used[i] = true;
        for j in i + 1..roots.len() {
            if !used[j] && (roots[j] - roots[i]).norm() < tol {
                members.push(roots[j]);
                used[j] = true;
            }
        }
        let centroid = members.iter().sum::<C64>() / members.len() as f64;
        out.push((centroid, members.len()));
    }
    out
}

/// Newton on the (mult-1)-th derivative: an m-fold root of p is a simple
/// root of p^(m-1), so the quadratic convergence is restored there.
fn polish(monic: &[C64], start: C64, mult: usize) -> C64 {
    let mut p: Vec<C64> = monic.to_vec();
    for _ in 1..mult {
        p = poly_derivative(&p);
    }
    let dp = poly_derivative(&p);
    let mut x = start;
    for _ in 0..40 {
        let f = poly_eval(&p, x);
        let d = poly_eval(&dp, x);
        if d.norm() == 0.0 {
            break;
        }
        let step = f / d;
        x -= step;
        if step.norm() < 1e-15 * (1.0 + x.norm()) {
            break;
        }
    }
    x
}

impl IndicialField for Rat {
    fn poly_roots(coeffs: &[Self]) -> Result<Vec<(Self, usize)>> {
        let mut c: Vec<Rat> = coeffs.to_vec();
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        if c.len() <= 1 {
            return Err(Error::RootFinding(String::from(
                "constant polynomial has no roots",
            )));
        }
        let degree = c.len() - 1;
        let mut out: Vec<(Rat, usize)> = Vec::new();
        let mut remaining = c;
        // Exact zero roots.
        let mut zero_mult = 0usize;
        while remaining.first().is_some_and(|v| v.is_zero()) {
            remaining.remove(0);
            zero_mult += 1;
        }
        if zero_mult > 0 {
            out.push((Rat::int(0), zero_mult));
        }
        // Locate the rest approximately and rationalize.
        while remaining.len() > 1 {
            let approx: Vec<C64> = remaining
                .iter()
                .map(|r| Complex64::new(r.to_f64(), 0.0))
                .collect();
            let found = <Complex64 as IndicialField>::poly_roots(&approx)?;
            let mut deflated = false;
            for (r, _) in &found {
                if fmath::abs(r.im) > 1e-7 {
                    continue;
                }
                if let Some(cand) = rationalize(r.re, 1_000_000) {
                    if eval_rat(&remaining, &cand).is_zero() {
                        let mut mult = 0usize;
                        while remaining.len() > 1 && eval_rat(&remaining, &cand).is_zero() {
                            remaining = deflate(&remaining, &cand);
                            mult += 1;
                        }
                        merge_root(&mut out, cand, mult);
                        deflated = true;
                        break;
                    }
                }
            }
            if !deflated {
                return Err(Error::RootFinding(format!(
                    "no rational root for a degree-{} factor in exact mode",
                    remaining.len() - 1
                )));
            }
        }
        let total: usize = out.iter().map(|(_, m)| m).sum();
        if total != degree {
            return Err(Error::RootFinding(String::from(
                "exact factorization incomplete",
            )));
        }
        Ok(out)
    }
}

fn merge_root(out: &mut Vec<(Rat, usize)>, r: Rat, mult: usize) {
    for (root, m) in out.iter_mut() {
        if *root == r {
            *m += mult;
            return;
        }
    }
    out.push((r, mult));
}

fn eval_rat(c: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::int(0);
    for v in c.iter().rev() {
        acc = acc * x.clone() + v.clone();
    }
    acc
}

fn deflate(c: &[Rat], root: &Rat) -> Vec<Rat> {
    // synthetic division by (x - root)
    let mut out = vec![Rat::int(0); c.len() - 1];
    let mut carry = Rat::int(0);
    for k in (0..c.len() - 1).rev() {
        carry = c[k + 1].clone() + carry * root.clone();
        out[k] = carry.clone();
    }
    out
}

/// Best rational approximation with bounded denominator (continued
/// fractions); returns None when no candidate reproduces x to ~1e-9.
fn rationalize(x: f64, max_den: i64) -> Option<Rat> {
    let mut a = x;
    let (mut h0, mut h1) = (1i64, fmath::floor(a) as i64);
    let (mut k0, mut k1) = (0i64, 1i64);
    a -= fmath::floor(a);
    for _ in 0..40 {
        if fmath::abs(h1 as f64 / k1 as f64 - x) < 1e-9 * (1.0 + fmath::abs(x)) {
            return Some(Rat::ratio(h1, k1));
        }
        if a.abs() < 1e-14 {
            break;
        }
        a = 1.0 / a;
        let ai = fmath::floor(a) as i64;
        a -= fmath::floor(a);
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    if fmath::abs(h1 as f64 / k1 as f64 - x) < 1e-9 * (1.0 + fmath::abs(x)) {
        Some(Rat::ratio(h1, k1))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_complex_roots() {
        // (x - 1)(x - 2)(x + 3i)
        let i3 = Complex64::new(0.0, 3.0);
        let one = Complex64::new(1.0, 0.0);
        let two = Complex64::new(2.0, 0.0);
        // expand
        let c = [
            one * two * (-i3) * (-1.0) * (-1.0) * (-1.0),
            one * two + one * (-(-i3)) * (-1.0) + two * (-(-i3)) * (-1.0),
            -(one + two + (-i3)),
            Complex64::new(1.0, 0.0),
        ];
        // simpler: just verify every reported root satisfies p ~ 0
        let roots = <Complex64 as IndicialField>::poly_roots(&c).unwrap();
        let total: usize = roots.iter().map(|(_, m)| m).sum();
        assert_eq!(total, 3);
        for (r, _) in roots {
            assert!(poly_eval(&c, r).norm() < 1e-9);
        }
    }

    #[test]
    fn triple_root_at_zero_is_exact() {
        // x^3
        let c = [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ];
        let roots = <Complex64 as IndicialField>::poly_roots(&c).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].1, 3);
        assert_eq!(roots[0].0.norm(), 0.0);
    }

    #[test]
    fn shifted_double_root_is_clustered() {
        // (x - 1/2)^2 (x + 2)
        let c = [
            Complex64::new(0.5, 0.0),
            Complex64::new(-1.75, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
        ];
        let roots = <Complex64 as IndicialField>::poly_roots(&c).unwrap();
        let mut found_double = false;
        for (r, m) in roots {
            if m == 2 {
                found_double = true;
                assert!((r - Complex64::new(0.5, 0.0)).norm() < 1e-9);
            }
        }
        assert!(found_double);
    }

    #[test]
    fn rational_roots_exact() {
        // 8 x^3 - 12 x^2 + 4 x = 4x (2x - 1)(x - 1)
        let c = [Rat::int(0), Rat::int(4), Rat::int(-12), Rat::int(8)];
        let mut roots = <Rat as IndicialField>::poly_roots(&c).unwrap();
        roots.sort_by(|a, b| a.0.to_f64().partial_cmp(&b.0.to_f64()).unwrap());
        assert_eq!(
            roots,
            vec![(Rat::int(0), 1), (Rat::ratio(1, 2), 1), (Rat::int(1), 1)]
        );
        // x^3 exactly
        let c = [Rat::int(0), Rat::int(0), Rat::int(0), Rat::int(1)];
        let roots = <Rat as IndicialField>::poly_roots(&c).unwrap();
        assert_eq!(roots, vec![(Rat::int(0), 3)]);
    }

    #[test]
    fn irrational_roots_rejected_in_exact_mode() {
        // x^2 - 2
        let c = [Rat::int(-2), Rat::int(0), Rat::int(1)];
        assert!(<Rat as IndicialField>::poly_roots(&c).is_err());
    }
}
