//! Perturbation expansions `u = sum eps^k u_k` for perturbed hypergeometric
//! equations, built on coefficientwise inversion of the base operator.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::algebra::{EulerPolynomial, GradedSeries, LogStackSolution, MellinOperator, Var};
use crate::error::Error;
use crate::fmath;
use crate::scalar::Scalar;
use crate::{Result, C64};

/// `base - sum_p eps^p var^(m_p) R_p(D)`: a hypergeometric-type operator
/// with small perturbations carrying positive rational exponent offsets.
///
/// Offsets are given as lattice fractions and the whole structure is put on
/// the lcm lattice at construction; the resonance check then runs over the
/// enlarged lattice before any chain is computed.
#[derive(Clone, Debug)]
pub struct PerturbedOperator<K> {
    pub base: MellinOperator<K>,
    /// (eps power, offset in enlarged-lattice steps, polynomial)
    perturbations: Vec<(usize, i64, EulerPolynomial<K>)>,
}

impl<K: Scalar> PerturbedOperator<K> {
    /// `offsets` are (numerator, denominator) exponent offsets m > 0.
    pub fn new(
        base: MellinOperator<K>,
        perturbations: Vec<(usize, (i64, u32), EulerPolynomial<K>)>,
    ) -> Result<Self> {
        let mut denom = base.denom as u64;
        for (_, (_, d), _) in &perturbations {
            denom = lcm(denom, *d as u64);
        }
        if denom > u32::MAX as u64 {
            return Err(Error::LatticeMismatch);
        }
        let base = base.with_denom(denom as u32);
        let mut terms = Vec::with_capacity(perturbations.len());
        for (p, (num, d), poly) in perturbations {
            if p == 0 {
                return Err(Error::Domain(
                    "perturbation must carry a positive eps power",
                ));
            }
            if num <= 0 {
                return Err(Error::Domain("perturbation offsets must be positive"));
            }
            let steps = num * (denom as i64 / d as i64);
            terms.push((p, steps, poly));
        }
        Ok(PerturbedOperator {
            base,
            perturbations: terms,
        })
    }

    /// The standard shape `Q - t P - eps t^2 R`.
    pub fn standard(base: MellinOperator<K>, r: EulerPolynomial<K>) -> Result<Self> {
        let d = base.denom;
        PerturbedOperator::new(base, vec![(1, (2 * d as i64, d), r)])
    }

    pub fn perturbations(&self) -> &[(usize, i64, EulerPolynomial<K>)] {
        &self.perturbations
    }
}

/// Apply `(base)^-1` to a log-stack right-hand side, coefficientwise:
/// writing `base = sum var^m P_m(D)` (offsets normalized to >= 0, any
/// var^k factor moved to the right-hand side), the block at a lattice
/// exponent e is the upper-triangular action of `P_0(e + N)` on the branch
/// vector and is invertible iff `P_0(e) != 0`. The particular solution with
/// no homogeneous admixture below the right-hand side's window is returned.
pub fn inverse_base_apply_stack<K: Scalar>(
    base: &MellinOperator<K>,
    rhs: &LogStackSolution<K>,
    order: usize,
) -> Result<LogStackSolution<K>> {
    if base.var != rhs.var() {
        return Err(Error::VariableMismatch);
    }
    let shift = base.min_offset_steps().unwrap_or(0).min(0);
    let base_n = base.normalize_offsets();
    let denom = lcm(base_n.denom as u64, rhs.denom() as u64) as u32;
    let base_n = base_n.with_denom(denom);
    let lat_scale = (denom / rhs.denom()) as i64;
    let rhs = rhs
        .with_denom(denom)
        .shift_exponent_steps(-shift * (denom / base.denom) as i64);
    let q0 = base_n.indicial();
    let nb = rhs.max_log_power() + 1;
    // Common leading exponent across branches.
    let mut gamma: Option<K> = None;
    for b in rhs.branches() {
        if b.is_empty() {
            continue;
        }
        let g = b.gamma.clone();
        gamma = Some(match gamma {
            None => g,
            Some(cur) => {
                let d = (g.clone() - cur.clone()) * K::from_i64(denom as i64);
                match d.nearest_i64() {
                    Some(k) if k < 0 => g,
                    Some(_) => cur,
                    None => return Err(Error::LatticeMismatch),
                }
            }
        });
    }
    let gamma = gamma.unwrap_or_else(K::zero);
    let width = order * lat_scale as usize + 1;
    // Dense rhs branch table.
    let mut g_tab = vec![vec![K::zero(); width]; nb];
    for (j, b) in rhs.branches().iter().enumerate() {
        if b.is_empty() {
            continue;
        }
        let off = ((b.gamma.clone() - gamma.clone()) * K::from_i64(denom as i64))
            .nearest_i64()
            .ok_or(Error::LatticeMismatch)?;
        for (n, c) in b.coeffs.iter().enumerate() {
            let k = off + n as i64;
            if k >= 0 && (k as usize) < width {
                g_tab[j][k as usize] = c.clone();
            }
        }
    }
    let mut u = vec![vec![K::zero(); width]; nb];
    for n in 0..width as i64 {
        let e = gamma.clone() + K::from_ratio(n, denom as i64);
        // rhs_vec = g_n - sum_{m>0} P_m(e - m + N) u_{n - m}
        let mut rhs_vec: Vec<K> = (0..nb).map(|j| g_tab[j][n as usize].clone()).collect();
        for (steps, poly) in base_n.terms() {
            if steps <= 0 || steps > n {
                continue;
            }
            let x0 = gamma.clone() + K::from_ratio(n - steps, denom as i64);
            // upper-triangular block: row j gets sum_i taylor_i(x0) u[j+i][n-steps]
            for j in 0..nb {
                let mut acc = K::zero();
                for i in 0..nb - j {
                    let t = poly.taylor_coeff(&x0, i);
                    if t.is_zero() {
                        continue;
                    }
                    acc = acc + t * u[j + i][(n - steps) as usize].clone();
                }
                rhs_vec[j] = rhs_vec[j].clone() - acc;
            }
        }
        // Solve P_0(e + N) u_n = rhs_vec, triangular from the top log power.
        let diag = q0.eval(&e);
        if diag.is_zero() || diag.magnitude() < 1e-12 {
            if rhs_vec.iter().all(|v| v.is_zero()) {
                continue; // nothing to solve at this exponent
            }
            return Err(Error::ResonantLatticePoint { lattice_steps: n });
        }
        for j in (0..nb).rev() {
            let mut acc = rhs_vec[j].clone();
            for i in 1..nb - j {
                let t = q0.taylor_coeff(&e, i);
                if t.is_zero() {
                    continue;
                }
                acc = acc - t * u[j + i][n as usize].clone();
            }
            u[j][n as usize] = acc / diag.clone();
        }
    }
    let branches: Vec<GradedSeries<K>> = u
        .into_iter()
        .map(|coeffs| GradedSeries::new(rhs.var(), denom, gamma.clone(), coeffs))
        .collect();
    LogStackSolution::new(branches)
}

/// Series convenience wrapper around [`inverse_base_apply_stack`].
pub fn inverse_base_apply<K: Scalar>(
    base: &MellinOperator<K>,
    rhs: &GradedSeries<K>,
    order: usize,
) -> Result<GradedSeries<K>> {
    let out = inverse_base_apply_stack(base, &LogStackSolution::from_series(rhs.clone()), order)?;
    Ok(out.branch(0))
}

/// The perturbation chain `base u_(k+1) = sum_p T_p u_(k+1-p)` with
/// `u_0` given and `u_k(0) = 0` for k >= 1. This recurrence is the
/// authoritative computation; the printed multi-sum is a cross-check.
pub fn variation_recurrence<K: Scalar>(
    pert: &PerturbedOperator<K>,
    u0: &GradedSeries<K>,
    k_max: usize,
    order: usize,
) -> Result<Vec<GradedSeries<K>>> {
    let mut chain = vec![u0.with_denom(pert.base.denom)];
    for k in 1..=k_max {
        let mut rhs: Option<GradedSeries<K>> = None;
        for (p, steps, poly) in &pert.perturbations {
            if *p > k {
                continue;
            }
            let op = MellinOperator::monomial(pert.base.var, pert.base.denom, *steps, poly.clone());
            let term = op.apply_series(&chain[k - *p])?;
            rhs = Some(match rhs {
                None => term,
                Some(r) => r.add(&term)?,
            });
        }
        // No term reaching this eps order means the member vanishes.
        match rhs {
            Some(rhs) => chain.push(inverse_base_apply(&pert.base, &rhs, order)?),
            None => chain.push(GradedSeries::zero_window(
                pert.base.var,
                pert.base.denom,
                chain[0].gamma.clone(),
                chain[0].len(),
            )),
        }
    }
    Ok(chain)
}

/// Max defining-chain residual: `base u_(k+1) - sum_p T_p u_(k+1-p)` must
/// vanish through the reliable window (exactly in rational mode).
pub fn chain_residual<K: Scalar>(
    pert: &PerturbedOperator<K>,
    chain: &[GradedSeries<K>],
    order: usize,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for k in 1..chain.len() {
        let lhs = pert.base.apply_series(&chain[k])?;
        let mut rhs: Option<GradedSeries<K>> = None;
        for (p, steps, poly) in &pert.perturbations {
            if *p > k {
                continue;
            }
            let op = MellinOperator::monomial(pert.base.var, pert.base.denom, *steps, poly.clone());
            let term = op.apply_series(&chain[k - *p])?;
            rhs = Some(match rhs {
                None => term,
                Some(r) => r.add(&term)?,
            });
        }
        let diff = match rhs {
            Some(rhs) => lhs.sub(&rhs)?,
            None => lhs,
        };
        let lat = pert.base.denom as i64;
        // compare only within the requested order window
        for (n, c) in diff.coeffs.iter().enumerate() {
            let rel = ((diff.gamma.clone() - chain[0].gamma.clone()) * K::from_i64(lat))
                .nearest_i64()
                .unwrap_or(0);
            if rel + (n as i64) <= (order * lat as usize) as i64 {
                worst = fmath::max(worst, c.magnitude());
            }
        }
    }
    Ok(worst)
}

/// Comparison of the chain recurrence against the printed multi-sum for the
/// standard shape `Q - t P - eps t^2 R` (integer lattice, k <= 2):
/// the summand carries `S(n) = R(n) Q(n+1) / (P(n) P(n+1))`.
#[derive(Clone, Debug)]
pub struct FormulaComparison {
    pub order: usize,
    pub max_deviation: f64,
    pub first_mismatch: Option<(usize, f64)>,
}

/// Direct evaluation of the multi-sum via the DP
/// `V_0 = 1, V_k(M) = sum_(m <= M-2) V_(k-1)(m) S(m)`; the coefficient of
/// t^M in u_(0,k) is `a_M V_k(M)` with `a_M` the base series coefficients.
pub fn variation_formula(
    qpoly: &EulerPolynomial<C64>,
    ppoly: &EulerPolynomial<C64>,
    rpoly: &EulerPolynomial<C64>,
    k: usize,
    order: usize,
) -> Result<GradedSeries<C64>> {
    let base_series = crate::hyper::pfq_series_from_qp(qpoly, ppoly, order);
    let s_at = |n: usize| -> C64 {
        let nn = Complex64::new(n as f64, 0.0);
        rpoly.eval(&nn) * qpoly.eval(&(nn + 1.0)) / (ppoly.eval(&nn) * ppoly.eval(&(nn + 1.0)))
    };
    let mut v = vec![Complex64::new(1.0, 0.0); order + 1];
    for _level in 1..=k {
        let mut next = vec![Complex64::new(0.0, 0.0); order + 1];
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 0..=order {
            if m >= 2 {
                acc += v[m - 2] * s_at(m - 2);
            }
            next[m] = acc;
        }
        v = next;
    }
    let coeffs: Vec<C64> = (0..=order).map(|m| base_series.coeff(m) * v[m]).collect();
    Ok(GradedSeries::new(
        Var::T0,
        1,
        Complex64::new(0.0, 0.0),
        coeffs,
    ))
}

/// Run both routes for the standard shape and report the verdict on the
/// printed `S(n)` (a P/Q transposition was suspected; the comparison is the
/// adjudicator and reports the first mismatching coefficient if any).
pub fn variation_formula_comparison(
    qpoly: &EulerPolynomial<C64>,
    ppoly: &EulerPolynomial<C64>,
    rpoly: &EulerPolynomial<C64>,
    k: usize,
    order: usize,
) -> Result<FormulaComparison> {
    let base = crate::hyper::operator_from_qp(Var::T0, qpoly.clone(), ppoly.clone());
    let pert = PerturbedOperator::standard(base, rpoly.clone())?;
    let u0 = crate::hyper::pfq_series_from_qp(qpoly, ppoly, order);
    let chain = variation_recurrence(&pert, &u0, k, order)?;
    let direct = variation_formula(qpoly, ppoly, rpoly, k, order)?;
    let mut max_dev = 0.0f64;
    let mut first = None;
    for m in 0..=order {
        let a = series_coeff_at_step(&chain[k], m);
        let b = series_coeff_at_step(&direct, m);
        let d = (a - b).norm();
        if d > 1e-9 * (1.0 + a.norm()) && first.is_none() {
            first = Some((m, d));
        }
        max_dev = fmath::max(max_dev, d / (1.0 + a.norm()));
    }
    Ok(FormulaComparison {
        order,
        max_deviation: max_dev,
        first_mismatch: first,
    })
}

fn series_coeff_at_step(s: &GradedSeries<C64>, m: usize) -> C64 {
    let off = (s.gamma * s.denom as f64).re as i64;
    let idx = m as i64 * s.denom as i64 - off;
    if idx < 0 {
        Complex64::new(0.0, 0.0)
    } else {
        s.coeff(idx as usize)
    }
}

/// First variation of the cubic Bessel-type kernel `D^3 U = -y U` under the
/// balanced deformation: both the corrected double sum
/// `-sum_(m>=1, n>=0) n^3 (-y)^(m+n) / ((m+n)!)^3` and the chain recurrence
/// on `(D^3 + y) U_1 = y D^3 U_0`; returns (double sum, recurrence).
///
/// The printed display sums over m >= 0 with a plus sign; the mutual oracle
/// fixes the range to m >= 1 and the overall sign to minus.
pub fn bessel_kernel_first_variation(
    order: usize,
) -> Result<(GradedSeries<C64>, GradedSeries<C64>)> {
    // double sum: coefficient of y^M is -(-1)^M sum_(n<M) n^3 / (M!)^3
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut fact = 1.0f64;
    let mut sign = 1.0f64;
    let mut cube_sum = 0.0f64;
    for m in 0..=order {
        if m > 0 {
            fact *= m as f64;
            cube_sum += ((m - 1) as f64) * ((m - 1) as f64) * ((m - 1) as f64);
            sign = -sign;
        }
        let v = if m == 0 {
            0.0
        } else {
            -sign * cube_sum / (fact * fact * fact)
        };
        coeffs.push(Complex64::new(v, 0.0));
    }
    let double_sum = GradedSeries::new(Var::Y0, 1, Complex64::new(0.0, 0.0), coeffs);
    // recurrence: base = D^3 + y, perturbation T = y D^3 (base - eps T).
    let d3 = EulerPolynomial::<C64>::monic_from_roots(&[
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    ]);
    let mut base = MellinOperator::new(Var::Y0, 1);
    base.add_term(0, d3.clone());
    base.add_term(1, EulerPolynomial::one());
    let pert = PerturbedOperator::new(base, vec![(1, (1, 1), d3)])?;
    let mut u0c = Vec::with_capacity(order + 1);
    let mut fact = 1.0f64;
    let mut sign = 1.0f64;
    for n in 0..=order {
        if n > 0 {
            fact *= n as f64;
            sign = -sign;
        }
        u0c.push(Complex64::new(sign / (fact * fact * fact), 0.0));
    }
    let u0 = GradedSeries::new(Var::Y0, 1, Complex64::new(0.0, 0.0), u0c);
    let chain = variation_recurrence(&pert, &u0, 1, order)?;
    Ok((double_sum, chain[1].clone()))
}

/// First variation of the second kernel solution on the half-integer
/// lattice: the chain for
/// `(Q - z - eps z^(1/2) R + eps^2 z S) V = 0`,
/// `Q = 2D(2D-1)(2D-2), R = 2D(2D-1)(4D-1), S = (2D)^3`, applied to
/// `V_2 = z F(; 2, 3/2; z/8)`, against the explicit double sum
/// `(8/sqrt z) sum_(m,n>=1) (4n-1)(1/2)_n (z/2)^(m+n) / ((2m+2n-1)! (1/2)_(m+n-1) (n-1)!)`.
/// Returns (double sum, recurrence) on the lattice `z^(1/2) Z`.
pub fn v2_first_variation(
    order_half_steps: usize,
) -> Result<(GradedSeries<C64>, GradedSeries<C64>)> {
    let r1 = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    // Q = 8 D (D - 1/2)(D - 1)
    let q = EulerPolynomial::monic_from_roots(&[zero, Complex64::new(0.5, 0.0), r1])
        .scale(&Complex64::new(8.0, 0.0));
    let mut base = MellinOperator::new(Var::Z0, 2);
    base.add_term(0, q);
    base.add_term(2, EulerPolynomial::constant(-r1));
    // R = 2D(2D-1)(4D-1) = 16 D (D - 1/2)(D - 1/4)
    let rp = EulerPolynomial::monic_from_roots(&[
        zero,
        Complex64::new(0.5, 0.0),
        Complex64::new(0.25, 0.0),
    ])
    .scale(&Complex64::new(16.0, 0.0));
    // S = (2D)^3 = 8 D^3
    let sp =
        EulerPolynomial::monic_from_roots(&[zero, zero, zero]).scale(&Complex64::new(8.0, 0.0));
    let pert = PerturbedOperator::new(base, vec![(1, (1, 2), rp), (2, (2, 2), sp.neg())])?;
    // V2 on the half lattice: coefficients 2/((2n)! (2n-2)!!) at z^n.
    let zord = order_half_steps / 2 + 2;
    let mut v2 = vec![zero; 2 * zord + 1];
    for n in 1..=zord {
        let mut den = 1.0f64;
        for k in 1..=2 * n {
            den *= k as f64;
        }
        let mut dd = 1.0f64;
        let mut m = 2 * n as i64 - 2;
        while m >= 2 {
            dd *= m as f64;
            m -= 2;
        }
        v2[2 * n] = Complex64::new(2.0 / (den * dd), 0.0);
    }
    let u0 = GradedSeries::new(Var::Z0, 2, zero, v2);
    let chain = variation_recurrence(&pert, &u0, 1, order_half_steps)?;
    // double sum
    let max_zn = order_half_steps / 2 + 3;
    let mut by_power = vec![0.0f64; max_zn + 2]; // coefficient of z^(p - 1/2)
    for n in 1..=max_zn {
        for m in 1..=(max_zn - n) {
            let p = m + n;
            if p > max_zn {
                continue;
            }
            let mut num = (4 * n - 1) as f64 * poch_half(n);
            num /= fact_f((2 * p - 1) as u32);
            num /= poch_half(p - 1);
            num /= fact_f((n - 1) as u32);
            num /= fmath::powi(2.0, p as i32);
            by_power[p] += num;
        }
    }
    // (8/sqrt z) z^p -> 8 z^(p - 1/2): half steps 2p - 1
    let mut ds = vec![zero; order_half_steps + 1];
    for (p, v) in by_power.iter().enumerate() {
        if p == 0 {
            continue;
        }
        let hs = 2 * p - 1;
        if hs <= order_half_steps {
            ds[hs] = Complex64::new(8.0 * v, 0.0);
        }
    }
    let double_sum = GradedSeries::new(Var::Z0, 2, zero, ds);
    Ok((double_sum, chain[1].clone()))
}

fn poch_half(n: usize) -> f64 {
    // (1/2)_n
    let mut acc = 1.0f64;
    for i in 0..n {
        acc *= 0.5 + i as f64;
    }
    acc
}

fn fact_f(n: u32) -> f64 {
    let mut acc = 1.0f64;
    for i in 1..=n {
        acc *= i as f64;
    }
    acc
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn c(re: f64) -> C64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn euler_square_inverse() {
        // (D^2)^-1 t^n = t^n / n^2
        let base: MellinOperator<Rat> = MellinOperator::monomial(
            Var::T0,
            1,
            0,
            EulerPolynomial::monic_from_roots(&[Rat::int(0), Rat::int(0)]),
        );
        let rhs = GradedSeries::new(Var::T0, 1, Rat::int(1), vec![Rat::int(1), Rat::int(4)]);
        let out = inverse_base_apply(&base, &rhs, 1).unwrap();
        assert_eq!(out.coeff(0), Rat::int(1)); // t / 1
        assert_eq!(out.coeff(1), Rat::int(1)); // 4 t^2 / 4
    }

    #[test]
    fn airy_inverse_matches_paper_expansion() {
        // (d^2 - t)^-1 t^2 = t^4/12 + t^7/(12*42) + ... via the Euler form
        // t^-2 (D(D-1) - t^3).
        let mut base: MellinOperator<Rat> = MellinOperator::new(Var::T0, 1);
        base.add_term(
            -2,
            EulerPolynomial::monic_from_roots(&[Rat::int(0), Rat::int(1)]),
        );
        base.add_term(1, EulerPolynomial::constant(Rat::int(-1)));
        let rhs = GradedSeries::new(Var::T0, 1, Rat::int(2), vec![Rat::int(1)]);
        let out = inverse_base_apply(&base, &rhs, 12).unwrap();
        assert_eq!(out.gamma, Rat::int(4));
        assert_eq!(out.coeff(0), Rat::ratio(1, 12));
        assert_eq!(out.coeff(3), Rat::ratio(1, 504));
        // zero input stays zero
        let z = GradedSeries::new(Var::T0, 1, Rat::int(2), vec![Rat::int(0)]);
        assert!(inverse_base_apply(&base, &z, 8).unwrap().is_zero());
    }

    #[test]
    fn resonant_point_is_reported() {
        // D^2 inverse applied to t^0 hits Q(0) = 0.
        let base: MellinOperator<Rat> = MellinOperator::monomial(
            Var::T0,
            1,
            0,
            EulerPolynomial::monic_from_roots(&[Rat::int(0), Rat::int(0)]),
        );
        let rhs = GradedSeries::new(Var::T0, 1, Rat::int(0), vec![Rat::int(1)]);
        assert!(matches!(
            inverse_base_apply(&base, &rhs, 3),
            Err(Error::ResonantLatticePoint { .. })
        ));
    }

    #[test]
    fn airy_first_variation_exact_coefficients() {
        // u'' = (t + eps t^2) u: u_(1,1) = t^4/12 + t^7/168 + 29 t^10/226800
        //       + 31 t^13/23587200 + ...
        // Oracle: direct coefficientwise solve of n(n-1) c_n - c_(n-3) = rhs_n
        // with rhs = (t^4) u_1, u_1 = F(; 2/3; t^3/9).
        let mut base: MellinOperator<Rat> = MellinOperator::new(Var::T0, 1);
        base.add_term(
            -2,
            EulerPolynomial::monic_from_roots(&[Rat::int(0), Rat::int(1)]),
        );
        base.add_term(1, EulerPolynomial::constant(Rat::int(-1)));
        let pert = PerturbedOperator::new(
            base,
            vec![(1, (2, 1), EulerPolynomial::constant(Rat::int(1)))],
        )
        .unwrap();
        // u1 = 1 + t^3/6 + t^6/180 + t^9/12960 + ...
        let mut u1 = vec![Rat::int(0); 14];
        u1[0] = Rat::int(1);
        for k in 1..=4usize {
            let n = 3 * k as i64;
            u1[n as usize] = u1[(n - 3) as usize].clone() / Rat::int(n * (n - 1));
        }
        let u0 = GradedSeries::new(Var::T0, 1, Rat::int(0), u1.clone());
        let chain = variation_recurrence(&pert, &u0, 1, 13).unwrap();
        let u11 = &chain[1];
        assert_eq!(u11.gamma, Rat::int(4));
        assert_eq!(u11.coeff(0), Rat::ratio(1, 12));
        assert_eq!(u11.coeff(3), Rat::ratio(1, 168));
        assert_eq!(u11.coeff(6), Rat::ratio(29, 226800));
        assert_eq!(u11.coeff(9), Rat::ratio(31, 23587200));
        // independent oracle: n(n-1) c_n - c_(n-3) = (t^4 u_1)_n
        let mut oracle = vec![Rat::int(0); 14];
        for n in 4..14usize {
            let rhs = if n >= 4 {
                u1[n - 4].clone()
            } else {
                Rat::int(0)
            };
            let prev = if n >= 3 {
                oracle[n - 3].clone()
            } else {
                Rat::int(0)
            };
            oracle[n] = (rhs + prev) / Rat::int((n * (n - 1)) as i64);
        }
        for n in 4..14usize {
            assert_eq!(u11.coeff(n - 4), oracle[n], "t^{n}");
        }
        // exact chain residual
        let r = chain_residual(&pert, &chain, 9).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn zero_perturbation_gives_zero_chain() {
        let base: MellinOperator<Rat> = crate::hyper::operator_from_qp(
            Var::T0,
            EulerPolynomial::euler(),
            EulerPolynomial::new(vec![Rat::ratio(1, 2), Rat::int(1)]),
        );
        let pert = PerturbedOperator::standard(base, EulerPolynomial::zero()).unwrap();
        let u0 = GradedSeries::new(Var::T0, 1, Rat::int(0), vec![Rat::int(1), Rat::ratio(1, 2)]);
        let chain = variation_recurrence(&pert, &u0, 2, 6).unwrap();
        assert!(chain[1].is_zero());
        assert!(chain[2].is_zero());
    }

    #[test]
    fn eps_power_bookkeeping_identity() {
        // A perturbation entering at eps^2 alone: its k = 2 chain member
        // equals the k = 1 member of the same term entering at eps^1
        // (substituting delta = eps^2), exactly.
        let base: MellinOperator<Rat> = crate::hyper::operator_from_qp(
            Var::T0,
            EulerPolynomial::monic_from_roots(&[Rat::int(0), Rat::int(-1)]),
            EulerPolynomial::new(vec![Rat::ratio(1, 3), Rat::int(1)]),
        );
        let r = EulerPolynomial::new(vec![Rat::ratio(3, 2), Rat::int(1)]);
        let u0 = crate::hyper::pfq_series_from_qp(
            &EulerPolynomial::monic_from_roots(&[Rat::int(0), Rat::int(-1)]),
            &EulerPolynomial::new(vec![Rat::ratio(1, 3), Rat::int(1)]),
            12,
        );
        let sq = PerturbedOperator::new(base.clone(), vec![(2, (2, 1), r.clone())]).unwrap();
        let lin = PerturbedOperator::new(base, vec![(1, (2, 1), r)]).unwrap();
        let chain_sq = variation_recurrence(&sq, &u0, 2, 12).unwrap();
        let chain_lin = variation_recurrence(&lin, &u0, 1, 12).unwrap();
        assert!(chain_sq[1].is_zero(), "no eps^1 content");
        assert!(chain_sq[2].sub(&chain_lin[1]).unwrap().is_zero());
    }

    #[test]
    fn printed_multisum_matches_recurrence() {
        // Example shape: p = q + 1 = 1 with Q = D, P = D + alpha, R = D + gamma.
        let alpha = 0.5;
        let gam = 1.5;
        let qp = EulerPolynomial::<C64>::euler();
        let pp = EulerPolynomial::new(vec![c(alpha), c(1.0)]);
        let rp = EulerPolynomial::new(vec![c(gam), c(1.0)]);
        for k in 1..=2usize {
            let cmp = variation_formula_comparison(&qp, &pp, &rp, k, 14).unwrap();
            assert!(
                cmp.first_mismatch.is_none(),
                "k = {k}: {:?}",
                cmp.first_mismatch
            );
            assert!(cmp.max_deviation < 1e-11);
        }
        // k = 0 trivially identical
        let direct = variation_formula(&qp, &pp, &rp, 0, 8).unwrap();
        let base_series = crate::hyper::pfq_series_from_qp(&qp, &pp, 8);
        for m in 0..=8 {
            assert!((direct.coeff(m) - base_series.coeff(m)).norm() < 1e-14);
        }
    }

    #[test]
    fn example_shape_first_variation_closed_form() {
        // u_(0,1)/u_0 = (2a - g) ln(1-t) + a t(2-t)/(1-t) - g t, checked at
        // three points (the printed display's alpha, gamma factors restored;
        // both an exact eps-expansion of the defining integral and the
        // recurrence agree on this form).
        let (alpha, gam) = (0.5, 1.5);
        let qp = EulerPolynomial::<C64>::euler();
        let pp = EulerPolynomial::new(vec![c(alpha), c(1.0)]);
        let rp = EulerPolynomial::new(vec![c(gam), c(1.0)]);
        let base = crate::hyper::operator_from_qp(Var::T0, qp.clone(), pp.clone());
        let pert = PerturbedOperator::standard(base, rp).unwrap();
        let u0 = crate::hyper::pfq_series_from_qp(&qp, &pp, 120);
        let chain = variation_recurrence(&pert, &u0, 1, 120).unwrap();
        for t in [0.2, 0.3, 0.5] {
            let got = chain[1].eval(c(t));
            let bracket = (2.0 * alpha - gam) * fmath::ln(1.0 - t)
                + alpha * t * (2.0 - t) / (1.0 - t)
                - gam * t;
            let want = fmath::powf(1.0 - t, -alpha) * bracket;
            assert!((got - c(want)).norm() < 1e-10, "t = {t}: {got} vs {want}");
        }
    }

    #[test]
    fn bessel_kernel_variation_routes_agree() {
        let (ds, rec) = bessel_kernel_first_variation(10).unwrap();
        assert!(
            (ds.gamma - c(2.0)).norm() < 1e-14,
            "double sum starts at y^2"
        );
        for m in 0..=8usize {
            let a = series_coeff_at_step(&ds, m);
            let b = series_coeff_at_step(&rec, m);
            assert!((a - b).norm() < 1e-13, "y^{m}: {a} vs {b}");
        }
        // y^2 coefficient = -1/8
        assert!((series_coeff_at_step(&ds, 2) - c(-0.125)).norm() < 1e-14);
    }

    #[test]
    fn v2_variation_routes_agree() {
        let (ds, rec) = v2_first_variation(14).unwrap();
        // leading exponent z^(3/2)
        assert!((ds.gamma - c(1.5)).norm() < 1e-12);
        assert!((rec.gamma - c(1.5)).norm() < 1e-12);
        assert!(
            (ds.coeff(0) - c(1.0)).norm() < 1e-12,
            "leading coefficient 1: {}",
            ds.coeff(0)
        );
        for n in 0..=8usize {
            let a = ds.coeff(n);
            let b = rec.coeff(n);
            assert!(
                (a - b).norm() < 1e-12 * (1.0 + a.norm()),
                "half-step {n}: {a} vs {b}"
            );
        }
        // unperturbed check: R = S = 0 gives a zero variation
        let zero = Complex64::new(0.0, 0.0);
        let q = EulerPolynomial::monic_from_roots(&[zero, Complex64::new(0.5, 0.0), c(1.0)])
            .scale(&Complex64::new(8.0, 0.0));
        let mut base = MellinOperator::new(Var::Z0, 2);
        base.add_term(0, q);
        base.add_term(2, EulerPolynomial::constant(-c(1.0)));
        let pert = PerturbedOperator::new(base, vec![(1, (1, 2), EulerPolynomial::zero())]);
        assert!(
            pert.is_err() || {
                let pert = pert.unwrap();
                let u0 = GradedSeries::new(Var::Z0, 2, zero, vec![zero, zero, c(1.0)]);
                let chain = variation_recurrence(&pert, &u0, 1, 8).unwrap();
                chain[1].is_zero()
            }
        );
    }
}
