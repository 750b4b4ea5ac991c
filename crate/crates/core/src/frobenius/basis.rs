//! Local solution bases at regular singular points, with logarithms.
//!
//! Solutions are produced by the nilpotent-parameter method: a root gamma
//! of the indicial polynomial is deformed to `gamma + mu`, the coefficient
//! recurrence is run over truncated Laurent jets in `mu` (resonant lattice
//! points contribute exact `mu` factors in the denominators), `t^mu` is
//! expanded into logarithms, and the `mu^0..mu^(r-1)` slices of the
//! pole-cleared family are extracted.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::mujet::MuJet;
use super::roots::IndicialField;
use crate::algebra::{GradedSeries, LogStackSolution, MellinOperator, Var};
use crate::error::Error;
use crate::hyper::{hypergeometric_operator, HyperParams};
use crate::scalar::Scalar;
use crate::{Result, C64};

/// Which singular point a basis belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionPoint {
    Zero,
    One,
    Infinity,
}

/// A fundamental system at a regular singular point.
#[derive(Clone, Debug)]
pub struct FrobeniusBasis<K> {
    pub point: ExpansionPoint,
    pub solutions: Vec<LogStackSolution<K>>,
    pub indicial_roots: Vec<(K, usize)>,
}

struct ClassMember<K> {
    root: K,
    mult: usize,
    /// Lattice offset relative to the class anchor.
    offset: i64,
}

/// Frobenius basis at the expansion point of `op` (which must be a regular
/// singularity: the indicial polynomial has full degree). `order` is the
/// truncation in lattice steps.
pub fn frobenius_at_zero<K: IndicialField>(
    op: &MellinOperator<K>,
    order: usize,
) -> Result<FrobeniusBasis<K>> {
    let op = op.normalize_offsets();
    let indicial = op.indicial();
    let ord = op.order();
    if indicial.degree() < ord || indicial.is_zero() {
        return Err(Error::IrregularSingularity {
            indicial_degree: indicial.degree(),
            order: ord,
        });
    }
    let lattice = op.denom as i64;
    let roots = K::poly_roots(indicial.coeffs())?;
    let lead = indicial.coeffs().last().cloned().unwrap_or_else(K::one);

    // Group roots into resonance classes: same class iff the difference is
    // an integer number of lattice steps.
    let mut classes: Vec<Vec<ClassMember<K>>> = Vec::new();
    'next_root: for (root, mult) in &roots {
        for class in classes.iter_mut() {
            let anchor = &class[0].root;
            let d = (root.clone() - anchor.clone()) * K::from_i64(lattice);
            if let Some(offset) = d.nearest_i64() {
                class.push(ClassMember {
                    root: root.clone(),
                    mult: *mult,
                    offset,
                });
                continue 'next_root;
            }
        }
        classes.push(vec![ClassMember {
            root: root.clone(),
            mult: *mult,
            offset: 0,
        }]);
    }

    let mut solutions: Vec<LogStackSolution<K>> = Vec::new();
    for class in classes.iter_mut() {
        class.sort_by(|a, b| b.offset.cmp(&a.offset));
        let class_mult: usize = class.iter().map(|m| m.mult).sum();
        let window = 2 * class_mult + 4;
        let mut logfree_prev: Vec<LogStackSolution<K>> = Vec::new();
        for idx in 0..class.len() {
            let member = &class[idx];
            let gamma = member.root.clone();
            // Jet recurrence for a_n(mu), a_0 = 1.
            let mut jets: Vec<MuJet<K>> = Vec::with_capacity(order + 1);
            jets.push(MuJet::constant(K::one(), window));
            for n in 1..=order as i64 {
                // numerator: -(sum over positive offsets m of P_m at
                //            gamma + (n-m)/L + mu times a_{n-m})
                let mut num = MuJet::zero(window);
                for (steps, poly) in op.terms() {
                    if steps <= 0 || steps > n {
                        continue;
                    }
                    let x0 = gamma.clone() + K::from_ratio(n - steps, lattice);
                    let tc: Vec<K> = (0..window.min(poly.degree() + 1))
                        .map(|k| poly.taylor_coeff(&x0, k))
                        .collect();
                    let pjet = MuJet::from_taylor(&tc, window);
                    num = num.add(&pjet.mul(&jets[(n - steps) as usize]).neg());
                }
                // denominator: indicial polynomial factored over its roots,
                // with exact mu factors at resonant lattice points.
                let mut den = MuJet::constant(lead.clone(), window);
                for (root, mult) in &roots {
                    let factor = match class.iter().find(|m| m.root == *root) {
                        Some(m) => {
                            // same class: constant part (offset_r + n - offset_i)/L
                            MuJet::linear(
                                K::from_ratio(member.offset + n - m.offset, lattice),
                                window,
                            )
                        }
                        None => MuJet::linear(
                            gamma.clone() + K::from_ratio(n, lattice) - root.clone(),
                            window,
                        ),
                    };
                    for _ in 0..*mult {
                        den = den.mul(&factor);
                    }
                }
                jets.push(num.weeded().div(&den));
            }
            // Pole order accumulated across the lattice.
            let pole = jets
                .iter()
                .filter_map(|j| j.valuation())
                .map(|v| (-v).max(0))
                .max()
                .unwrap_or(0);
            // Slices pole..pole+mult-1 of mu^pole * u are the new solutions.
            for slice in pole..pole + member.mult as i32 {
                let mut branches = Vec::with_capacity(slice as usize + 1);
                for j in 0..=slice {
                    let coeffs: Vec<K> = jets
                        .iter()
                        .map(|a| a.shift(pole).coeff(slice - j))
                        .collect();
                    branches.push(GradedSeries::new(op.var, op.denom, gamma.clone(), coeffs));
                }
                let mut sol = LogStackSolution::new(branches)?;
                if sol.max_log_power() >= ord.max(1) {
                    return Err(Error::LogPowerCap {
                        power: sol.max_log_power(),
                        cap: ord,
                    });
                }
                // Normalize the analytic branch of log solutions against the
                // log-free solutions already found in this class (this is
                // what pins conventions like "w = O(s^3)").
                if sol.max_log_power() > 0 {
                    for prev in &logfree_prev {
                        let lead_exp = prev.branch(0).gamma.clone();
                        let c = coeff_at_exponent(&sol.branch(0), &lead_exp, lattice);
                        if !c.is_zero() {
                            sol = sol.sub(&prev.scale(&c))?;
                        }
                    }
                }
                if sol.max_log_power() == 0 {
                    logfree_prev.push(sol.clone());
                }
                solutions.push(sol);
            }
        }
    }
    if solutions.len() != ord {
        return Err(Error::RootFinding(alloc::format!(
            "expected {ord} solutions, constructed {}",
            solutions.len()
        )));
    }
    // Deterministic order: log-free solutions by ascending leading exponent,
    // then log solutions by ascending log power.
    solutions.sort_by(|a, b| {
        let la = a.max_log_power();
        let lb = b.max_log_power();
        if la != lb {
            return la.cmp(&lb);
        }
        let ea = a.branch(0).gamma.magnitude();
        let eb = b.branch(0).gamma.magnitude();
        ea.partial_cmp(&eb).unwrap_or(core::cmp::Ordering::Equal)
    });
    Ok(FrobeniusBasis {
        point: ExpansionPoint::Zero,
        solutions,
        indicial_roots: roots,
    })
}

/// Coefficient of a series at an absolute exponent (zero when the exponent
/// is off the stored window or lattice).
fn coeff_at_exponent<K: Scalar>(s: &GradedSeries<K>, e: &K, lattice: i64) -> K {
    let d = (e.clone() - s.gamma.clone()) * K::from_i64(lattice);
    match d.nearest_i64() {
        Some(k) if k >= 0 && (k as usize) < s.len() => s.coeff(k as usize),
        _ => K::zero(),
    }
}

/// Basis at t = 1 for a balanced series: substitute `s = 1 - t`, build the
/// basis at s = 0 and normalize: the analytic solution with leading
/// exponent k is scaled by `(-prod alpha)^(k/2)` and the log solutions
/// absorb `(1/2) ln(-prod alpha)` into their analytic branches (so the
/// connection coefficient of the log solution compares directly with the
/// generating-function value, without rescaling).
pub fn frobenius_at_one(params: &HyperParams, order: usize) -> Result<FrobeniusBasis<C64>> {
    if params.p() != params.q() + 1 {
        return Err(Error::Domain("basis at t = 1 requires a balanced series"));
    }
    let op = hypergeometric_operator(params)?;
    let sub = op.substitute_one_minus_t(i64::MAX)?;
    let mut basis = frobenius_at_zero(&sub, order)?;
    basis.point = ExpansionPoint::One;
    // -prod alpha_j (for the MZV families this is lambda^(q+1)). A zero
    // product (terminating series) leaves the canonical basis unscaled.
    let mut pp = Complex64::new(-1.0, 0.0);
    for a in &params.upper {
        pp *= a;
    }
    if pp.norm() < 1e-14 {
        return Ok(basis);
    }
    let ln_pp = pp.ln();
    for sol in basis.solutions.iter_mut() {
        if sol.max_log_power() == 0 {
            if let Some(k) = sol.branch(0).gamma.nearest_i64() {
                if k > 0 {
                    *sol = sol.scale(&pp.powf(k as f64 / 2.0));
                }
            }
        } else {
            *sol = sol.log_shift(&(0.5 * ln_pp));
        }
    }
    Ok(basis)
}

/// Formal solutions at t = infinity: `p` regular series
/// `t^(-alpha_j) G_j(1/t)` by the descending recurrence, and `q + 1 - p`
/// WKB forms with exponent data from the two leading orders of the
/// substitution (computed in [`crate::wkb`]).
pub fn formal_at_infinity(
    params: &HyperParams,
    order: usize,
) -> Result<(Vec<GradedSeries<C64>>, Vec<crate::wkb::WkbForm>)> {
    if params.p() > params.q() + 1 {
        return Err(Error::DivergentSeries);
    }
    let (qpoly, ppoly) = params.qp_polys();
    let mut regular = Vec::with_capacity(params.p());
    for alpha in &params.upper {
        let gamma = -alpha;
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(Complex64::new(1.0, 0.0));
        for n in 1..=order as i64 {
            // P(gamma - n) a_n = Q(gamma - n + 1) a_{n-1}
            let den = ppoly.eval(&(gamma - n as f64));
            if den.norm() < 1e-12 {
                return Err(Error::ResonantLatticePoint { lattice_steps: n });
            }
            let num = qpoly.eval(&(gamma - n as f64 + 1.0));
            let prev = coeffs[(n - 1) as usize];
            coeffs.push(prev * num / den);
        }
        // exponent of w = 1/t is alpha_j + n
        regular.push(GradedSeries::new(Var::InvT, 1, *alpha, coeffs));
    }
    let mut wkb = Vec::new();
    if params.p() < params.q() + 1 {
        for k in 1..=(params.q() + 1 - params.p()) {
            wkb.push(crate::wkb::confluent_wkb(params, k, order)?);
        }
    }
    Ok((regular, wkb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{residual_norm, EulerPolynomial};
    use crate::hyper::operator_from_qp;
    use crate::scalar::Rat;

    fn c(re: f64) -> C64 {
        Complex64::new(re, 0.0)
    }

    /// (1 - t) D^3 + l^3 t as a rational operator (l^3 = lam3).
    fn mzv3_op_rat(lam3: i64) -> MellinOperator<Rat> {
        let q = EulerPolynomial::monic_from_roots(&[Rat::int(0), Rat::int(0), Rat::int(0)]);
        // P = D^3 - lam3
        let p = EulerPolynomial::new(vec![Rat::int(-lam3), Rat::int(0), Rat::int(0), Rat::int(1)]);
        operator_from_qp(Var::T0, q, p)
    }

    #[test]
    fn airy_basis_is_log_free() {
        // D^2 - D - t^3: roots 0, 1; offsets couple only mod 3 so no logs.
        let mut op: MellinOperator<Rat> = MellinOperator::new(Var::T0, 1);
        op.add_term(
            0,
            EulerPolynomial::new(vec![Rat::int(0), Rat::int(-1), Rat::int(1)]),
        );
        op.add_term(3, EulerPolynomial::constant(Rat::int(-1)));
        let basis = frobenius_at_zero(&op, 12).unwrap();
        assert_eq!(basis.solutions.len(), 2);
        for sol in &basis.solutions {
            assert_eq!(sol.max_log_power(), 0);
            assert_eq!(residual_norm(&op, sol, 9).unwrap(), 0.0);
        }
        // u1 = 1 + t^3/6 + ..., u2 = t (1 + t^3/12 + ...)
        let u1 = &basis.solutions[0];
        assert_eq!(u1.branch(0).gamma, Rat::int(0));
        assert_eq!(u1.branch(0).coeff(3), Rat::ratio(1, 6));
        let u2 = &basis.solutions[1];
        assert_eq!(u2.branch(0).gamma, Rat::int(1));
        assert_eq!(u2.branch(0).coeff(3), Rat::ratio(1, 12));
    }

    #[test]
    fn triple_root_log_stack() {
        // (1 - t) D^3 + t (lambda = 1): solutions 1, ln t, ln^2 t shapes.
        let op = mzv3_op_rat(1);
        let basis = frobenius_at_zero(&op, 10).unwrap();
        assert_eq!(basis.solutions.len(), 3);
        assert_eq!(basis.solutions[0].max_log_power(), 0);
        assert_eq!(basis.solutions[1].max_log_power(), 1);
        assert_eq!(basis.solutions[2].max_log_power(), 2);
        for sol in &basis.solutions {
            assert_eq!(residual_norm(&op, sol, 9).unwrap(), 0.0);
        }
        // u1 and u2 share the single-log branch content: branch1 of u2
        // equals branch1 shifted structure; both analytic parts vanish at 0.
        let u1 = &basis.solutions[1];
        assert_eq!(u1.branch(1).coeff(0), Rat::int(1)); // ln t * u0 leading
        assert!(u1.branch(0).gamma != Rat::int(0) || u1.branch(0).coeff(0).is_zero());
        let u2 = &basis.solutions[2];
        assert_eq!(
            u2.branch(1),
            u1.branch(0),
            "tilde u1 is shared between u1 and u2"
        );
    }

    #[test]
    fn v_basis_of_the_cubic_kernel() {
        // 8 D(D - 1/2)(D - 1) - z: V1 = sqrt(z)(1 + z/6 + ...),
        // V2 = z(1 + z/24 + ...), V3 = (1/4) V2 ln z + 1 + Vt3 with
        // Vt3 z^2-coefficient exactly -13/576.
        let q = EulerPolynomial::monic_from_roots(&[Rat::int(0), Rat::ratio(1, 2), Rat::int(1)])
            .scale(&Rat::int(8));
        let p = EulerPolynomial::constant(Rat::int(1));
        let op = operator_from_qp(Var::Z0, q, p);
        let basis = frobenius_at_zero(&op, 8).unwrap();
        assert_eq!(basis.solutions.len(), 3);
        for sol in &basis.solutions {
            assert_eq!(residual_norm(&op, sol, 7).unwrap(), 0.0);
        }
        // order: log-free ascending exponent (1/2 then 1), then the log one
        let v1 = &basis.solutions[0];
        assert_eq!(v1.branch(0).gamma, Rat::ratio(1, 2));
        assert_eq!(v1.branch(0).coeff(1), Rat::ratio(1, 6));
        let v2 = &basis.solutions[1];
        assert_eq!(v2.branch(0).gamma, Rat::int(1));
        assert_eq!(v2.branch(0).coeff(1), Rat::ratio(1, 24));
        let v3 = &basis.solutions[2];
        assert_eq!(v3.max_log_power(), 1);
        // branch1 = (1/4) V2
        assert_eq!(v3.branch(1).coeff(0), Rat::ratio(1, 4));
        assert_eq!(v3.branch(1).gamma, Rat::int(1));
        // branch0 = 1 + Vt3 with Vt3 = -13/576 z^2 + ...
        assert_eq!(v3.branch(0).coeff(0), Rat::int(1));
        assert!(
            v3.branch(0).coeff(1).is_zero(),
            "z^1 term removed by normalization"
        );
        let z2 = v3.branch(0).coeff(2);
        assert_eq!(z2, Rat::ratio(-13, 576));
    }

    #[test]
    fn double_root_family_shapes() {
        // (1 - t) D^2 + t: analytic u0 and a single-log u1 = u0 ln t + ~u1.
        let q = EulerPolynomial::monic_from_roots(&[Rat::int(0), Rat::int(0)]);
        let p = EulerPolynomial::new(vec![Rat::int(-1), Rat::int(0), Rat::int(1)]);
        let op = operator_from_qp(Var::T0, q, p);
        let basis = frobenius_at_zero(&op, 12).unwrap();
        assert_eq!(basis.solutions[0].max_log_power(), 0);
        assert_eq!(basis.solutions[1].max_log_power(), 1);
        // branch1 of u1 is u0 itself
        assert_eq!(basis.solutions[1].branch(1), basis.solutions[0].branch(0));
        for sol in &basis.solutions {
            assert_eq!(residual_norm(&op, sol, 11).unwrap(), 0.0);
        }
    }

    #[test]
    fn log_branch_appears_at_one_for_the_log_case() {
        // 2F1(1,1;2;t) = -ln(1-t)/t: the basis at t = 1 carries a ln s branch.
        let params = HyperParams::new(vec![c(1.0), c(1.0)], vec![c(2.0)]).unwrap();
        let basis = frobenius_at_one(&params, 16).unwrap();
        assert!(basis.solutions.iter().any(|s| s.max_log_power() == 1));
        let op = hypergeometric_operator(&params)
            .unwrap()
            .substitute_one_minus_t(16)
            .unwrap();
        for sol in &basis.solutions {
            assert!(residual_norm(&op, sol, 10).unwrap() < 1e-10);
        }
    }

    #[test]
    fn substitution_matches_reference_operator_form() {
        // The cubic family's operator at s = 1 - t acts proportionally to
        // D_s [(1 - s) d/ds]^2 - l^3 (left factor: monomial times a unit).
        let op = mzv3_op_rat(1);
        let sub = op.substitute_one_minus_t(16).unwrap();
        // reference: D_s o ((1-s) d/ds)^2 - 1, with (1-s) d/ds = s^-1 D - D.
        let mut w: MellinOperator<Rat> = MellinOperator::new(Var::S0, 1);
        w.add_term(-1, EulerPolynomial::euler());
        w.add_term(0, EulerPolynomial::euler().neg());
        let d = MellinOperator::monomial(Var::S0, 1, 0, EulerPolynomial::<Rat>::euler());
        let mut reference = d.compose(&w.compose(&w).unwrap()).unwrap();
        reference.add_term(0, EulerPolynomial::constant(Rat::int(-1)));
        let reference = reference.normalize_offsets();
        // cross-ratio test on polynomial images: r_i q_j == r_j q_i.
        let basis: Vec<GradedSeries<Rat>> = (0..4)
            .map(|i| GradedSeries::new(Var::S0, 1, Rat::int(i), vec![Rat::int(1); 12]))
            .collect();
        let r: Vec<_> = basis.iter().map(|b| sub.apply_series(b).unwrap()).collect();
        let q: Vec<_> = basis
            .iter()
            .map(|b| reference.apply_series(b).unwrap())
            .collect();
        for i in 0..4 {
            for j in (i + 1)..4 {
                let lhs = r[i].mul(&q[j]).unwrap();
                let rhs = r[j].mul(&q[i]).unwrap();
                assert!(lhs.sub(&rhs).unwrap().is_zero(), "pair ({i}, {j})");
            }
        }
    }

    #[test]
    fn complex_parameter_basis_residuals() {
        let params = HyperParams::new(
            vec![Complex64::new(0.3, 0.1), c(0.7)],
            vec![Complex64::new(1.4, 0.5)],
        )
        .unwrap();
        let op = hypergeometric_operator(&params).unwrap();
        let basis = frobenius_at_zero(&op, 20).unwrap();
        assert_eq!(basis.solutions.len(), 2);
        for sol in &basis.solutions {
            assert!(residual_norm(&op, sol, 18).unwrap() < 1e-9);
        }
        // the two leading exponents are 0 and 1 - beta
        let mut gammas: Vec<C64> = basis.solutions.iter().map(|s| s.branch(0).gamma).collect();
        gammas.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((gammas[1] - c(0.0)).norm() < 1e-10 || (gammas[0] - c(0.0)).norm() < 1e-10);
        assert!(gammas
            .iter()
            .any(|g| (*g - (Complex64::new(1.0, 0.0) - Complex64::new(1.4, 0.5))).norm() < 1e-9));
    }

    #[test]
    fn irregular_point_is_rejected() {
        // D - t D^2: indicial degree 1 < order 2.
        let mut op: MellinOperator<Rat> = MellinOperator::new(Var::T0, 1);
        op.add_term(0, EulerPolynomial::euler());
        op.add_term(
            1,
            EulerPolynomial::new(vec![Rat::int(0), Rat::int(0), Rat::int(-1)]),
        );
        match frobenius_at_zero(&op, 5) {
            Err(Error::IrregularSingularity { .. }) => {}
            other => panic!("expected irregular-singularity error, got {other:?}"),
        }
    }

    #[test]
    fn basis_at_one_for_the_cubic_mzv_family() {
        // lambda = 1: v1 = s + ..., v2 = s^2 + ..., v3 = (1/2) v2 ln s + 1 + w.
        let l = 1.0f64;
        let e = Complex64::from_polar(1.0, crate::special::PI / 3.0);
        let params =
            HyperParams::new(vec![c(-l), e * l, e.conj() * l], vec![c(1.0), c(1.0)]).unwrap();
        let basis = frobenius_at_one(&params, 12).unwrap();
        assert_eq!(basis.solutions.len(), 3);
        let v2 = &basis.solutions[1];
        assert!((v2.branch(0).gamma - c(2.0)).norm() < 1e-9);
        assert!(
            (v2.branch(0).coeff(0) - c(1.0)).norm() < 1e-9,
            "v2 = lambda^3 s^2 + ..."
        );
        let v3 = &basis.solutions[2];
        assert_eq!(v3.max_log_power(), 1);
        assert!((v3.branch(0).coeff(0) - c(1.0)).norm() < 1e-9, "v3(0) = 1");
        // residual against the substituted operator
        let op = hypergeometric_operator(&params).unwrap();
        let sub = op.substitute_one_minus_t(16).unwrap();
        for sol in &basis.solutions {
            assert!(residual_norm(&sub, sol, 10).unwrap() < 1e-9);
        }
    }

    #[test]
    fn infinity_regular_series_kummer() {
        // p = q = 1: t^{-alpha} G(1/t) with G the 2F0 coefficients
        // (alpha)_n (alpha - beta + 1)_n / n! in powers of -1/t.
        let (alpha, beta) = (c(0.4), c(1.9));
        let params = HyperParams::new(vec![alpha], vec![beta]).unwrap();
        let (regular, wkb) = formal_at_infinity(&params, 6).unwrap();
        assert_eq!(regular.len(), 1);
        assert_eq!(wkb.len(), 1);
        let g = &regular[0];
        assert!((g.gamma - alpha).norm() < 1e-12);
        let mut want = Complex64::new(1.0, 0.0);
        for n in 0..=5usize {
            assert!((g.coeff(n) - want).norm() < 1e-10, "n = {n}");
            want = want * (alpha + n as f64) * (alpha - beta + (n as f64 + 1.0)) / (n as f64 + 1.0)
                * (-1.0);
        }
    }
}
