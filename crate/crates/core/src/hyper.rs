//! pFq parameters, direct series evaluation with tail-error control, series
//! coefficients by the operator recurrence, and the Euler-operator form of
//! the hypergeometric equation.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::algebra::{EulerPolynomial, GradedSeries, MellinOperator, Var};
use crate::error::Error;
use crate::fmath;
use crate::scalar::Scalar;
use crate::{Result, C64};

/// Upper and lower parameters of a pFq series.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperParams {
    pub upper: Vec<C64>,
    pub lower: Vec<C64>,
}

/// Convergence class of a pFq series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// Some upper parameter is a non-positive integer: the series terminates.
    Polynomial,
    /// p = q + 1: radius of convergence 1.
    Balanced,
    /// p < q + 1: entire.
    Confluent,
    /// p > q + 1: zero radius (formal only).
    Divergent,
}

impl HyperParams {
    pub fn new(upper: Vec<C64>, lower: Vec<C64>) -> Result<Self> {
        for (i, b) in lower.iter().enumerate() {
            if is_nonpositive_integer(*b) {
                return Err(Error::InvalidLowerParameter { index: i });
            }
        }
        Ok(HyperParams { upper, lower })
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }

    pub fn kind(&self) -> Kind {
        if self.upper.iter().any(|a| is_nonpositive_integer(*a)) {
            return Kind::Polynomial;
        }
        match (self.p(), self.q() + 1) {
            (p, q1) if p == q1 => Kind::Balanced,
            (p, q1) if p < q1 => Kind::Confluent,
            _ => Kind::Divergent,
        }
    }

    /// Coefficient ratio a_{n+1}/a_n of the series (t-free part).
    fn ratio(&self, n: usize) -> C64 {
        let nn = Complex64::new(n as f64, 0.0);
        let mut r = Complex64::new(1.0, 0.0);
        for a in &self.upper {
            r *= a + nn;
        }
        for b in &self.lower {
            r /= b + nn;
        }
        r / (n as f64 + 1.0)
    }

    /// Partial sum with a tail estimate.
    ///
    /// The estimate is the geometric bound `|next| / (1 - r)` while the term
    /// ratio r stays below 1; for balanced series at t = 1 (convergent when
    /// `Re(sum beta - sum alpha) > 0`) the algebraic tail
    /// `|term_N| * N / Re(sum beta - sum alpha)` is used instead.
    pub fn eval(&self, t: C64, tol: f64, max_terms: usize) -> Result<(C64, f64)> {
        match self.kind() {
            Kind::Divergent => return Err(Error::DivergentSeries),
            Kind::Balanced => {
                let at_one = (t - 1.0).norm() < 1e-14;
                if t.norm() > 1.0 + 1e-14 && !at_one {
                    return Err(Error::Domain("balanced series requires |t| < 1 or t = 1"));
                }
                if at_one && self.balance_excess().re <= 0.0 {
                    return Err(Error::Domain(
                        "balanced series at t = 1 needs Re(sum beta - sum alpha) > 0",
                    ));
                }
            }
            _ => {}
        }
        let at_one = self.kind() == Kind::Balanced && (t - 1.0).norm() < 1e-14;
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        let mut comp = Complex64::new(0.0, 0.0); // Kahan compensation
        let mut last_ratio = f64::INFINITY;
        let mut prev_ratio = f64::INFINITY;
        for n in 0..max_terms {
            let next = term * self.ratio(n) * t;
            // Kahan summation: large pFq arguments cancel heavily.
            let y = next - comp;
            let s = sum + y;
            comp = (s - sum) - y;
            sum = s;
            let prev = term;
            term = next;
            if prev.norm() > 0.0 {
                prev_ratio = last_ratio;
                last_ratio = term.norm() / prev.norm();
            }
            if term.norm() == 0.0 {
                // terminating (polynomial) case
                return Ok((sum, 0.0));
            }
            // Geometric bound with the worse of the last two ratios, so a
            // still-settling ratio cannot fake convergence near |t| = 1.
            let r = fmath::max(last_ratio, prev_ratio.min(1.0));
            let est = if at_one {
                let sigma = self.balance_excess().re;
                term.norm() * (n as f64 + 2.0) / sigma
            } else if r < 0.9999 {
                term.norm() * r / (1.0 - r)
            } else {
                f64::INFINITY
            };
            if est <= tol && n > 8 {
                return Ok((sum, est));
            }
        }
        Err(Error::NonConvergence { last_ratio })
    }

    /// `sum beta_j - sum alpha_i` (controls convergence at t = 1).
    pub fn balance_excess(&self) -> C64 {
        let sb: C64 = self.lower.iter().sum();
        let sa: C64 = self.upper.iter().sum();
        sb - sa
    }

    /// Truncated series via the recurrence `Q(n+1) a_{n+1} = P(n) a_n`,
    /// a_0 = 1. Divergent parameter sets are allowed: the coefficients are
    /// still well defined (a formal series).
    pub fn series(&self, order: usize) -> GradedSeries<C64> {
        let (q, p) = self.qp_polys();
        pfq_series_from_qp(&q, &p, order)
    }

    /// The polynomials Q(D) = D prod(D + beta_j - 1) and P(D) = prod(D + alpha_i).
    pub fn qp_polys(&self) -> (EulerPolynomial<C64>, EulerPolynomial<C64>) {
        let q_roots: Vec<C64> = core::iter::once(Complex64::new(0.0, 0.0))
            .chain(self.lower.iter().map(|b| -(b - 1.0)))
            .collect();
        let p_roots: Vec<C64> = self.upper.iter().map(|a| -a).collect();
        (
            EulerPolynomial::monic_from_roots(&q_roots),
            EulerPolynomial::monic_from_roots(&p_roots),
        )
    }
}

/// Series with coefficients from `Q(n+1) a_{n+1} = P(n) a_n`, generic in the
/// coefficient field (exact-rational identity tests use `Rat`).
pub fn pfq_series_from_qp<K: Scalar>(
    q: &EulerPolynomial<K>,
    p: &EulerPolynomial<K>,
    order: usize,
) -> GradedSeries<K> {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(K::one());
    for n in 0..order {
        let num = p.eval(&K::from_i64(n as i64));
        let den = q.eval(&K::from_i64(n as i64 + 1));
        let prev = coeffs[n].clone();
        coeffs.push(prev * num / den);
    }
    GradedSeries::new(Var::T0, 1, K::zero(), coeffs)
}

/// The hypergeometric operator `Q(D) - t P(D)` with
/// `Q = D prod(D + beta_j - 1)` (monic, degree q+1) and
/// `P = prod(D + alpha_i)`.
pub fn hypergeometric_operator(params: &HyperParams) -> Result<MellinOperator<C64>> {
    // Lower-parameter validity is enforced at construction, but accept raw
    // structs too.
    for (i, b) in params.lower.iter().enumerate() {
        if is_nonpositive_integer(*b) {
            return Err(Error::InvalidLowerParameter { index: i });
        }
    }
    let (q, p) = params.qp_polys();
    Ok(operator_from_qp(Var::T0, q, p))
}

/// Assemble `Q(D) - t P(D)` from the two polynomials (any scalar field;
/// exact tests build rational operators directly from Q, P).
pub fn operator_from_qp<K: Scalar>(
    var: Var,
    q: EulerPolynomial<K>,
    p: EulerPolynomial<K>,
) -> MellinOperator<K> {
    let mut op = MellinOperator::new(var, 1);
    op.add_term(0, q);
    op.add_term(1, p.neg());
    op
}

/// Pochhammer symbol `(a)_n = a (a+1) ... (a+n-1)`, `(a)_0 = 1`.
pub fn pochhammer(a: C64, n: usize) -> C64 {
    let mut r = Complex64::new(1.0, 0.0);
    for i in 0..n {
        r *= a + i as f64;
    }
    r
}

pub(crate) fn is_nonpositive_integer(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && fmath::abs(z.re - fmath::round(z.re)) < 1e-12
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;
    use alloc::vec;

    fn c(re: f64) -> C64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(c(7.3), 0), c(1.0));
        assert_eq!(pochhammer(c(2.0), 3), c(24.0));
        assert!((pochhammer(c(0.5), 2) - c(0.75)).norm() < 1e-15);
    }

    #[test]
    fn pochhammer_matches_gamma_ratio() {
        let a = Complex64::new(0.5, 0.3);
        let direct = pochhammer(a, 6);
        let via_gamma = crate::special::gamma(a + 6.0).unwrap() / crate::special::gamma(a).unwrap();
        assert!((direct - via_gamma).norm() / direct.norm() < 1e-12);
    }

    #[test]
    fn gauss_value_log_closed_form() {
        // 2F1(1,1;2;t) = -ln(1-t)/t
        let p = HyperParams::new(vec![c(1.0), c(1.0)], vec![c(2.0)]).unwrap();
        let (v, err) = p.eval(c(0.5), 1e-12, 1000).unwrap();
        assert!((v - c(2.0 * fmath::ln(2.0))).norm() < 1e-12);
        assert!(err <= 1e-12);
    }

    #[test]
    fn binomial_value() {
        // 1F0(2; ; 0.25) = (0.75)^{-2}
        let p = HyperParams::new(vec![c(2.0)], vec![]).unwrap();
        let (v, _) = p.eval(c(0.25), 1e-12, 1000).unwrap();
        assert!((v - c(1.0 / 0.5625)).norm() < 1e-12);
    }

    #[test]
    fn bessel_value() {
        // 0F1(;1;-1) = J_0(2)
        let p = HyperParams::new(vec![], vec![c(1.0)]).unwrap();
        let (v, _) = p.eval(c(-1.0), 1e-12, 1000).unwrap();
        assert!((v - c(0.223_890_779_141_235_6)).norm() < 1e-10);
    }

    #[test]
    fn invalid_lower_parameter_is_reported() {
        let e = HyperParams::new(vec![c(1.0)], vec![c(2.0), c(-3.0)]).unwrap_err();
        assert_eq!(e, Error::InvalidLowerParameter { index: 1 });
    }

    #[test]
    fn divergent_rejected_but_series_defined() {
        let p = HyperParams {
            upper: vec![c(1.0), c(1.0), c(1.0)],
            lower: vec![c(1.0)],
        };
        assert_eq!(p.kind(), Kind::Divergent);
        assert!(p.eval(c(0.1), 1e-10, 100).is_err());
        let s = p.series(4);
        assert!(!s.is_zero());
    }

    #[test]
    fn series_coefficients_match_closed_forms() {
        // 2F1(1,1;2;.) has coefficients 1/(n+1).
        let p = HyperParams::new(vec![c(1.0), c(1.0)], vec![c(2.0)]).unwrap();
        let s = p.series(6);
        for n in 0..=6 {
            assert!((s.coeff(n) - c(1.0 / (n as f64 + 1.0))).norm() < 1e-14);
        }
        // 0F2(;1,1;.) has coefficients 1/(n!)^3.
        let p = HyperParams::new(vec![], vec![c(1.0), c(1.0)]).unwrap();
        let s = p.series(5);
        let mut f = 1.0;
        for n in 0..=5 {
            if n > 0 {
                f *= n as f64;
            }
            assert!((s.coeff(n) - c(1.0 / (f * f * f))).norm() < 1e-14);
        }
        // order 0 is the constant series 1
        let s0 = p.series(0);
        assert_eq!(s0.len(), 1);
        assert_eq!(s0.coeff(0), c(1.0));
    }

    #[test]
    fn series_recurrence_equals_pochhammer_exactly_in_rationals() {
        // Rational parameters: coefficients via Q/P recurrence equal
        // prod (alpha)_n / prod (beta)_n / n! exactly.
        let alphas = [Rat::ratio(1, 2), Rat::int(2)];
        let betas = [Rat::ratio(5, 3)];
        let q_roots: Vec<Rat> = core::iter::once(Rat::int(0))
            .chain(betas.iter().map(|b| -(b.clone() - Rat::int(1))))
            .collect();
        let p_roots: Vec<Rat> = alphas.iter().map(|a| -a.clone()).collect();
        let q = EulerPolynomial::monic_from_roots(&q_roots);
        let p = EulerPolynomial::monic_from_roots(&p_roots);
        let s = pfq_series_from_qp(&q, &p, 12);
        for n in 0..=12usize {
            let mut want = Rat::int(1);
            for a in &alphas {
                for i in 0..n {
                    want = want * (a.clone() + Rat::int(i as i64));
                }
            }
            for b in &betas {
                for i in 0..n {
                    want = want / (b.clone() + Rat::int(i as i64));
                }
            }
            for i in 1..=n {
                want = want / Rat::int(i as i64);
            }
            assert_eq!(s.coeff(n), want, "n = {n}");
        }
    }

    #[test]
    fn operator_from_params_matches_expanded_form() {
        // alpha = (l, -l), beta = (1): D^2 - t (D + l)(D - l)
        let l = 0.7;
        let p = HyperParams::new(vec![c(l), c(-l)], vec![c(1.0)]).unwrap();
        let op = hypergeometric_operator(&p).unwrap();
        let terms: Vec<_> = op.terms().collect();
        assert_eq!(terms.len(), 2);
        // Q = D^2
        assert_eq!(terms[0].0, 0);
        let qc = terms[0].1.coeffs();
        assert!((qc[0]).norm() < 1e-15 && (qc[1]).norm() < 1e-15);
        assert!((qc[2] - c(1.0)).norm() < 1e-15);
        // -P = -(D^2 - l^2)
        let pc = terms[1].1.coeffs();
        assert!((pc[0] - c(l * l)).norm() < 1e-15);
        assert!((pc[2] + c(1.0)).norm() < 1e-15);
        // empty products: D - t
        let e = HyperParams::new(vec![], vec![]).unwrap();
        let op = hypergeometric_operator(&e).unwrap();
        let terms: Vec<_> = op.terms().collect();
        assert_eq!(terms[0].1.coeffs().len(), 2); // D
        assert_eq!(terms[1].1.coeffs().len(), 1); // -1
    }

    #[test]
    fn balanced_at_one_gauss_formula() {
        // 2F1(a1,a2;b;1) = G(b)G(b-a1-a2)/(G(b-a1)G(b-a2))
        let (a1, a2, b) = (c(0.3), c(0.5), c(4.0));
        let p = HyperParams::new(vec![a1, a2], vec![b]).unwrap();
        let (v, _) = p.eval(c(1.0), 1e-11, 200_000).unwrap();
        let g = |z: C64| crate::special::gamma(z).unwrap();
        let want = g(b) * g(b - a1 - a2) / (g(b - a1) * g(b - a2));
        assert!((v - want).norm() < 1e-10, "got {v}, want {want}");
    }
}
