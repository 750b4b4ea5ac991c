//! Operators of the form `sum_m var^m P_m(D)` on a rational exponent lattice.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::logstack::LogStackSolution;
use super::poly::EulerPolynomial;
use super::series::{GradedSeries, Var};
use crate::error::Error;
use crate::scalar::Scalar;
use crate::Result;

/// Finite sum `sum_m var^(m/denom) P_m(D)` with `D = var d/dvar`.
///
/// Offsets are stored in lattice steps (`m` above is `steps/denom`) and may
/// be negative in intermediate results; [`MellinOperator::normalize_offsets`]
/// clears denominators by left-multiplying with the minimal power of `var`.
#[derive(Clone, Debug, PartialEq)]
pub struct MellinOperator<K> {
    pub var: Var,
    pub denom: u32,
    terms: BTreeMap<i64, EulerPolynomial<K>>,
}

impl<K: Scalar> MellinOperator<K> {
    pub fn new(var: Var, denom: u32) -> Self {
        MellinOperator {
            var,
            denom,
            terms: BTreeMap::new(),
        }
    }

    /// `var^(steps/denom) P(D)` as a single-term operator.
    pub fn monomial(var: Var, denom: u32, steps: i64, poly: EulerPolynomial<K>) -> Self {
        let mut op = Self::new(var, denom);
        op.add_term(steps, poly);
        op
    }

    /// The operator `Q(D) + var * P1(D)` and friends are assembled with this.
    pub fn add_term(&mut self, steps: i64, poly: EulerPolynomial<K>) {
        if poly.is_zero() {
            return;
        }
        match self.terms.remove(&steps) {
            Some(p) => {
                let sum = p.add(&poly);
                if !sum.is_zero() {
                    self.terms.insert(steps, sum);
                }
            }
            None => {
                self.terms.insert(steps, poly);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &EulerPolynomial<K>)> {
        self.terms.iter().map(|(&s, p)| (s, p))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Max polynomial degree across terms: the operator order.
    pub fn order(&self) -> usize {
        self.terms.values().map(|p| p.degree()).max().unwrap_or(0)
    }

    pub fn min_offset_steps(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_offset_steps(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// The polynomial at offset 0 (after normalization this is the indicial
    /// polynomial).
    pub fn indicial(&self) -> EulerPolynomial<K> {
        self.terms
            .get(&0)
            .cloned()
            .unwrap_or_else(EulerPolynomial::zero)
    }

    /// Left-multiply by `var^(-min_offset)` so all offsets are >= 0.
    pub fn normalize_offsets(&self) -> Self {
        match self.min_offset_steps() {
            Some(m) if m < 0 => self.shifted(-m),
            _ => self.clone(),
        }
    }

    /// Left-multiply by `var^(steps/denom)`.
    pub fn shifted(&self, steps: i64) -> Self {
        let mut out = Self::new(self.var, self.denom);
        for (&s, p) in &self.terms {
            out.terms.insert(s + steps, p.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common_lattice(other)?;
        let mut out = a.clone();
        for (&s, p) in &b.terms {
            out.add_term(s, p.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = Self::new(self.var, self.denom);
        for (&s, p) in &self.terms {
            out.add_term(s, p.scale(c));
        }
        out
    }

    pub fn with_denom(&self, new_denom: u32) -> Self {
        assert!(new_denom.is_multiple_of(self.denom));
        let f = (new_denom / self.denom) as i64;
        let mut out = Self::new(self.var, new_denom);
        for (&s, p) in &self.terms {
            out.terms.insert(s * f, p.clone());
        }
        out
    }

    fn common_lattice(&self, other: &Self) -> Result<(Self, Self)> {
        if self.var != other.var {
            return Err(Error::VariableMismatch);
        }
        let l = super::series::lcm(self.denom as u64, other.denom as u64);
        if l > u32::MAX as u64 {
            return Err(Error::LatticeMismatch);
        }
        Ok((self.with_denom(l as u32), other.with_denom(l as u32)))
    }

    /// Operator composition `self o other`, using the reordering rule
    /// `D o var^a = var^a o (D + a)`:
    /// `(var^a A(D)) o (var^b B(D)) = var^(a+b) A(D + b) B(D)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common_lattice(other)?;
        let mut out = Self::new(a.var, a.denom);
        for (&sa, pa) in &a.terms {
            for (&sb, pb) in &b.terms {
                let shift = K::from_ratio(sb, a.denom as i64);
                let shifted = pa.shift_arg(&shift);
                out.add_term(sa + sb, shifted.mul(pb));
            }
        }
        Ok(out)
    }

    /// Apply to a graded series: `(var^m P(D))(var^e) = P(e) var^(e+m)`.
    pub fn apply_series(&self, s: &GradedSeries<K>) -> Result<GradedSeries<K>> {
        if s.var != self.var {
            return Err(Error::VariableMismatch);
        }
        let l = super::series::lcm(self.denom as u64, s.denom as u64) as u32;
        let op = self.with_denom(l);
        let s = s.with_denom(l);
        let mut acc: Option<GradedSeries<K>> = None;
        for (&steps, p) in &op.terms {
            let mut piece = s.clone();
            for (n, c) in piece.coeffs.iter_mut().enumerate() {
                let e = s.gamma.clone() + K::from_ratio(n as i64, l as i64);
                *c = c.clone() * p.eval(&e);
            }
            let piece = piece.shift_exponent_steps(steps);
            acc = Some(match acc {
                None => piece,
                Some(a) => a.add(&piece)?,
            });
        }
        Ok(acc.unwrap_or_else(|| GradedSeries::raw(s.var, l, s.gamma.clone(), Vec::new())))
    }

    /// Apply to a log stack, via Horner in `D` at the stack level.
    pub fn apply(&self, sol: &LogStackSolution<K>) -> Result<LogStackSolution<K>> {
        if sol.var() != self.var {
            return Err(Error::VariableMismatch);
        }
        let l = super::series::lcm(self.denom as u64, sol.denom() as u64) as u32;
        let op = self.with_denom(l);
        let sol = sol.with_denom(l);
        let mut acc: Option<LogStackSolution<K>> = None;
        for (&steps, p) in &op.terms {
            // Horner: piece = P(D) sol.
            let mut piece = sol.scale(&p.coeffs().last().cloned().unwrap_or_else(K::zero));
            if p.degree() >= 1 {
                for k in (0..p.degree()).rev() {
                    let c = p.coeffs().get(k).cloned().unwrap_or_else(K::zero);
                    piece = piece.euler_derivative().add(&sol.scale(&c))?;
                }
            }
            let piece = piece.shift_exponent_steps(steps);
            acc = Some(match acc {
                None => piece,
                Some(a) => a.add(&piece)?,
            });
        }
        Ok(acc.unwrap_or_else(|| sol.scale(&K::zero())))
    }

    /// Rewrite an integer-lattice operator in `t` as one in `s = 1 - t`
    /// (or back), clearing denominators by a left power of the new variable.
    ///
    /// Uses `D_t = -(1 - s) d/ds = (1 - 1/s) D_s` and expands each
    /// `t^m P_m(D_t)` by Horner in the operator algebra. The result acts
    /// identically to the original on functions of `t = 1 - s`, up to the
    /// left-cleared power.
    pub fn substitute_one_minus_t(&self, max_offset: i64) -> Result<Self> {
        if self.denom != 1 {
            return Err(Error::Domain("substitution requires an integer lattice"));
        }
        let new_var = match self.var {
            Var::T0 => Var::S0,
            Var::S0 => Var::T0,
            _ => return Err(Error::Domain("substitution is defined between t and 1 - t")),
        };
        // X = D_s - s^{-1} D_s  represents D_t in the new variable.
        let mut x = MellinOperator::new(new_var, 1);
        x.add_term(0, EulerPolynomial::euler());
        x.add_term(-1, EulerPolynomial::euler().neg());

        let mut acc = MellinOperator::new(new_var, 1);
        for (&m, p) in &self.terms {
            if m < 0 {
                return Err(Error::Domain("substitution input must have offsets >= 0"));
            }
            // p(X) by Horner.
            let mut h = MellinOperator::new(new_var, 1);
            for k in (0..=p.degree()).rev() {
                h = h.compose(&x)?;
                let c = p.coeffs().get(k).cloned().unwrap_or_else(K::zero);
                h.add_term(0, EulerPolynomial::constant(c));
            }
            // (1 - s)^m on the left: multiplication operators, offsets 0..m.
            let mut bin = MellinOperator::new(new_var, 1);
            let mut coeff = K::one();
            for j in 0..=m {
                if j > 0 {
                    coeff = coeff * K::from_i64(-(m - j + 1)) / K::from_i64(j);
                }
                bin.add_term(j, EulerPolynomial::constant(coeff.clone()));
            }
            acc = acc.add(&bin.compose(&h)?)?;
        }
        let out = acc.normalize_offsets();
        if out.max_offset_steps().unwrap_or(0) > max_offset {
            return Err(Error::Domain(
                "substitution exceeded the requested offset bound",
            ));
        }
        Ok(out)
    }
}

/// Max absolute coefficient of `op(sol)` over exponents within `order`
/// lattice steps of the solution's leading exponent (and within the image's
/// reliable window). Exact solutions give exactly zero.
pub fn residual_norm<K: Scalar>(
    op: &MellinOperator<K>,
    sol: &LogStackSolution<K>,
    order: usize,
) -> Result<f64> {
    let image = op.apply(sol)?;
    // Leading exponent of the solution (minimum over branches).
    let denom = image.denom();
    let mut sol_lead: Option<K> = None;
    for b in sol.branches() {
        if b.is_empty() {
            continue;
        }
        let g = b.gamma.clone();
        sol_lead = Some(match sol_lead {
            None => g,
            Some(cur) => {
                let d = (g.clone() - cur.clone()) * K::from_i64(denom as i64);
                match d.nearest_i64() {
                    Some(k) if k < 0 => g,
                    _ => cur,
                }
            }
        });
    }
    let Some(lead) = sol_lead else { return Ok(0.0) };
    let mut worst = 0.0f64;
    for b in image.branches() {
        if b.is_empty() {
            continue;
        }
        let off = ((b.gamma.clone() - lead.clone()) * K::from_i64(denom as i64))
            .nearest_i64()
            .ok_or(Error::LatticeMismatch)?;
        for (n, c) in b.coeffs.iter().enumerate() {
            if off + (n as i64) <= order as i64 {
                let v = c.magnitude();
                if v > worst {
                    worst = v;
                }
            }
        }
    }
    Ok(worst)
}
