//! Solutions with logarithms: `sum_j (ln var)^j / j! * series_j`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::series::{GradedSeries, Var};
use crate::error::Error;
use crate::scalar::Scalar;
use crate::Result;

/// A finite stack of graded series weighted by `(ln var)^j / j!`.
///
/// `branches[j]` is the series multiplying `(ln var)^j / j!`; the `j = 0`
/// branch is always present. All branches share the variable and lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct LogStackSolution<K> {
    branches: Vec<GradedSeries<K>>,
}

impl<K: Scalar> LogStackSolution<K> {
    pub fn new(branches: Vec<GradedSeries<K>>) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::Domain("log stack needs at least the j = 0 branch"));
        }
        let var = branches[0].var;
        let denom = branches[0].denom;
        if branches.iter().any(|b| b.var != var) {
            return Err(Error::VariableMismatch);
        }
        if branches.iter().any(|b| b.denom != denom) {
            return Err(Error::LatticeMismatch);
        }
        let mut s = LogStackSolution { branches };
        s.trim();
        Ok(s)
    }

    pub fn from_series(series: GradedSeries<K>) -> Self {
        LogStackSolution {
            branches: vec![series],
        }
    }

    fn trim(&mut self) {
        while self.branches.len() > 1 && self.branches.last().is_some_and(|b| b.is_zero()) {
            self.branches.pop();
        }
    }

    pub fn var(&self) -> Var {
        self.branches[0].var
    }

    pub fn denom(&self) -> u32 {
        self.branches[0].denom
    }

    /// Highest log power present.
    pub fn max_log_power(&self) -> usize {
        self.branches.len() - 1
    }

    pub fn branches(&self) -> &[GradedSeries<K>] {
        &self.branches
    }

    /// Branch for log power `j` (zero series if absent).
    pub fn branch(&self, j: usize) -> GradedSeries<K> {
        self.branches
            .get(j)
            .cloned()
            .unwrap_or_else(|| GradedSeries::raw(self.var(), self.denom(), K::zero(), Vec::new()))
    }

    pub fn is_zero(&self) -> bool {
        self.branches.iter().all(|b| b.is_zero())
    }

    pub fn scale(&self, s: &K) -> Self {
        LogStackSolution {
            branches: self.branches.iter().map(|b| b.scale(s)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-K::one())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.branches.len().max(other.branches.len());
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            match (self.branches.get(j), other.branches.get(j)) {
                (Some(a), Some(b)) => out.push(a.add(b)?),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        let mut s = LogStackSolution { branches: out };
        s.trim();
        Ok(s)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Multiply by `var^(steps/denom)`.
    pub fn shift_exponent_steps(&self, steps: i64) -> Self {
        LogStackSolution {
            branches: self
                .branches
                .iter()
                .map(|b| b.shift_exponent_steps(steps))
                .collect(),
        }
    }

    /// Refine the lattice denominator.
    pub fn with_denom(&self, new_denom: u32) -> Self {
        LogStackSolution {
            branches: self
                .branches
                .iter()
                .map(|b| b.with_denom(new_denom))
                .collect(),
        }
    }

    /// Euler derivative using `D (var^a ln^j var) = a var^a ln^j var + j var^a ln^(j-1) var`.
    ///
    /// In the `/j!` normalization this is `branch_j -> D branch_j + branch_(j+1)`.
    pub fn euler_derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.branches.len());
        for j in 0..self.branches.len() {
            let mut b = self.branches[j].euler_derivative();
            if let Some(next) = self.branches.get(j + 1) {
                // Window of the sum handled by series add.
                b = b.add(next).unwrap_or_else(|_| b.clone());
            }
            out.push(b);
        }
        let mut s = LogStackSolution { branches: out };
        s.trim();
        s
    }

    /// Replace `ln var` by `ln var + c` (absorbing constants such as
    /// `ln lambda^3` into the analytic branches):
    /// `branch_j -> sum_i branch_(j+i) c^i / i!`.
    pub fn log_shift(&self, c: &K) -> Self {
        let nb = self.branches.len();
        let mut out = Vec::with_capacity(nb);
        for j in 0..nb {
            let mut acc = self.branches[j].clone();
            let mut cpow = K::one();
            for i in 1..nb - j {
                cpow = cpow.clone() * c.clone() / K::from_i64(i as i64);
                let term = self.branches[j + i].scale(&cpow);
                acc = match acc.add(&term) {
                    Ok(v) => v,
                    Err(_) => acc,
                };
            }
            out.push(acc);
        }
        let mut s = LogStackSolution { branches: out };
        s.trim();
        s
    }

    /// Max coefficient magnitude across branches.
    pub fn max_coeff_magnitude(&self) -> f64 {
        let mut m = 0.0;
        for b in &self.branches {
            let v = b.max_coeff_magnitude();
            if v > m {
                m = v;
            }
        }
        m
    }
}

impl LogStackSolution<Complex64> {
    /// Evaluate the stack at `x` (principal log).
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let lx = x.ln();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut lpow = Complex64::new(1.0, 0.0);
        let mut fact = 1.0;
        for (j, b) in self.branches.iter().enumerate() {
            if j > 0 {
                lpow *= lx;
                fact *= j as f64;
            }
            acc += b.eval(x) * lpow / fact;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    #[test]
    fn euler_derivative_product_rule() {
        // D (t^a ln t) = a t^a ln t + t^a  with a = 2.
        let ser = GradedSeries::new(Var::T0, 1, Rat::int(2), vec![Rat::int(1)]);
        let stack = LogStackSolution::new(vec![
            GradedSeries::zero_window(Var::T0, 1, Rat::int(2), 1),
            ser.clone(),
        ])
        .unwrap();
        let d = stack.euler_derivative();
        // branch1 = 2 t^2, branch0 = t^2
        assert_eq!(d.branch(1).coeff(0), Rat::int(2));
        assert_eq!(d.branch(0).coeff(0), Rat::int(1));
    }

    #[test]
    fn log_shift_moves_content_down() {
        // ln t + c with stack {branch1 = 1}: branch0 picks up c.
        let one = GradedSeries::new(Var::T0, 1, Rat::int(0), vec![Rat::int(1)]);
        let stack = LogStackSolution::new(vec![
            GradedSeries::zero_window(Var::T0, 1, Rat::int(0), 1),
            one.clone(),
        ])
        .unwrap();
        let shifted = stack.log_shift(&Rat::int(7));
        assert_eq!(shifted.branch(0).coeff(0), Rat::int(7));
        assert_eq!(shifted.branch(1).coeff(0), Rat::int(1));
    }
}
