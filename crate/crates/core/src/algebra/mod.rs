//! Operator and series algebra: graded truncated power series, polynomials
//! in the Euler derivative `D = var * d/dvar`, operators `sum var^m P_m(D)`,
//! and solutions with logarithm stacks.
//!
//! All values are immutable after construction and every operation is a pure
//! function; the types are `Send + Sync` for free.

mod logstack;
mod operator;
mod poly;
mod series;

pub use logstack::LogStackSolution;
pub use operator::{residual_norm, MellinOperator};
pub use poly::EulerPolynomial;
pub use series::{GradedSeries, Var};
