//! Local solutions at regular singular points (with logarithms), formal
//! solutions at infinity, connection-coefficient solving, and the Airy
//! conjugation machinery.

mod basis;
mod connection;
mod langer;
mod mujet;
mod roots;
mod wasow;

pub use basis::{
    formal_at_infinity, frobenius_at_one, frobenius_at_zero, ExpansionPoint, FrobeniusBasis,
};
pub use connection::{solve_connection, stack_derivatives, ConnectionData};
pub use langer::{langer_normalize, langer_residual};
pub use roots::IndicialField;
pub use wasow::{wasow_transform, Bivariate, WasowTransform};
