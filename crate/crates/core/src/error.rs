//! Error type shared by the whole crate.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A lower pFq parameter is a non-positive integer.
    InvalidLowerParameter { index: usize },
    /// The series has p > q + 1 and no formal evaluation was requested.
    DivergentSeries,
    /// A series did not meet the tolerance within the term budget.
    NonConvergence { last_ratio: f64 },
    /// Two series/operators live on different variables.
    VariableMismatch,
    /// Operation needs a common exponent lattice and none exists.
    LatticeMismatch,
    /// The indicial polynomial has too small a degree: the point is an
    /// irregular singularity and WKB machinery applies instead.
    IrregularSingularity {
        indicial_degree: usize,
        order: usize,
    },
    /// The indicial polynomial vanishes at a lattice point reached by a
    /// right-hand side, so the operator cannot be inverted there.
    ResonantLatticePoint { lattice_steps: i64 },
    /// Log powers above the operator order are not representable.
    LogPowerCap { power: usize, cap: usize },
    /// Linear system for connection coefficients is singular.
    SingularSystem,
    /// Argument outside the validity domain of a representation.
    Domain(&'static str),
    /// No WKB branch dominates on the requested ray.
    NoDominantBranch,
    /// Two root branches collided along the integration path.
    BranchCollision,
    /// The triangular amplitude recurrence hit a zero pivot.
    AmplitudeResonance { order: usize },
    /// Polynomial root finding failed to converge or to factor exactly.
    RootFinding(String),
    /// Evaluation at a pole of Gamma/digamma.
    Pole(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidLowerParameter { index } => {
                write!(f, "lower parameter #{index} is a non-positive integer")
            }
            Error::DivergentSeries => write!(f, "series is divergent (p > q + 1)"),
            Error::NonConvergence { last_ratio } => {
                write!(f, "series did not converge (last term ratio {last_ratio:.3e})")
            }
            Error::VariableMismatch => write!(f, "series variables do not match"),
            Error::LatticeMismatch => write!(f, "exponents do not lie on a common lattice"),
            Error::IrregularSingularity { indicial_degree, order } => write!(
                f,
                "irregular singularity: indicial degree {indicial_degree} < operator order {order}; use the wkb module"
            ),
            Error::ResonantLatticePoint { lattice_steps } => {
                write!(f, "indicial polynomial vanishes {lattice_steps} lattice steps above the leading exponent")
            }
            Error::LogPowerCap { power, cap } => {
                write!(f, "log power {power} exceeds the operator-order cap {cap}")
            }
            Error::SingularSystem => write!(f, "linear system is singular"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NoDominantBranch => write!(f, "no strictly dominant WKB branch on this ray"),
            Error::BranchCollision => write!(f, "root branches collided on the path (turning point)"),
            Error::AmplitudeResonance { order } => {
                write!(f, "amplitude recurrence is resonant at order {order}")
            }
            Error::RootFinding(msg) => write!(f, "root finding failed: {msg}"),
            Error::Pole(what) => write!(f, "evaluation at a pole of {what}"),
        }
    }
}

impl core::error::Error for Error {}
