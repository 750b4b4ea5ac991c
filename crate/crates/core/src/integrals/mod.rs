//! Numerical integration: circle-contour residues (spectrally accurate
//! trapezoid), Gauss-Jacobi quadrature for endpoint-singular weights, and
//! the residue/hypercube integral representations of pFq series.

mod contour;
mod jacobi;
mod reps;

pub use contour::{contour_residue, ContourSpec};
pub use jacobi::{gauss_jacobi_01, GaussJacobi};
pub use reps::{
    balanced_residue_rep, bessel_integral_rep, bessel_integral_rep_raw, confluent_residue_rep,
    euler_gauss_integral, euler_step_integral, kummer_integral, v1_integral, v2_integral,
    Rebalance,
};
