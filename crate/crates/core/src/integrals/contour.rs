//! Residues as circle-contour integrals.

use num_complex::Complex64;

use crate::error::Error;
use crate::special::PI;
use crate::{Result, C64};

/// A circle `|b| = r` sampled at `samples` points (a power of two >= 64).
///
/// The radius must lie inside the Laurent annulus of the integrand; for the
/// two-branch-point kernels here the geometric mean of the annulus bounds
/// (r = 1 for the standard normalization) keeps maximal distance to both.
#[derive(Clone, Copy, Debug)]
pub struct ContourSpec {
    pub radius: f64,
    pub samples: usize,
}

impl Default for ContourSpec {
    fn default() -> Self {
        ContourSpec {
            radius: 1.0,
            samples: 64,
        }
    }
}

impl ContourSpec {
    pub fn new(radius: f64, samples: usize) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::Domain("contour radius must be positive"));
        }
        if samples < 64 || !samples.is_power_of_two() {
            return Err(Error::Domain(
                "contour samples must be a power of two >= 64",
            ));
        }
        Ok(ContourSpec { radius, samples })
    }
}

/// `(1/2 pi i) closed-integral f(b) db` on `|b| = r` by the trapezoid rule,
/// doubling the sample count until the change is below 1e-11 (spectrally
/// accurate for annulus-analytic integrands).
pub fn contour_residue(f: &dyn Fn(C64) -> C64, spec: ContourSpec) -> Result<C64> {
    let mut m = spec.samples;
    let mut prev = trapezoid_residue(f, spec.radius, m);
    loop {
        m *= 2;
        if m > 1 << 14 {
            return Err(Error::NonConvergence {
                last_ratio: f64::NAN,
            });
        }
        let cur = trapezoid_residue(f, spec.radius, m);
        if (cur - prev).norm() < 1e-11 {
            return Ok(cur);
        }
        prev = cur;
    }
}

/// Single trapezoid pass without the doubling control (used internally by
/// the product quadratures where the sample count is fixed).
pub(crate) fn trapezoid_residue(f: &dyn Fn(C64) -> C64, radius: f64, m: usize) -> C64 {
    // (1/2 pi i) int f db = (1/2 pi) int f(r e^{i th}) r e^{i th} d th
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..m {
        let th = 2.0 * PI * k as f64 / m as f64;
        let b = Complex64::from_polar(radius, th);
        acc += f(b) * b;
    }
    acc / m as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmath;

    #[test]
    fn residue_of_exp_over_b() {
        let v = contour_residue(&|b| b.exp() / b, ContourSpec::default()).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn residue_of_inverse_square_vanishes() {
        let v = contour_residue(&|b| 1.0 / (b * b), ContourSpec::default()).unwrap();
        assert!(v.norm() < 1e-13);
    }

    #[test]
    fn bessel_kernel_residue() {
        // Res_{b=0} e^{(t/2)(b - 1/b)} d ln b = J_0(t) at t = 2.
        let t = 2.0;
        let f = move |b: C64| ((t / 2.0) * (b - 1.0 / b)).exp() / b;
        let v = contour_residue(&f, ContourSpec::default()).unwrap();
        assert!((v.re - 0.223_890_779_141_235_6) < 1e-10 && fmath::abs(v.im) < 1e-12);
    }

    #[test]
    fn branch_cut_on_the_circle_reports_nonconvergence() {
        // sqrt(b - 1)/b has a branch point on |b| = 1: the trapezoid cannot
        // reach the doubling tolerance and must say so.
        let f = |b: C64| (b - 1.0).sqrt() / b;
        assert!(matches!(
            contour_residue(&f, ContourSpec::default()),
            Err(crate::error::Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn radius_independence_inside_annulus() {
        let t = 2.0;
        let f = move |b: C64| ((t / 2.0) * (b - 1.0 / b)).exp() / b;
        let base = contour_residue(&f, ContourSpec::default()).unwrap();
        for r in [0.8, 1.25] {
            let v = contour_residue(&f, ContourSpec::new(r, 64).unwrap()).unwrap();
            assert!((v - base).norm() < 1e-10);
        }
    }
}
