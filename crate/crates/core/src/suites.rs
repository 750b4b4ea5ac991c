//! Self-verification suites: every closed-form identity, integral
//! representation, and asymptotic constant in the crate checked against an
//! independent oracle at desk scale. The CLI `verify` subcommand and the
//! acceptance test target both run these.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::algebra::{
    residual_norm, EulerPolynomial, GradedSeries, LogStackSolution, MellinOperator, Var,
};
use crate::error::Error;
use crate::fmath;
use crate::frobenius::{
    formal_at_infinity, frobenius_at_one, frobenius_at_zero, langer_normalize, langer_residual,
    solve_connection, stack_derivatives, wasow_transform,
};
use crate::genfun::{
    delta2, delta3, delta_product_identity, lambda_ode_witness, polylog_route_check,
    second_solution_asymptotic, second_solution_at_one, second_solution_in_sector, Delta2Route,
    Delta3Route, SecondSolutionRoute, Sector,
};
use crate::hyper::{hypergeometric_operator, operator_from_qp, pfq_series_from_qp, HyperParams};
use crate::integrals::{
    balanced_residue_rep, bessel_integral_rep, bessel_integral_rep_raw, confluent_residue_rep,
    contour_residue, euler_gauss_integral, euler_step_integral, gauss_jacobi_01, kummer_integral,
    v1_integral, v2_integral, ContourSpec, Rebalance,
};
use crate::polylog::{mzv, zeta, MzvIndex};
use crate::rng::SplitMix64;
use crate::scalar::{Rat, Scalar};
use crate::special::{
    brute_force_restricted_det, complete_homogeneous_two, elementary_symmetric, gamma,
    restricted_quadform_det, EULER_GAMMA, PI,
};
use crate::variations::{
    bessel_kernel_first_variation, chain_residual, inverse_base_apply, v2_first_variation,
    variation_formula_comparison, variation_recurrence, PerturbedOperator,
};
use crate::wkb::{
    amplitude_residual, confluent_asymptotic_constants, confluent_asymptotic_eval, confluent_wkb,
    hamilton_jacobi_branches, kummer_stokes, kummer_upper_line, large_parameter_eval,
    transport_amplitude,
};
use crate::{Result, C64};

/// One verified statement: measured deviation against a pinned tolerance.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub deviation: f64,
    pub tolerance: f64,
    pub detail: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The available suites, in canonical order.
pub const SUITE_NAMES: [&str; 8] = [
    "closed-form",
    "integral-reps",
    "frobenius",
    "restricted-det",
    "wkb",
    "variations",
    "wasow",
    "connection",
];

pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    let checks = match name {
        "closed-form" => closed_form_suite()?,
        "integral-reps" => integral_suite()?,
        "frobenius" => frobenius_suite()?,
        "restricted-det" => restricted_det_suite(seed, 7)?,
        "wkb" => wkb_suite(seed)?,
        "variations" => variations_suite()?,
        "wasow" => wasow_suite()?,
        "connection" => connection_suite()?,
        _ => return Err(Error::Domain("unknown suite name")),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        checks,
    })
}

/// The restricted-determinant suite with a configurable max dimension.
pub fn run_restricted_det(seed: u64, qmax: usize) -> Result<SuiteReport> {
    Ok(SuiteReport {
        suite: "restricted-det".to_string(),
        seed,
        checks: restricted_det_suite(seed, qmax)?,
    })
}

pub fn run_all(seed: u64) -> Result<Vec<SuiteReport>> {
    SUITE_NAMES.iter().map(|n| run_suite(n, seed)).collect()
}

fn check(name: &str, deviation: f64, tolerance: f64) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed: deviation.is_finite() && deviation <= tolerance,
        deviation,
        tolerance,
        detail: None,
    }
}

fn check_with(name: &str, deviation: f64, tolerance: f64, detail: String) -> CheckResult {
    let mut c = check(name, deviation, tolerance);
    c.detail = Some(detail);
    c
}

fn c(re: f64) -> C64 {
    Complex64::new(re, 0.0)
}

fn series_value(upper: &[C64], lower: &[C64], t: C64) -> Result<C64> {
    let p = HyperParams::new(upper.to_vec(), lower.to_vec())?;
    Ok(p.eval(t, 1e-13, 200_000)?.0)
}

// ---------------------------------------------------------------------------
// closed-form: generating-function routes and the product identity
// ---------------------------------------------------------------------------

fn closed_form_suite() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let grid = [
        c(0.1),
        c(0.3),
        c(0.5),
        c(0.8),
        Complex64::new(0.4, 0.4),
        Complex64::new(-0.6, 0.2),
        Complex64::new(0.3, -0.6),
        c(-0.8),
    ];
    let mut dev_series = 0.0f64;
    let mut dev_product = 0.0f64;
    for l in grid {
        let closed = delta2(l, Delta2Route::Closed)?;
        dev_series = fmath::max(
            dev_series,
            (delta2(l, Delta2Route::Series)? - closed).norm(),
        );
        dev_product = fmath::max(
            dev_product,
            (delta2(l, Delta2Route::Product)? - closed).norm(),
        );
    }
    out.push(check("delta2-series-vs-closed |l|<=0.8", dev_series, 1e-9));
    out.push(check(
        "delta2-product-vs-closed |l|<=0.8",
        dev_product,
        1e-9,
    ));
    out.push(check(
        "delta2(1/2) = 2/pi",
        (delta2(c(0.5), Delta2Route::Closed)? - c(2.0 / PI)).norm(),
        1e-12,
    ));
    let grid3 = [c(0.2), c(0.5), c(0.8), Complex64::new(0.3, 0.3), c(-0.5)];
    let mut dev3 = 0.0f64;
    let mut dev3p = 0.0f64;
    for l in grid3 {
        let g = delta3(l, Delta3Route::Gamma)?;
        dev3 = fmath::max(dev3, (delta3(l, Delta3Route::Series)? - g).norm());
        dev3p = fmath::max(dev3p, (delta3(l, Delta3Route::Product)? - g).norm());
    }
    out.push(check("delta3-series-vs-gamma", dev3, 1e-9));
    out.push(check("delta3-product-vs-gamma", dev3p, 1e-9));
    let lambdas = [
        Complex64::new(0.6, 0.2),
        Complex64::new(0.3, -0.4),
        Complex64::new(1.2, 0.5),
        Complex64::new(-0.8, 0.3),
        Complex64::new(2.5, 1.0),
    ];
    let mut dev522 = 0.0f64;
    let mut dev523 = 0.0f64;
    for l in lambdas {
        let (lhs, rhs, combo) = delta_product_identity(l)?;
        let scale = 1.0 + lhs.norm();
        dev522 = fmath::max(dev522, (lhs - rhs).norm() / scale);
        dev523 = fmath::max(dev523, (combo - rhs).norm() / scale);
    }
    out.push(check("product-identity at 5 complex lambda", dev522, 1e-10));
    out.push(check("exponential-combination form", dev523, 1e-10));
    // single-valuedness along the real axis: relative agreement persists and
    // the combination stays exact as lambda grows
    let (l1, r1, _) = delta_product_identity(c(6.3))?;
    let (l2, r2, _) = delta_product_identity(c(12.3))?;
    let e1 = (l1 - r1).norm() / l1.norm();
    let e2 = (l2 - r2).norm() / l2.norm();
    out.push(check("product-identity real lambda = 6.3", e1, 1e-9));
    out.push(check("product-identity real lambda = 12.3", e2, 1e-9));
    Ok(out)
}

// ---------------------------------------------------------------------------
// integral-reps: residue/hypercube representations vs the series
// ---------------------------------------------------------------------------

fn integral_suite() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    // Balanced q = 1 grid: representation, Euler integral and series all agree.
    let a1s = [0.4, 0.9, 1.7];
    let a2s = [0.3, 0.8, 1.2];
    let bs = [1.8, 2.5, 3.2];
    let ts = [0.1, 0.36, 0.6];
    let mut worst = 0.0f64;
    for &a1 in &a1s {
        for &a2 in &a2s {
            for &b in &bs {
                for &t in &ts {
                    let p = HyperParams::new(vec![c(a1), c(a2)], vec![c(b)])?;
                    let series = series_value(&[c(a1), c(a2)], &[c(b)], c(t))?;
                    let rep = balanced_residue_rep(&p, t, None)?;
                    let euler = euler_gauss_integral(c(a1), c(a2), c(b), c(t))?;
                    worst = fmath::max(worst, (rep - series).norm());
                    worst = fmath::max(worst, (euler - series).norm());
                    worst = fmath::max(worst, (rep - euler).norm());
                }
            }
        }
    }
    out.push(check(
        "balanced residue rep q=1: 3x3x3 grid x 3 t",
        worst,
        1e-7,
    ));
    // Confluent q = 1 grids, p = 0 and p = 1.
    let mut worst = 0.0f64;
    for &b in &[1.6, 2.4, 3.1] {
        for &t in &[0.5, 1.3] {
            let p = HyperParams::new(vec![], vec![c(b)])?;
            let series = series_value(&[], &[c(b)], c(t))?;
            worst = fmath::max(worst, (confluent_residue_rep(&p, t)? - series).norm());
        }
    }
    out.push(check("confluent residue rep p=0, q=1 grid", worst, 1e-7));
    let mut worst = 0.0f64;
    for &a in &[0.3, 0.7, 1.1] {
        for &b in &[1.6, 2.4, 3.1] {
            for &t in &[0.5, 1.3] {
                let p = HyperParams::new(vec![c(a)], vec![c(b)])?;
                let series = series_value(&[c(a)], &[c(b)], c(t))?;
                worst = fmath::max(worst, (confluent_residue_rep(&p, t)? - series).norm());
            }
        }
    }
    out.push(check("confluent residue rep p=1, q=1 grid", worst, 1e-7));
    // Torus versions (q = 2), coarse 4-D quadrature tolerance.
    let p = HyperParams::new(vec![c(0.3), c(0.5), c(0.9)], vec![c(2.5), c(3.0)])?;
    let series = series_value(&[c(0.3), c(0.5), c(0.9)], &[c(2.5), c(3.0)], c(0.2))?;
    out.push(check(
        "balanced residue rep q=2 torus",
        (balanced_residue_rep(&p, 0.2, None)? - series).norm(),
        1e-4,
    ));
    let p = HyperParams::new(vec![c(0.6)], vec![c(2.2), c(2.8)])?;
    let series = series_value(&[c(0.6)], &[c(2.2), c(2.8)], c(0.7))?;
    out.push(check(
        "confluent residue rep p=1, q=2 torus",
        (confluent_residue_rep(&p, 0.7)? - series).norm(),
        1e-4,
    ));
    // Classical kernels against their series.
    let t = 2.0;
    let j0_res = contour_residue(
        &move |b: C64| ((t / 2.0) * (b - 1.0 / b)).exp() / b,
        ContourSpec::default(),
    )?;
    let j0_series = series_value(&[], &[c(1.0)], c(-t * t / 4.0))?;
    out.push(check(
        "Bessel residue kernel at t=2",
        (j0_res - j0_series).norm(),
        1e-8,
    ));
    let series = series_value(&[c(0.5), c(0.7)], &[c(2.2)], c(0.3))?;
    out.push(check(
        "Euler integral (Gauss kernel)",
        (euler_gauss_integral(c(0.5), c(0.7), c(2.2), c(0.3))? - series).norm(),
        1e-8,
    ));
    let p3 = HyperParams::new(vec![c(0.3), c(0.4), c(0.8)], vec![c(1.5), c(2.1)])?;
    let series = series_value(&[c(0.3), c(0.4), c(0.8)], &[c(1.5), c(2.1)], c(0.36))?;
    out.push(check(
        "stepped Euler integral 3F2",
        (euler_step_integral(&p3, c(0.36))? - series).norm(),
        1e-8,
    ));
    let series = series_value(&[c(0.3)], &[c(1.7)], c(2.0))?;
    out.push(check(
        "Kummer integral",
        (kummer_integral(c(0.3), c(1.7), c(2.0))? - series).norm(),
        1e-8,
    ));
    // Bessel J_nu representation (adjudicated weight exponent nu - 1).
    let (nu, z) = (1.3, 1.7);
    let jnu_series = {
        let f = series_value(&[], &[c(nu + 1.0)], c(-z * z / 4.0))?;
        Complex64::new(0.5 * z, 0.0).powf(nu) / gamma(c(nu + 1.0))? * f
    };
    let adopted = bessel_integral_rep(nu, z)?;
    out.push(check(
        "J_nu integral representation",
        (adopted - jnu_series).norm(),
        1e-8,
    ));
    // v-kernel representations vs their series.
    let v1_series = |z: f64| {
        let mut acc = 1.0;
        let mut num = 1.0;
        for n in 1..=40usize {
            num *= z;
            let mut den = 1.0;
            for k in 1..=2 * n + 1 {
                den *= k as f64;
            }
            let mut dd = 1.0;
            let mut m = 2 * n as i64 - 1;
            while m >= 1 {
                dd *= m as f64;
                m -= 2;
            }
            acc += num / (den * dd);
        }
        fmath::sqrt(z) * acc
    };
    let v2_series = |z: f64| {
        let mut acc = 0.0;
        let mut num = 1.0;
        for n in 1..=40usize {
            num *= z;
            let mut den = 1.0;
            for k in 1..=2 * n {
                den *= k as f64;
            }
            let mut dd = 1.0;
            let mut m = 2 * n as i64 - 2;
            while m >= 2 {
                dd *= m as f64;
                m -= 2;
            }
            acc += num / (den * dd);
        }
        2.0 * acc
    };
    out.push(check(
        "v1 tau-integral x residue at z=1",
        (v1_integral(1.0)? - c(v1_series(1.0))).norm(),
        1e-8,
    ));
    let mut worst = 0.0f64;
    for z in [1.0, 4.0] {
        worst = fmath::max(worst, (v2_integral(z)? - c(v2_series(z))).norm());
    }
    out.push(check("v2 single-residue at z in {1,4}", worst, 1e-8));
    // Typo adjudications: the adopted variant matches, the printed one fails.
    let p = HyperParams::new(vec![], vec![c(2.4)])?;
    let series = series_value(&[], &[c(2.4)], c(0.5))?;
    let linear = confluent_residue_rep(&p, 0.5)?;
    let gamma_variant = linear / (2.4 - 1.0) * gamma(c(1.4))?;
    let dev_adopted = (linear - series).norm();
    let dev_printed = (gamma_variant - series).norm();
    out.push(check_with(
        "verdict: confluent constant",
        if dev_printed > 1e-3 { dev_adopted } else { f64::INFINITY },
        1e-8,
        format!(
            "adopted prod(beta-1): dev {dev_adopted:.2e}; Gamma-product variant: dev {dev_printed:.2e}"
        ),
    ));
    let printed = bessel_integral_rep_raw(nu, z, nu)?;
    let dev_printed = (printed - jnu_series).norm();
    let dev_adopted = (adopted - jnu_series).norm();
    out.push(check_with(
        "verdict: Bessel weight exponent",
        if dev_printed > 1e-3 { dev_adopted } else { f64::INFINITY },
        1e-8,
        format!("adopted (1-tau)^(nu-1): dev {dev_adopted:.2e}; printed (1-tau)^nu: dev {dev_printed:.2e}"),
    ));
    // Contour-radius independence inside the annulus.
    let f = move |b: C64| ((2.0 / 2.0) * (b - 1.0 / b)).exp() / b;
    let base = contour_residue(&f, ContourSpec::default())?;
    let mut worst = 0.0f64;
    for r in [0.8, 1.25] {
        worst = fmath::max(
            worst,
            (contour_residue(&f, ContourSpec::new(r, 64)?)? - base).norm(),
        );
    }
    out.push(check(
        "residue radius independence r in {0.8,1,1.25}",
        worst,
        1e-10,
    ));
    // Rebalancing freedom leaves the balanced representation invariant.
    let p = HyperParams::new(vec![c(0.4), c(0.8)], vec![c(2.5)])?;
    let plain = balanced_residue_rep(&p, 0.36, None)?;
    let rb = Rebalance {
        nu: [c(2.0), c(0.5)],
        mu: [0.75, 0.25],
    };
    let shifted = balanced_residue_rep(&p, 0.36, Some(&rb))?;
    out.push(check(
        "rebalancing invariance (nontrivial nu, mu)",
        (plain - shifted).norm(),
        1e-9,
    ));
    Ok(out)
}

// ---------------------------------------------------------------------------
// frobenius: exact residuals for every generated basis
// ---------------------------------------------------------------------------

fn frobenius_suite() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let order = 25usize;
    // Airy operator D^2 - D - t^3 (exact rational).
    let mut airy: MellinOperator<Rat> = MellinOperator::new(Var::T0, 1);
    airy.add_term(
        0,
        EulerPolynomial::new(vec![Rat::int(0), Rat::int(-1), Rat::int(1)]),
    );
    airy.add_term(3, EulerPolynomial::constant(Rat::int(-1)));
    let basis = frobenius_at_zero(&airy, order)?;
    let mut worst = 0.0f64;
    for sol in &basis.solutions {
        worst = fmath::max(worst, residual_norm(&airy, sol, order - 3)?);
    }
    out.push(check("Airy basis residual (exact, order 25)", worst, 0.0));
    // Cubic kernel 8 D(D-1/2)(D-1) - z.
    let q = EulerPolynomial::monic_from_roots(&[Rat::int(0), Rat::ratio(1, 2), Rat::int(1)])
        .scale(&Rat::int(8));
    let kernel = operator_from_qp(Var::Z0, q, EulerPolynomial::constant(Rat::int(1)));
    let vbasis = frobenius_at_zero(&kernel, order)?;
    let mut worst = 0.0f64;
    for sol in &vbasis.solutions {
        worst = fmath::max(worst, residual_norm(&kernel, sol, order - 1)?);
    }
    out.push(check(
        "cubic kernel basis residual (exact, order 25)",
        worst,
        0.0,
    ));
    // The third solution's analytic part: z^2 coefficient exactly -13/576.
    let v3 = &vbasis.solutions[2];
    let z2 = v3.branch(0).coeff(2);
    out.push(check_with(
        "third-solution z^2 coefficient = -13/576 exactly",
        if z2 == Rat::ratio(-13, 576) { 0.0 } else { 1.0 },
        0.0,
        format!("computed {z2}"),
    ));
    // Triple-root family (1 - t) D^3 + t at lambda = 1.
    let d3 = EulerPolynomial::monic_from_roots(&[Rat::int(0), Rat::int(0), Rat::int(0)]);
    let p = EulerPolynomial::new(vec![Rat::int(-1), Rat::int(0), Rat::int(0), Rat::int(1)]);
    let cubic = operator_from_qp(Var::T0, d3, p);
    let basis = frobenius_at_zero(&cubic, order)?;
    let mut worst = 0.0f64;
    for sol in &basis.solutions {
        worst = fmath::max(worst, residual_norm(&cubic, sol, order - 1)?);
    }
    let shared = basis.solutions[2].branch(1) == basis.solutions[1].branch(0);
    out.push(check_with(
        "triple-root log stack residual (exact, order 25)",
        worst + if shared { 0.0 } else { 1.0 },
        0.0,
        "single-log analytic part shared between the two log solutions".to_string(),
    ));
    // Basis at t = 1 via the exact substitution (lambda = 1).
    let sub = cubic.substitute_one_minus_t(32)?;
    let sbasis = frobenius_at_zero(&sub, order)?;
    let mut worst = 0.0f64;
    for sol in &sbasis.solutions {
        worst = fmath::max(worst, residual_norm(&sub, sol, order - 3)?);
    }
    out.push(check(
        "basis at t=1 residual (exact substitution, order 25)",
        worst,
        0.0,
    ));
    // f64 flavors: the normalized at-one basis and the balanced series check.
    let e = Complex64::from_polar(1.0, PI / 3.0);
    let l = 0.7;
    let params = HyperParams::new(vec![c(-l), e * l, e.conj() * l], vec![c(1.0), c(1.0)])?;
    let fb = frobenius_at_one(&params, 30)?;
    let op = hypergeometric_operator(&params)?.substitute_one_minus_t(32)?;
    let mut worst = 0.0f64;
    for sol in &fb.solutions {
        worst = fmath::max(worst, residual_norm(&op, sol, 24)?);
    }
    out.push(check("normalized basis at t=1 residual (f64)", worst, 1e-9));
    // Balanced series solution matches direct evaluation inside |t| < 0.5.
    let params = HyperParams::new(vec![c(0.3), c(0.8)], vec![c(1.6)])?;
    let op = hypergeometric_operator(&params)?;
    let basis = frobenius_at_zero(&op, 60)?;
    let u0 = basis
        .solutions
        .iter()
        .find(|s| s.max_log_power() == 0 && s.branch(0).gamma.norm() < 1e-9)
        .ok_or(Error::Domain("analytic solution missing"))?;
    let mut worst = 0.0f64;
    for &t in &[0.1, 0.3, 0.45, -0.4] {
        let direct = params.eval(c(t), 1e-14, 10_000)?.0;
        worst = fmath::max(worst, (u0.eval(c(t)) - direct).norm());
    }
    out.push(check(
        "analytic solution vs direct series, |t| < 0.5",
        worst,
        1e-12,
    ));
    // The quadratic family's operator at s = 1 - t is solved by the Euler
    // derivative of the original solution taken as a function of s.
    let l = 0.7;
    let params = HyperParams::new(vec![c(l), c(-l)], vec![c(1.0)])?;
    let sub = hypergeometric_operator(&params)?.substitute_one_minus_t(16)?;
    let u0_as_s = {
        let u0 = params.series(40);
        GradedSeries::new(Var::S0, 1, c(0.0), (0..=40).map(|n| u0.coeff(n)).collect())
    };
    let v0 = LogStackSolution::from_series(u0_as_s.euler_derivative());
    out.push(check(
        "Euler image of the t=0 solution solves the s-operator",
        residual_norm(&sub, &v0, 36)?,
        1e-9,
    ));
    // Formal solutions at infinity: Kummer branch data.
    let (alpha, beta) = (c(0.4), c(1.9));
    let params = HyperParams::new(vec![alpha], vec![beta])?;
    let (regular, wkbf) = formal_at_infinity(&params, 8)?;
    let dev = (regular[0].gamma - alpha).norm()
        + (wkbf[0].c - c(1.0)).norm()
        + (wkbf[0].mu - (alpha - beta)).norm();
    out.push(check("formal data at infinity (p = q = 1)", dev, 1e-12));
    Ok(out)
}

// ---------------------------------------------------------------------------
// restricted-det: closed-form e_q vs brute-force determinants
// ---------------------------------------------------------------------------

fn restricted_det_suite(seed: u64, qmax: usize) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut rng = SplitMix64::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let q = rng.range_i64(1, qmax as i64) as usize;
        let lams: Vec<C64> = (0..q + 1).map(|_| rng.complex_box(2.0)).collect();
        let closed = restricted_quadform_det(&lams)?;
        let brute = brute_force_restricted_det(&lams)?;
        let scale = 1.0 + closed.norm();
        worst = fmath::max(worst, (closed - brute).norm() / scale);
    }
    out.push(check(
        &format!("closed-form vs brute-force determinant (200 draws, q <= {qmax})"),
        worst,
        1e-10,
    ));
    // Symmetric-polynomial identities, exact on rationals.
    let mut exact_fail = 0.0f64;
    for _ in 0..50 {
        let k = rng.range_i64(1, 4) as usize;
        let vals: Vec<Rat> = (0..k + 2).map(|_| Rat::int(rng.range_i64(-6, 6))).collect();
        let lj = Rat::int(rng.range_i64(-6, 6));
        let head = &vals[..k];
        let head1 = &vals[..k + 1];
        let mut head_j = head.to_vec();
        head_j.push(lj.clone());
        let mut head1_j = head1.to_vec();
        head1_j.push(lj.clone());
        let e_head = elementary_symmetric(head);
        let e_head1 = elementary_symmetric(head1);
        let e_head_j = elementary_symmetric(&head_j);
        let e_head1_j = elementary_symmetric(&head1_j);
        let prod: Rat = head.iter().cloned().fold(Rat::int(1), |a, b| a * b);
        let lhs = e_head_j[k].clone() * e_head1[k].clone() - prod.clone() * prod.clone();
        let rhs = e_head[k - 1].clone() * e_head1_j[k + 1].clone();
        if lhs != rhs {
            exact_fail += 1.0;
        }
        let lhs2 = e_head1[k].clone() - prod;
        let rhs2 = vals[k].clone() * e_head[k - 1].clone();
        if lhs2 != rhs2 {
            exact_fail += 1.0;
        }
    }
    out.push(check(
        "symmetric-polynomial identities (exact rationals)",
        exact_fail,
        0.0,
    ));
    // Two-variable complete-homogeneous generating identity.
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let x = rng.complex_box(0.9);
        let y = rng.complex_box(0.9);
        if (x - y).norm() < 0.05 {
            continue;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        let mut fact = 1.0;
        for p in 0..=34usize {
            if p > 0 {
                fact *= p as f64;
            }
            acc += complete_homogeneous_two(&x, &y, p) / fact;
        }
        let want = (x * x.exp() - y * y.exp()) / (x - y);
        worst = fmath::max(worst, (acc - want).norm());
    }
    out.push(check("two-variable generating identity", worst, 1e-10));
    Ok(out)
}

// ---------------------------------------------------------------------------
// wkb: stationary-phase constants, actions, amplitudes, Stokes data
// ---------------------------------------------------------------------------

fn wkb_suite(seed: u64) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut rng = SplitMix64::new(seed);
    // Dominant-branch constant for the I_0 kernel: exactly 1/(2 sqrt pi).
    let p01 = HyperParams::new(vec![], vec![c(1.0)])?;
    let ks = confluent_asymptotic_constants(&p01)?;
    out.push(check(
        "dominant constant = 1/(2 sqrt pi)",
        (ks[1] - c(1.0 / (2.0 * fmath::sqrt(PI)))).norm(),
        1e-13,
    ));
    let p02 = HyperParams::new(vec![], vec![c(1.0), c(1.0)])?;
    let ks2 = confluent_asymptotic_constants(&p02)?;
    out.push(check(
        "dominant constant = 1/(2 pi sqrt 3)",
        (ks2[2] - c(1.0 / (2.0 * PI * fmath::sqrt(3.0)))).norm(),
        1e-13,
    ));
    // Large-argument asymptotics with the predicted error decay.
    let exact400 = p01.eval(c(400.0), 1e-12, 20_000)?.0;
    let approx400 = confluent_asymptotic_eval(&p01, c(400.0), 0)?;
    let rel400 = (approx400 - exact400).norm() / exact400.norm();
    out.push(check("large-argument error at t = 400", rel400, 0.02));
    let exact1600 = p01.eval(c(1600.0), 1e-12, 20_000)?.0;
    let approx1600 = confluent_asymptotic_eval(&p01, c(1600.0), 0)?;
    let rel1600 = (approx1600 - exact1600).norm() / exact1600.norm();
    let ratio = rel1600 / rel400;
    out.push(check_with(
        "error ratio t=1600/t=400 in [0.3, 0.7]",
        if (0.3..=0.7).contains(&ratio) {
            0.0
        } else {
            ratio
        },
        0.0,
        format!("ratio {ratio:.3} (predicted 0.5 for the 1/sqrt(t) law)"),
    ));
    let exact = p02.eval(c(1000.0), 1e-12, 20_000)?.0;
    let approx = confluent_asymptotic_eval(&p02, c(1000.0), 1)?;
    out.push(check(
        "cubic-kernel asymptotics at t = 1000",
        (approx - exact).norm() / exact.norm(),
        0.02,
    ));
    // Oscillatory recombination on the negative axis.
    let t = 140.0;
    let exact = p01.eval(c(-t), 1e-12, 10_000)?.0;
    let approx = confluent_asymptotic_eval(&p01, c(-t), 0)?;
    let envelope = fmath::sqrt(1.0 / (PI * fmath::sqrt(t)));
    out.push(check(
        "negative-axis oscillatory combination",
        (approx - exact).norm() / envelope,
        0.02,
    ));
    // Large-parameter asymptotics: error O(1/A), halving from A=8 to A=16.
    let nus2 = [c(1.0), c(-1.0)];
    let betas1 = [c(1.0)];
    let t = 0.5;
    let mut rels = Vec::new();
    for a in [8.0, 16.0] {
        let exact = series_value(&[c(a), c(-a)], &[c(1.0)], c(t))?;
        let approx = large_parameter_eval(&nus2, &betas1, a, t)?;
        rels.push((approx - exact).norm() / exact.norm());
    }
    let ratio = rels[1] / rels[0];
    out.push(check_with(
        "large-parameter error ratio A=16/A=8 in [0.3, 0.7]",
        if (0.3..=0.7).contains(&ratio) {
            0.0
        } else {
            ratio
        },
        0.0,
        format!(
            "rel(8) = {:.3e}, rel(16) = {:.3e}, ratio {ratio:.3}",
            rels[0], rels[1]
        ),
    ));
    // Cubic family: the closed-form display combination.
    let e = Complex64::from_polar(1.0, PI / 3.0);
    let nus3 = [c(-1.0), e, e.conj()];
    let betas2 = [c(1.0), c(1.0)];
    let lam = 9.0;
    let approx = large_parameter_eval(&nus3, &betas2, lam, t)?;
    // display: (2 pi sqrt3 lam)^-1 ((1-t)/t)^(1/3) { -e^(-lam S) + e* e^(e lam S) + e e^(e* lam S) }
    let s0 = {
        // S~(t) = int_0^t tau^(-2/3) (1-tau)^(-1/3) dtau via the weighted rule
        let rule = gauss_jacobi_01(48, 0.0, -2.0 / 3.0)?;
        let val = rule.apply(|u| c(fmath::powf(1.0 - t * u, -1.0 / 3.0)));
        val.re * fmath::powf(t, 1.0 / 3.0)
    };
    let pref = fmath::powf((1.0 - t) / t, 1.0 / 3.0) / (2.0 * PI * fmath::sqrt(3.0) * lam);
    let display = pref
        * (-(c(-lam * s0)).exp()
            + e.conj() * (e * lam * s0).exp()
            + e * (e.conj() * lam * s0).exp());
    out.push(check(
        "cubic family display combination at lambda = 9",
        (approx - display).norm() / display.norm(),
        1e-7,
    ));
    let exact = series_value(&[c(-lam), e * lam, e.conj() * lam], &[c(1.0), c(1.0)], c(t))?;
    out.push(check(
        "cubic family vs series at lambda = 9",
        (approx - exact).norm() / exact.norm(),
        0.2,
    ));
    // phi vs quadrature action, all branches, both families.
    let mut worst = 0.0f64;
    for b in hamilton_jacobi_branches(&nus2, 0.5, 600)? {
        worst = fmath::max(worst, (b.phi - b.action).norm());
    }
    for b in hamilton_jacobi_branches(&nus3, 0.5, 600)? {
        worst = fmath::max(worst, (b.phi - b.action).norm());
    }
    out.push(check("critical value vs quadrature action", worst, 1e-9));
    // Hessian determinant vs the restricted quadratic-form determinant.
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let q1 = rng.range_i64(2, 4) as usize;
        let nus: Vec<C64> = (0..q1)
            .map(|_| {
                let v = rng.complex_box(1.0);
                v + Complex64::new(if v.re >= 0.0 { 0.6 } else { -0.6 }, 0.0)
            })
            .collect();
        let t = rng.range(0.05, 0.5);
        let Ok(branches) = hamilton_jacobi_branches(&nus, t, 400) else {
            continue;
        };
        for b in branches {
            let lams: Vec<C64> = nus.iter().map(|nu| b.rho * (1.0 + b.rho / nu)).collect();
            let eq = restricted_quadform_det(&lams)?;
            worst = fmath::max(worst, (eq - b.det).norm() / (1.0 + eq.norm()));
        }
    }
    out.push(check(
        "Hessian determinant vs e_q of eigenvalues",
        worst,
        1e-10,
    ));
    // Transport amplitudes against the closed forms.
    let psi = transport_amplitude(&nus2, c(0.0), 0, 0.3)?;
    let dev1 = fmath::abs(psi.norm() - fmath::powf(0.7 / 0.3, 0.25));
    let psi = transport_amplitude(&nus3, c(0.0), 1, 0.3)?;
    let dev2 = fmath::abs(psi.norm() - fmath::powf(0.7 / 0.3, 1.0 / 3.0));
    out.push(check(
        "transport amplitude closed forms",
        fmath::max(dev1, dev2),
        1e-8,
    ));
    // Amplitude residual of the truncated exponential forms.
    let mut worst = 0.0f64;
    for params in [
        HyperParams::new(vec![], vec![c(1.0)])?,
        HyperParams::new(vec![], vec![c(2.0), c(1.5)])?,
        HyperParams::new(vec![c(0.4)], vec![c(1.9)])?,
    ] {
        let kd = params.q() + 1 - params.p();
        for k in 1..=kd {
            let f = confluent_wkb(&params, k, 12)?;
            worst = fmath::max(worst, amplitude_residual(&params, &f));
        }
    }
    out.push(check("exponential-form substitution residual", worst, 1e-9));
    // Exponent data closed forms.
    let f = confluent_wkb(&p01, 2, 2)?;
    let mut dev = (f.c - c(2.0)).norm() + (f.mu - c(-0.25)).norm();
    let v2k = HyperParams::new(vec![], vec![c(2.0), c(1.5)])?;
    let f = confluent_wkb(&v2k, 3, 2)?;
    dev += (f.mu - c(-5.0 / 6.0)).norm() + (f.c - c(3.0)).norm();
    // combined exponent z * x^mu at x = z/8 gives z^(1/6) e^((3/2) z^(1/3))
    dev += fmath::abs((1.0 + f.mu.re) - 1.0 / 6.0);
    out.push(check("exponent data closed forms", dev, 1e-12));
    // Rescale chain for the second kernel solution: V2(z) = z F(; 2, 3/2; z/8)
    // gives the display constant 2/sqrt(6 pi) for z^(1/6) exp((3/2) z^(1/3)):
    // algebraically 8^(5/6) K_3 = 2/sqrt(6 pi).
    let v2k = HyperParams::new(vec![], vec![c(2.0), c(1.5)])?;
    let kv2 = confluent_asymptotic_constants(&v2k)?;
    let display_const = 2.0 / fmath::sqrt(6.0 * PI);
    out.push(check(
        "kernel-solution display constant 2/sqrt(6 pi)",
        (kv2[2] * fmath::powf(8.0, 5.0 / 6.0) - c(display_const)).norm(),
        1e-13,
    ));
    // and the full rescale numerically: V2(z) ~ z * (asymptotics of the
    // inner function at z/8), checked against the positive-term series.
    let z = 400.0;
    let v2_series = {
        let mut acc = 0.0;
        let mut num = 1.0;
        for n in 1..=80usize {
            num *= z;
            let mut den = 1.0;
            for k in 1..=2 * n {
                den *= k as f64;
            }
            let mut dd = 1.0;
            let mut m = 2 * n as i64 - 2;
            while m >= 2 {
                dd *= m as f64;
                m -= 2;
            }
            acc += num / (den * dd);
        }
        2.0 * acc
    };
    let v2_asym = z * confluent_asymptotic_eval(&v2k, c(z / 8.0), 2)?.re;
    out.push(check(
        "kernel-solution rescale chain at z = 400",
        fmath::abs(v2_asym - v2_series) / v2_series,
        0.05,
    ));
    // The dominant constant scales as Gamma(beta) across the lower parameter.
    let nu = 0.7;
    let pnu = HyperParams::new(vec![], vec![c(nu + 1.0)])?;
    let knu = confluent_asymptotic_constants(&pnu)?;
    let dev = (knu[1] / ks[1] - gamma(c(nu + 1.0))? * c(1.0).powf(-nu)).norm();
    out.push(check(
        "dominant constant proportional to Gamma(nu+1)",
        dev,
        1e-12,
    ));
    // Kummer Stokes data.
    let ksd = kummer_stokes(c(0.3), c(1.7))?;
    let inv = (ksd.c_stokes * ksd.d_stokes - (ksd.zeta - 1.0) * (1.0 - ksd.nu * ksd.zeta)).norm();
    out.push(check(
        "Stokes entries invariant cd = (z-1)(1-nz)",
        inv,
        1e-12,
    ));
    let p11 = HyperParams::new(vec![c(0.3)], vec![c(1.7)])?;
    let mut prev = f64::INFINITY;
    let mut worst = 0.0f64;
    let mut decreasing = true;
    for s in [20.0, 30.0] {
        let exact = p11.eval(Complex64::new(0.0, s), 1e-12, 100_000)?.0;
        let approx = kummer_upper_line(c(0.3), c(1.7), s, 0)?;
        let rel = (approx - exact).norm() / exact.norm();
        if s == 30.0 {
            worst = rel;
        }
        if rel >= prev {
            decreasing = false;
        }
        prev = rel;
    }
    out.push(check_with(
        "upper-Stokes-line asymptotics at s = 30",
        if decreasing { worst } else { f64::INFINITY },
        0.05,
        "error decreases from s = 20 to s = 30".to_string(),
    ));
    Ok(out)
}

// ---------------------------------------------------------------------------
// variations: perturbation chains vs closed forms and printed multi-sums
// ---------------------------------------------------------------------------

fn variations_suite() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    // First-order family: closed form vs recurrence at three points.
    let (alpha, gam) = (0.5, 1.5);
    let qp = EulerPolynomial::<C64>::euler();
    let pp = EulerPolynomial::new(vec![c(alpha), c(1.0)]);
    let rp = EulerPolynomial::new(vec![c(gam), c(1.0)]);
    let base = operator_from_qp(Var::T0, qp.clone(), pp.clone());
    let pert = PerturbedOperator::standard(base, rp.clone())?;
    let u0 = pfq_series_from_qp(&qp, &pp, 140);
    let chain = variation_recurrence(&pert, &u0, 3, 140)?;
    let mut worst = 0.0f64;
    for t in [0.2, 0.3, 0.5] {
        let got = chain[1].eval(c(t));
        let bracket =
            (2.0 * alpha - gam) * fmath::ln(1.0 - t) + alpha * t * (2.0 - t) / (1.0 - t) - gam * t;
        let want = fmath::powf(1.0 - t, -alpha) * bracket;
        worst = fmath::max(worst, (got - c(want)).norm());
    }
    out.push(check(
        "first-order family: closed form vs recurrence",
        worst,
        1e-10,
    ));
    // Airy chain: exact rational coefficients.
    let mut abase: MellinOperator<Rat> = MellinOperator::new(Var::T0, 1);
    abase.add_term(
        -2,
        EulerPolynomial::monic_from_roots(&[Rat::int(0), Rat::int(1)]),
    );
    abase.add_term(1, EulerPolynomial::constant(Rat::int(-1)));
    let apert = PerturbedOperator::new(
        abase,
        vec![(1, (2, 1), EulerPolynomial::constant(Rat::int(1)))],
    )?;
    let mut u1 = vec![Rat::int(0); 16];
    u1[0] = Rat::int(1);
    for k in 1..=5usize {
        let n = 3 * k as i64;
        if (n as usize) < u1.len() {
            u1[n as usize] = u1[(n - 3) as usize].clone() / Rat::int(n * (n - 1));
        }
    }
    let u0r = GradedSeries::new(Var::T0, 1, Rat::int(0), u1);
    let achain = variation_recurrence(&apert, &u0r, 2, 15)?;
    let u11 = &achain[1];
    let want = [
        (0usize, Rat::ratio(1, 12)),
        (3, Rat::ratio(1, 168)),
        (6, Rat::ratio(29, 226800)),
        (9, Rat::ratio(31, 23587200)),
    ];
    let mut fails = 0.0f64;
    for (idx, w) in &want {
        if u11.coeff(*idx) != *w {
            fails += 1.0;
        }
    }
    out.push(check_with(
        "Airy first-variation coefficients exact",
        fails,
        0.0,
        "1/12, 1/168, 29/226800, 31/23587200".to_string(),
    ));
    // Full perturbed residual: the chain annihilates every eps order exactly.
    out.push(check(
        "perturbed-operator chain residual (exact, K = 2)",
        chain_residual(&apert, &achain, 12)?,
        0.0,
    ));
    // Printed multi-sum: verdict.
    let mut worst = 0.0f64;
    let mut mismatch = None;
    for k in 1..=2usize {
        let cmp = variation_formula_comparison(&qp, &pp, &rp, k, 16)?;
        worst = fmath::max(worst, cmp.max_deviation);
        if mismatch.is_none() {
            mismatch = cmp.first_mismatch;
        }
    }
    out.push(check_with(
        "verdict: printed multi-sum summand",
        worst,
        1e-10,
        match mismatch {
            None => "printed S(n) = R(n)Q(n+1)/(P(n)P(n+1)) confirmed against the recurrence"
                .to_string(),
            Some((m, d)) => format!("first mismatch at t^{m} (dev {d:.2e})"),
        },
    ));
    // Bessel-type and half-lattice first variations: mutual oracles.
    let (ds, rec) = bessel_kernel_first_variation(12)?;
    let mut worst = 0.0f64;
    for n in 0..ds.len().min(rec.len()) {
        worst = fmath::max(worst, (ds.coeff(n) - rec.coeff(n)).norm());
    }
    let dgamma = (ds.gamma - rec.gamma).norm();
    out.push(check(
        "cubic-kernel first variation: double sum vs chain",
        worst + dgamma,
        1e-12,
    ));
    let (ds, rec) = v2_first_variation(16)?;
    let mut worst = (ds.gamma - rec.gamma).norm();
    for n in 0..ds.len().min(rec.len()) {
        worst = fmath::max(worst, (ds.coeff(n) - rec.coeff(n)).norm());
    }
    out.push(check(
        "half-lattice first variation: double sum vs chain",
        worst,
        1e-11,
    ));
    Ok(out)
}

// ---------------------------------------------------------------------------
// wasow: conjugation determinant, grading, normalization
// ---------------------------------------------------------------------------

fn wasow_suite() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let one = Complex64::new(1.0, 0.0);
    let q = wasow_transform(&[(2, 0, one)], 20, 12)?;
    let mut det = q.det();
    det.c[0][0] -= 1.0;
    let scale = q.entries[0][0].max_coeff().max(1.0);
    out.push(check(
        "conjugation determinant = 1 to order (20, 12)",
        det.max_coeff() / scale,
        1e-10,
    ));
    out.push(check(
        "mod-3 exponent grading (quadratic germ)",
        q.grading_violation(),
        1e-12,
    ));
    // Leading perturbation order mu^5 and the variation-of-parameters slice.
    let mut low = 0.0f64;
    for j in 1..5usize {
        for i in 0..=20usize {
            low = fmath::max(low, q.entries[0][0].coeff(i, j).norm());
        }
    }
    out.push(check("no terms below mu^5 (quadratic germ)", low, 1e-12));
    // mu^5 slice of Q11 equals du1 u2' - du2 u1' with du_j the particular
    // solutions of the Airy equation driven by t^2 u_j (independent route).
    let mut base: MellinOperator<C64> = MellinOperator::new(Var::T0, 1);
    base.add_term(-2, EulerPolynomial::monic_from_roots(&[c(0.0), c(1.0)]));
    base.add_term(1, EulerPolynomial::constant(c(-1.0)));
    // build u1, u2 (Airy initial-value pair)
    let t_ord = 20usize;
    let mut u1 = vec![Complex64::new(0.0, 0.0); t_ord + 4];
    let mut u2 = vec![Complex64::new(0.0, 0.0); t_ord + 4];
    u1[0] = one;
    u2[1] = one;
    for n in 0..t_ord + 2 {
        let den = ((n + 2) * (n + 1)) as f64;
        if n >= 1 {
            u1[n + 2] = u1[n - 1] / den;
            u2[n + 2] = u2[n - 1] / den;
        }
    }
    let mk = |v: &[C64]| GradedSeries::new(Var::T0, 1, c(0.0), v.to_vec());
    let du = |uj: &[C64]| -> Result<GradedSeries<C64>> {
        let rhs = mk(uj).shift_exponent_steps(2);
        inverse_base_apply(&base, &rhs, t_ord + 2)
    };
    let du1 = du(&u1)?;
    let du2 = du(&u2)?;
    let d = |v: &[C64]| -> Vec<C64> {
        (0..v.len() - 1)
            .map(|k| v[k + 1] * (k as f64 + 1.0))
            .collect()
    };
    let u1d = d(&u1);
    let u2d = d(&u2);
    // q11_5(t) = du1 * u2' - du2 * u1'
    let prod = |a: &GradedSeries<C64>, b: &[C64]| -> Result<GradedSeries<C64>> { a.mul(&mk(b)) };
    let q11 = prod(&du1, &u2d)?.sub(&prod(&du2, &u1d)?)?;
    let mut worst = 0.0f64;
    for i in 0..=t_ord {
        let got = q.entries[0][0].coeff(i, 5);
        let off = (c(i as f64) * 1.0 - q11.gamma).re as i64;
        let want = if off >= 0 {
            q11.coeff(off as usize)
        } else {
            Complex64::new(0.0, 0.0)
        };
        worst = fmath::max(worst, (got - want).norm());
    }
    out.push(check(
        "mu^5 slice vs variation-of-parameters oracle",
        worst,
        1e-10,
    ));
    // Langer normalization: identity germ is bit-exact, general germs satisfy
    // the defining relation.
    let germ = |coeffs: &[f64]| {
        GradedSeries::new(Var::X0, 1, c(0.0), coeffs.iter().map(|&v| c(v)).collect())
    };
    let phi1 = germ(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    let (z, b) = langer_normalize(&phi1, 6)?;
    let mut exact = 0.0f64;
    for k in 1..z.len() {
        if !z.coeff(k).is_zero() {
            exact += 1.0;
        }
    }
    for k in 1..b.len() {
        if !b.coeff(k).is_zero() {
            exact += 1.0;
        }
    }
    if z.coeff(0) != one || (z.gamma - one).norm() != 0.0 {
        exact += 1.0;
    }
    out.push(check("identity germ: z = x exactly", exact, 0.0));
    let phi = germ(&[1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    let (z, _) = langer_normalize(&phi, 8)?;
    let dev = (z.coeff(1) - c(0.2)).norm();
    let res = langer_residual(&phi, &z, 8)?.max_coeff_magnitude();
    out.push(check(
        "linear germ: z = x + x^2/5 + ..., defining relation",
        dev + res,
        1e-10,
    ));
    let phi = germ(&[
        1.0, -0.3, 0.7, 0.11, -0.05, 0.02, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
    ]);
    let (z, _) = langer_normalize(&phi, 10)?;
    let res = langer_residual(&phi, &z, 10)?.max_coeff_magnitude();
    out.push(check(
        "general germ: defining-relation residual",
        res,
        1e-10,
    ));
    // Constant-in-eps germ enters at mu^4.
    let q4 = wasow_transform(&[(0, 1, one)], 10, 6)?;
    let mut low = 0.0f64;
    for j in 1..4usize {
        for i in 0..=10usize {
            low = fmath::max(low, q4.entries[0][0].coeff(i, j).norm());
        }
    }
    out.push(check("constant germ enters at mu^4", low, 1e-12));
    Ok(out)
}

// ---------------------------------------------------------------------------
// connection: the generating function as a connection coefficient, polylog
// rows, route agreements, stuffle, sector formulas
// ---------------------------------------------------------------------------

fn connection_suite() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let e = Complex64::from_polar(1.0, PI / 3.0);
    // C(lambda) = Delta3(lambda) for the cubic family.
    let mut worst = 0.0f64;
    for l in [0.4, 0.7, 1.1] {
        let params = HyperParams::new(vec![c(-l), e * l, e.conj() * l], vec![c(1.0), c(1.0)])?;
        let basis = frobenius_at_one(&params, 90)?;
        let series = params.series(220);
        let target = move |s: C64| {
            let t = Complex64::new(1.0, 0.0) - s;
            let stack = LogStackSolution::from_series(series.clone());
            let d = stack_derivatives(&stack, t, 3);
            vec![d[0], -d[1], d[2]]
        };
        let conn = solve_connection(&target, &basis, c(0.5))?;
        let d3 = delta3(c(l), Delta3Route::Gamma)?;
        worst = fmath::max(worst, (conn.coefficients[2] - d3).norm());
    }
    out.push(check(
        "connection coefficient = all-3 generating function",
        worst,
        1e-6,
    ));
    // Quadratic family at lambda = 1/2: coefficient of the unit-value
    // solution is 2/pi.
    let l = 0.5;
    let params = HyperParams::new(vec![c(l), c(-l)], vec![c(1.0)])?;
    let basis = frobenius_at_one(&params, 90)?;
    let series = params.series(220);
    let target = move |s: C64| {
        let t = Complex64::new(1.0, 0.0) - s;
        let stack = LogStackSolution::from_series(series.clone());
        let d = stack_derivatives(&stack, t, 2);
        vec![d[0], -d[1]]
    };
    let conn = solve_connection(&target, &basis, c(0.5))?;
    out.push(check(
        "quadratic family: unit-solution coefficient = 2/pi",
        (conn.coefficients[1] - c(2.0 / PI)).norm(),
        1e-6,
    ));
    // Iterated-integral rows vs polylogarithm formulas.
    let rep = polylog_route_check(1, 0.5, 0.8, 70)?;
    out.push(check(
        "log-solution rows vs polylogs (k = 1, t = 0.5)",
        rep.dev_u1.max(rep.dev_u2),
        1e-8,
    ));
    let rep2 = polylog_route_check(2, 0.5, 0.8, 70)?;
    out.push(check_with(
        "log-solution rows vs polylogs (k = 2)",
        rep2.dev_u1.max(rep2.dev_u2),
        1e-7,
        format!(
            "two-log display gap (paired-4 insertions) recorded: {:.6}",
            rep2.u2_display_gap
        ),
    ));
    // Second-solution route agreement.
    let mut worst = 0.0f64;
    for l in [0.2, 0.3, 0.45, 0.6, 0.7] {
        let a = second_solution_at_one(c(l), SecondSolutionRoute::Polylog)?;
        let b = second_solution_at_one(c(l), SecondSolutionRoute::Psi)?;
        worst = fmath::max(worst, (a - b).norm());
    }
    out.push(check("second-solution polylog vs psi routes", worst, 1e-9));
    // Stuffle identity.
    let stuffle = fmath::abs(
        zeta(2.0) * zeta(3.0)
            - mzv(&MzvIndex::new(vec![2, 3])?, 1e-10)?
            - mzv(&MzvIndex::new(vec![3, 2])?, 1e-10)?
            - zeta(5.0),
    );
    out.push(check(
        "stuffle: z(2)z(3) = z(2,3) + z(3,2) + z(5)",
        stuffle,
        1e-8,
    ));
    // Sector formulas at |lambda| = 12 with decreasing error.
    let l12 = c(12.3);
    let exact = second_solution_at_one(l12, SecondSolutionRoute::Psi)?;
    let approx = second_solution_asymptotic(l12, Sector::Upper)?;
    let rel_up = (approx - exact).norm() / exact.norm();
    let l12l = Complex64::from_polar(12.3, -0.8 * PI);
    let exact = second_solution_in_sector(l12l, Sector::Lower)?;
    let approx = second_solution_asymptotic(l12l, Sector::Lower)?;
    let rel_low = (approx - exact).norm() / exact.norm();
    out.push(check(
        "sector formulas at |lambda| = 12.3",
        fmath::max(rel_up, rel_low),
        0.01,
    ));
    let l24 = c(24.3);
    let exact = second_solution_at_one(l24, SecondSolutionRoute::Psi)?;
    let approx = second_solution_asymptotic(l24, Sector::Upper)?;
    let rel24 = (approx - exact).norm() / exact.norm();
    out.push(check_with(
        "sector-formula error decreases with |lambda|",
        if rel24 < rel_up { 0.0 } else { 1.0 },
        0.0,
        format!("rel(12.3) = {rel_up:.3e}, rel(24.3) = {rel24:.3e}"),
    ));
    // ODE witness: span membership vs independence, plus the Wronskian
    // samples across lambda = 1.
    let rep = lambda_ode_witness(0.4, &[0.9, 0.95, 1.05, 1.1])?;
    out.push(check(
        "witness determinant: span member",
        rep.dependent_ratio,
        1e-5,
    ));
    out.push(check_with(
        "witness determinant: independent function",
        if rep.independent_ratio >= 1e-2 {
            0.0
        } else {
            rep.independent_ratio
        },
        0.0,
        format!("ratio {:.3e}", rep.independent_ratio),
    ));
    let detail: Vec<String> = rep
        .a_samples
        .iter()
        .map(|(s, a)| format!("A({s:.2}) = {:.4}", a.re))
        .collect();
    out.push(check_with(
        "Wronskian coefficient finite across lambda = 1",
        if rep
            .a_samples
            .iter()
            .all(|(_, a)| a.norm() > 1e-3 && a.norm() < 1e3)
        {
            0.0
        } else {
            1.0
        },
        0.0,
        format!("{} (sign change: {})", detail.join(", "), rep.a_sign_change),
    ));
    // Euler-reflection consistency of the digamma pair (cot adjudication).
    let mut worst = 0.0f64;
    for z in [
        Complex64::new(0.37, 0.0),
        Complex64::new(2.6, 1.1),
        Complex64::new(-4.55, 0.2),
    ] {
        let lhs = crate::special::digamma(1.0 + z)? - crate::special::digamma(1.0 - z)?
            + PI * (PI * z).cos() / (PI * z).sin()
            - 1.0 / z;
        worst = fmath::max(worst, lhs.norm());
    }
    out.push(check_with(
        "verdict: digamma reflection uses the cotangent",
        worst,
        1e-10,
        "psi(1+z) - psi(1-z) + pi cot(pi z) - 1/z = 0 (printed arctangent fails)".to_string(),
    ));
    // Infeasibility of the pure-exponential expansion of the all-3 function:
    // the exact elimination gap 2(c/a) alpha is nonzero for admissible data.
    let gap = crate::genfun::exponential_block_infeasibility(
        &Rat::ratio(2, 3),
        &Rat::int(-5),
        &Rat::ratio(7, 2),
        &Rat::int(3),
    );
    out.push(check_with(
        "exponential-block expansion infeasible (exact elimination)",
        if gap.is_zero() { 1.0 } else { 0.0 },
        0.0,
        format!("forced gamma values differ by {gap}"),
    ));
    let _ = EULER_GAMMA;
    Ok(out)
}
