//! Command-line surface for evaluation, expansions, and the verification
//! suites, with machine-readable output (JSON by default, CSV optional).

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use hyperwkb_core::frobenius::{formal_at_infinity, frobenius_at_one};
use hyperwkb_core::genfun::{delta2, delta3, Delta2Route, Delta3Route};
use hyperwkb_core::hyper::{hypergeometric_operator, HyperParams};
use hyperwkb_core::integrals::{
    balanced_residue_rep, confluent_residue_rep, euler_gauss_integral, euler_step_integral,
    kummer_integral,
};
use hyperwkb_core::polylog::{multi_polylog, mzv, MzvIndex};
use hyperwkb_core::suites::{run_restricted_det, run_suite, SuiteReport, SUITE_NAMES};
use hyperwkb_core::variations::{variation_recurrence, PerturbedOperator};
use hyperwkb_core::wkb::{
    confluent_asymptotic_eval, kummer_stokes, kummer_upper_line, large_parameter_eval,
};
use hyperwkb_core::{Error, C64};

const SCHEMA: &str = "hyperwkb/1";

#[derive(Parser)]
#[command(
    name = "hyperwkb",
    version,
    about = "Generalized hypergeometric functions: evaluation, expansions, and verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the output to a file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EvalRoute {
    /// Direct partial sums with a tail bound.
    Series,
    /// Euler integral (Gauss case).
    Euler,
    /// Stepped Euler integral (balanced q <= 2).
    Stepped,
    /// Kummer integral (p = q = 1).
    Kummer,
    /// Residue/hypercube representation (balanced, q <= 2).
    BalancedResidue,
    /// Residue/hypercube representation (confluent, p <= 1, q <= 2).
    ConfluentResidue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SeriesPoint {
    Zero,
    One,
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum WkbMode {
    /// Large-argument asymptotics of a completely confluent series.
    Confluent,
    /// Large-parameter asymptotics of a balanced series.
    LargeParameter,
    /// Kummer Stokes constants and the upper-line asymptotics.
    Kummer,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a pFq series at a point.
    Eval {
        /// Parameters "a1,a2,...;b1,b2,..." (items like 1.5 or 0.3+0.2i).
        #[arg(long)]
        pfq: String,
        /// Argument t ("re" or "re,im").
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 100_000)]
        max_terms: usize,
        #[arg(long, value_enum, default_value = "series")]
        route: EvalRoute,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Series coefficients / local solution data.
    Series {
        #[arg(long)]
        pfq: String,
        #[arg(long, default_value_t = 12)]
        order: usize,
        /// Expansion point: zero gives the coefficients, one the local basis
        /// summary, infinity the formal/exponential data.
        #[arg(long, value_enum, default_value = "zero")]
        at: SeriesPoint,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// WKB evaluations.
    Wkb {
        #[arg(long, value_enum)]
        mode: WkbMode,
        /// Parameters for the confluent mode ("; b1,b2").
        #[arg(long)]
        pfq: Option<String>,
        /// nu_j list for the large-parameter mode.
        #[arg(long)]
        nus: Option<String>,
        /// beta_j list for the large-parameter mode.
        #[arg(long)]
        betas: Option<String>,
        #[arg(long)]
        big_a: Option<f64>,
        #[arg(long)]
        t: Option<String>,
        /// alpha for the Kummer mode.
        #[arg(long)]
        alpha: Option<String>,
        /// beta for the Kummer mode.
        #[arg(long)]
        beta: Option<String>,
        /// point s on the upper Stokes line (Kummer mode).
        #[arg(long)]
        s: Option<f64>,
        /// amplitude terms to include.
        #[arg(long, default_value_t = 0)]
        terms: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Perturbation chains u_0..u_k for Q - tP - eps t^2 R.
    Variation {
        /// Base parameters "a1,...;b1,...".
        #[arg(long)]
        pfq: String,
        /// Coefficients of R in the Euler-derivative monomial basis, "r0,r1,...".
        #[arg(long)]
        r: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 16)]
        order: usize,
        /// Optional evaluation point for each chain member.
        #[arg(long)]
        t: Option<String>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Multiple zeta values / nested polylogarithms.
    Mzv {
        /// Index "d1,d2,..." (last entry >= 2 for t = 1).
        #[arg(long)]
        index: String,
        /// Evaluation point in (0, 1]; defaults to 1.
        #[arg(long)]
        t: Option<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run verification suites; exit 0 iff all checks pass.
    Verify {
        /// Suite name or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        /// Seed echoed into the report (randomized draws are reproducible).
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Max dimension for the restricted-determinant draws.
        #[arg(long, default_value_t = 7)]
        qmax: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Generating-function values (the all-2 / all-3 MZV series).
    Genfun {
        /// "2" or "3".
        #[arg(long)]
        kind: u32,
        #[arg(long)]
        lambda: String,
        /// series | product | closed (2) / gamma (3)
        #[arg(long, default_value = "closed")]
        route: String,
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn parse_complex(s: &str) -> Result<C64, String> {
    let s = s.trim();
    // "re,im"
    if let Some((re, im)) = s.split_once(',') {
        let re: f64 = re
            .trim()
            .parse()
            .map_err(|_| format!("bad real part in '{s}'"))?;
        let im: f64 = im
            .trim()
            .parse()
            .map_err(|_| format!("bad imaginary part in '{s}'"))?;
        return Ok(Complex64::new(re, im));
    }
    parse_complex_item(s)
}

/// List items: "1.5", "0.3+0.2i", "-i", "2i".
fn parse_complex_item(s: &str) -> Result<C64, String> {
    let s = s.trim().replace(' ', "");
    if s.is_empty() {
        return Err("empty number".into());
    }
    if let Some(body) = s.strip_suffix('i') {
        // pure imaginary or a+bi
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-')
                && bytes[k - 1] != b'e'
                && bytes[k - 1] != b'E'
            {
                split = Some(k);
                break;
            }
        }
        return match split {
            Some(k) => {
                let re: f64 = body[..k].parse().map_err(|_| format!("bad number '{s}'"))?;
                let imtxt = &body[k..];
                let im: f64 = if imtxt == "+" {
                    1.0
                } else if imtxt == "-" {
                    -1.0
                } else {
                    imtxt.parse().map_err(|_| format!("bad number '{s}'"))?
                };
                Ok(Complex64::new(re, im))
            }
            None => {
                let im: f64 = if body.is_empty() {
                    1.0
                } else if body == "-" {
                    -1.0
                } else {
                    body.parse().map_err(|_| format!("bad number '{s}'"))?
                };
                Ok(Complex64::new(0.0, im))
            }
        };
    }
    let re: f64 = s.parse().map_err(|_| format!("bad number '{s}'"))?;
    Ok(Complex64::new(re, 0.0))
}

fn parse_list(s: &str) -> Result<Vec<C64>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_complex_item).collect()
}

fn parse_pfq(s: &str) -> Result<HyperParams, String> {
    let (upper, lower) = s.split_once(';').ok_or("expected 'upper;lower'")?;
    let upper = parse_list(upper)?;
    let lower = parse_list(lower)?;
    HyperParams::new(upper, lower).map_err(|e| e.to_string())
}

fn cnum(z: C64) -> Value {
    json!([z.re, z.im])
}

fn emit(output: &OutputOpts, payload: Value, csv: Option<String>) -> Result<(), String> {
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(&payload).map_err(|e| e.to_string())?,
        Format::Csv => csv.ok_or("CSV output is not available for this command")?,
    };
    match &output.out {
        Some(path) => {
            let mut f = std::fs::File::create(path).map_err(|e| e.to_string())?;
            writeln!(f, "{text}").map_err(|e| e.to_string())?;
        }
        None => {
            // a closed pipe (e.g. piping into `head`) is not an error
            let mut so = std::io::stdout().lock();
            let _ = writeln!(so, "{text}");
        }
    }
    Ok(())
}

fn numeric_error(e: &Error) -> ExitCode {
    let payload = json!({
        "schema": SCHEMA,
        "error": { "kind": format!("{e:?}").split(['{', '(']).next().unwrap_or("Error").trim(), "message": e.to_string() },
    });
    println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    ExitCode::from(1)
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(RunError::Numeric(e)) => numeric_error(&e),
        Err(RunError::Usage(msg)) => usage_error(&msg),
    }
}

enum RunError {
    Numeric(Error),
    Usage(String),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Numeric(e)
    }
}

impl From<String> for RunError {
    fn from(m: String) -> Self {
        RunError::Usage(m)
    }
}

fn validate_tol(tol: f64) -> Result<(), RunError> {
    if !(tol > 0.0 && tol <= 1e-2) {
        return Err(RunError::Usage("tol must lie in (0, 1e-2]".into()));
    }
    Ok(())
}

fn validate_order(order: usize) -> Result<(), RunError> {
    if order > 200 {
        return Err(RunError::Usage("order must be <= 200".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, RunError> {
    match cli.command {
        Command::Eval {
            pfq,
            t,
            tol,
            max_terms,
            route,
            output,
        } => {
            validate_tol(tol)?;
            let params = parse_pfq(&pfq)?;
            let t = parse_complex(&t)?;
            let (value, est, route_name) = match route {
                EvalRoute::Series => {
                    let (v, e) = params.eval(t, tol, max_terms)?;
                    (v, e, "series")
                }
                EvalRoute::Euler => {
                    if params.p() != 2 || params.q() != 1 {
                        return Err(RunError::Usage("euler route needs p = 2, q = 1".into()));
                    }
                    let v =
                        euler_gauss_integral(params.upper[0], params.upper[1], params.lower[0], t)?;
                    (v, f64::NAN, "euler-integral")
                }
                EvalRoute::Stepped => (euler_step_integral(&params, t)?, f64::NAN, "stepped-euler"),
                EvalRoute::Kummer => {
                    if params.p() != 1 || params.q() != 1 {
                        return Err(RunError::Usage("kummer route needs p = q = 1".into()));
                    }
                    (
                        kummer_integral(params.upper[0], params.lower[0], t)?,
                        f64::NAN,
                        "kummer-integral",
                    )
                }
                EvalRoute::BalancedResidue => {
                    if t.im != 0.0 {
                        return Err(RunError::Usage("residue routes take real t".into()));
                    }
                    (
                        balanced_residue_rep(&params, t.re, None)?,
                        f64::NAN,
                        "balanced-residue",
                    )
                }
                EvalRoute::ConfluentResidue => {
                    if t.im != 0.0 {
                        return Err(RunError::Usage("residue routes take real t".into()));
                    }
                    (
                        confluent_residue_rep(&params, t.re)?,
                        f64::NAN,
                        "confluent-residue",
                    )
                }
            };
            let payload = json!({
                "schema": SCHEMA,
                "value": cnum(value),
                "est_error": if est.is_nan() { Value::Null } else { json!(est) },
                "route": route_name,
            });
            let csv = format!(
                "re,im,est_error,route\n{},{},{},{}",
                value.re, value.im, est, route_name
            );
            emit(&output, payload, Some(csv))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Series {
            pfq,
            order,
            at,
            output,
        } => {
            validate_order(order)?;
            let params = parse_pfq(&pfq)?;
            let payload = match at {
                SeriesPoint::Zero => {
                    let s = params.series(order);
                    let coeffs: Vec<Value> = (0..=order).map(|n| cnum(s.coeff(n))).collect();
                    json!({ "schema": SCHEMA, "at": "zero", "coefficients": coeffs })
                }
                SeriesPoint::One => {
                    let basis = frobenius_at_one(&params, order)?;
                    basis_json(&basis, "one")
                }
                SeriesPoint::Infinity => {
                    let (regular, wkb) = formal_at_infinity(&params, order)?;
                    let regs: Vec<Value> = regular
                        .iter()
                        .map(|g| {
                            json!({
                                "exponent": cnum(-g.gamma),
                                "coefficients": (0..g.len()).map(|n| cnum(g.coeff(n))).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    let wkbs: Vec<Value> = wkb
                        .iter()
                        .map(|f| {
                            json!({
                                "kappa": [1, f.kappa_den],
                                "c": cnum(f.c),
                                "mu": cnum(f.mu),
                                "amplitude": (0..f.amplitude.len()).map(|n| cnum(f.amplitude.coeff(n))).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    json!({ "schema": SCHEMA, "at": "infinity", "regular": regs, "wkb": wkbs })
                }
            };
            emit(&output, payload, None).map_err(RunError::Usage)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Wkb {
            mode,
            pfq,
            nus,
            betas,
            big_a,
            t,
            alpha,
            beta,
            s,
            terms,
            output,
        } => {
            let payload = match mode {
                WkbMode::Confluent => {
                    let params =
                        parse_pfq(&pfq.ok_or_else(|| RunError::Usage("--pfq required".into()))?)?;
                    let t =
                        parse_complex(&t.ok_or_else(|| RunError::Usage("--t required".into()))?)?;
                    let v = confluent_asymptotic_eval(&params, t, terms)?;
                    json!({ "schema": SCHEMA, "mode": "confluent", "value": cnum(v), "amplitude_terms": terms })
                }
                WkbMode::LargeParameter => {
                    let nus =
                        parse_list(&nus.ok_or_else(|| RunError::Usage("--nus required".into()))?)?;
                    let betas = parse_list(
                        &betas.ok_or_else(|| RunError::Usage("--betas required".into()))?,
                    )?;
                    let a = big_a.ok_or_else(|| RunError::Usage("--big-a required".into()))?;
                    let t =
                        parse_complex(&t.ok_or_else(|| RunError::Usage("--t required".into()))?)?;
                    if t.im != 0.0 {
                        return Err(RunError::Usage("large-parameter mode takes real t".into()));
                    }
                    let v = large_parameter_eval(&nus, &betas, a, t.re)?;
                    json!({ "schema": SCHEMA, "mode": "large-parameter", "value": cnum(v) })
                }
                WkbMode::Kummer => {
                    let alpha = parse_complex(
                        &alpha.ok_or_else(|| RunError::Usage("--alpha required".into()))?,
                    )?;
                    let beta = parse_complex(
                        &beta.ok_or_else(|| RunError::Usage("--beta required".into()))?,
                    )?;
                    let ks = kummer_stokes(alpha, beta)?;
                    let mut obj = json!({
                        "schema": SCHEMA,
                        "mode": "kummer",
                        "constants": {
                            "A": cnum(ks.a), "B": cnum(ks.b), "C": cnum(ks.c_coeff), "D": cnum(ks.d_coeff),
                            "c": cnum(ks.c_stokes), "d": cnum(ks.d_stokes),
                            "zeta": cnum(ks.zeta), "nu": cnum(ks.nu),
                        },
                    });
                    if let Some(s) = s {
                        let v = kummer_upper_line(alpha, beta, s, terms)?;
                        obj["upper_line_value"] = cnum(v);
                        obj["s"] = json!(s);
                    }
                    obj
                }
            };
            emit(&output, payload, None).map_err(RunError::Usage)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Variation {
            pfq,
            r,
            k,
            order,
            t,
            output,
        } => {
            validate_order(order)?;
            let params = parse_pfq(&pfq)?;
            let rco = parse_list(&r)?;
            let (qp, pp) = params.qp_polys();
            let base = hypergeometric_operator(&params)?;
            let pert = PerturbedOperator::standard(
                base,
                hyperwkb_core::algebra::EulerPolynomial::new(rco),
            )?;
            let u0 = hyperwkb_core::hyper::pfq_series_from_qp(&qp, &pp, order);
            let chain = variation_recurrence(&pert, &u0, k, order)?;
            let members: Vec<Value> = chain
                .iter()
                .map(|g| {
                    let mut m = json!({
                        "leading_exponent": cnum(g.gamma),
                        "coefficients": (0..g.len()).map(|n| cnum(g.coeff(n))).collect::<Vec<_>>(),
                    });
                    if let Some(ts) = &t {
                        if let Ok(tv) = parse_complex(ts) {
                            m["value"] = cnum(g.eval(tv));
                        }
                    }
                    m
                })
                .collect();
            emit(&output, json!({ "schema": SCHEMA, "chain": members }), None)
                .map_err(RunError::Usage)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Mzv {
            index,
            t,
            tol,
            output,
        } => {
            validate_tol(tol)?;
            let idx: Vec<u32> = index
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<u32>()
                        .map_err(|_| format!("bad index entry '{s}'"))
                })
                .collect::<Result<_, _>>()?;
            let idx = MzvIndex::new(idx)?;
            let value = match t {
                Some(t) if t < 1.0 => multi_polylog(&idx, t, tol)?,
                _ => mzv(&idx, tol)?,
            };
            let payload = json!({ "schema": SCHEMA, "value": value, "tol": tol });
            let csv = format!("value,tol\n{value},{tol}");
            emit(&output, payload, Some(csv)).map_err(RunError::Usage)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            seed,
            qmax,
            output,
        } => {
            let names: Vec<&str> = if suite == "all" {
                SUITE_NAMES.to_vec()
            } else if SUITE_NAMES.contains(&suite.as_str()) {
                vec![SUITE_NAMES.iter().find(|n| **n == suite).copied().unwrap()]
            } else {
                return Err(RunError::Usage(format!(
                    "unknown suite '{suite}' (available: all, {})",
                    SUITE_NAMES.join(", ")
                )));
            };
            let reports = run_suites_parallel(&names, seed, qmax)?;
            let all_passed = reports.iter().all(|r| r.all_passed());
            let payload = json!({
                "schema": SCHEMA,
                "seed": seed,
                "passed": all_passed,
                "suites": reports.iter().map(suite_json).collect::<Vec<_>>(),
            });
            let mut csv = String::from("suite,check,passed,deviation,tolerance\n");
            for r in &reports {
                for c in &r.checks {
                    csv.push_str(&format!(
                        "{},{:?},{},{},{}\n",
                        r.suite, c.name, c.passed, c.deviation, c.tolerance
                    ));
                }
            }
            emit(&output, payload, Some(csv)).map_err(RunError::Usage)?;
            Ok(if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Genfun {
            kind,
            lambda,
            route,
            output,
        } => {
            let l = parse_complex(&lambda)?;
            let value = match (kind, route.as_str()) {
                (2, "series") => delta2(l, Delta2Route::Series)?,
                (2, "product") => delta2(l, Delta2Route::Product)?,
                (2, "closed") => delta2(l, Delta2Route::Closed)?,
                (3, "series") => delta3(l, Delta3Route::Series)?,
                (3, "product") => delta3(l, Delta3Route::Product)?,
                (3, "closed" | "gamma") => delta3(l, Delta3Route::Gamma)?,
                (k @ (2 | 3), "connection") => {
                    if l.im != 0.0 {
                        return Err(RunError::Usage(
                            "the connection route takes real lambda".into(),
                        ));
                    }
                    hyperwkb_core::genfun::generating_function_via_connection(k, l.re, 80)?
                }
                _ => {
                    return Err(RunError::Usage(
                        "kind must be 2 or 3 with route series|product|closed|connection".into(),
                    ))
                }
            };
            let payload =
                json!({ "schema": SCHEMA, "kind": kind, "route": route, "value": cnum(value) });
            emit(&output, payload, None).map_err(RunError::Usage)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn basis_json(basis: &hyperwkb_core::frobenius::FrobeniusBasis<C64>, at: &str) -> Value {
    let sols: Vec<Value> = basis
        .solutions
        .iter()
        .map(|s| {
            let branches: Vec<Value> = s
                .branches()
                .iter()
                .enumerate()
                .map(|(j, b)| {
                    json!({
                        "log_power": j,
                        "leading_exponent": cnum(b.gamma),
                        "coefficients": (0..b.len()).map(|n| cnum(b.coeff(n))).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({ "max_log_power": s.max_log_power(), "branches": branches })
        })
        .collect();
    let roots: Vec<Value> = basis
        .indicial_roots
        .iter()
        .map(|(r, m)| json!({ "root": cnum(*r), "multiplicity": m }))
        .collect();
    json!({ "schema": SCHEMA, "at": at, "indicial_roots": roots, "solutions": sols })
}

fn suite_json(r: &SuiteReport) -> Value {
    json!({
        "suite": r.suite,
        "seed": r.seed,
        "passed": r.all_passed(),
        "checks": r.checks.iter().map(|c| {
            json!({
                "name": c.name,
                "passed": c.passed,
                "deviation": c.deviation,
                "tolerance": c.tolerance,
                "detail": c.detail,
            })
        }).collect::<Vec<_>>(),
    })
}

/// Run suites, optionally in parallel; HYPERWKB_THREADS caps the worker
/// count (default 1). Reports come back in canonical order regardless.
fn run_suites_parallel(names: &[&str], seed: u64, qmax: usize) -> Result<Vec<SuiteReport>, Error> {
    let threads: usize = std::env::var("HYPERWKB_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1)
        .max(1);
    let run_one = |name: &str| -> Result<SuiteReport, Error> {
        if name == "restricted-det" {
            run_restricted_det(seed, qmax)
        } else {
            run_suite(name, seed)
        }
    };
    if threads == 1 || names.len() == 1 {
        return names.iter().map(|n| run_one(n)).collect();
    }
    let mut slots: Vec<Option<Result<SuiteReport, Error>>> = names.iter().map(|_| None).collect();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk in names
            .iter()
            .enumerate()
            .collect::<Vec<_>>()
            .chunks(names.len().div_ceil(threads))
        {
            let chunk: Vec<(usize, &str)> = chunk.iter().map(|(i, n)| (*i, **n)).collect();
            handles.push(scope.spawn(move || {
                chunk
                    .into_iter()
                    .map(|(i, n)| (i, run_one(n)))
                    .collect::<Vec<_>>()
            }));
        }
        for h in handles {
            for (i, r) in h.join().expect("suite worker panicked") {
                slots[i] = Some(r);
            }
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("all slots filled"))
        .collect()
}
