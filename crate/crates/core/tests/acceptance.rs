//! Acceptance gate: runs every verification suite and prints one pass/fail
//! line per criterion. Run with `--nocapture` to see the lines:
//!
//! ```sh
//! cargo test -p hyperwkb-core --test acceptance -- --nocapture
//! ```

use hyperwkb_core::suites::{run_suite, SuiteReport};

const SEED: u64 = 7;

/// (criterion number, descriptive label, suite name, time budget seconds)
const CRITERIA: [(usize, &str, &str, f64); 8] = [
    (
        1,
        "closed-form generating-function routes",
        "closed-form",
        5.0,
    ),
    (
        2,
        "integral representations vs series",
        "integral-reps",
        60.0,
    ),
    (
        3,
        "local bases with zero operator residual",
        "frobenius",
        10.0,
    ),
    (
        4,
        "restricted quadratic-form determinant",
        "restricted-det",
        2.0,
    ),
    (5, "WKB constants and asymptotics", "wkb", 30.0),
    (6, "perturbation variations", "variations", 10.0),
    (7, "Airy conjugation and normalization", "wasow", 20.0),
    (
        8,
        "connection coefficients and MZV identities",
        "connection",
        60.0,
    ),
];

fn report_line(n: usize, label: &str, rep: &SuiteReport, elapsed: f64, budget: f64) -> bool {
    let passed = rep.all_passed() && elapsed <= budget;
    let worst = rep
        .checks
        .iter()
        .filter(|c| c.tolerance > 0.0)
        .map(|c| c.deviation / c.tolerance)
        .fold(0.0f64, f64::max);
    println!(
        "criterion {n} [{label}]: {} ({} checks, worst dev/tol {:.2e}, {:.2}s of {:.0}s budget)",
        if passed { "PASS" } else { "FAIL" },
        rep.checks.len(),
        worst,
        elapsed,
        budget,
    );
    for c in &rep.checks {
        if !c.passed {
            println!(
                "    FAILED: {} (deviation {:.3e}, tolerance {:.1e}){}",
                c.name,
                c.deviation,
                c.tolerance,
                c.detail
                    .as_deref()
                    .map(|d| format!(" — {d}"))
                    .unwrap_or_default()
            );
        }
    }
    passed
}

#[test]
fn acceptance() {
    let mut all = true;
    for (n, label, suite, budget) in CRITERIA {
        let t0 = std::time::Instant::now();
        let rep = run_suite(suite, SEED).expect("suite must run");
        let elapsed = t0.elapsed().as_secs_f64();
        all &= report_line(n, label, &rep, elapsed, budget);
        // Verdict details for the adjudicated constants are part of the record.
        for c in &rep.checks {
            if let Some(d) = &c.detail {
                if c.name.starts_with("verdict") {
                    println!("    recorded {}: {d}", c.name);
                }
            }
        }
    }
    assert!(all, "at least one acceptance criterion failed");
}
