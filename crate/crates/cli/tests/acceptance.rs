//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use gup1d::analytic::linear_energy;
use gup1d::checks::{run_checks, CheckOutcome, VerifyOptions, PUBLISHED_AIRY_ZEROS};
use gup1d::compare::{linear_spectrum, LINEAR_X_MAX};
use gup1d::oracle::{Grid, Stencil};
use gup1d::specfun::airy_zero;
use gup1d::PhysicalParams;
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    passed: bool,
    summary: String,
}

fn catalogue(names: &[&str]) -> Vec<CheckOutcome> {
    static ALL: OnceLock<Vec<CheckOutcome>> = OnceLock::new();
    let all = ALL.get_or_init(|| run_checks(None, &VerifyOptions::default()));
    names
        .iter()
        .map(|n| {
            all.iter()
                .find(|c| c.check == *n)
                .unwrap_or_else(|| panic!("unknown check {n}"))
                .clone()
        })
        .collect()
}

fn from_checks(names: &[&str]) -> Verdict {
    let outcomes = catalogue(names);
    let failed: Vec<_> = outcomes
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.check)
        .collect();
    let parts: Vec<String> = outcomes
        .iter()
        .map(|c| {
            format!(
                "{} {:.2e} {} {:.1e}",
                c.check,
                c.measured,
                c.comparison.symbol(),
                c.tolerance
            )
        })
        .collect();
    let mut summary = parts.join("; ");
    if !failed.is_empty() {
        summary = format!("failed {failed:?}; {summary}");
    }
    Verdict {
        passed: failed.is_empty(),
        summary,
    }
}

fn airy() -> Verdict {
    let start = Instant::now();
    let zeros: Vec<f64> = (1..=5).map(|n| airy_zero(n).expect("airy zero")).collect();
    let elapsed = start.elapsed();
    let worst = zeros
        .iter()
        .zip(PUBLISHED_AIRY_ZEROS)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Verdict {
        passed: worst <= 1e-5 && elapsed < Duration::from_millis(100),
        summary: format!("max |a_n - published| = {worst:.2e} (<= 1e-5), {elapsed:.2?} (< 0.1 s)"),
    }
}

fn linear() -> Verdict {
    let start = Instant::now();
    let grid = Grid::new(0.0, LINEAR_X_MAX, 3000).unwrap();
    let mut worst = 0.0f64;
    for lambda in [0.0, 0.5, 1.0] {
        let p = PhysicalParams::unit().with_lambda(lambda);
        let r = linear_spectrum(&p, 1, 5, &grid, Stencil::FivePoint).unwrap();
        for n in 1..=5 {
            assert_eq!(r.analytic[n - 1], linear_energy(n, &p).unwrap());
        }
        worst = worst.max(r.max_abs_err());
    }
    let order = from_checks(&["oracle.linear.refinement_order"]);
    let elapsed = start.elapsed();
    Verdict {
        passed: worst <= 1e-4 && order.passed && elapsed < Duration::from_secs(30),
        summary: format!(
            "max |E_grid - E_n| = {worst:.2e} (<= 1e-4); {}; {elapsed:.2?} (< 30 s)",
            order.summary
        ),
    }
}

fn verify_binary() -> Verdict {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_gup1d"))
        .args(["verify", "--format", "json"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json report");
    let checks = report["checks"].as_array().map_or(0, Vec::len);
    let code = out.status.code();
    Verdict {
        passed: code == Some(0) && elapsed < Duration::from_secs(120),
        summary: format!("exit {code:?}, {checks} checks, {elapsed:.2?} (< 2 min)"),
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("Airy zeros", airy),
        ("linear potential grid oracle", linear),
        ("gauge-shift law on the grid", || {
            from_checks(&[
                "oracle.gauge.linear",
                "oracle.gauge.delta",
                "oracle.gauge.harmonic",
            ])
        }),
        ("delta well", || {
            from_checks(&[
                "oracle.delta.spike_energy",
                "oracle.delta.spike_refinement",
                "analytic.delta.step_equation",
            ])
        }),
        ("delta barrier", || {
            from_checks(&[
                "scattering.unitarity",
                "scattering.energy_shift",
                "scattering.transfer.transmission",
                "scattering.excess_slope",
            ])
        }),
        ("Coulomb", || {
            from_checks(&[
                "analytic.coulomb.ode_residual",
                "oracle.coulomb.softening_trend",
            ])
        }),
        ("Stark", || {
            from_checks(&[
                "stark.h12.quadrature",
                "stark.h12.unit_value",
                "stark.diagonal_zero",
                "stark.n5_scaling.closed_form",
                "stark.lambda_independence",
                "stark.total_coefficient",
            ])
        }),
        ("full verify suite", verify_binary),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        all &= v.passed;
        println!(
            "criterion {}: {} {name}: {}",
            i + 1,
            if v.passed { "PASS" } else { "FAIL" },
            v.summary
        );
    }
    if !all {
        std::process::exit(1);
    }
}
