//! The verification suite: every closed form against its invariants and oracles.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analytic::{
    self, coulomb_energy, delta_well_energy, linear_energy, norm_sqr, overlap, BoundState,
    CoulombBranch, CoulombState, DeltaWellState, LinearState,
};
use crate::compare::{
    self, coulomb_grid, coulomb_odd_level, gauge_comparison, observed_orders, strictly_decreasing,
};
use crate::error::Result;
use crate::oracle::{self, potential, residual::ode_residual, Grid, QuadOptions, Stencil};
use crate::par::{self, Execution};
use crate::params::PhysicalParams;
use crate::scattering::{barrier_amplitudes, excess_tunneling_current};
use crate::specfun::{
    airy, airy_ai, airy_ai_prime, airy_zero, laguerre, laguerre_via_kummer,
    laguerre_weighted_integral, laguerre_weighted_integral_closed,
};
use crate::stark::{self, MatrixElementMethod};

/// The five Airy zeros as quoted to five decimals.
pub const PUBLISHED_AIRY_ZEROS: [f64; 5] = [-2.33810, -4.08794, -5.52055, -6.78670, -7.94413];

/// Seed for the random scattering triples.
pub const SCATTERING_SEED: u64 = 0x5eed_0001;

/// A deliberate defect for mutation testing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// The grid oracle builds its Hamiltonian with −λ instead of λ.
    FlipLambdaSign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Comparison {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

impl Comparison {
    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::AtMost => "<=",
            Comparison::AtLeast => ">=",
        }
    }

    pub fn holds(self, measured: f64, tolerance: f64) -> bool {
        match self {
            Comparison::AtMost => measured <= tolerance,
            Comparison::AtLeast => measured >= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub check: &'static str,
    pub group: &'static str,
    pub measured: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    /// An upper-bound check evaluated on the spot.
    pub fn at_most(
        check: &'static str,
        group: &'static str,
        measured: f64,
        tolerance: f64,
        detail: String,
    ) -> Self {
        Self {
            check,
            group,
            measured,
            tolerance,
            comparison: Comparison::AtMost,
            passed: Comparison::AtMost.holds(measured, tolerance),
            detail,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub fault: Option<Fault>,
    /// Multiplies every upper-bound tolerance.
    pub tolerance_scale: f64,
    pub execution: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            fault: None,
            tolerance_scale: 1.0,
            execution: Execution::default(),
        }
    }
}

struct Ctx {
    fault: Option<Fault>,
}

impl Ctx {
    /// λ handed to the grid oracle.
    fn oracle_lambda(&self, lambda: f64) -> f64 {
        match self.fault {
            Some(Fault::FlipLambdaSign) => -lambda,
            None => lambda,
        }
    }
}

struct Measurement {
    measured: f64,
    tolerance: f64,
    comparison: Comparison,
    detail: String,
}

fn at_most(measured: f64, tolerance: f64, detail: impl Into<String>) -> Result<Measurement> {
    Ok(Measurement {
        measured,
        tolerance,
        comparison: Comparison::AtMost,
        detail: detail.into(),
    })
}

fn at_least(measured: f64, tolerance: f64, detail: impl Into<String>) -> Result<Measurement> {
    Ok(Measurement {
        measured,
        tolerance,
        comparison: Comparison::AtLeast,
        detail: detail.into(),
    })
}

type CheckFn = fn(&Ctx) -> Result<Measurement>;

struct Check {
    name: &'static str,
    group: &'static str,
    run: CheckFn,
}

macro_rules! checks {
    ($($group:literal $name:literal => $f:ident,)*) => {
        &[$(Check { name: $name, group: $group, run: $f },)*]
    };
}

const CHECKS: &[Check] = checks! {
    "specfun" "specfun.airy.published_zeros" => airy_published_zeros,
    "specfun" "specfun.airy.zero_residual" => airy_zero_residual,
    "specfun" "specfun.airy.wronskian" => airy_wronskian,
    "specfun" "specfun.kummer.laguerre_identity" => kummer_laguerre_identity,
    "specfun" "specfun.laguerre.overlap_closed_form" => laguerre_overlap,
    "analytic" "analytic.linear.ground_energy" => linear_ground_energy,
    "analytic" "analytic.gauge.energy_shift" => analytic_gauge_energy,
    "analytic" "analytic.gauge.wavefunction_phase" => analytic_gauge_phase,
    "analytic" "analytic.linear.normalization" => linear_normalization,
    "analytic" "analytic.linear.orthogonality" => linear_orthogonality,
    "analytic" "analytic.linear.ode_residual" => linear_ode_residual,
    "analytic" "analytic.delta.step_equation" => delta_step_equation,
    "analytic" "analytic.delta.ode_residual" => delta_ode_residual,
    "analytic" "analytic.delta.normalization" => delta_normalization,
    "analytic" "analytic.coulomb.ode_residual" => coulomb_ode_residual,
    "analytic" "analytic.energy_monotonicity" => energy_monotonicity,
    "scattering" "scattering.unitarity" => scattering_unitarity,
    "scattering" "scattering.energy_shift" => scattering_energy_shift,
    "scattering" "scattering.one_plus_r_equals_s" => scattering_continuity,
    "scattering" "scattering.wavenumber_split" => scattering_wavenumbers,
    "scattering" "scattering.step_equation" => scattering_step,
    "scattering" "scattering.excess_slope" => scattering_excess_slope,
    "scattering" "scattering.transfer.transmission" => transfer_transmission,
    "scattering" "scattering.transfer.unitarity" => transfer_unitarity,
    "scattering" "scattering.transfer.refinement" => transfer_refinement,
    "oracle" "oracle.hermiticity" => oracle_hermiticity,
    "oracle" "oracle.quadrature.gamma_integrals" => quadrature_gamma,
    "oracle" "oracle.residual.sensitivity" => residual_sensitivity,
    "oracle" "oracle.harmonic.calibration" => harmonic_calibration,
    "oracle" "oracle.linear.spectrum" => oracle_linear_spectrum,
    "oracle" "oracle.linear.refinement_order" => oracle_linear_order,
    "oracle" "oracle.linear.refinement_five_point" => oracle_linear_five_point,
    "oracle" "oracle.gauge.linear" => oracle_gauge_linear,
    "oracle" "oracle.gauge.delta" => oracle_gauge_delta,
    "oracle" "oracle.gauge.harmonic" => oracle_gauge_harmonic,
    "oracle" "oracle.delta.spike_energy" => oracle_delta_energy,
    "oracle" "oracle.delta.spike_refinement" => oracle_delta_refinement,
    "oracle" "oracle.coulomb.softening_trend" => oracle_coulomb_trend,
    "stark" "stark.h12.quadrature" => stark_quadrature,
    "stark" "stark.h12.unit_value" => stark_unit_value,
    "stark" "stark.diagonal_zero" => stark_diagonal,
    "stark" "stark.h12_h21_symmetry" => stark_symmetry,
    "stark" "stark.n5_scaling.closed_form" => stark_n5_closed,
    "stark" "stark.n5_scaling.quadrature" => stark_n5_quadrature,
    "stark" "stark.lambda_independence" => stark_lambda,
    "stark" "stark.total_coefficient" => stark_total,
    "stark" "stark.second_equals_first" => stark_second,
};

/// Names and groups of every check, in report order.
pub fn catalogue() -> Vec<(&'static str, &'static str)> {
    CHECKS.iter().map(|c| (c.name, c.group)).collect()
}

/// True when `filter` selects a check: an exact group name or a substring of the check name.
pub fn matches(filter: &str, name: &str, group: &str) -> bool {
    filter == group || name.contains(filter)
}

/// Runs the selected checks. Outcomes keep catalogue order whatever the worker count.
pub fn run_checks(filter: Option<&str>, opts: &VerifyOptions) -> Vec<CheckOutcome> {
    let selected: Vec<&Check> = CHECKS
        .iter()
        .filter(|c| filter.is_none_or(|f| matches(f, c.name, c.group)))
        .collect();
    let ctx = Ctx { fault: opts.fault };
    let scale = opts.tolerance_scale;
    par::map(&selected, opts.execution, |c| {
        let outcome = (c.run)(&ctx);
        match outcome {
            Ok(m) => {
                let tolerance = match m.comparison {
                    Comparison::AtMost => m.tolerance * scale,
                    Comparison::AtLeast => m.tolerance,
                };
                let passed = m.comparison.holds(m.measured, tolerance);
                CheckOutcome {
                    check: c.name,
                    group: c.group,
                    measured: m.measured,
                    tolerance,
                    comparison: m.comparison,
                    passed,
                    detail: m.detail,
                }
            }
            Err(e) => CheckOutcome {
                check: c.name,
                group: c.group,
                measured: f64::NAN,
                tolerance: f64::NAN,
                comparison: Comparison::AtMost,
                passed: false,
                detail: format!("error: {e}"),
            },
        }
    })
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn sci(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| format!("{v:.3e}")).collect();
    format!("[{}]", parts.join(", "))
}

fn unit() -> PhysicalParams {
    PhysicalParams::unit()
}

fn sample_points(a: f64, b: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| a + (b - a) * (i as f64 + 0.5) / count as f64)
        .collect()
}

// ------------------------------------------------------------------ specfun

fn airy_published_zeros(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for (n, &want) in PUBLISHED_AIRY_ZEROS.iter().enumerate() {
        worst = worst.max((airy_zero(n + 1)? - want).abs());
    }
    at_most(worst, 1e-5, "max |a_n - quoted|, n = 1..5")
}

fn airy_zero_residual(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for n in 1..=50 {
        let a = airy_zero(n)?;
        worst = worst.max(airy_ai(a).abs() / airy_ai_prime(a).abs());
    }
    at_most(worst, 1e-12, "max |Ai(a_n)/Ai'(a_n)|, n = 1..50")
}

fn airy_wronskian(_: &Ctx) -> Result<Measurement> {
    let inv_pi = std::f64::consts::FRAC_1_PI;
    let mut worst: f64 = 0.0;
    for x in sample_points(-40.0, 20.0, 240) {
        let v = airy(x)?;
        let w = v.ai * v.bi_prime - v.ai_prime * v.bi;
        let scale = (v.ai * v.bi_prime).abs() + (v.ai_prime * v.bi).abs();
        worst = worst.max((w - inv_pi).abs() / scale.max(inv_pi));
    }
    at_most(
        worst,
        1e-12,
        "Ai Bi' - Ai' Bi = 1/pi on [-40, 20], scale-relative",
    )
}

fn kummer_laguerre_identity(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for n in 0..=10 {
        for mu in [0.0, 1.0, 2.5] {
            for z in [0.1, 1.0, 4.0, 12.0] {
                let a = laguerre(n, mu, z)?;
                let b = laguerre_via_kummer(n, mu, z)?;
                worst = worst.max((a - b).abs() / a.abs().max(1.0));
            }
        }
    }
    // the terminating 1F1 series alternates, so n = 10 at z = 12 loses a few digits
    at_most(worst, 1e-10, "recurrence L_n^mu vs Gamma-ratio times 1F1")
}

fn laguerre_overlap(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for alpha in [2.0, 3.0] {
        for n in 0..=8 {
            let c = laguerre_weighted_integral_closed(alpha, n, 1.0)?;
            let q = laguerre_weighted_integral(alpha, n, 1.0)?;
            worst = worst.max(((c - q) / c).abs());
        }
    }
    at_most(
        worst,
        1e-9,
        "closed form vs quadrature, alpha in {2,3}, beta = 1, n <= 8",
    )
}

// ------------------------------------------------------------------ analytic

fn linear_ground_energy(_: &Ctx) -> Result<Measurement> {
    let e = linear_energy(1, &unit())?;
    at_most((e - 1.85576).abs(), 5e-6, format!("E_1 = {e:.9}"))
}

const GAUGE_LAMBDAS: [f64; 3] = [0.5, 1.0, 2.0];

fn analytic_gauge_energy(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for m in [1.0, 2.5] {
        let base = unit().with_mass(m);
        for &l in &GAUGE_LAMBDAS {
            let p = base.with_lambda(l);
            let shift = -l * l / (2.0 * m);
            for n in 1..=5 {
                worst = worst.max((linear_energy(n, &p)? - linear_energy(n, &base)? - shift).abs());
                worst =
                    worst.max((coulomb_energy(n, &p)? - coulomb_energy(n, &base)? - shift).abs());
            }
            worst = worst.max((delta_well_energy(&p)? - delta_well_energy(&base)? - shift).abs());
        }
    }
    at_most(
        worst,
        1e-12,
        "E(lambda) - E(0) + lambda^2/2m over linear, delta and Coulomb",
    )
}

fn analytic_gauge_phase(_: &Ctx) -> Result<Measurement> {
    let base = unit();
    let mut worst: f64 = 0.0;
    let full = sample_points(-6.0, 6.0, 48);
    let half = sample_points(0.0, 6.0, 48);
    for &l in &GAUGE_LAMBDAS {
        let p = base.with_lambda(l);
        let mut compare = |a: &dyn BoundState, b: &dyn BoundState, xs: &[f64]| {
            for &x in xs {
                let want = p.gauge_phase(x) * b.psi(x);
                worst = worst.max((a.psi(x) - want).norm() / want.norm().max(1.0));
            }
        };
        for n in 1..=3 {
            compare(
                &LinearState::new(n, &p)?,
                &LinearState::new(n, &base)?,
                &half,
            );
            for branch in CoulombBranch::BOTH {
                compare(
                    &CoulombState::new(n, branch, &p)?,
                    &CoulombState::new(n, branch, &base)?,
                    &full,
                );
            }
        }
        compare(
            &DeltaWellState::new(&p)?,
            &DeltaWellState::new(&base)?,
            &full,
        );
    }
    at_most(
        worst,
        1e-12,
        "psi_lambda(x) vs exp(-i lambda x/hbar) psi_0(x)",
    )
}

fn linear_normalization(_: &Ctx) -> Result<Measurement> {
    let p = unit().with_lambda(0.7);
    let mut worst: f64 = 0.0;
    for n in 1..=5 {
        worst = worst.max((norm_sqr(&LinearState::new(n, &p)?, 0.0, 30.0)? - 1.0).abs());
    }
    at_most(worst, 1e-8, "|int |psi_n|^2 - 1| over [0, 30], n = 1..5")
}

fn linear_orthogonality(_: &Ctx) -> Result<Measurement> {
    let p = unit().with_lambda(0.7);
    let states = (1..=5)
        .map(|n| LinearState::new(n, &p))
        .collect::<Result<Vec<_>>>()?;
    let mut worst: f64 = 0.0;
    for i in 0..states.len() {
        for j in 0..i {
            worst = worst.max(overlap(&states[i], &states[j], 0.0, 30.0)?.norm());
        }
    }
    at_most(worst, 1e-6, "max |<psi_m|psi_n>|, m != n <= 5")
}

fn linear_ode_residual(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for l in [0.0, 0.8] {
        let p = unit().with_lambda(l);
        for n in 1..=5 {
            let s = LinearState::new(n, &p)?;
            let pts = sample_points(0.2, 12.0, 50);
            worst = worst.max(ode_residual(
                |x| s.psi(x),
                s.energy(),
                analytic::potentials::linear(&p),
                &p,
                &pts,
            ));
        }
    }
    at_most(
        worst,
        1e-7,
        "relative residual of the deformed equation, 50 points, n = 1..5",
    )
}

fn delta_step_equation(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for (m, v, l) in [(1.0, 1.0, 0.7), (2.0, 3.0, -1.1), (0.5, 0.2, 2.0)] {
        let s = DeltaWellState::new(&unit().with_mass(m).with_strength(v).with_lambda(l))?;
        worst = worst.max(s.step_residual());
    }
    at_most(worst, 1e-10, "|psi'(0+) - psi'(0-) + (2mV/hbar^2) psi(0)|")
}

fn delta_ode_residual(_: &Ctx) -> Result<Measurement> {
    let p = unit().with_lambda(0.7);
    let s = DeltaWellState::new(&p)?;
    let mut pts = sample_points(0.1, 5.0, 25);
    pts.extend(sample_points(-5.0, -0.1, 25));
    let r = ode_residual(|x| s.psi(x), s.energy(), |_| 0.0, &p, &pts);
    at_most(
        r,
        1e-7,
        "free deformed equation away from the delta, 50 points",
    )
}

fn delta_normalization(_: &Ctx) -> Result<Measurement> {
    let s = DeltaWellState::new(&unit().with_lambda(0.7).with_strength(1.7))?;
    let n = norm_sqr(&s, f64::NEG_INFINITY, 0.0)? + norm_sqr(&s, 0.0, f64::INFINITY)?;
    at_most((n - 1.0).abs(), 1e-10, "full-line norm")
}

fn coulomb_ode_residual(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for l in [0.0, 0.6] {
        let p = unit().with_lambda(l);
        for n in 1..=4 {
            // avoid the origin and the nodes of F(1-n, 2, .), where the scale vanishes anyway
            let reach = 6.0 * n as f64;
            let mut pts = sample_points(0.15, reach, 25);
            pts.extend(sample_points(-reach, -0.15, 25));
            for branch in CoulombBranch::BOTH {
                let s = CoulombState::new(n, branch, &p)?;
                worst = worst.max(ode_residual(
                    |x| s.psi(x),
                    s.energy(),
                    analytic::potentials::coulomb(&p),
                    &p,
                    &pts,
                ));
            }
        }
    }
    at_most(
        worst,
        1e-7,
        "both branches, n = 1..4, 50 points off the origin",
    )
}

fn energy_monotonicity(_: &Ctx) -> Result<Measurement> {
    let p = unit().with_lambda(0.3);
    let lin = (1..=20)
        .map(|n| linear_energy(n, &p))
        .collect::<Result<Vec<_>>>()?;
    let cou = (1..=20)
        .map(|n| coulomb_energy(n, &p))
        .collect::<Result<Vec<_>>>()?;
    let violations = lin
        .windows(2)
        .chain(cou.windows(2))
        .filter(|w| w[1] <= w[0])
        .count();
    at_most(
        violations as f64,
        0.0,
        "non-increasing steps in E_n, n = 1..20",
    )
}

// ------------------------------------------------------------------ scattering

/// 1000 reproducible (E, V, λ) triples.
pub fn scattering_triples() -> Vec<(f64, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SCATTERING_SEED);
    (0..1000)
        .map(|_| {
            (
                rng.gen_range(0.01..10.0),
                rng.gen_range(0.01..10.0),
                rng.gen_range(-5.0..5.0),
            )
        })
        .collect()
}

fn scattering_unitarity(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for (e, v, l) in scattering_triples() {
        let r = barrier_amplitudes(e, &unit().with_strength(v).with_lambda(l))?;
        worst = worst.max((r.transmission + r.reflection - 1.0).abs());
    }
    at_most(worst, 1e-12, "|T + Rc - 1| over 1000 random (E, V, lambda)")
}

fn scattering_energy_shift(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for (e, v, l) in scattering_triples() {
        let p = unit().with_strength(v).with_lambda(l);
        let t = barrier_amplitudes(e, &p)?.transmission;
        let t0 = barrier_amplitudes(e + l * l / (2.0 * p.mass), &p.with_lambda(0.0))?.transmission;
        worst = worst.max((t - t0).abs());
    }
    at_most(worst, 1e-14, "||S(E,lambda)|^2 - |S0(E + lambda^2/2m)|^2|")
}

fn scattering_continuity(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for (e, v, l) in scattering_triples() {
        let r = barrier_amplitudes(e, &unit().with_strength(v).with_lambda(l))?;
        worst = worst.max((Complex64::new(1.0, 0.0) + r.r - r.s).norm());
    }
    at_most(worst, 1e-14, "|1 + R - S|")
}

fn scattering_wavenumbers(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for (e, v, l) in scattering_triples() {
        let p = unit().with_strength(v).with_lambda(l);
        let r = barrier_amplitudes(e, &p)?;
        worst = worst.max((r.k_minus - r.k_plus - 2.0 * l / p.hbar).abs());
    }
    at_most(worst, 1e-12, "|k_minus - k_plus - 2 lambda/hbar|")
}

fn scattering_step(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for (e, v, l) in scattering_triples().into_iter().take(100) {
        let p = unit().with_strength(v).with_lambda(l);
        worst = worst.max(barrier_amplitudes(e, &p)?.step_residual(&p));
    }
    at_most(worst, 1e-10, "|psi'(0+) - psi'(0-) - (2mV/hbar^2) psi(0)|")
}

/// Least-squares slope of log|exact/leading − 1| against log λ.
pub fn excess_ratio_slope(energy: f64, p: &PhysicalParams, lambdas: &[f64]) -> Result<f64> {
    let mut xs = Vec::with_capacity(lambdas.len());
    let mut ys = Vec::with_capacity(lambdas.len());
    for &l in lambdas {
        let (exact, leading) = excess_tunneling_current(energy, &p.with_lambda(l))?;
        xs.push(l.ln());
        ys.push((exact / leading - 1.0).abs().ln());
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

fn scattering_excess_slope(_: &Ctx) -> Result<Measurement> {
    let lambdas: Vec<f64> = (0..=12)
        .map(|i| 10f64.powf(-4.0 + 0.25 * i as f64))
        .collect();
    let slope = excess_ratio_slope(0.5, &unit(), &lambdas)?;
    at_most(
        (slope - 2.0).abs(),
        0.1,
        format!("slope = {slope:.6} over lambda in [1e-4, 1e-1]"),
    )
}

/// (E, V, λ) with V ≤ 1. The Gaussian's own error grows like mV²w/ħ², so
/// stronger barriers need a narrower width for the same 1e-3.
const TRANSFER_CASES: [(f64, f64, f64); 4] = [
    (0.5, 1.0, 0.0),
    (0.5, 1.0, 1.0),
    (1.3, 0.6, -0.4),
    (2.0, 0.8, 0.8),
];
/// Refinement also covers a strong barrier. At (2, 0.8, 0.8) the width error
/// changes sign between w = 0.1 and 0.01, so that case is left out here.
const TRANSFER_REFINEMENT_CASES: [(f64, f64, f64); 4] = [
    (0.5, 1.0, 0.0),
    (0.5, 1.0, 1.0),
    (1.3, 0.6, -0.4),
    (2.0, 2.5, 0.8),
];

fn transfer_transmission(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for (e, v, l) in TRANSFER_CASES {
        let p = unit().with_strength(v).with_lambda(l);
        let t = oracle::scattering_transfer(e, &p, 1e-3)?.transmission;
        worst = worst.max((t - barrier_amplitudes(e, &p)?.transmission).abs());
    }
    at_most(worst, 1e-3, "|T_transfer - T_analytic| at reg_width = 1e-3")
}

fn transfer_unitarity(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for (e, v, l) in TRANSFER_CASES {
        let r = oracle::scattering_transfer(e, &unit().with_strength(v).with_lambda(l), 1e-3)?;
        worst = worst.max((r.transmission + r.reflection - 1.0).abs());
    }
    at_most(
        worst,
        1e-6,
        "|T + Rc - 1| from the transfer oracle at reg_width = 1e-3",
    )
}

fn transfer_refinement(_: &Ctx) -> Result<Measurement> {
    let mut violations = 0;
    let mut detail = String::new();
    for (e, v, l) in TRANSFER_REFINEMENT_CASES {
        let p = unit().with_strength(v).with_lambda(l);
        let exact = barrier_amplitudes(e, &p)?.transmission;
        let errs = [1e-1, 1e-2, 1e-3]
            .iter()
            .map(|&w| Ok((oracle::scattering_transfer(e, &p, w)?.transmission - exact).abs()))
            .collect::<Result<Vec<_>>>()?;
        if !strictly_decreasing(&errs) {
            violations += 1;
        }
        detail = format!("{detail}[{:.2e} {:.2e} {:.2e}] ", errs[0], errs[1], errs[2]);
    }
    at_most(
        violations as f64,
        0.0,
        format!(
            "non-monotone cases over w = 1e-1, 1e-2, 1e-3: {}",
            detail.trim_end()
        ),
    )
}

// ------------------------------------------------------------------ oracle

fn oracle_hermiticity(ctx: &Ctx) -> Result<Measurement> {
    let g = Grid::new(-10.0, 10.0, 400)?;
    let mut worst: f64 = 0.0;
    for stencil in [Stencil::ThreePoint, Stencil::FivePoint] {
        for l in [0.0, 0.9, -2.0] {
            let p = unit().with_lambda(ctx.oracle_lambda(l));
            let h = oracle::build_hamiltonian(potential::harmonic(1.0, 1.0), &p, &g, stencil)?;
            worst = worst.max(h.hermiticity_defect());
        }
    }
    at_most(
        worst,
        1e-14,
        "max |H_ij - conj(H_ji)| relative to the largest entry",
    )
}

fn quadrature_gamma(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for k in 0..10 {
        let want = crate::specfun::factorial(k);
        let q = oracle::quadrature::integrate(
            |x: f64| x.powi(k as i32) * (-x).exp(),
            0.0,
            f64::INFINITY,
            QuadOptions::relative(1e-13),
        )?;
        worst = worst.max(((q.value - want) / want).abs());
    }
    at_most(worst, 1e-12, "int_0^inf x^k e^-x dx = k!, k = 0..9")
}

fn residual_sensitivity(_: &Ctx) -> Result<Measurement> {
    let p = unit();
    let s = LinearState::new(1, &p)?;
    let pts = sample_points(0.2, 6.0, 20);
    let r = ode_residual(
        |x| s.psi(x),
        s.energy() + 0.1,
        analytic::potentials::linear(&p),
        &p,
        &pts,
    );
    at_least(
        r,
        1e-3,
        "residual of the linear ground state with E shifted by 0.1",
    )
}

fn harmonic_calibration(ctx: &Ctx) -> Result<Measurement> {
    let g = Grid::new(-12.0, 12.0, 3000)?;
    let mut worst: f64 = 0.0;
    for l in [0.0, 1.0] {
        let p = unit().with_lambda(ctx.oracle_lambda(l));
        let h =
            oracle::build_hamiltonian(potential::harmonic(1.0, 1.0), &p, &g, Stencil::FivePoint)?;
        worst = worst.max((h.lowest_energies(1)?[0] - (0.5 - l * l / 2.0)).abs());
    }
    at_most(
        worst,
        1e-5,
        "E_0 of x^2/2 vs 0.5 - lambda^2/2m, lambda in {0, 1}",
    )
}

const LINEAR_LAMBDAS: [f64; 3] = [0.0, 0.5, 1.0];

fn oracle_linear_spectrum(ctx: &Ctx) -> Result<Measurement> {
    let g = Grid::new(0.0, compare::LINEAR_X_MAX, 3000)?;
    let mut worst: f64 = 0.0;
    for l in LINEAR_LAMBDAS {
        let p = unit().with_lambda(l);
        let analytic = (1..=5)
            .map(|n| linear_energy(n, &p))
            .collect::<Result<Vec<_>>>()?;
        let r = compare::linear_spectrum(
            &p.with_lambda(ctx.oracle_lambda(l)),
            1,
            5,
            &g,
            Stencil::FivePoint,
        )?;
        worst = worst.max(max_of(
            r.oracle.iter().zip(&analytic).map(|(o, a)| (o - a).abs()),
        ));
    }
    at_most(
        worst,
        1e-4,
        "max |E_grid - E_n|, n = 1..5, lambda in {0, 0.5, 1}, 3000 points",
    )
}

fn linear_errors(ctx: &Ctx, stencil: Stencil, sizes: &[usize]) -> Result<Vec<f64>> {
    let p = unit().with_lambda(0.5);
    let want = linear_energy(5, &p)?;
    sizes
        .iter()
        .map(|&n| {
            let g = Grid::new(0.0, compare::LINEAR_X_MAX, n)?;
            let r = compare::linear_spectrum(
                &p.with_lambda(ctx.oracle_lambda(0.5)),
                5,
                5,
                &g,
                stencil,
            )?;
            Ok((r.oracle[0] - want).abs())
        })
        .collect()
}

fn oracle_linear_order(ctx: &Ctx) -> Result<Measurement> {
    let errs = linear_errors(ctx, Stencil::ThreePoint, &[751, 1501, 3001])?;
    let orders = observed_orders(&errs);
    let worst = max_of(orders.iter().map(|p| (p - 2.0).abs()));
    at_most(
        worst,
        0.1,
        format!("three-point stencil, n = 5, lambda = 0.5: orders {orders:.4?}"),
    )
}

fn oracle_linear_five_point(ctx: &Ctx) -> Result<Measurement> {
    let errs = linear_errors(ctx, Stencil::FivePoint, &[751, 1501, 3001])?;
    let violations = if strictly_decreasing(&errs) { 0.0 } else { 1.0 };
    at_most(
        violations,
        0.0,
        format!("five-point errors {} must shrink", sci(&errs)),
    )
}

fn gauge_measure(ctx: &Ctx, samples: &[f64], grid: &Grid, levels: usize) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    let mut detail = String::new();
    for l in [0.5, 1.0] {
        let p = unit().with_lambda(l);
        let r = gauge_comparison(
            samples,
            &p,
            ctx.oracle_lambda(l),
            grid,
            Stencil::FivePoint,
            levels,
        )?;
        let m = r
            .shift_error
            .max(r.modulus_error)
            .max(1.0 - r.phase_overlap);
        worst = worst.max(m);
        detail = format!(
            "{detail}lambda={l}: shift {:.2e}, modulus {:.2e}, 1-overlap {:.2e}; ",
            r.shift_error,
            r.modulus_error,
            1.0 - r.phase_overlap
        );
    }
    at_most(
        worst,
        1e-5,
        detail.trim_end().trim_end_matches(';').to_string(),
    )
}

fn oracle_gauge_linear(ctx: &Ctx) -> Result<Measurement> {
    let g = Grid::new(0.0, compare::LINEAR_X_MAX, 3000)?;
    gauge_measure(ctx, &potential::sample(&g, potential::linear(1.0)), &g, 5)
}

fn oracle_gauge_delta(ctx: &Ctx) -> Result<Measurement> {
    let g = Grid::new(-compare::DELTA_X_MAX, compare::DELTA_X_MAX, 3000)?;
    gauge_measure(ctx, &compare::delta_spike(&unit(), &g), &g, 1)
}

fn oracle_gauge_harmonic(ctx: &Ctx) -> Result<Measurement> {
    let g = Grid::new(-12.0, 12.0, 3000)?;
    gauge_measure(
        ctx,
        &potential::sample(&g, potential::harmonic(1.0, 1.0)),
        &g,
        5,
    )
}

fn delta_errors(ctx: &Ctx, sizes: &[usize]) -> Result<Vec<f64>> {
    let p = unit().with_lambda(0.5);
    let want = delta_well_energy(&p)?;
    sizes
        .iter()
        .map(|&n| {
            let g = Grid::new(-compare::DELTA_X_MAX, compare::DELTA_X_MAX, n)?;
            let r = compare::delta_well_spectrum(
                &p.with_lambda(ctx.oracle_lambda(0.5)),
                &g,
                Stencil::ThreePoint,
            )?;
            Ok(((r.oracle[0] - want) / want).abs())
        })
        .collect()
}

fn oracle_delta_energy(ctx: &Ctx) -> Result<Measurement> {
    let e = delta_errors(ctx, &[4000])?[0];
    at_most(
        e,
        1e-3,
        "relative error of the spike-regularized well at 4000 points",
    )
}

fn oracle_delta_refinement(ctx: &Ctx) -> Result<Measurement> {
    let errs = delta_errors(ctx, &[1000, 2000, 4000])?;
    let violations = if strictly_decreasing(&errs) { 0.0 } else { 1.0 };
    at_most(violations, 0.0, format!("relative errors {}", sci(&errs)))
}

/// Grid used for the softening trend (see `compare::coulomb_spectrum` for the default one).
pub const COULOMB_TREND_POINTS: usize = 16000;
pub const COULOMB_SOFTENINGS: [f64; 3] = [1e-1, 1e-2, 1e-3];

fn oracle_coulomb_trend(ctx: &Ctx) -> Result<Measurement> {
    let p = unit().with_lambda(0.5);
    let mut violations = 0;
    let mut detail = String::new();
    for n in 1..=3 {
        let want = coulomb_energy(n, &p)?;
        let g = coulomb_grid(n, COULOMB_TREND_POINTS, compare::COULOMB_BOX_PER_LEVEL, &p)?;
        let oracle_p = p.with_lambda(ctx.oracle_lambda(p.lambda));
        let errs = COULOMB_SOFTENINGS
            .iter()
            .map(|&a| {
                Ok((coulomb_odd_level(&oracle_p, n, &g, a, Stencil::FivePoint)? - want).abs())
            })
            .collect::<Result<Vec<_>>>()?;
        if !strictly_decreasing(&errs) {
            violations += 1;
        }
        detail = format!("{detail}n={n}: {} ", sci(&errs));
    }
    at_most(
        violations as f64,
        0.0,
        format!(
            "|E_grid - E_n| over a = 1e-1, 1e-2, 1e-3: {}",
            detail.trim_end()
        ),
    )
}

// ------------------------------------------------------------------ stark

fn stark_quadrature(_: &Ctx) -> Result<Measurement> {
    let p = unit().with_lambda(0.5).with_field(0.01);
    let mut worst: f64 = 0.0;
    for n in 1..=6 {
        let c = stark::stark_matrix_element(n, &p, MatrixElementMethod::ClosedForm)?;
        let q = stark::stark_matrix_element(n, &p, MatrixElementMethod::Quadrature)?;
        worst = worst.max(((q - c) / c).abs());
    }
    at_most(worst, 1e-9, "closed form vs full-line quadrature, n = 1..6")
}

fn stark_unit_value(_: &Ctx) -> Result<Measurement> {
    let h = stark::stark_matrix_element(1, &unit(), MatrixElementMethod::ClosedForm)?;
    at_most((h - 0.75).abs(), 0.0, format!("h12(n = 1) = {h}"))
}

fn stark_diagonal(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for n in 1..=6 {
        let m =
            stark::matrix_elements(n, &unit().with_lambda(0.5), MatrixElementMethod::Quadrature)?;
        worst = worst.max(m.h11.abs().max(m.h22.abs()) / m.h12.abs());
    }
    at_most(worst, 1e-10, "max(|h11|, |h22|)/|h12|, n = 1..6")
}

fn stark_symmetry(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for n in 1..=6 {
        let m =
            stark::matrix_elements(n, &unit().with_lambda(0.5), MatrixElementMethod::Quadrature)?;
        worst = worst.max(((m.h12 - m.h21) / m.h12).abs());
    }
    at_most(worst, 1e-12, "|h12 - h21|/|h12| by quadrature")
}

fn stark_n5_closed(_: &Ctx) -> Result<Measurement> {
    let h1 = stark::closed_form_h12(1, &unit());
    let worst = max_of(
        (1..=6).map(|n| (stark::closed_form_h12(n, &unit()) / h1 - (n as f64).powi(5)).abs()),
    );
    at_most(worst, 0.0, "h12(n)/h12(1) - n^5, closed form")
}

fn stark_n5_quadrature(_: &Ctx) -> Result<Measurement> {
    let h1 = stark::stark_matrix_element(1, &unit(), MatrixElementMethod::Quadrature)?;
    let mut worst: f64 = 0.0;
    for n in 2..=6 {
        let h = stark::stark_matrix_element(n, &unit(), MatrixElementMethod::Quadrature)?;
        let want = (n as f64).powi(5);
        worst = worst.max((h / h1 - want).abs() / want);
    }
    at_most(
        worst,
        1e-8,
        "relative deviation of h12(n)/h12(1) from n^5, quadrature",
    )
}

fn stark_lambda(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        let base = stark::matrix_elements(n, &unit(), MatrixElementMethod::Quadrature)?;
        for l in [0.5, 2.0] {
            let m =
                stark::matrix_elements(n, &unit().with_lambda(l), MatrixElementMethod::Quadrature)?;
            let s = base.h12.abs();
            for (a, b) in [
                (m.h11, base.h11),
                (m.h22, base.h22),
                (m.h12, base.h12),
                (m.h21, base.h21),
            ] {
                worst = worst.max((a - b).abs() / s);
            }
        }
    }
    at_most(
        worst,
        1e-10,
        "matrix elements at lambda in {0.5, 2} vs 0, relative to h12",
    )
}

fn stark_total(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for (n, p) in [
        (1, PhysicalParams::default()),
        (3, unit().with_field(0.3).with_lambda(0.4)),
        (5, unit().with_field(1e-4)),
    ] {
        let (hi, lo) = stark::stark_total_energies(n, &p)?;
        let e0 = coulomb_energy(n, &p)?;
        let coefficient = 3.0 * p.field * p.hbar.powi(8) * (n as f64).powi(5)
            / (2.0 * p.kappa.powi(4) * p.mass.powi(4));
        worst = worst
            .max((hi - (e0 + coefficient)).abs())
            .max((lo - (e0 - coefficient)).abs());
    }
    at_most(
        worst,
        1e-15,
        "totals vs E_n +/- 3 eE hbar^8 n^5 / (2 kappa^4 m^4)",
    )
}

fn stark_second(_: &Ctx) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        let p = unit().with_lambda(0.3);
        let (e1, e2) = stark::stark_first_order(n, &p)?;
        let (s1, s2) = stark::stark_second_order(n, &p, MatrixElementMethod::Quadrature)?;
        worst = worst
            .max(((s1 - e1) / e1).abs())
            .max(((s2 - e2) / e2).abs());
    }
    at_most(
        worst,
        1e-9,
        "<phi|eEx|phi> by quadrature vs first-order shifts",
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_grouped() {
        let cat = catalogue();
        let mut names: Vec<_> = cat.iter().map(|c| c.0).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), cat.len());
        for (name, group) in cat {
            assert!(name.starts_with(group), "{name}");
        }
    }

    #[test]
    fn airy_filter_selects_specfun_only() {
        let out = run_checks(Some("airy"), &VerifyOptions::default());
        assert!(!out.is_empty());
        assert!(
            out.iter().all(|o| o.group == "specfun" && o.passed),
            "{out:?}"
        );
    }

    #[test]
    fn triples_are_reproducible() {
        assert_eq!(scattering_triples(), scattering_triples());
    }
}
