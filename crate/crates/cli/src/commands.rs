use gup1d::analytic::{coulomb_energy, BoundState, LinearState};
use gup1d::checks::{run_checks, CheckOutcome, Fault, VerifyOptions};
use gup1d::compare::{
    self, coulomb_grid, coulomb_odd_level, COULOMB_BOX_PER_LEVEL, DELTA_X_MAX, LINEAR_X_MAX,
};
use gup1d::oracle::{scattering_transfer, Grid, SpectrumReport, Stencil};
use gup1d::par::{self, Execution};
use gup1d::scattering::barrier_amplitudes;
use gup1d::stark::{
    closed_form_h12, matrix_elements, stark_report, MatrixElementMethod, SECOND_ORDER_CAVEAT,
};
use gup1d::PhysicalParams;

use crate::table::{Report, Row};
use crate::{
    BarrierArgs, CoulombArgs, DeltaArgs, Failure, FaultArg, GridOpts, Levels, LinearArgs,
    MethodArg, Physics, StarkArgs, VerifyArgs,
};

type Outcome = Result<Report, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn tolerance(given: Option<f64>, default: f64) -> Result<f64, Failure> {
    match given.unwrap_or(default) {
        t if t.is_finite() && t > 0.0 => Ok(t),
        t => Err(usage(format!(
            "--tolerance must be positive and finite, got {t}"
        ))),
    }
}

fn level_range(l: &Levels, default: (usize, usize)) -> Result<(usize, usize), Failure> {
    let lo = l.n_min.unwrap_or(default.0);
    let hi = l.n_max.unwrap_or(default.1.max(lo));
    if lo == 0 || hi < lo {
        return Err(usage(format!(
            "level range needs 1 <= n-min <= n-max, got {lo}..{hi}"
        )));
    }
    Ok((lo, hi))
}

/// NaN counts as worse than anything, so a broken row is never hidden.
fn worse(candidate: f64, current: f64) -> bool {
    candidate.is_nan() || candidate > current
}

fn physics_row(p: &Physics) -> Row {
    Row::new()
        .with("mass", p.mass)
        .with("hbar", p.hbar)
        .with("lambda", p.lambda)
        .with("slope", p.slope)
        .with("strength", p.strength)
        .with("kappa", p.kappa)
        .with("field", p.field)
}

fn stencil_name(s: Stencil) -> &'static str {
    match s {
        Stencil::ThreePoint => "three-point",
        Stencil::FivePoint => "five-point",
    }
}

fn grid_row(row: Row, grid: &Grid, stencil: Stencil) -> Row {
    row.with("grid_points", grid.n_points)
        .with("x_min", grid.x_min)
        .with("x_max", grid.x_max)
        .with("stencil", stencil_name(stencil))
}

fn in_pool<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    par::with_threads(threads, f)
}

/// Energy rows plus one check per level.
fn spectrum_rows(
    r: &SpectrumReport,
    relative: bool,
    tol: f64,
    name: &'static str,
    group: &'static str,
) -> (Vec<Row>, Vec<CheckOutcome>) {
    let mut rows = Vec::with_capacity(r.len());
    let mut worst = (0.0f64, 0u32);
    for i in 0..r.len() {
        rows.push(
            Row::new()
                .with("n", r.levels[i] as usize)
                .with("e_analytic", r.analytic[i])
                .with("e_oracle", r.oracle[i])
                .with("abs_delta", r.abs_err[i])
                .with("rel_delta", r.rel_err[i]),
        );
        let e = if relative { r.rel_err[i] } else { r.abs_err[i] };
        if worse(e, worst.0) {
            worst = (e, r.levels[i]);
        }
    }
    let kind = if relative { "relative" } else { "absolute" };
    let check = CheckOutcome::at_most(
        name,
        group,
        worst.0,
        tol,
        format!("worst {kind} error at n = {}", worst.1),
    );
    (rows, vec![check])
}

pub fn linear(a: &LinearArgs) -> Outcome {
    let p = a.physics.params();
    p.validate_linear()?;
    let (lo, hi) = level_range(&a.levels, (1, 5))?;
    let tol = tolerance(a.tolerance, 1e-4)?;
    let (grid, stencil) = grid_for(
        &a.grid,
        3000,
        (0.0, LINEAR_X_MAX),
        Stencil::FivePoint,
        false,
    )?;
    let spectrum = in_pool(a.output.threads, || {
        compare::linear_spectrum(&p, lo, hi, &grid, stencil)
    })?;
    let (mut rows, checks) =
        spectrum_rows(&spectrum, false, tol, "linear.oracle_energies", "linear");
    if let Some(k) = a.psi_points {
        if k < 2 {
            return Err(usage("--psi-points needs at least 2"));
        }
        rows = wavefunction_rows(&p, lo, hi, &grid, k, a.output.threads)?;
    }
    let params = grid_row(
        physics_row(&a.physics).with("n_min", lo).with("n_max", hi),
        &grid,
        stencil,
    )
    .with("tolerance", tol);
    Ok(Report {
        command: "linear",
        params,
        rows,
        checks,
    })
}

fn wavefunction_rows(
    p: &PhysicalParams,
    lo: usize,
    hi: usize,
    grid: &Grid,
    k: usize,
    threads: Option<usize>,
) -> Result<Vec<Row>, Failure> {
    let levels: Vec<usize> = (lo..=hi).collect();
    let per_level = in_pool(threads, || {
        par::map(
            &levels,
            Execution::default(),
            |&n| -> gup1d::Result<Vec<Row>> {
                let state = LinearState::new(n, p)?;
                Ok((0..k)
                    .map(|j| {
                        let x = grid.x_min + (grid.x_max - grid.x_min) * j as f64 / (k - 1) as f64;
                        let psi = state.psi(x);
                        Row::new()
                            .with("n", n)
                            .with("x", x)
                            .with("psi_re", psi.re)
                            .with("psi_im", psi.im)
                            .with("psi_abs", psi.norm())
                    })
                    .collect())
            },
        )
    });
    let mut rows = Vec::new();
    for r in per_level {
        rows.extend(r?);
    }
    Ok(rows)
}

fn grid_for(
    g: &GridOpts,
    points: usize,
    span: (f64, f64),
    stencil: Stencil,
    symmetric: bool,
) -> Result<(Grid, Stencil), Failure> {
    let n = g.grid_points.unwrap_or(points);
    let (lo, hi) = match g.x_max {
        Some(x) if symmetric => (-x, x),
        Some(x) => (span.0, x),
        None => span,
    };
    Ok((Grid::new(lo, hi, n)?, g.stencil.map_or(stencil, Into::into)))
}

pub fn delta_well(a: &DeltaArgs) -> Outcome {
    let p = a.physics.params();
    p.validate_delta()?;
    let tol = tolerance(a.tolerance, 1e-3)?;
    let (grid, stencil) = grid_for(
        &a.grid,
        4000,
        (-DELTA_X_MAX, DELTA_X_MAX),
        Stencil::ThreePoint,
        true,
    )?;
    let spectrum = in_pool(a.output.threads, || {
        compare::delta_well_spectrum(&p, &grid, stencil)
    })?;
    let (rows, checks) = spectrum_rows(
        &spectrum,
        true,
        tol,
        "delta_well.oracle_energy",
        "delta-well",
    );
    let params = grid_row(physics_row(&a.physics), &grid, stencil).with("tolerance", tol);
    Ok(Report {
        command: "delta-well",
        params,
        rows,
        checks,
    })
}

pub fn barrier(a: &BarrierArgs) -> Outcome {
    let p = a.physics.params();
    p.validate_delta()?;
    let tol = tolerance(a.tolerance, 1e-3)?;
    let sweep_ok = a.e_min > 0.0 && a.e_max >= a.e_min && a.e_max.is_finite();
    if a.e_steps == 0 || !sweep_ok {
        return Err(usage(
            "energy sweep needs 0 < e-min <= e-max and e-steps >= 1",
        ));
    }
    if a.e_steps > 1_000_000 {
        return Err(usage("e-steps is capped at 1000000"));
    }
    let energies: Vec<f64> = (0..a.e_steps)
        .map(|i| {
            if a.e_steps == 1 {
                a.e_min
            } else {
                a.e_min + (a.e_max - a.e_min) * i as f64 / (a.e_steps - 1) as f64
            }
        })
        .collect();
    let results = in_pool(a.output.threads, || {
        par::map(&energies, Execution::default(), |&e| -> gup1d::Result<_> {
            Ok((
                barrier_amplitudes(e, &p)?,
                scattering_transfer(e, &p, a.reg_width)?,
            ))
        })
    });
    let mut rows = Vec::with_capacity(energies.len());
    let mut worst = (0.0f64, f64::NAN);
    for r in results {
        let (s, t) = r?;
        let delta = (s.transmission - t.transmission).abs();
        if worse(delta, worst.0) {
            worst = (delta, s.energy);
        }
        rows.push(
            Row::new()
                .with("e", s.energy)
                .with("t", s.transmission)
                .with("rc", s.reflection)
                .with("excess_exact", s.excess_exact)
                .with("excess_leading", s.excess_leading)
                .with("t_transfer", t.transmission)
                .with("abs_delta_t", delta),
        );
    }
    let check = CheckOutcome::at_most(
        "barrier.transfer_transmission",
        "barrier",
        worst.0,
        tol,
        format!("worst |T − T_transfer| at E = {}", worst.1),
    );
    let params = physics_row(&a.physics)
        .with("e_min", a.e_min)
        .with("e_max", a.e_max)
        .with("e_steps", a.e_steps)
        .with("reg_width", a.reg_width)
        .with("tolerance", tol);
    Ok(Report {
        command: "barrier",
        params,
        rows,
        checks: vec![check],
    })
}

pub fn coulomb(a: &CoulombArgs) -> Outcome {
    let p = a.physics.params();
    p.validate_coulomb()?;
    let softening_ok = a.softening > 0.0 && a.softening.is_finite();
    if !softening_ok {
        return Err(usage("--softening must be positive"));
    }
    let (lo, hi) = level_range(&a.levels, (1, 3))?;
    let tol = tolerance(a.tolerance, 1e-3)?;
    let points = a
        .grid
        .grid_points
        .unwrap_or(gup1d::checks::COULOMB_TREND_POINTS);
    let stencil = a.grid.stencil.map_or(Stencil::FivePoint, Into::into);
    let levels: Vec<usize> = (lo..=hi).collect();
    let grids = levels
        .iter()
        .map(|&n| match a.grid.x_max {
            Some(x) => Grid::new(-x, x, points),
            None => coulomb_grid(n, points, COULOMB_BOX_PER_LEVEL, &p),
        })
        .collect::<gup1d::Result<Vec<_>>>()?;
    let jobs: Vec<(usize, Grid)> = levels.iter().copied().zip(grids).collect();
    let energies = in_pool(a.output.threads, || {
        par::map(
            &jobs,
            Execution::default(),
            |(n, g)| -> gup1d::Result<(f64, f64)> {
                Ok((
                    coulomb_energy(*n, &p)?,
                    coulomb_odd_level(&p, *n, g, a.softening, stencil)?,
                ))
            },
        )
    });
    let mut rows = Vec::with_capacity(jobs.len());
    let mut worst = (0.0f64, 0usize);
    for ((n, g), r) in jobs.iter().zip(energies) {
        let (exact, oracle) = r?;
        let abs = (exact - oracle).abs();
        let rel = abs / exact.abs();
        if worse(rel, worst.0) {
            worst = (rel, *n);
        }
        rows.push(
            Row::new()
                .with("n", *n)
                .with("e_analytic", exact)
                .with("e_oracle", oracle)
                .with("abs_delta", abs)
                .with("rel_delta", rel)
                .with("x_max", g.x_max),
        );
    }
    let check = CheckOutcome::at_most(
        "coulomb.softened_energies",
        "coulomb",
        worst.0,
        tol,
        format!(
            "worst relative error at n = {}, softening {}",
            worst.1, a.softening
        ),
    );
    let params = physics_row(&a.physics)
        .with("n_min", lo)
        .with("n_max", hi)
        .with("grid_points", points)
        .with("stencil", stencil_name(stencil))
        .with("softening", a.softening)
        .with("tolerance", tol);
    Ok(Report {
        command: "coulomb",
        params,
        rows,
        checks: vec![check],
    })
}

pub fn stark(a: &StarkArgs) -> Outcome {
    let p = a.physics.params();
    p.validate_stark()?;
    let (lo, hi) = level_range(&a.levels, (1, 1))?;
    let tol = tolerance(a.tolerance, 1e-9)?;
    let method = match a.method {
        MethodArg::ClosedForm => MatrixElementMethod::ClosedForm,
        MethodArg::Quadrature => MatrixElementMethod::Quadrature,
    };
    let levels: Vec<usize> = (lo..=hi).collect();
    let results = in_pool(a.output.threads, || {
        par::map(&levels, Execution::default(), |&n| -> gup1d::Result<_> {
            let report = stark_report(n, &p, method, a.normalized)?;
            let quad = matrix_elements(n, &p, MatrixElementMethod::Quadrature)?.h12;
            Ok((report, quad))
        })
    });
    let mut rows = Vec::with_capacity(levels.len());
    let mut worst = (0.0f64, 0usize);
    for r in results {
        let (s, quad) = r?;
        let exact = closed_form_h12(s.n, &p);
        let rel = ((quad - exact) / exact).abs();
        if worse(rel, worst.0) {
            worst = (rel, s.n);
        }
        let mut row = Row::new()
            .with("n", s.n)
            .with(
                "method",
                match method {
                    MatrixElementMethod::ClosedForm => "closed-form",
                    MatrixElementMethod::Quadrature => "quadrature",
                },
            )
            .with("h11", s.h11)
            .with("h22", s.h22)
            .with("h12", s.h12)
            .with("h21", s.h21)
            .with("e1_first", s.e1_first)
            .with("e2_first", s.e2_first)
            .with("e1_second", s.e1_second)
            .with("e2_second", s.e2_second)
            .with("total_plus", s.total_plus)
            .with("total_minus", s.total_minus)
            .with("unperturbed", s.unperturbed);
        if let Some(nz) = s.normalized {
            row = row
                .with("norm_sqr", nz.norm_sqr)
                .with("h12_normalized", nz.h12)
                .with("first_plus_normalized", nz.first_plus)
                .with("first_minus_normalized", nz.first_minus);
        }
        rows.push(row);
    }
    let check = CheckOutcome::at_most(
        "stark.closed_form_vs_quadrature",
        "stark",
        worst.0,
        tol,
        format!("worst relative h12 mismatch at n = {}", worst.1),
    );
    let params = physics_row(&a.physics)
        .with("n_min", lo)
        .with("n_max", hi)
        .with("normalized", a.normalized)
        .with("tolerance", tol)
        .with("note", SECOND_ORDER_CAVEAT);
    Ok(Report {
        command: "stark",
        params,
        rows,
        checks: vec![check],
    })
}

pub fn verify(a: &VerifyArgs) -> Outcome {
    let scale = tolerance(a.tolerance, 1.0)?;
    let opts = VerifyOptions {
        fault: a.inject_fault.map(|f| match f {
            FaultArg::FlipLambdaSign => Fault::FlipLambdaSign,
        }),
        tolerance_scale: scale,
        execution: if a.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        },
    };
    let checks = in_pool(a.output.threads, || run_checks(a.filter.as_deref(), &opts));
    if checks.is_empty() {
        return Err(usage(format!(
            "no check matches filter {:?}",
            a.filter.as_deref().unwrap_or("")
        )));
    }
    let mut params = Row::new()
        .with("filter", a.filter.clone().unwrap_or_default())
        .with("tolerance_scale", scale)
        .with("sequential", a.sequential);
    if a.inject_fault.is_some() {
        params = params.with("fault", "flip-lambda-sign");
    }
    Ok(Report {
        command: "verify",
        params,
        rows: Vec::new(),
        checks,
    })
}
