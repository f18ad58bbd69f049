//! Closed forms against the grid oracle, problem by problem.

use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::{coulomb_energy, delta_well_energy, linear_energy};
use crate::error::{Error, Result};
use crate::oracle::potential;
use crate::oracle::{build_hamiltonian_sampled, Eigenstate, Grid, SpectrumReport, Stencil};
use crate::params::PhysicalParams;

/// Default box for the linear potential, x ∈ [0, 30].
pub const LINEAR_X_MAX: f64 = 30.0;
/// Default half-width for the delta well, x ∈ [−25, 25].
pub const DELTA_X_MAX: f64 = 25.0;
/// Coulomb box half-width per level, x ∈ [−60n, 60n].
pub const COULOMB_BOX_PER_LEVEL: f64 = 60.0;
/// Default softening of |x| in the Coulomb well.
pub const COULOMB_SOFTENING: f64 = 1e-3;

fn levels(n_min: usize, n_max: usize) -> Result<Vec<usize>> {
    if n_min == 0 || n_max < n_min {
        return Err(Error::InvalidParameter {
            name: "n-range",
            value: n_min as f64,
            reason: "need 1 ≤ n-min ≤ n-max",
        });
    }
    Ok((n_min..=n_max).collect())
}

fn as_u32(levels: &[usize]) -> Vec<u32> {
    levels.iter().map(|&n| n as u32).collect()
}

/// Linear potential with a wall at 0, levels n_min..=n_max.
pub fn linear_spectrum(
    p: &PhysicalParams,
    n_min: usize,
    n_max: usize,
    grid: &Grid,
    stencil: Stencil,
) -> Result<SpectrumReport> {
    p.validate_linear()?;
    let lv = levels(n_min, n_max)?;
    let analytic = lv
        .iter()
        .map(|&n| linear_energy(n, p))
        .collect::<Result<Vec<_>>>()?;
    let h = build_hamiltonian_sampled(
        potential::sample(grid, potential::linear(p.slope)),
        p,
        grid,
        stencil,
    )?;
    let all = h.lowest_energies(n_max)?;
    let oracle = lv.iter().map(|&n| all[n - 1]).collect();
    Ok(SpectrumReport::new(
        as_u32(&lv),
        analytic,
        oracle,
        *grid,
        stencil,
    ))
}

/// Single-cell spike samples for −Vδ(x) on `grid`.
pub fn delta_spike(p: &PhysicalParams, grid: &Grid) -> Vec<f64> {
    potential::spike(grid, 0.0, -p.strength)
}

/// Delta well with the spike regularization.
pub fn delta_well_spectrum(
    p: &PhysicalParams,
    grid: &Grid,
    stencil: Stencil,
) -> Result<SpectrumReport> {
    let analytic = delta_well_energy(p)?;
    let h = build_hamiltonian_sampled(delta_spike(p, grid), p, grid, stencil)?;
    let e = h.lowest_energies(1)?[0];
    Ok(SpectrumReport::new(
        vec![1],
        vec![analytic],
        vec![e],
        *grid,
        stencil,
    ))
}

/// Symmetric grid for Coulomb level n.
pub fn coulomb_grid(
    n: usize,
    n_points: usize,
    box_per_level: f64,
    p: &PhysicalParams,
) -> Result<Grid> {
    let half = box_per_level * n as f64 * p.coulomb_length();
    Grid::new(-half, half, n_points)
}

/// Removes the gauge phase and returns ⟨φ(−x)⟩-parity in [−1, 1].
///
/// The grid must be symmetric about 0.
pub fn parity(state: &Eigenstate, grid: &Grid, p: &PhysicalParams) -> f64 {
    let xs = grid.points();
    let phi: Vec<Complex64> = state
        .psi
        .iter()
        .zip(&xs)
        .map(|(z, &x)| z * p.gauge_phase(x).conj())
        .collect();
    let n = phi.len();
    let mirrored: Complex64 = (0..n).map(|i| phi[i] * phi[n - 1 - i]).sum();
    let direct: Complex64 = phi.iter().map(|z| z * z).sum();
    (mirrored / direct).re
}

/// Odd-parity levels of the softened well −κ/√(x² + a²), which approach E_n as a → 0.
///
/// Each level gets its own box [−60n, 60n] (in units of ħ²/κm).
pub fn coulomb_spectrum(
    p: &PhysicalParams,
    n_min: usize,
    n_max: usize,
    n_points: usize,
    softening: f64,
    stencil: Stencil,
) -> Result<SpectrumReport> {
    p.validate_coulomb()?;
    crate::error::positive("softening", softening)?;
    let lv = levels(n_min, n_max)?;
    let analytic = lv
        .iter()
        .map(|&n| coulomb_energy(n, p))
        .collect::<Result<Vec<_>>>()?;
    let mut oracle = Vec::with_capacity(lv.len());
    let mut last_grid = None;
    for &n in &lv {
        let g = coulomb_grid(n, n_points, COULOMB_BOX_PER_LEVEL, p)?;
        oracle.push(coulomb_odd_level(p, n, &g, softening, stencil)?);
        last_grid = Some(g);
    }
    let grid = last_grid.expect("at least one level");
    Ok(SpectrumReport::new(
        as_u32(&lv),
        analytic,
        oracle,
        grid,
        stencil,
    ))
}

/// The n-th odd eigenvalue of the softened Coulomb Hamiltonian on `grid`.
pub fn coulomb_odd_level(
    p: &PhysicalParams,
    n: usize,
    grid: &Grid,
    softening: f64,
    stencil: Stencil,
) -> Result<f64> {
    let v = potential::sample(grid, potential::softened_coulomb(p.kappa, softening));
    let h = build_hamiltonian_sampled(v, p, grid, stencil)?;
    let want = (2 * n + 1).min(h.dimension());
    let states = h.eigen_lowest(want)?;
    states
        .iter()
        .filter(|s| parity(s, grid, p) < 0.0)
        .nth(n - 1)
        .map(|s| s.energy)
        .ok_or_else(|| Error::InvalidGrid(format!("level {n}: not enough odd states on the grid")))
}

/// How well the grid spectrum at λ reproduces the λ = 0 one under the gauge law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaugeReport {
    pub levels: usize,
    /// max |E(λ) − E(0) + λ²/2m|
    pub shift_error: f64,
    /// max over levels and nodes of ||ψ_λ| − |ψ₀||
    pub modulus_error: f64,
    /// min over levels of |⟨e^{−iλx/ħ}ψ₀|ψ_λ⟩|, 1 when the phase law holds
    pub phase_overlap: f64,
}

/// Compares grid eigenstates for `oracle_lambda` against λ = 0, expecting the
/// law for `p.lambda`. The two λ values differ only when a fault is injected.
pub fn gauge_comparison(
    samples: &[f64],
    p: &PhysicalParams,
    oracle_lambda: f64,
    grid: &Grid,
    stencil: Stencil,
    levels: usize,
) -> Result<GaugeReport> {
    let h0 = build_hamiltonian_sampled(samples.to_vec(), &p.with_lambda(0.0), grid, stencil)?;
    let hl = build_hamiltonian_sampled(
        samples.to_vec(),
        &p.with_lambda(oracle_lambda),
        grid,
        stencil,
    )?;
    let s0 = h0.eigen_lowest(levels)?;
    let sl = hl.eigen_lowest(levels)?;
    let dx = grid.spacing();
    let xs = grid.points();
    let shift = p.gauge_shift();
    let mut report = GaugeReport {
        levels,
        shift_error: 0.0,
        modulus_error: 0.0,
        phase_overlap: 1.0,
    };
    for (a, b) in s0.iter().zip(&sl) {
        report.shift_error = report.shift_error.max((b.energy - a.energy - shift).abs());
        for (za, zb) in a.psi.iter().zip(&b.psi) {
            report.modulus_error = report.modulus_error.max((za.norm() - zb.norm()).abs());
        }
        let overlap: Complex64 = a
            .psi
            .iter()
            .zip(&b.psi)
            .zip(&xs)
            .map(|((za, zb), &x)| (za * p.gauge_phase(x)).conj() * zb)
            .sum::<Complex64>()
            * dx;
        report.phase_overlap = report.phase_overlap.min(overlap.norm());
    }
    Ok(report)
}

/// Convergence order log₂(e₁/e₂) between successive halvings of h.
pub fn observed_orders(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

/// True when every entry is strictly smaller than the one before.
pub fn strictly_decreasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[1] < w[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_levels_close() {
        let g = Grid::new(0.0, LINEAR_X_MAX, 1500).unwrap();
        let r = linear_spectrum(&PhysicalParams::unit(), 1, 3, &g, Stencil::FivePoint).unwrap();
        assert!(r.max_abs_err() < 1e-5, "{:?}", r.abs_err);
    }

    #[test]
    fn delta_well_close() {
        let g = Grid::new(-DELTA_X_MAX, DELTA_X_MAX, 2000).unwrap();
        let r = delta_well_spectrum(
            &PhysicalParams::unit().with_lambda(0.5),
            &g,
            Stencil::ThreePoint,
        )
        .unwrap();
        assert!(r.max_rel_err() < 1e-3);
    }

    #[test]
    fn coulomb_odd_levels_near_formula() {
        let r = coulomb_spectrum(
            &PhysicalParams::unit(),
            1,
            2,
            2000,
            1e-2,
            Stencil::FivePoint,
        )
        .unwrap();
        assert!(r.max_rel_err() < 0.05, "{:?}", r.oracle);
    }

    #[test]
    fn gauge_flip_is_detected_by_phase() {
        let g = Grid::new(-10.0, 10.0, 600).unwrap();
        let v = potential::sample(&g, potential::harmonic(1.0, 1.0));
        let p = PhysicalParams::unit().with_lambda(0.5);
        let good = gauge_comparison(&v, &p, p.lambda, &g, Stencil::FivePoint, 3).unwrap();
        let bad = gauge_comparison(&v, &p, -p.lambda, &g, Stencil::FivePoint, 3).unwrap();
        assert!(good.phase_overlap > 1.0 - 1e-6);
        assert!(bad.phase_overlap < 0.9);
        assert!(bad.shift_error < 1e-5, "energies cannot see the sign");
    }

    #[test]
    fn orders() {
        assert_eq!(observed_orders(&[4.0, 1.0, 0.25]), vec![2.0, 2.0]);
        assert!(strictly_decreasing(&[3.0, 2.0, 1.0]));
        assert!(!strictly_decreasing(&[3.0, 3.0]));
    }
}
