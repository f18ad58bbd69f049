//! Finite-difference discretization of H = p²/2m + λp/m + V with Dirichlet walls.

use num_complex::Complex64;
use serde::Serialize;

use super::eigen::{self, HermitianBand};
use super::grid::Grid;
use crate::error::{Error, Result};
use crate::params::PhysicalParams;

/// Central-difference stencil used for both derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Stencil {
    /// Second order. Represents a single-cell spike faithfully.
    #[default]
    ThreePoint,
    /// Fourth order in the bulk. Near each wall the missing node is taken as the
    /// odd reflection for D₂ and as zero for D₁, which keeps H Hermitian.
    FivePoint,
}

impl Stencil {
    pub fn bandwidth(self) -> usize {
        match self {
            Stencil::ThreePoint => 1,
            Stencil::FivePoint => 2,
        }
    }

    /// Off-diagonal weights (offset 1, offset 2, ...) of D₂·h² and D₁·h.
    fn weights(self) -> (&'static [f64], &'static [f64], f64) {
        match self {
            Stencil::ThreePoint => (&[1.0], &[0.5], -2.0),
            Stencil::FivePoint => (
                &[16.0 / 12.0, -1.0 / 12.0],
                &[8.0 / 12.0, -1.0 / 12.0],
                -30.0 / 12.0,
            ),
        }
    }
}

/// A discretized deformed Hamiltonian on the interior nodes of a grid.
#[derive(Debug, Clone)]
pub struct GridHamiltonian {
    pub grid: Grid,
    pub params: PhysicalParams,
    pub stencil: Stencil,
    potential: Vec<f64>,
    band: HermitianBand,
}

/// One eigenpair on the full grid (walls included, where ψ = 0).
///
/// ψ is normalized so that Σ|ψᵢ|² h = 1, with its largest component real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenstate {
    pub energy: f64,
    pub psi: Vec<Complex64>,
}

impl Eigenstate {
    pub fn modulus(&self) -> Vec<f64> {
        self.psi.iter().map(|z| z.norm()).collect()
    }
}

/// Builds H from a potential function sampled at the grid nodes.
pub fn build_hamiltonian(
    v: impl Fn(f64) -> f64,
    params: &PhysicalParams,
    grid: &Grid,
    stencil: Stencil,
) -> Result<GridHamiltonian> {
    let samples = grid.points().into_iter().map(v).collect();
    build_hamiltonian_sampled(samples, params, grid, stencil)
}

/// Builds H from potential values given at every grid node (walls included).
pub fn build_hamiltonian_sampled(
    potential: Vec<f64>,
    params: &PhysicalParams,
    grid: &Grid,
    stencil: Stencil,
) -> Result<GridHamiltonian> {
    params.validate_base()?;
    if potential.len() != grid.n_points {
        return Err(Error::InvalidGrid(format!(
            "{} potential samples for {} nodes",
            potential.len(),
            grid.n_points
        )));
    }
    if let Some(i) = potential.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinitePotential { x: grid.x(i) });
    }
    let n = grid.n_points - 2;
    if n <= stencil.bandwidth() {
        return Err(Error::InvalidGrid(
            "too few interior nodes for the stencil".into(),
        ));
    }
    let mut h = GridHamiltonian {
        grid: *grid,
        params: *params,
        stencil,
        potential,
        band: HermitianBand::new(vec![0.0], vec![])?,
    };
    let b = stencil.bandwidth();
    let diag = (0..n).map(|i| h.entry(i, i).re).collect();
    let upper = (1..=b)
        .map(|d| (0..n - d).map(|i| h.entry(i, i + d)).collect())
        .collect();
    h.band = HermitianBand::new(diag, upper)?;
    Ok(h)
}

impl GridHamiltonian {
    /// Number of unknowns (interior nodes).
    pub fn dimension(&self) -> usize {
        self.grid.n_points - 2
    }

    pub fn band(&self) -> &HermitianBand {
        &self.band
    }

    /// Matrix entry H[i][j] evaluated directly from the stencil, in interior indexing.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        let n = self.dimension();
        let p = &self.params;
        let dx = self.grid.spacing();
        let kin = -p.hbar * p.hbar / (2.0 * p.mass) / (dx * dx);
        let drift = p.lambda / p.mass * p.hbar / dx; // coefficient of −i D₁·h
        let (d2, d1, centre) = self.stencil.weights();
        if i == j {
            let mut value = kin * centre + self.potential[i + 1];
            if self.stencil == Stencil::FivePoint && (i == 0 || i + 1 == n) {
                // odd reflection: the node beyond the wall mirrors its neighbour
                value -= kin * d2[1];
            }
            return Complex64::new(value, 0.0);
        }
        let offset = i.abs_diff(j);
        if offset > d2.len() {
            return Complex64::new(0.0, 0.0);
        }
        let sign = if j > i { 1.0 } else { -1.0 };
        Complex64::new(kin * d2[offset - 1], -drift * d1[offset - 1] * sign)
    }

    /// max |H_ij − conj(H_ji)| over the band, relative to the largest entry.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dimension();
        let b = self.stencil.bandwidth();
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for i in 0..n {
            for j in i..(i + b + 1).min(n) {
                let a = self.entry(i, j);
                let c = self.entry(j, i);
                worst = worst.max((a - c.conj()).norm());
                scale = scale.max(a.norm());
            }
        }
        worst / scale.max(f64::MIN_POSITIVE)
    }

    /// y = H x on the interior nodes.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.band.apply(x)
    }

    /// The `k` lowest eigenvalues, ascending.
    pub fn lowest_energies(&self, k: usize) -> Result<Vec<f64>> {
        eigen::lowest_eigenvalues(&self.band, k)
    }

    /// The `k` lowest eigenpairs, ascending, orthonormal in the h-weighted inner product.
    pub fn eigen_lowest(&self, k: usize) -> Result<Vec<Eigenstate>> {
        let dx = self.grid.spacing();
        let pairs = eigen::lowest_eigenpairs(&self.band, k)?;
        Ok(pairs
            .into_iter()
            .map(|pair| {
                let peak = pair
                    .vector
                    .iter()
                    .copied()
                    .fold(Complex64::new(0.0, 0.0), |best, z| {
                        if z.norm() > best.norm() {
                            z
                        } else {
                            best
                        }
                    });
                let phase = if peak.norm() > 0.0 {
                    peak.conj() / peak.norm()
                } else {
                    Complex64::new(1.0, 0.0)
                };
                let scale = phase / dx.sqrt();
                let mut psi = Vec::with_capacity(self.grid.n_points);
                psi.push(Complex64::new(0.0, 0.0));
                psi.extend(pair.vector.iter().map(|z| z * scale));
                psi.push(Complex64::new(0.0, 0.0));
                Eigenstate {
                    energy: pair.value,
                    psi,
                }
            })
            .collect())
    }
}

/// Free function form of [`GridHamiltonian::eigen_lowest`].
pub fn eigen_lowest(h: &GridHamiltonian, k: usize) -> Result<Vec<Eigenstate>> {
    h.eigen_lowest(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::potential;

    fn unit() -> PhysicalParams {
        PhysicalParams::unit()
    }

    #[test]
    fn particle_in_a_box() {
        let g = Grid::new(0.0, 1.0, 2000).unwrap();
        let h = build_hamiltonian(|_| 0.0, &unit(), &g, Stencil::ThreePoint).unwrap();
        let e = h.lowest_energies(3).unwrap();
        for (k, ek) in e.iter().enumerate() {
            let exact = std::f64::consts::PI.powi(2) * ((k + 1) as f64).powi(2) / 2.0;
            assert!(
                ((ek - exact) / exact).abs() < 1e-3,
                "level {}: {ek} vs {exact}",
                k + 1
            );
        }
    }

    #[test]
    fn hermitian_with_zero_drift_diagonal() {
        let g = Grid::new(-5.0, 5.0, 200).unwrap();
        for stencil in [Stencil::ThreePoint, Stencil::FivePoint] {
            let h = build_hamiltonian(
                potential::harmonic(1.0, 1.0),
                &unit().with_lambda(1.3),
                &g,
                stencil,
            )
            .unwrap();
            assert!(h.hermiticity_defect() < 1e-14);
            for i in 0..h.dimension() {
                assert_eq!(h.entry(i, i).im, 0.0);
            }
        }
    }

    #[test]
    fn harmonic_oscillator_ground_state() {
        let g = Grid::new(-12.0, 12.0, 3000).unwrap();
        for (lambda, want) in [(0.0, 0.5), (1.0, 0.0)] {
            let p = unit().with_lambda(lambda);
            let h = build_hamiltonian(potential::harmonic(1.0, 1.0), &p, &g, Stencil::FivePoint)
                .unwrap();
            let e0 = h.lowest_energies(1).unwrap()[0];
            assert!((e0 - want).abs() < 1e-5, "λ={lambda}: {e0}");
        }
    }

    #[test]
    fn three_point_drift_error_is_second_order() {
        // the λ term costs the three-point stencil O(λ²h²) in the ground state
        let err = |n| {
            let g = Grid::new(-12.0, 12.0, n).unwrap();
            let p = unit().with_lambda(1.0);
            let h = build_hamiltonian(potential::harmonic(1.0, 1.0), &p, &g, Stencil::ThreePoint)
                .unwrap();
            h.lowest_energies(1).unwrap()[0].abs()
        };
        let ratio = err(1000) / err(2000);
        assert!((ratio - 4.0).abs() < 0.2, "ratio {ratio}");
    }

    #[test]
    fn eigenvectors_are_h_orthonormal() {
        let g = Grid::new(-8.0, 8.0, 400).unwrap();
        let p = unit().with_lambda(0.6);
        let h =
            build_hamiltonian(potential::harmonic(1.0, 1.0), &p, &g, Stencil::FivePoint).unwrap();
        let states = h.eigen_lowest(4).unwrap();
        let dx = g.spacing();
        for a in &states {
            for b in &states {
                let ip: Complex64 = a
                    .psi
                    .iter()
                    .zip(&b.psi)
                    .map(|(x, y)| x.conj() * y)
                    .sum::<Complex64>()
                    * dx;
                let want = if std::ptr::eq(a, b) { 1.0 } else { 0.0 };
                assert!((ip.norm() - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn five_point_is_more_accurate() {
        let g = Grid::new(-10.0, 10.0, 500).unwrap();
        let err = |s| {
            let h = build_hamiltonian(potential::harmonic(1.0, 1.0), &unit(), &g, s).unwrap();
            (h.lowest_energies(1).unwrap()[0] - 0.5).abs()
        };
        assert!(err(Stencil::FivePoint) < 0.01 * err(Stencil::ThreePoint));
    }

    #[test]
    fn rejects_non_finite_potential() {
        let g = Grid::new(-1.0, 1.0, 101).unwrap();
        let err = build_hamiltonian(|x| 1.0 / x, &unit(), &g, Stencil::ThreePoint).unwrap_err();
        assert!(matches!(err, Error::NonFinitePotential { .. }));
    }
}
