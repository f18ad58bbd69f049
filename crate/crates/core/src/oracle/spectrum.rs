use serde::Serialize;

use super::grid::Grid;
use super::hamiltonian::Stencil;

/// Analytic and oracle energies side by side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub levels: Vec<u32>,
    pub analytic: Vec<f64>,
    pub oracle: Vec<f64>,
    pub abs_err: Vec<f64>,
    pub rel_err: Vec<f64>,
    pub grid: Grid,
    pub stencil: Stencil,
}

impl SpectrumReport {
    pub fn new(
        levels: Vec<u32>,
        analytic: Vec<f64>,
        oracle: Vec<f64>,
        grid: Grid,
        stencil: Stencil,
    ) -> Self {
        assert_eq!(
            analytic.len(),
            oracle.len(),
            "energy lists differ in length"
        );
        assert_eq!(levels.len(), oracle.len(), "level list differs in length");
        let abs_err: Vec<f64> = analytic
            .iter()
            .zip(&oracle)
            .map(|(a, o)| (a - o).abs())
            .collect();
        let rel_err = abs_err
            .iter()
            .zip(&analytic)
            .map(|(d, a)| if *a == 0.0 { *d } else { d / a.abs() })
            .collect();
        Self {
            levels,
            analytic,
            oracle,
            abs_err,
            rel_err,
            grid,
            stencil,
        }
    }

    pub fn max_abs_err(&self) -> f64 {
        self.abs_err.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_rel_err(&self) -> f64 {
        self.rel_err.iter().copied().fold(0.0, f64::max)
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrepancies_follow_entries() {
        let g = Grid::new(0.0, 1.0, 100).unwrap();
        let r = SpectrumReport::new(
            vec![1, 2],
            vec![1.0, -2.0],
            vec![1.1, -2.0],
            g,
            Stencil::ThreePoint,
        );
        assert!((r.abs_err[0] - 0.1).abs() < 1e-15);
        assert!((r.rel_err[0] - 0.1).abs() < 1e-15);
        assert_eq!(r.abs_err[1], 0.0);
        assert!((r.max_abs_err() - 0.1).abs() < 1e-15);
    }
}
