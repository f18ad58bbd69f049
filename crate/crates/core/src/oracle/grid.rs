use serde::Serialize;

use crate::error::{Error, Result};

/// Uniform grid on [x_min, x_max] including both endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl Grid {
    pub const MIN_POINTS: usize = 16;

    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_min >= x_max {
            return Err(Error::InvalidGrid(format!(
                "need finite x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < Self::MIN_POINTS {
            return Err(Error::InvalidGrid(format!(
                "n_points = {n_points}, need at least {}",
                Self::MIN_POINTS
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
        })
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.x_max
        } else {
            self.x_min + i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    /// Nodes strictly inside the walls; these carry the unknowns.
    pub fn interior(&self) -> Vec<f64> {
        (1..self.n_points - 1).map(|i| self.x(i)).collect()
    }

    /// Index of the node nearest `x`, clamped to the grid.
    pub fn nearest(&self, x: f64) -> usize {
        let t = ((x - self.x_min) / self.spacing()).round();
        t.clamp(0.0, (self.n_points - 1) as f64) as usize
    }

    pub fn refined(&self, n_points: usize) -> Result<Self> {
        Self::new(self.x_min, self.x_max, n_points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_and_endpoints() {
        let g = Grid::new(-1.0, 1.0, 21).unwrap();
        assert!((g.spacing() - 0.1).abs() < 1e-15);
        assert_eq!(g.x(20), 1.0);
        assert_eq!(g.interior().len(), 19);
        assert_eq!(g.nearest(0.04), 10);
        assert_eq!(g.nearest(5.0), 20);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(Grid::new(1.0, 1.0, 100).is_err());
        assert!(Grid::new(0.0, 1.0, 15).is_err());
        assert!(Grid::new(0.0, f64::NAN, 100).is_err());
    }
}
