//! Test potentials sampled on a grid.

use super::grid::Grid;

/// V(x) = F x for x ≥ 0; the wall at 0 is supplied by the grid boundary.
pub fn linear(slope: f64) -> impl Fn(f64) -> f64 + Sync {
    move |x| slope * x
}

/// V(x) = m ω² x² / 2.
pub fn harmonic(mass: f64, omega: f64) -> impl Fn(f64) -> f64 + Sync {
    move |x| 0.5 * mass * omega * omega * x * x
}

/// The Coulomb well with |x| softened to √(x² + a²).
pub fn softened_coulomb(kappa: f64, softening: f64) -> impl Fn(f64) -> f64 + Sync {
    move |x| -kappa / x.hypot(softening)
}

/// Gaussian of total area `area` and standard deviation `width`.
pub fn gaussian_delta(area: f64, width: f64) -> impl Fn(f64) -> f64 + Sync {
    let norm = area / (width * (2.0 * std::f64::consts::PI).sqrt());
    move |x| norm * (-0.5 * (x / width).powi(2)).exp()
}

/// Samples a function at every grid node.
pub fn sample(grid: &Grid, v: impl Fn(f64) -> f64) -> Vec<f64> {
    grid.points().into_iter().map(v).collect()
}

/// Single-cell spike of area `area` on the node nearest `x0`, zero elsewhere.
pub fn spike(grid: &Grid, x0: f64, area: f64) -> Vec<f64> {
    let mut v = vec![0.0; grid.n_points];
    v[grid.nearest(x0)] = area / grid.spacing();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spike_has_the_requested_area() {
        let g = Grid::new(-1.0, 1.0, 101).unwrap();
        let v = spike(&g, 0.0, -2.0);
        let area: f64 = v.iter().sum::<f64>() * g.spacing();
        assert!((area + 2.0).abs() < 1e-12);
        assert_eq!(v[50], -2.0 / g.spacing());
    }

    #[test]
    fn gaussian_area() {
        let g = Grid::new(-1.0, 1.0, 20001).unwrap();
        let v = sample(&g, gaussian_delta(3.0, 0.01));
        let area: f64 = v.iter().sum::<f64>() * g.spacing();
        assert!((area - 3.0).abs() < 1e-10);
    }

    #[test]
    fn softened_coulomb_is_finite_at_origin() {
        assert_eq!(softened_coulomb(1.0, 0.5)(0.0), -2.0);
    }
}
