//! Transfer-matrix scattering across a Gaussian-regularized delta barrier.

use num_complex::Complex64;
use serde::Serialize;

use super::potential::gaussian_delta;
use crate::error::{positive, Error, Result};
use crate::params::PhysicalParams;

/// Transmitted and reflected amplitudes for unit incident amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransferResult {
    pub s: Complex64,
    pub r: Complex64,
    /// |S|²
    pub transmission: f64,
    /// |R|²
    pub reflection: f64,
    pub steps: usize,
}

/// Integrates the deformed stationary equation through a Gaussian of area V and
/// width `reg_width`, matching to e^{ik₊x} on the right and to
/// e^{ik₊x} + R e^{−ik₋x} on the left.
pub fn scattering_transfer(
    energy: f64,
    params: &PhysicalParams,
    reg_width: f64,
) -> Result<TransferResult> {
    positive("energy", energy)?;
    positive("reg_width", reg_width)?;
    params.validate_base()?;
    crate::error::finite("strength", params.strength)?;
    let (m, hbar, lambda) = (params.mass, params.hbar, params.lambda);
    let root = (2.0 * m * energy + lambda * lambda).sqrt();
    let k_plus = (root - lambda) / hbar;
    let k_minus = (root + lambda) / hbar;
    let v = gaussian_delta(params.strength, reg_width);

    let half = 10.0 * reg_width;
    let k_max = k_plus.abs().max(k_minus.abs());
    let step_limit = (reg_width / 50.0).min(0.02 / k_max.max(f64::MIN_POSITIVE));
    let steps = ((2.0 * half / step_limit).ceil() as usize).max(2000);
    let dx = -2.0 * half / steps as f64;

    let i = Complex64::i();
    // y = (ψ, ψ'), ψ'' = −(2iλ/ħ)ψ' − (2m/ħ²)(E − V)ψ
    let rhs = |x: f64, y: [Complex64; 2]| -> [Complex64; 2] {
        let c = 2.0 * m / (hbar * hbar) * (energy - v(x));
        [y[1], -(2.0 * lambda / hbar) * i * y[1] - y[0] * c]
    };
    let mut x = half;
    let start = (i * k_plus * x).exp();
    let mut y = [start, i * k_plus * start];
    for _ in 0..steps {
        let k1 = rhs(x, y);
        let y2 = [y[0] + k1[0] * (0.5 * dx), y[1] + k1[1] * (0.5 * dx)];
        let k2 = rhs(x + 0.5 * dx, y2);
        let y3 = [y[0] + k2[0] * (0.5 * dx), y[1] + k2[1] * (0.5 * dx)];
        let k3 = rhs(x + 0.5 * dx, y3);
        let y4 = [y[0] + k3[0] * dx, y[1] + k3[1] * dx];
        let k4 = rhs(x + dx, y4);
        for c in 0..2 {
            y[c] += (k1[c] + k2[c] * 2.0 + k3[c] * 2.0 + k4[c]) * (dx / 6.0);
        }
        x += dx;
        if !(y[0].re.is_finite()
            && y[0].im.is_finite()
            && y[1].re.is_finite()
            && y[1].im.is_finite())
        {
            return Err(Error::Integration(format!("solution blew up at x = {x}")));
        }
    }
    let x_left = -half;
    let u = (i * k_plus * x_left).exp();
    let w = (-i * k_minus * x_left).exp();
    let denom = i * (k_plus + k_minus);
    let a = (y[1] + i * k_minus * y[0]) / (denom * u);
    let b = (i * k_plus * y[0] - y[1]) / (denom * w);
    let s = a.inv();
    let r = b / a;
    Ok(TransferResult {
        s,
        r,
        transmission: s.norm_sqr(),
        reflection: r.norm_sqr(),
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> PhysicalParams {
        PhysicalParams::unit()
    }

    #[test]
    fn transparent_barrier() {
        let t =
            scattering_transfer(0.5, &unit().with_strength(0.0).with_lambda(0.4), 1e-2).unwrap();
        assert!((t.transmission - 1.0).abs() < 1e-10);
        assert!(t.reflection < 1e-20);
    }

    #[test]
    fn unit_barrier_transmits_half() {
        let t = scattering_transfer(0.5, &unit(), 1e-3).unwrap();
        assert!((t.transmission - 0.5).abs() < 1e-3, "{}", t.transmission);
        assert!((t.transmission + t.reflection - 1.0).abs() < 1e-6);
    }

    #[test]
    fn converges_as_width_shrinks() {
        let p = unit().with_lambda(0.7);
        let exact = 2.0 + 0.49; // 2mE + λ²
        let exact = exact / (exact + 1.0);
        let errs: Vec<f64> = [1e-1, 1e-2, 1e-3]
            .iter()
            .map(|&w| (scattering_transfer(1.0, &p, w).unwrap().transmission - exact).abs())
            .collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    }

    #[test]
    fn rejects_non_positive_energy() {
        assert!(scattering_transfer(0.0, &unit(), 1e-3).is_err());
        assert!(scattering_transfer(1.0, &unit(), 0.0).is_err());
    }
}
