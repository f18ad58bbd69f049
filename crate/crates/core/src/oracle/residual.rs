//! Residual of the deformed stationary equation for a trial wavefunction.

use num_complex::Complex64;

use crate::params::PhysicalParams;

/// Finite-difference step used by [`ode_residual`].
pub const DEFAULT_STEP: f64 = 1e-2;

/// Largest pointwise relative residual of
/// (ħ²/2m)ψ″ + (iħλ/m)ψ′ + (E − V)ψ.
///
/// Each point is scaled by the sum of the three term magnitudes, so an exact
/// solution scores at the level of the finite-difference error.
pub fn ode_residual(
    psi: impl Fn(f64) -> Complex64,
    energy: f64,
    v: impl Fn(f64) -> f64,
    params: &PhysicalParams,
    points: &[f64],
) -> f64 {
    ode_residual_with_step(psi, energy, v, params, points, DEFAULT_STEP)
}

pub fn ode_residual_with_step(
    psi: impl Fn(f64) -> Complex64,
    energy: f64,
    v: impl Fn(f64) -> f64,
    params: &PhysicalParams,
    points: &[f64],
    step: f64,
) -> f64 {
    let kin = params.hbar * params.hbar / (2.0 * params.mass);
    let drift = Complex64::new(0.0, params.hbar * params.lambda / params.mass);
    points
        .iter()
        .map(|&x| {
            let (f, d1, d2) = derivatives(&psi, x, step);
            let a = d2 * kin;
            let b = drift * d1;
            let c = f * (energy - v(x));
            let scale = a.norm() + b.norm() + c.norm();
            if scale == 0.0 {
                0.0
            } else {
                (a + b + c).norm() / scale
            }
        })
        .fold(0.0, f64::max)
}

/// ψ, ψ′ and ψ″ by Richardson-extrapolated central differences.
pub fn derivatives(
    psi: &impl Fn(f64) -> Complex64,
    x: f64,
    h: f64,
) -> (Complex64, Complex64, Complex64) {
    let f0 = psi(x);
    let central = |h: f64| {
        let fp = psi(x + h);
        let fm = psi(x - h);
        ((fp - fm) / (2.0 * h), (fp - f0 * 2.0 + fm) / (h * h))
    };
    let (d1a, d2a) = central(h);
    let (d1b, d2b) = central(0.5 * h);
    let (d1c, d2c) = central(0.25 * h);
    // two Richardson levels: O(h²) → O(h⁴) → O(h⁶)
    let r1 = |a: Complex64, b: Complex64| (b * 4.0 - a) / 3.0;
    let r2 = |a: Complex64, b: Complex64| (b * 16.0 - a) / 15.0;
    let d1 = r2(r1(d1a, d1b), r1(d1b, d1c));
    let d2 = r2(r1(d2a, d2b), r1(d2b, d2c));
    (f0, d1, d2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deformed_plane_wave_is_exact() {
        let p = PhysicalParams::unit().with_lambda(0.8);
        let k = 1.3;
        let e = k * k / 2.0 + p.lambda * k;
        let pts: Vec<f64> = (0..20).map(|i| -3.0 + 0.3 * i as f64).collect();
        let r = ode_residual(|x| (Complex64::i() * k * x).exp(), e, |_| 0.0, &p, &pts);
        assert!(r < 1e-9, "{r}");
        let wrong = ode_residual(
            |x| (Complex64::i() * k * x).exp(),
            e + 0.1,
            |_| 0.0,
            &p,
            &pts,
        );
        assert!(wrong > 1e-3);
    }

    #[test]
    fn real_exponential_derivatives() {
        let (f, d1, d2) = derivatives(&|x: f64| Complex64::new((2.0 * x).exp(), 0.0), 0.3, 1e-2);
        let e = (0.6f64).exp();
        assert!((f.re - e).abs() < 1e-15);
        assert!((d1.re - 2.0 * e).abs() < 1e-10 * e);
        assert!((d2.re - 4.0 * e).abs() < 1e-8 * e);
    }
}
