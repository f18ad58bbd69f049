//! Generalised Laguerre polynomials and their weighted square integrals.

use super::gamma::{binomial, factorial, gamma};
use super::kummer::kummer_1f1;
use crate::error::{Error, Result};
use crate::oracle::quadrature::adaptive_quadrature;

fn check_order(mu: f64) -> Result<()> {
    if mu.is_finite() && mu > -1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "mu",
            value: mu,
            reason: "Laguerre order must exceed -1",
        })
    }
}

/// L_n^μ(z) by the three-term recurrence
/// (k+1) L_{k+1} = (2k+1+μ−z) L_k − (k+μ) L_{k−1}.
pub fn laguerre(n: usize, mu: f64, z: f64) -> Result<f64> {
    check_order(mu)?;
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 1.0 + mu - z;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + mu - z) * cur - (kf + mu) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// L_n^μ(z) = Γ(μ+1+n) / (n! Γ(μ+1)) · ₁F₁(−n; μ+1; z).
pub fn laguerre_via_kummer(n: usize, mu: f64, z: f64) -> Result<f64> {
    check_order(mu)?;
    let prefactor = gamma(mu + 1.0 + n as f64) / (factorial(n as u32) * gamma(mu + 1.0));
    Ok(prefactor * kummer_1f1(-(n as f64), mu + 1.0, z)?)
}

/// Closed form of ∫₀^∞ z^α e^{−z} [L_n^β(z)]² dz:
/// Γ(α+1) Σ_k C(α−β, n−k)² C(α+k, k).
pub fn laguerre_weighted_integral_closed(alpha: f64, n: usize, beta: f64) -> Result<f64> {
    check_order(beta)?;
    if !(alpha.is_finite() && alpha > -1.0) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "weight exponent must exceed -1",
        });
    }
    let n = n as i64;
    let sum: f64 = (0..=n)
        .map(|k| {
            let c = binomial(alpha - beta, n - k);
            c * c * binomial(alpha + k as f64, k)
        })
        .sum();
    Ok(gamma(alpha + 1.0) * sum)
}

const GUARD_TOL: f64 = 1e-6;

/// ∫₀^∞ z^α e^{−z} [L_n^β(z)]² dz from the closed form, certified by adaptive
/// quadrature. Disagreement beyond 1e-6 relative is an error.
pub fn laguerre_weighted_integral(alpha: f64, n: usize, beta: f64) -> Result<f64> {
    let closed = laguerre_weighted_integral_closed(alpha, n, beta)?;
    let quad = adaptive_quadrature(
        |z| {
            if z == 0.0 {
                return if alpha == 0.0 {
                    laguerre(n, beta, 0.0).unwrap_or(f64::NAN).powi(2)
                } else {
                    0.0
                };
            }
            let l = laguerre(n, beta, z).unwrap_or(f64::NAN);
            (alpha * z.ln() - z).exp() * l * l
        },
        0.0,
        f64::INFINITY,
        1e-12,
    )?
    .value;
    let relative = ((closed - quad) / quad).abs();
    if relative.is_nan() || relative > GUARD_TOL {
        return Err(Error::CrossCheckFailed {
            closed,
            quadrature: quad,
            relative,
        });
    }
    Ok(closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn low_orders() {
        for &z in &[0.0, 0.3, 2.0, 7.5] {
            assert_eq!(laguerre(0, 1.0, z).unwrap(), 1.0);
            assert!((laguerre(1, 1.0, z).unwrap() - (2.0 - z)).abs() < 1e-15);
        }
    }

    #[test]
    fn recurrence_matches_kummer_definition() {
        for n in 0..=12 {
            for i in 0..=60 {
                let z = 0.5 * i as f64;
                let rec = laguerre(n, 1.0, z).unwrap();
                let def = laguerre_via_kummer(n, 1.0, z).unwrap();
                // condition scale: sum of |coefficient z^k| of the power series
                let scale: f64 = (0..=n as i64)
                    .map(|k| {
                        binomial(n as f64 + 1.0, n as i64 - k) * z.powi(k as i32)
                            / factorial(k as u32)
                    })
                    .sum();
                assert!(
                    (rec - def).abs() <= 1e-12 * scale,
                    "n={n} z={z}: {rec} vs {def}"
                );
            }
        }
    }

    #[test]
    fn kummer_identity_for_coulomb_states() {
        // L_{n-1}^1(z) = n F(1-n, 2, z)
        let (n, z) = (4usize, 0.7);
        let lhs = laguerre(n - 1, 1.0, z).unwrap();
        let rhs = n as f64 * kummer_1f1(1.0 - n as f64, 2.0, z).unwrap();
        assert!((lhs - rhs).abs() < 1e-13);
    }

    #[test]
    fn weighted_integral_examples() {
        // ∫ z³ e^{-z} dz = 6
        assert!((laguerre_weighted_integral(3.0, 0, 1.0).unwrap() - 6.0).abs() < 1e-12);
        // ∫ z³ e^{-z} (2-z)² dz = 4·6 − 4·24 + 120
        assert!((laguerre_weighted_integral(3.0, 1, 1.0).unwrap() - 48.0).abs() < 1e-11);
        // ∫ z² e^{-z} (2-z)² dz = 8 − 24 + 24
        assert!((laguerre_weighted_integral(2.0, 1, 1.0).unwrap() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_matches_quadrature() {
        for &alpha in &[2.0, 3.0] {
            for n in 0..=10 {
                let closed = laguerre_weighted_integral_closed(alpha, n, 1.0).unwrap();
                let quad = adaptive_quadrature(
                    |z| z.powf(alpha) * (-z).exp() * laguerre(n, 1.0, z).unwrap().powi(2),
                    0.0,
                    f64::INFINITY,
                    1e-13,
                )
                .unwrap()
                .value;
                assert!(
                    ((closed - quad) / quad).abs() < 1e-9,
                    "α={alpha} n={n}: {closed} vs {quad}"
                );
            }
        }
    }

    #[test]
    fn norm_identities() {
        // α = β+1: (n+β)!/n! · (2n+β+1); α = β+2 with β = 1: 6(n+1)³
        for n in 0..=10usize {
            let nf = n as f64;
            let a = laguerre_weighted_integral_closed(2.0, n, 1.0).unwrap();
            assert!((a - (nf + 1.0) * (2.0 * nf + 2.0)).abs() < 1e-9 * a);
            let b = laguerre_weighted_integral_closed(3.0, n, 1.0).unwrap();
            assert!((b - 6.0 * (nf + 1.0).powi(3)).abs() < 1e-9 * b);
        }
    }

    #[test]
    fn invalid_order() {
        assert!(laguerre(2, -1.0, 0.5).is_err());
        assert!(laguerre_weighted_integral(-1.5, 2, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn recurrence_agrees_with_definition_for_real_orders(n in 0usize..9, mu in -0.9f64..4.0, z in 0.0f64..15.0) {
            let rec = laguerre(n, mu, z).unwrap();
            let def = laguerre_via_kummer(n, mu, z).unwrap();
            let scale: f64 = (0..=n as i64)
                .map(|k| binomial(n as f64 + mu, n as i64 - k).abs() * z.powi(k as i32) / factorial(k as u32))
                .sum();
            prop_assert!((rec - def).abs() <= 1e-11 * scale.max(1.0));
        }
    }
}
