//! Kummer's confluent hypergeometric function ₁F₁(a; b; z).

use crate::error::{Error, Result};

const TERM_CAP: usize = 10_000;
const SERIES_TOL: f64 = 1e-14;

fn non_positive_integer(x: f64) -> Option<u64> {
    (x <= 0.0 && x == x.floor() && x > -1e15).then(|| (-x) as u64)
}

/// ₁F₁(a; b; z) for real arguments.
///
/// For a = −m the series terminates after m + 1 terms and is summed exactly.
/// Otherwise the Maclaurin series is summed to relative tolerance 1e-14;
/// negative z goes through Kummer's transformation e^z ₁F₁(b−a; b; −z).
pub fn kummer_1f1(a: f64, b: f64, z: f64) -> Result<f64> {
    if non_positive_integer(b).is_some() {
        return Err(Error::KummerPole(b));
    }
    if !(a.is_finite() && b.is_finite() && z.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "1F1 argument",
            value: if a.is_finite() {
                if b.is_finite() {
                    z
                } else {
                    b
                }
            } else {
                a
            },
            reason: "must be finite",
        });
    }
    if let Some(m) = non_positive_integer(a) {
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 0..m {
            let k = k as f64;
            term *= (a + k) * z / ((b + k) * (k + 1.0));
            sum += term;
        }
        return Ok(sum);
    }
    if z < 0.0 {
        return Ok(z.exp() * maclaurin(b - a, b, -z)?);
    }
    maclaurin(a, b, z)
}

fn maclaurin(a: f64, b: f64, z: f64) -> Result<f64> {
    if let Some(m) = non_positive_integer(a) {
        // transformed parameters can land on a terminating case
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 0..m {
            let k = k as f64;
            term *= (a + k) * z / ((b + k) * (k + 1.0));
            sum += term;
        }
        return Ok(sum);
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..TERM_CAP {
        let kf = k as f64;
        term *= (a + kf) * z / ((b + kf) * (kf + 1.0));
        sum += term;
        if !sum.is_finite() {
            return Err(Error::Overflow {
                routine: "kummer_1f1",
                x: z,
            });
        }
        // past the peak of the terms once k exceeds |a| z/b-ish; require smallness then
        if term.abs() <= SERIES_TOL * sum.abs() && kf > (a.abs() + 1.0) {
            return Ok(sum);
        }
    }
    Err(Error::NoConvergence {
        routine: "kummer_1f1",
        iterations: TERM_CAP,
        residual: term.abs() / sum.abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_polynomial() {
        for &z in &[-3.0, 0.0, 0.7, 40.0] {
            assert_eq!(kummer_1f1(0.0, 2.0, z).unwrap(), 1.0);
        }
    }

    #[test]
    fn linear_polynomial() {
        for &z in &[-3.0, 0.0, 0.7, 40.0] {
            assert!((kummer_1f1(-1.0, 2.0, z).unwrap() - (1.0 - z / 2.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn quadratic_polynomial_value() {
        // 1 - 2z/2 + (-2)(-1) z²/(2·3·2) = 1 - z + z²/6
        let z = 3.0;
        assert!((kummer_1f1(-2.0, 2.0, z).unwrap() - (1.0 - z + z * z / 6.0)).abs() < 1e-14);
    }

    #[test]
    fn ode_residual_of_polynomial_cases() {
        // z F'' + (b - z) F' - a F = 0 with F' = (a/b) F(a+1, b+1), F'' = a(a+1)/(b(b+1)) F(a+2, b+2)
        let b = 2.0;
        for n in 1..=12 {
            let a = 1.0 - n as f64;
            for i in 1..=80 {
                let z = 0.5 * i as f64;
                let f = kummer_1f1(a, b, z).unwrap();
                let d1 = a / b * kummer_1f1(a + 1.0, b + 1.0, z).unwrap();
                let d2 = a * (a + 1.0) / (b * (b + 1.0)) * kummer_1f1(a + 2.0, b + 2.0, z).unwrap();
                let terms = [z * d2, (b - z) * d1, -a * f];
                let scale: f64 = terms.iter().map(|t| t.abs()).sum::<f64>().max(1.0);
                let residual = terms.iter().sum::<f64>().abs() / scale;
                assert!(residual < 1e-10, "n={n} z={z}: {residual:e}");
            }
        }
    }

    #[test]
    fn exponential_special_case() {
        // ₁F₁(a; a; z) = e^z
        for &z in &[-5.0, -0.3, 0.0, 1.0, 12.0] {
            let v = kummer_1f1(1.5, 1.5, z).unwrap();
            assert!(((v - f64::exp(z)) / f64::exp(z)).abs() < 1e-13, "z={z}");
        }
    }

    #[test]
    fn general_series_known_value() {
        // ₁F₁(1; 2; z) = (e^z − 1)/z
        for &z in &[-4.0, 0.5, 3.0, 20.0] {
            let want = (f64::exp(z) - 1.0) / z;
            let got = kummer_1f1(1.0, 2.0, z).unwrap();
            assert!(
                ((got - want) / want).abs() < 1e-13,
                "z={z}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn pole_in_b_is_an_error() {
        assert_eq!(kummer_1f1(1.0, 0.0, 1.0), Err(Error::KummerPole(0.0)));
        assert_eq!(kummer_1f1(1.0, -3.0, 1.0), Err(Error::KummerPole(-3.0)));
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(
            kummer_1f1(0.5, 1.5, 5000.0),
            Err(Error::Overflow { .. })
        ));
    }
}
