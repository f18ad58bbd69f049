//! Gamma function by the Lanczos approximation (g = 7, nine coefficients).

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for real x. Returns `NaN` at the poles (non-positive integers).
pub fn gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return f64::NAN;
    }
    if x < 0.5 {
        // Reflection keeps the series on its accurate half-plane.
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    if x == x.floor() && x <= 171.0 {
        return factorial(x as u32 - 1);
    }
    let z = x - 1.0;
    let mut sum = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * sum
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut sum = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + sum.ln()
}

/// n! as a float; exact through 22!.
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Generalised binomial coefficient C(top, k) for real `top` and integer `k`;
/// zero for negative `k`.
pub fn binomial(top: f64, k: i64) -> f64 {
    if k < 0 {
        return 0.0;
    }
    let mut acc = 1.0;
    for i in 1..=k {
        acc *= (top - (k - i) as f64) / i as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_points_are_factorials() {
        assert_eq!(gamma(1.0), 1.0);
        assert_eq!(gamma(4.0), 6.0);
        assert_eq!(gamma(11.0), 3_628_800.0);
    }

    #[test]
    fn half_integer_values() {
        let sqrt_pi = PI.sqrt();
        assert!((gamma(0.5) - sqrt_pi).abs() < 1e-14);
        assert!((gamma(2.5) - 0.75 * sqrt_pi).abs() / (0.75 * sqrt_pi) < 1e-13);
        assert!((gamma(-0.5) + 2.0 * sqrt_pi).abs() / (2.0 * sqrt_pi) < 1e-13);
    }

    #[test]
    fn airy_constants() {
        // Γ(1/3), Γ(2/3) to 16 digits.
        assert!((gamma(1.0 / 3.0) - 2.678_938_534_707_747_6).abs() < 2e-14);
        assert!((gamma(2.0 / 3.0) - 1.354_117_939_426_400_4).abs() < 2e-14);
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        for &x in &[0.3, 1.7, 5.5, 12.25, 30.0] {
            assert!((ln_gamma(x) - gamma(x).ln()).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn recurrence_holds() {
        for i in 1..40 {
            let x = 0.37 + 0.61 * i as f64;
            let rel = (gamma(x + 1.0) - x * gamma(x)).abs() / gamma(x + 1.0);
            assert!(rel < 1e-13, "x = {x}: {rel:e}");
        }
    }

    #[test]
    fn poles_are_nan() {
        assert!(gamma(0.0).is_nan());
        assert!(gamma(-3.0).is_nan());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5.0, 2), 10.0);
        assert_eq!(binomial(2.0, 3), 0.0);
        assert_eq!(binomial(7.0, -1), 0.0);
        assert!((binomial(0.5, 2) + 0.125).abs() < 1e-16);
    }
}
