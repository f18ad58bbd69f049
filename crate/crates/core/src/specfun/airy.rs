//! Real-argument Airy functions Ai, Bi, their derivatives, and the zeros of Ai.
//!
//! Evaluation strategy by region:
//!
//! * `|x| <= 2`: Taylor series about the origin with the exact initial data
//!   Ai(0) = 3^{-2/3}/Γ(2/3), Ai'(0) = -3^{-1/3}/Γ(1/3) (and the Bi analogues).
//! * `-10 <= x < -2`: Taylor re-expansion about the nearest tabulated anchor.
//!   Anchors are produced once by stepping the series outward from the origin.
//!   Both solutions oscillate there, so stepping does not amplify error.
//! * `2 < x <= 10`: Ai from anchors stepped *inward* from x = 10 (Ai grows in
//!   that direction, so it is the dominant solution); Bi from the series about
//!   the origin, whose terms are all positive for x > 0.
//! * `|x| > 10`: the standard asymptotic expansions in ξ = (2/3)|x|^{3/2},
//!   truncated at the smallest term. At ξ > 21 the truncation error is below
//!   1e-18.

use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Ai(0).
pub const AI_0: f64 = 0.355_028_053_887_817_2;
/// Ai'(0).
pub const AI_PRIME_0: f64 = -0.258_819_403_792_806_8;
const SQRT_3: f64 = 1.732_050_807_568_877_2;

const CENTRAL: f64 = 2.0;
const ASYMPTOTIC: f64 = 10.0;
const ANCHOR_STEP: f64 = 0.25;

/// Ai, Ai', Bi, Bi' at a single point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryValues {
    pub ai: f64,
    pub ai_prime: f64,
    pub bi: f64,
    pub bi_prime: f64,
}

/// Value and derivative of the solution of y'' = x y with y(x0) = y0,
/// y'(x0) = dy0, evaluated at x0 + t.
fn taylor(x0: f64, y0: f64, dy0: f64, t: f64) -> (f64, f64) {
    // (k+2)(k+1) c_{k+2} = x0 c_k + c_{k-1}
    let mut c_prev2 = 0.0; // c_{k-1}
    let mut c_prev = y0; // c_k
    let mut c_cur = dy0; // c_{k+1}
    let mut value = y0 + dy0 * t;
    let mut deriv = dy0;
    let mut tk = t; // t^{k+1}
    let mut quiet = 0;
    for k in 0..400usize {
        let next = (x0 * c_prev + c_prev2) / ((k + 2) as f64 * (k + 1) as f64);
        c_prev2 = c_prev;
        c_prev = c_cur;
        c_cur = next;
        // deriv gains (k+2) c_{k+2} t^{k+1}; value gains c_{k+2} t^{k+2}
        let dterm = (k + 2) as f64 * next * tk;
        tk *= t;
        let vterm = next * tk;
        value += vterm;
        deriv += dterm;
        let scale = value.abs() + deriv.abs() + f64::MIN_POSITIVE;
        if vterm.abs() + dterm.abs() <= 1e-18 * scale {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    (value, deriv)
}

#[derive(Debug, Clone, Copy)]
struct Anchor {
    x: f64,
    ai: f64,
    ai_prime: f64,
    bi: f64,
    bi_prime: f64,
}

/// Anchors at x = 0, -0.25, ..., -10 for both solutions.
fn negative_anchors() -> &'static [Anchor] {
    static TABLE: OnceLock<Vec<Anchor>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let count = (ASYMPTOTIC / ANCHOR_STEP).round() as usize;
        let bi0 = SQRT_3 * AI_0;
        let bi0_prime = -SQRT_3 * AI_PRIME_0;
        let mut table = Vec::with_capacity(count + 1);
        let mut a = Anchor {
            x: 0.0,
            ai: AI_0,
            ai_prime: AI_PRIME_0,
            bi: bi0,
            bi_prime: bi0_prime,
        };
        table.push(a);
        for k in 1..=count {
            let (ai, ai_prime) = taylor(a.x, a.ai, a.ai_prime, -ANCHOR_STEP);
            let (bi, bi_prime) = taylor(a.x, a.bi, a.bi_prime, -ANCHOR_STEP);
            a = Anchor {
                x: -(k as f64) * ANCHOR_STEP,
                ai,
                ai_prime,
                bi,
                bi_prime,
            };
            table.push(a);
        }
        table
    })
}

/// Ai anchors at x = 10, 9.75, ..., 2 (Bi is not tabulated on this side).
fn positive_ai_anchors() -> &'static [(f64, f64, f64)] {
    static TABLE: OnceLock<Vec<(f64, f64, f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let count = ((ASYMPTOTIC - CENTRAL) / ANCHOR_STEP).round() as usize;
        let (mut ai, mut ai_prime) = ai_asymptotic_positive(ASYMPTOTIC);
        let mut x = ASYMPTOTIC;
        let mut table = Vec::with_capacity(count + 1);
        table.push((x, ai, ai_prime));
        for _ in 0..count {
            let (a, da) = taylor(x, ai, ai_prime, -ANCHOR_STEP);
            x -= ANCHOR_STEP;
            ai = a;
            ai_prime = da;
            table.push((x, ai, ai_prime));
        }
        // stored with increasing x
        table.reverse();
        table
    })
}

/// Coefficients u_k, v_k of the asymptotic expansions.
fn asymptotic_coefficients() -> &'static [(f64, f64)] {
    static TABLE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::with_capacity(80);
        let mut u = 1.0;
        out.push((1.0, 1.0));
        for k in 1..80 {
            let kf = k as f64;
            u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
                / ((2.0 * kf - 1.0) * 216.0 * kf);
            let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
            out.push((u, v));
        }
        out
    })
}

/// Sums Σ s^k u_k ξ^{-k} and Σ s^k v_k ξ^{-k}, truncated at the smallest term.
fn asymptotic_sums(xi: f64, sign: f64) -> (f64, f64) {
    let coeffs = asymptotic_coefficients();
    let mut su = 0.0;
    let mut sv = 0.0;
    let mut power = 1.0;
    let mut last = f64::INFINITY;
    for &(u, v) in coeffs {
        let term = u * power;
        if term.abs() > last {
            break;
        }
        last = term.abs();
        su += term;
        sv += v * power;
        if last < 1e-18 * su.abs() {
            break;
        }
        power *= sign / xi;
    }
    (su, sv)
}

/// Even- and odd-indexed alternating sums used for negative arguments.
fn oscillatory_sums(xi: f64) -> [f64; 4] {
    let coeffs = asymptotic_coefficients();
    let (mut ue, mut uo, mut ve, mut vo) = (0.0, 0.0, 0.0, 0.0);
    let mut power = 1.0;
    let mut last = f64::INFINITY;
    for (k, &(u, v)) in coeffs.iter().enumerate() {
        let term = u * power;
        if term > last {
            break;
        }
        last = term;
        // (-1)^{floor(k/2)} for the split even/odd series
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            ue += sign * term;
            ve += sign * v * power;
        } else {
            uo += sign * term;
            vo += sign * v * power;
        }
        if last < 1e-18 {
            break;
        }
        power /= xi;
    }
    [ue, uo, ve, vo]
}

fn ai_asymptotic_positive(x: f64) -> (f64, f64) {
    let xi = 2.0 / 3.0 * x * x.sqrt();
    let q = x.sqrt().sqrt();
    let (su, sv) = asymptotic_sums(xi, -1.0);
    let pref = (-xi).exp() / (2.0 * PI.sqrt());
    (pref / q * su, -pref * q * sv)
}

fn bi_asymptotic_positive(x: f64) -> Result<(f64, f64)> {
    let xi = 2.0 / 3.0 * x * x.sqrt();
    let q = x.sqrt().sqrt();
    // ln of the larger of |Bi|, |Bi'|
    if xi + q.ln() - 0.5 * PI.ln() > 709.0 {
        return Err(Error::Overflow {
            routine: "airy_bi",
            x,
        });
    }
    let (su, sv) = asymptotic_sums(xi, 1.0);
    let pref = xi.exp() / PI.sqrt();
    Ok((pref / q * su, pref * q * sv))
}

fn negative_asymptotic(x: f64) -> AiryValues {
    let y = -x;
    let xi = 2.0 / 3.0 * y * y.sqrt();
    let q = y.sqrt().sqrt();
    let [ue, uo, ve, vo] = oscillatory_sums(xi);
    let (s, c) = (xi - FRAC_PI_4).sin_cos();
    let a = 1.0 / (PI.sqrt() * q);
    let d = q / PI.sqrt();
    AiryValues {
        ai: a * (c * ue + s * uo),
        ai_prime: d * (s * ve - c * vo),
        bi: a * (-s * ue + c * uo),
        bi_prime: d * (c * ve + s * vo),
    }
}

/// Ai, Ai', Bi, Bi' at `x`. Fails only when Bi overflows (x ≳ 104).
pub fn airy(x: f64) -> Result<AiryValues> {
    if !x.is_finite() {
        return Err(Error::InvalidParameter {
            name: "x",
            value: x,
            reason: "Airy argument must be finite",
        });
    }
    let bi0 = SQRT_3 * AI_0;
    let bi0_prime = -SQRT_3 * AI_PRIME_0;
    if x.abs() <= CENTRAL {
        let (ai, ai_prime) = taylor(0.0, AI_0, AI_PRIME_0, x);
        let (bi, bi_prime) = taylor(0.0, bi0, bi0_prime, x);
        return Ok(AiryValues {
            ai,
            ai_prime,
            bi,
            bi_prime,
        });
    }
    if x < -ASYMPTOTIC {
        return Ok(negative_asymptotic(x));
    }
    if x < 0.0 {
        let table = negative_anchors();
        let idx = ((-x) / ANCHOR_STEP).round() as usize;
        let a = table[idx.min(table.len() - 1)];
        let t = x - a.x;
        let (ai, ai_prime) = taylor(a.x, a.ai, a.ai_prime, t);
        let (bi, bi_prime) = taylor(a.x, a.bi, a.bi_prime, t);
        return Ok(AiryValues {
            ai,
            ai_prime,
            bi,
            bi_prime,
        });
    }
    let (ai, ai_prime) = if x > ASYMPTOTIC {
        ai_asymptotic_positive(x)
    } else {
        let table = positive_ai_anchors();
        let idx = ((x - CENTRAL) / ANCHOR_STEP).round() as usize;
        let (x0, a0, da0) = table[idx.min(table.len() - 1)];
        taylor(x0, a0, da0, x - x0)
    };
    let (bi, bi_prime) = if x > ASYMPTOTIC {
        bi_asymptotic_positive(x)?
    } else {
        taylor(0.0, bi0, bi0_prime, x)
    };
    Ok(AiryValues {
        ai,
        ai_prime,
        bi,
        bi_prime,
    })
}

/// Ai(x) and Ai'(x) without touching Bi; total over finite reals.
fn ai_pair(x: f64) -> (f64, f64) {
    if x.abs() <= CENTRAL {
        return taylor(0.0, AI_0, AI_PRIME_0, x);
    }
    if x < -ASYMPTOTIC {
        let v = negative_asymptotic(x);
        return (v.ai, v.ai_prime);
    }
    if x < 0.0 {
        let table = negative_anchors();
        let idx = ((-x) / ANCHOR_STEP).round() as usize;
        let a = table[idx.min(table.len() - 1)];
        return taylor(a.x, a.ai, a.ai_prime, x - a.x);
    }
    if x > ASYMPTOTIC {
        return ai_asymptotic_positive(x);
    }
    let table = positive_ai_anchors();
    let idx = ((x - CENTRAL) / ANCHOR_STEP).round() as usize;
    let (x0, a0, da0) = table[idx.min(table.len() - 1)];
    taylor(x0, a0, da0, x - x0)
}

/// Airy function of the first kind.
pub fn airy_ai(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x == f64::INFINITY {
        return 0.0;
    }
    ai_pair(x).0
}

/// Derivative Ai'(x).
pub fn airy_ai_prime(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x == f64::INFINITY {
        return 0.0;
    }
    ai_pair(x).1
}

/// Airy function of the second kind; errors where it overflows.
pub fn airy_bi(x: f64) -> Result<f64> {
    airy(x).map(|v| v.bi)
}

/// Derivative Bi'(x); errors where it overflows.
pub fn airy_bi_prime(x: f64) -> Result<f64> {
    airy(x).map(|v| v.bi_prime)
}

const ZERO_MAX_ITER: usize = 50;
const ZERO_TOL: f64 = 1e-13;

/// The n-th zero a_n of Ai (n ≥ 1), counting from the origin.
///
/// Seeded with −(3π(4n−1)/8)^{2/3} and polished by Newton's method.
pub fn airy_zero(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: 0.0,
            reason: "Airy zeros are indexed from 1",
        });
    }
    let t = 3.0 * PI * (4.0 * n as f64 - 1.0) / 8.0;
    let mut x = -t.powf(2.0 / 3.0);
    let mut residual = f64::INFINITY;
    for _ in 0..ZERO_MAX_ITER {
        let (ai, ai_prime) = ai_pair(x);
        residual = ai.abs();
        let step = ai / ai_prime;
        x -= step;
        if residual < ZERO_TOL && step.abs() < 1e-15 * x.abs().max(1.0) {
            return Ok(x);
        }
        if step.abs() < 4.0 * f64::EPSILON * x.abs() {
            let r = airy_ai(x).abs();
            if r < ZERO_TOL {
                return Ok(x);
            }
        }
    }
    let r = airy_ai(x).abs();
    if r < ZERO_TOL {
        return Ok(x);
    }
    Err(Error::NoConvergence {
        routine: "airy_zero",
        iterations: ZERO_MAX_ITER,
        residual: residual.min(r),
    })
}

/// The first `count` zeros of Ai, strictly decreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct AiryZeroTable {
    zeros: Vec<f64>,
}

impl AiryZeroTable {
    pub fn new(count: usize) -> Result<Self> {
        let zeros = (1..=count).map(airy_zero).collect::<Result<Vec<_>>>()?;
        Ok(Self { zeros })
    }

    /// a_n with 1-based `n`.
    pub fn get(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|i| self.zeros.get(i).copied())
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.zeros
    }
}
