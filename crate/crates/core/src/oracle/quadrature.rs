//! Globally adaptive Gauss–Kronrod (7/15) quadrature with infinite-range mapping.
#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<T = f64> {
    pub value: T,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl QuadOptions {
    pub fn relative(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            abs_tol: 0.0,
            max_intervals: 4000,
        }
    }
}

/// Values that can be integrated: reals and complex numbers.
pub trait Integrand:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
    abs_value: f64,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<T: Integrand>(f: &impl Fn(f64) -> T, a: f64, b: f64) -> Segment<T> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_k = fc.magnitude() * WGK[7];
    let mut samples = [(T::zero(), T::zero()); 7];
    for (j, &xk) in XGK.iter().take(7).enumerate() {
        let dx = half * xk;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        samples[j] = (f1, f2);
        kron = kron + (f1 + f2) * WGK[j];
        abs_k += (f1.magnitude() + f2.magnitude()) * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kron * 0.5;
    let mut asc = (fc - mean).magnitude() * WGK[7];
    for (j, &(f1, f2)) in samples.iter().enumerate() {
        asc += ((f1 - mean).magnitude() + (f2 - mean).magnitude()) * WGK[j];
    }
    let value = kron * half;
    let abs_value = abs_k * half.abs();
    let resasc = asc * half.abs();
    let mut error = ((kron - gauss) * half).magnitude();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if abs_value > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * abs_value);
    }
    Segment {
        a,
        b,
        value,
        error,
        abs_value,
    }
}

fn integrate_finite<T: Integrand>(
    f: impl Fn(f64) -> T,
    a: f64,
    b: f64,
    opts: QuadOptions,
) -> Result<Quadrature<T>> {
    let first = kronrod(&f, a, b);
    let mut value = first.value;
    let mut error = first.error;
    let mut abs_total = first.abs_value;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    loop {
        let target = opts.abs_tol.max(opts.rel_tol * value.magnitude());
        if error <= target || error <= 50.0 * f64::EPSILON * abs_total {
            return Ok(Quadrature {
                value,
                error,
                intervals: heap.len(),
            });
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::NoConvergence {
                routine: "adaptive_quadrature",
                iterations: heap.len(),
                residual: error,
            });
        }
        let worst = heap.pop().expect("heap never empties");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // interval can no longer be split in floating point
            return Err(Error::NoConvergence {
                routine: "adaptive_quadrature",
                iterations: heap.len(),
                residual: error,
            });
        }
        let left = kronrod(&f, worst.a, mid);
        let right = kronrod(&f, mid, worst.b);
        value = value - worst.value + left.value + right.value;
        error += left.error + right.error - worst.error;
        abs_total += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
        // rebuild the running sums occasionally to shed cancellation drift
        if heap.len() % 256 == 0 {
            value = heap.iter().fold(T::zero(), |acc, s| acc + s.value);
            error = heap.iter().map(|s| s.error).sum();
        }
    }
}

/// ∫_a^b f with either bound allowed to be infinite.
///
/// A semi-infinite range [a, ∞) is mapped onto [0, 1) by x = a + t/(1 − t).
pub fn integrate<T: Integrand>(
    f: impl Fn(f64) -> T,
    a: f64,
    b: f64,
    opts: QuadOptions,
) -> Result<Quadrature<T>> {
    integrate_dyn(&f, a, b, opts)
}

fn integrate_dyn<T: Integrand>(
    f: &dyn Fn(f64) -> T,
    a: f64,
    b: f64,
    opts: QuadOptions,
) -> Result<Quadrature<T>> {
    if a.is_nan() || b.is_nan() || !(opts.rel_tol > 0.0 || opts.abs_tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "quadrature bounds/tolerance",
            value: opts.rel_tol,
            reason: "bounds must be numbers and some tolerance positive",
        });
    }
    if a == b {
        return Ok(Quadrature {
            value: T::zero(),
            error: 0.0,
            intervals: 0,
        });
    }
    if a > b {
        let q = integrate_dyn(f, b, a, opts)?;
        return Ok(Quadrature {
            value: q.value * -1.0,
            ..q
        });
    }
    match (a.is_finite(), b.is_finite()) {
        (true, true) => integrate_finite(f, a, b, opts),
        (true, false) => integrate_finite(
            |t: f64| {
                let s = 1.0 - t;
                f(a + t / s) * (1.0 / (s * s))
            },
            0.0,
            1.0,
            opts,
        ),
        (false, true) => integrate_finite(
            |t: f64| {
                let s = 1.0 - t;
                f(b - t / s) * (1.0 / (s * s))
            },
            0.0,
            1.0,
            opts,
        ),
        (false, false) => {
            let lower = integrate_dyn(f, f64::NEG_INFINITY, 0.0, opts)?;
            let upper = integrate_dyn(f, 0.0, f64::INFINITY, opts)?;
            Ok(Quadrature {
                value: lower.value + upper.value,
                error: lower.error + upper.error,
                intervals: lower.intervals + upper.intervals,
            })
        }
    }
}

/// Real integral to relative tolerance `tol`; `b` may be `f64::INFINITY`.
pub fn adaptive_quadrature(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<Quadrature<f64>> {
    integrate(f, a, b, QuadOptions::relative(tol))
}

/// Complex-valued counterpart of [`adaptive_quadrature`].
pub fn adaptive_quadrature_complex(
    f: impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<Quadrature<Complex64>> {
    integrate(f, a, b, QuadOptions::relative(tol))
}
