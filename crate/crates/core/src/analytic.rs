//! Closed-form bound states of the deformed linear, delta-well and Coulomb problems.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::quadrature::{integrate, QuadOptions};
use crate::params::PhysicalParams;
use crate::specfun::{airy_ai, airy_ai_prime, airy_zero, kummer_1f1};

/// A bound eigenstate with index, energy and wavefunction.
pub trait BoundState {
    /// 1-based level index.
    fn index(&self) -> usize;
    fn energy(&self) -> f64;
    fn psi(&self, x: f64) -> Complex64;
}

fn check_level(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParameter {
            name: "n",
            value: 0.0,
            reason: "levels are numbered from 1",
        })
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------- linear

/// E_n = −(F²ħ²/2m)^{1/3} a_n − λ²/2m, with a_n the n-th zero of Ai.
pub fn linear_energy(n: usize, p: &PhysicalParams) -> Result<f64> {
    check_level(n)?;
    p.validate_linear()?;
    let a_n = airy_zero(n)?;
    Ok(-(p.slope * p.slope * p.hbar * p.hbar / (2.0 * p.mass)).cbrt() * a_n + p.gauge_shift())
}

/// Level n of V = Fx with a hard wall at x = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearState {
    n: usize,
    params: PhysicalParams,
    zero: f64,
    scale: f64,
    amplitude: f64,
    energy: f64,
}

impl LinearState {
    pub fn new(n: usize, p: &PhysicalParams) -> Result<Self> {
        let energy = linear_energy(n, p)?;
        let zero = airy_zero(n)?;
        let q = 2.0 * p.mass * p.slope / (p.hbar * p.hbar);
        Ok(Self {
            n,
            params: *p,
            zero,
            scale: q.cbrt(),
            amplitude: q.powf(1.0 / 6.0) / airy_ai_prime(zero).abs(),
            energy,
        })
    }

    /// The Airy zero a_n fixing this level.
    pub fn airy_zero(&self) -> f64 {
        self.zero
    }
}

impl BoundState for LinearState {
    fn index(&self) -> usize {
        self.n
    }
    fn energy(&self) -> f64 {
        self.energy
    }
    fn psi(&self, x: f64) -> Complex64 {
        if x < 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        self.params.gauge_phase(x) * (self.amplitude * airy_ai(self.zero + self.scale * x))
    }
}

/// (2mF/ħ²)^{1/6}/|Ai′(a_n)| · e^{−iλx/ħ} · Ai(a_n + (2mF/ħ²)^{1/3}x) on x ≥ 0, zero behind the wall.
pub fn linear_wavefunction(n: usize, x: f64, p: &PhysicalParams) -> Result<Complex64> {
    Ok(LinearState::new(n, p)?.psi(x))
}

// ---------------------------------------------------------------- delta well

/// E = −mV²/2ħ² − λ²/2m.
pub fn delta_well_energy(p: &PhysicalParams) -> Result<f64> {
    p.validate_delta()?;
    Ok(-p.mass * p.strength * p.strength / (2.0 * p.hbar * p.hbar) + p.gauge_shift())
}

/// The single bound state of V = −Vδ(x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaWellState {
    params: PhysicalParams,
    energy: f64,
    decay: f64,
}

impl DeltaWellState {
    pub fn new(p: &PhysicalParams) -> Result<Self> {
        let energy = delta_well_energy(p)?;
        Ok(Self {
            params: *p,
            energy,
            decay: p.mass * p.strength / (p.hbar * p.hbar),
        })
    }

    /// One-sided derivatives ψ′(0⁻), ψ′(0⁺), from the closed form.
    pub fn one_sided_derivatives(&self) -> (Complex64, Complex64) {
        let ik = Complex64::new(0.0, -self.params.lambda / self.params.hbar);
        let psi0 = self.psi(0.0);
        (psi0 * (ik + self.decay), psi0 * (ik - self.decay))
    }

    /// ψ′(0⁺) − ψ′(0⁻) + (2mV/ħ²)ψ(0); zero for an exact solution.
    pub fn step_residual(&self) -> f64 {
        let (left, right) = self.one_sided_derivatives();
        let p = &self.params;
        (right - left + self.psi(0.0) * (2.0 * p.mass * p.strength / (p.hbar * p.hbar))).norm()
    }
}

impl BoundState for DeltaWellState {
    fn index(&self) -> usize {
        1
    }
    fn energy(&self) -> f64 {
        self.energy
    }
    fn psi(&self, x: f64) -> Complex64 {
        self.params.gauge_phase(x) * (self.decay.sqrt() * (-self.decay * x.abs()).exp())
    }
}

/// (√(mV)/ħ) e^{−mV|x|/ħ²} e^{−iλx/ħ}.
pub fn delta_well_wavefunction(x: f64, p: &PhysicalParams) -> Result<Complex64> {
    Ok(DeltaWellState::new(p)?.psi(x))
}

// ---------------------------------------------------------------- Coulomb

/// E_n = −κ²m/(2ħ²n²) − λ²/2m.
pub fn coulomb_energy(n: usize, p: &PhysicalParams) -> Result<f64> {
    check_level(n)?;
    p.validate_coulomb()?;
    let nf = n as f64;
    Ok(-p.kappa * p.kappa * p.mass / (2.0 * p.hbar * p.hbar * nf * nf) + p.gauge_shift())
}

/// Which of the two degenerate continuations to x < 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CoulombBranch {
    /// Sign flipped on x < 0.
    A,
    /// Even continuation.
    B,
}

impl CoulombBranch {
    pub const BOTH: [CoulombBranch; 2] = [CoulombBranch::A, CoulombBranch::B];
}

/// Level n of V = −κ/|x| on one branch.
///
/// Unnormalized by default; [`CoulombState::normalized`] rescales to unit norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombState {
    n: usize,
    branch: CoulombBranch,
    params: PhysicalParams,
    energy: f64,
    norm: f64,
}

impl CoulombState {
    pub fn new(n: usize, branch: CoulombBranch, p: &PhysicalParams) -> Result<Self> {
        Ok(Self {
            n,
            branch,
            params: *p,
            energy: coulomb_energy(n, p)?,
            norm: 1.0,
        })
    }

    /// Same state divided by its full-line L² norm (computed by quadrature).
    pub fn normalized(self) -> Result<Self> {
        let half = self.half_line_norm_sqr()?;
        Ok(Self {
            norm: (2.0 * half).sqrt(),
            ..self
        })
    }

    pub fn branch(&self) -> CoulombBranch {
        self.branch
    }

    /// Decay rate κm/(nħ²).
    pub fn decay(&self) -> f64 {
        let p = &self.params;
        p.kappa * p.mass / (self.n as f64 * p.hbar * p.hbar)
    }

    /// Real radial part x e^{−κmx/nħ²} F(1−n, 2, 2κmx/nħ²) for x ≥ 0.
    pub fn radial(&self, x: f64) -> f64 {
        let d = self.decay();
        let f = kummer_1f1(1.0 - self.n as f64, 2.0, 2.0 * d * x)
            .unwrap_or_else(|_| unreachable!("terminating series"));
        x * (-d * x).exp() * f
    }

    /// ∫₀^∞ |ψ|² dx for the current scaling.
    fn half_line_norm_sqr(&self) -> Result<f64> {
        let x_max = 40.0 / self.decay();
        let q = integrate(
            |x| self.radial(x).powi(2),
            0.0,
            x_max,
            QuadOptions::relative(1e-12),
        )?;
        Ok(q.value / (self.norm * self.norm))
    }
}

impl BoundState for CoulombState {
    fn index(&self) -> usize {
        self.n
    }
    fn energy(&self) -> f64 {
        self.energy
    }
    fn psi(&self, x: f64) -> Complex64 {
        // x > 0: x e^{−d x} F(1−n, 2, 2dx); x < 0: ∓ the same evaluated through |x|, times x/|x|
        let r = if x >= 0.0 {
            self.radial(x)
        } else {
            let mirrored = -self.radial(-x); // x e^{d x} F(1−n, 2, −2dx)
            match self.branch {
                CoulombBranch::A => -mirrored,
                CoulombBranch::B => mirrored,
            }
        };
        self.params.gauge_phase(x) * (r / self.norm)
    }
}

/// As-published Coulomb wavefunction for the given branch (no normalization).
pub fn coulomb_wavefunction(
    n: usize,
    branch: CoulombBranch,
    x: f64,
    p: &PhysicalParams,
) -> Result<Complex64> {
    Ok(CoulombState::new(n, branch, p)?.psi(x))
}

/// The potentials belonging to each closed form, for residual checks.
pub mod potentials {
    use crate::params::PhysicalParams;

    pub fn linear(p: &PhysicalParams) -> impl Fn(f64) -> f64 {
        let f = p.slope;
        move |x| f * x
    }

    pub fn coulomb(p: &PhysicalParams) -> impl Fn(f64) -> f64 {
        let k = p.kappa;
        move |x| -k / x.abs()
    }
}

/// ∫|ψ|² over [a, b] by adaptive quadrature.
pub fn norm_sqr(state: &impl BoundState, a: f64, b: f64) -> Result<f64> {
    Ok(integrate(
        |x| state.psi(x).norm_sqr(),
        a,
        b,
        QuadOptions::relative(1e-12),
    )?
    .value)
}

/// ⟨ψ|φ⟩ over [a, b].
pub fn overlap(psi: &impl BoundState, phi: &impl BoundState, a: f64, b: f64) -> Result<Complex64> {
    // orthogonal pairs integrate to ~0, so a relative target alone is unreachable
    let opts = QuadOptions {
        abs_tol: 1e-13,
        ..QuadOptions::relative(1e-12)
    };
    Ok(integrate(|x| psi.psi(x).conj() * phi.psi(x), a, b, opts)?.value)
}
