use serde::Serialize;

use crate::error::{finite, positive, Result};

/// Physical constants and couplings shared by every problem.
///
/// `field` is the product eℰ of the charge and the applied field; only that
/// product ever enters the Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalParams {
    pub mass: f64,
    pub hbar: f64,
    /// Deformation parameter λ, in momentum units. Any real value.
    pub lambda: f64,
    /// Slope F of the linear potential.
    pub slope: f64,
    /// Strength V of the delta well / barrier.
    pub strength: f64,
    /// Coulomb coupling κ.
    pub kappa: f64,
    /// Stark coupling eℰ.
    pub field: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self {
            mass: 1.0,
            hbar: 1.0,
            lambda: 0.0,
            slope: 1.0,
            strength: 1.0,
            kappa: 1.0,
            field: 0.01,
        }
    }
}

impl PhysicalParams {
    /// m = ħ = 1 with every coupling set to one and no deformation or field.
    pub fn unit() -> Self {
        Self {
            field: 1.0,
            ..Self::default()
        }
    }

    pub fn with_lambda(self, lambda: f64) -> Self {
        Self { lambda, ..self }
    }

    pub fn with_mass(self, mass: f64) -> Self {
        Self { mass, ..self }
    }

    pub fn with_hbar(self, hbar: f64) -> Self {
        Self { hbar, ..self }
    }

    pub fn with_slope(self, slope: f64) -> Self {
        Self { slope, ..self }
    }

    pub fn with_strength(self, strength: f64) -> Self {
        Self { strength, ..self }
    }

    pub fn with_kappa(self, kappa: f64) -> Self {
        Self { kappa, ..self }
    }

    pub fn with_field(self, field: f64) -> Self {
        Self { field, ..self }
    }

    /// Mass, ħ and λ, the part every deformed Hamiltonian needs.
    pub fn validate_base(&self) -> Result<()> {
        positive("mass", self.mass)?;
        positive("hbar", self.hbar)?;
        finite("lambda", self.lambda)?;
        Ok(())
    }

    pub fn validate_linear(&self) -> Result<()> {
        self.validate_base()?;
        positive("slope", self.slope)?;
        Ok(())
    }

    pub fn validate_delta(&self) -> Result<()> {
        self.validate_base()?;
        positive("strength", self.strength)?;
        Ok(())
    }

    pub fn validate_coulomb(&self) -> Result<()> {
        self.validate_base()?;
        positive("kappa", self.kappa)?;
        Ok(())
    }

    pub fn validate_stark(&self) -> Result<()> {
        self.validate_coulomb()?;
        finite("field", self.field)?;
        Ok(())
    }

    /// The uniform energy shift −λ²/2m carried by every bound level.
    pub fn gauge_shift(&self) -> f64 {
        -self.lambda * self.lambda / (2.0 * self.mass)
    }

    /// Phase factor e^{−iλx/ħ} multiplying every deformed wavefunction.
    pub fn gauge_phase(&self, x: f64) -> crate::Complex64 {
        crate::Complex64::from_polar(1.0, -self.lambda * x / self.hbar)
    }

    /// Bohr-like length ħ²/(κm) of the Coulomb problem.
    pub fn coulomb_length(&self) -> f64 {
        self.hbar * self.hbar / (self.kappa * self.mass)
    }
}
