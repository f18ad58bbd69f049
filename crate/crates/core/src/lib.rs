//! Closed-form solutions of one-dimensional quantum systems under the linear
//! momentum deformation p → p + λ, together with independent numerical oracles
//! that check them.
//!
//! The deformed Hamiltonian is H = p²/2m + λp/m + V(x). Every bound level is
//! shifted by −λ²/2m and every wavefunction picks up the phase e^{−iλx/ħ}.

pub mod analytic;
pub mod checks;
pub mod compare;
pub mod error;
pub mod oracle;
pub mod par;
pub mod params;
pub mod scattering;
pub mod specfun;
pub mod stark;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use params::PhysicalParams;

/// Complex value carried by wavefunctions and scattering amplitudes.
pub type ComplexAmplitude = Complex64;
