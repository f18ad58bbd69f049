//! Independent numerical machinery used to check the closed forms.

pub mod eigen;
pub mod grid;
pub mod hamiltonian;
pub mod potential;
pub mod quadrature;
pub mod residual;
pub mod spectrum;
pub mod transfer;

pub use eigen::HermitianBand;
pub use grid::Grid;
pub use hamiltonian::{
    build_hamiltonian, build_hamiltonian_sampled, eigen_lowest, Eigenstate, GridHamiltonian,
    Stencil,
};
pub use quadrature::{adaptive_quadrature, adaptive_quadrature_complex, QuadOptions, Quadrature};
pub use residual::{ode_residual, ode_residual_with_step};
pub use spectrum::SpectrumReport;
pub use transfer::{scattering_transfer, TransferResult};
