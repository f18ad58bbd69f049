use thiserror::Error;

/// Errors raised by the special functions, closed forms and numerical oracles.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{routine} did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        routine: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("{routine}: result overflows double precision at x = {x}")]
    Overflow { routine: &'static str, x: f64 },

    #[error("b = {0} is a non-positive integer; 1F1 is undefined")]
    KummerPole(f64),

    #[error("closed form {closed} and quadrature {quadrature} disagree (relative {relative:e})")]
    CrossCheckFailed {
        closed: f64,
        quadrature: f64,
        relative: f64,
    },

    #[error("potential sample is not finite at x = {x}")]
    NonFinitePotential { x: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("requested {requested} eigenpairs from a matrix of dimension {dimension}")]
    EigenRange { requested: usize, dimension: usize },

    #[error("ODE integration failed: {0}")]
    Integration(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and > 0",
        })
    }
}

pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        })
    }
}
