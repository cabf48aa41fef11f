//! Scalar special-function kernels: Gamma, log-Gamma and Gauss `2F1`.

mod gamma;
mod hypergeometric;

pub use gamma::{
    gamma, gamma_ratio, is_pole, log_gamma, nearest_pole, recip_gamma, sin_pi, POLE_TOLERANCE,
};
pub use hypergeometric::{
    gauss_2f1, gauss_2f1_at_one, gauss_2f1_with_complement, MAX_SERIES_TERMS,
};

/// Complex scalar used throughout the crate.
pub type ComplexScalar = num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecialFunctionError {
    #[error("Gamma pole at {at} (argument {z})")]
    Pole { at: i64, z: ComplexScalar },
    #[error("hypergeometric parameter c = {0} is a non-positive integer")]
    ParameterPole(ComplexScalar),
    #[error("series did not reach tolerance within {terms} terms")]
    NonConvergence { terms: usize },
    #[error("argument outside the supported domain: {0}")]
    Domain(String),
    #[error("non-finite argument {0}")]
    NonFinite(ComplexScalar),
}
