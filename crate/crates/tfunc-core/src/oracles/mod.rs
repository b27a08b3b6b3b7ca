//! Independent ground truth for the geometry kernels and Monte Carlo
//! estimates: the exact circle-spacing integral, brute-force simplex
//! moments, two integral-identity checks, and a barycentric grid search
//! for minimum-norm points.

mod circle;
mod grid;
mod mc;

pub use circle::circle_expected_t;
pub use grid::min_norm_oracle;
pub use mc::{bp_identity_check, mc_simplex_moment, scaled_sphere_moment_identity, BpCheck};

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("unsupported oracle configuration: {what}")]
    Unsupported { what: String },
    #[error(transparent)]
    Quadrature(#[from] crate::quad::QuadError),
}

/// A ground-truth value with the method that produced it and its
/// uncertainty (0 for exact enumeration, the error estimate for
/// quadrature, one standard error for Monte Carlo).
#[derive(Clone, Debug)]
pub struct OracleResult {
    pub value: f64,
    pub uncertainty: f64,
    pub method: String,
}
