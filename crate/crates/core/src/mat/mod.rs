//! Small dense matrices, characteristic polynomials and eigenvalues.

mod linalg;
mod matrix;
mod poly;
mod spectrum;

pub use linalg::{
    complex_null_space, complex_null_space_of_dim, complex_rank, hermitian_signature, mat_exp, symmetric_eigen, symmetric_eigenvalues,
    symplectic_check, symplectic_residual,
};
pub use matrix::{SquareMatrix, MAX_DIM};
pub use poly::{char_poly, Polynomial};
pub use spectrum::{eigs, solve_quadratic, Eigenvalue, QuadraticRoots, Spectrum};

use crate::error::{Error, Result};

/// Default relative tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Absolute floor below which any residual counts as zero.
pub const ABS_FLOOR: f64 = 1e-12;

/// Largest residual accepted against operands of size `scale`.
pub fn allowed(scale: f64, tol: f64) -> f64 {
    ABS_FLOOR.max(tol * scale)
}

pub fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 && tol < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}
