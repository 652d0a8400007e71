//! Minimal dense linear-algebra kernel.
//!
//! Matrices are stored row-major (see the crate-level docs). The kernel
//! deliberately stays at "desk scale": plain triple loops, no blocking,
//! no BLAS, which keeps every operation deterministic and auditable.

mod cholesky;
mod cond;
mod jacobi;
mod lu;
mod matrix;
mod qr;

pub use cholesky::{cholesky_factor, CholeskyFactor};
pub use cond::{cond2_estimate, cond2_estimate_op};
pub use jacobi::{eig_sym_jacobi, SymEigen};
pub use lu::{lu_factor, lu_solve, lu_solve_transpose, LuFactors};
pub use matrix::{DenseMatrix, Vector};
pub use qr::qr_factor;

/// Errors produced by the dense kernel.
#[derive(Debug, Clone, PartialEq)]
pub enum LaError {
    /// A pivot fell below the working-precision floor (1e-300). Extreme
    /// ill-conditioning does not trigger this; only effective singularity.
    SingularToWorkingPrecision,
    /// A Cholesky pivot was not strictly positive.
    NotPositiveDefinite,
    /// The input departs from symmetry beyond tolerance.
    NotSymmetric { max_asymmetry: f64 },
    /// The Jacobi sweep cap was reached before the off-diagonal norm
    /// target; carries the norm that was achieved.
    NoConvergence { achieved_off_norm: f64 },
    /// Operand shapes do not match.
    DimensionMismatch { expected: usize, got: usize },
    /// A square matrix was required.
    NotSquare { rows: usize, cols: usize },
}

impl std::fmt::Display for LaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LaError::SingularToWorkingPrecision => {
                write!(f, "matrix is singular to working precision")
            }
            LaError::NotPositiveDefinite => write!(f, "matrix is not positive definite"),
            LaError::NotSymmetric { max_asymmetry } => {
                write!(f, "matrix is not symmetric (max |A - A^T| = {max_asymmetry:e})")
            }
            LaError::NoConvergence { achieved_off_norm } => write!(
                f,
                "Jacobi sweeps did not converge (off-diagonal norm {achieved_off_norm:e})"
            ),
            LaError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            LaError::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, got {rows}x{cols}")
            }
        }
    }
}

impl std::error::Error for LaError {}

/// Pivot magnitudes below this are treated as exact singularity. The
/// threshold sits far under any conceivable conditioning so that merely
/// ill-conditioned systems still factor.
pub(crate) const PIVOT_FLOOR: f64 = 1e-300;
