//! Discrete ill-posed test problems, the Gaussian noise model and the
//! regularization operators used by the Tikhonov-preconditioned solver.
//!
//! All four gallery problems are midpoint-rule collocations of
//! first-kind Fredholm integral equations on an `N`-point grid. The
//! exact right-hand side is always recomputed as `A * x_exact`, so every
//! generated triple is consistent as a discrete problem regardless of
//! quadrature error against the continuous equation.

mod export;
mod fredholm;
mod regop;

pub use export::{write_matrix_text, write_vector_text};
pub use fredholm::{baart, foxgood, generate, gravity, gravity_with_depth, shaw, GALLERY};
pub use regop::{build_reg_operator, RegOperatorKind};

use crate::la::{DenseMatrix, Vector};
use crate::rng::Rng64;

/// Errors from problem generation.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemError {
    UnknownProblem(String),
    /// Grids below 8 points do not resolve any of the gallery kernels.
    SizeTooSmall { n: usize, min: usize },
    /// Two-dimensional operators need `N = n^2`.
    NotAPerfectSquare { n: usize },
}

impl std::fmt::Display for ProblemError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProblemError::UnknownProblem(name) => write!(f, "unknown problem '{name}'"),
            ProblemError::SizeTooSmall { n, min } => {
                write!(f, "problem size {n} is below the minimum {min}")
            }
            ProblemError::NotAPerfectSquare { n } => {
                write!(f, "size {n} is not a perfect square (required for 2-D operators)")
            }
        }
    }
}

impl std::error::Error for ProblemError {}

/// A discretized first-kind Fredholm problem: `A x_exact = b_exact`.
#[derive(Debug, Clone)]
pub struct TestProblem {
    pub name: String,
    pub n: usize,
    pub a: DenseMatrix,
    pub b_exact: Vector,
    pub x_exact: Vector,
}

/// Relative Gaussian noise of level `delta`, reproducible from `seed`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub delta: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(delta: f64, seed: u64) -> Self {
        assert!(delta >= 0.0, "noise level must be nonnegative");
        Self { delta, seed }
    }
}

/// Perturbs a right-hand side with `e_b = (delta * ||b|| / sqrt(N)) * u`,
/// `u` a standard normal vector drawn from the repo-fixed generator.
/// `delta = 0` returns `b` unchanged, bit for bit.
pub fn add_noise(b: &Vector, spec: &NoiseSpec) -> Vector {
    if spec.delta == 0.0 {
        return b.clone();
    }
    let n = b.len();
    let mut rng = Rng64::new(spec.seed);
    let u = Vector::from_vec((0..n).map(|_| rng.normal()).collect());
    let scale = spec.delta * b.norm2() / (n as f64).sqrt();
    let mut out = b.clone();
    out.axpy(scale, &u);
    out
}
