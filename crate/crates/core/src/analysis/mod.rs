//! Spectral analysis of the reconstruction methods: filter factors, the
//! field-of-values error bound, subdiagonal decay diagnostics and shift
//! selection heuristics.

mod balance;
mod bounds;
mod filters;

pub use balance::{lambda_balance, LambdaBalance};
pub use bounds::{
    decay_diagnostic, error_bound, BoundEntry, DecayDiagnostic, DecayPoint, ErrorBoundReport,
    K_HIGH, K_LOW, K_SYMMETRIC,
};
pub use filters::{filter_factors, FilterFactorReport, NewtonInterpolant};

use crate::la::LaError;

/// Errors from the analysis routines.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalysisError {
    La(LaError),
    /// Two Ritz values coincide beyond the separation tolerance at the
    /// reported step; the interpolation problem is confluent there.
    ConfluentRitzValues { m: usize },
    /// A Ritz value or shifted eigenvalue sits exactly at a pole of `f`.
    DegenerateSpectrum { m: usize },
    /// The Krylov space closed before the requested step count.
    BreakdownBeforeM { requested: usize, reached: usize },
    /// The field of values touches the left half-plane (`a <= 0`), so
    /// the bound hypothesis fails.
    BoundNotApplicable { a: f64 },
}

impl std::fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnalysisError::La(e) => write!(f, "{e}"),
            AnalysisError::ConfluentRitzValues { m } => {
                write!(f, "confluent Ritz values at step m = {m}")
            }
            AnalysisError::DegenerateSpectrum { m } => {
                write!(f, "degenerate spectrum (pole hit) at step m = {m}")
            }
            AnalysisError::BreakdownBeforeM { requested, reached } => write!(
                f,
                "Krylov space closed at m = {reached}, before the requested m = {requested}"
            ),
            AnalysisError::BoundNotApplicable { a } => {
                write!(f, "error bound not applicable: leftmost field-of-values point a = {a:e}")
            }
        }
    }
}

impl std::error::Error for AnalysisError {}

impl From<LaError> for AnalysisError {
    fn from(e: LaError) -> Self {
        AnalysisError::La(e)
    }
}
