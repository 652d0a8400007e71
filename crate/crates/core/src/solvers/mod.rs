//! Reconstruction solvers and baselines.
//!
//! Both reconstruction methods follow the same two-phase scheme: solve a
//! regularized system once, seed a Krylov space with that solution, and
//! evaluate `f(z) = 1 + lambda/z` of the underlying operator on the seed
//! to undo the regularization bias. [`asp_solve`] shifts the operator
//! itself (`A + lambda I`, for noise-free data); [`atp_solve`] works on
//! the Tikhonov normal equations (`A^T A + lambda H^T H`, for noisy
//! data). [`gmres`] and [`pgmres`] are the comparison baselines.
//!
//! Traces record the relative error `||x_m - x_exact|| / ||x_exact||`
//! (when the exact solution is known), the residual Euclidean norm, and
//! a cumulative flop estimate following textbook dense-operation counts
//! with non-vectorial work neglected. Diagnostic evaluations (the error
//! and residual columns themselves) are not billed to the flop count.

mod asp;
mod atp;
mod gmres;

pub use asp::{asp_solve, asp_solve_system, eval_f_on_hessenberg};
pub use atp::atp_solve;
pub use gmres::{gmres, gmres_with, pgmres, Orthogonalization};

use crate::krylov::{ArnoldiProcess, LinearOperator};
use crate::la::{LaError, Vector};
use crate::problems::{ProblemError, RegOperatorKind};

/// Errors surfaced by the solvers.
#[derive(Debug)]
pub enum SolverError {
    La(LaError),
    Problem(ProblemError),
}

impl std::fmt::Display for SolverError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolverError::La(e) => write!(f, "{e}"),
            SolverError::Problem(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SolverError {}

impl From<LaError> for SolverError {
    fn from(e: LaError) -> Self {
        SolverError::La(e)
    }
}

impl From<ProblemError> for SolverError {
    fn from(e: ProblemError) -> Self {
        SolverError::Problem(e)
    }
}

/// Shift-preconditioned solver configuration.
#[derive(Debug, Clone, Copy)]
pub struct AspConfig {
    pub lambda: f64,
    pub m_max: usize,
    pub record_every_step: bool,
}

impl AspConfig {
    pub fn new(lambda: f64, m_max: usize) -> Self {
        assert!(lambda > 0.0, "shift must be positive");
        assert!(m_max >= 1);
        Self {
            lambda,
            m_max,
            record_every_step: true,
        }
    }

    pub fn record_every_step(mut self, yes: bool) -> Self {
        self.record_every_step = yes;
        self
    }
}

/// Tikhonov-preconditioned solver configuration.
#[derive(Debug, Clone, Copy)]
pub struct AtpConfig {
    pub lambda: f64,
    pub reg_operator: RegOperatorKind,
    pub m_max: usize,
    pub record_every_step: bool,
}

impl AtpConfig {
    pub fn new(lambda: f64, reg_operator: RegOperatorKind, m_max: usize) -> Self {
        assert!(lambda > 0.0, "regularization parameter must be positive");
        assert!(m_max >= 1);
        Self {
            lambda,
            reg_operator,
            m_max,
            record_every_step: true,
        }
    }

    pub fn record_every_step(mut self, yes: bool) -> Self {
        self.record_every_step = yes;
        self
    }
}

/// One recorded iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEntry {
    pub m: usize,
    /// Relative error against the exact solution when known. The
    /// deblurring pipeline rescales this column to an absolute Euclidean
    /// norm (see `imaging::deblur_atp`).
    pub error: Option<f64>,
    /// Euclidean residual norm of the system being solved.
    pub residual: f64,
    /// Cumulative flop estimate after this iteration.
    pub flops: u64,
}

/// Convergence history of one solve.
#[derive(Debug, Clone)]
pub struct SolverTrace {
    pub entries: Vec<TraceEntry>,
    /// Iterate at the last recorded step.
    pub final_iterate: Vector,
    /// Refinement-based estimate of the seed-solution error
    /// `||x_lambda - x_lambda_computed||` (reconstruction methods only).
    pub seed_error_estimate: Option<f64>,
    /// True when the Krylov space became (numerically) invariant.
    pub breakdown: bool,
}

impl SolverTrace {
    /// Smallest recorded error and the iteration attaining it.
    pub fn min_error(&self) -> Option<(usize, f64)> {
        self.entries
            .iter()
            .filter_map(|e| e.error.map(|err| (e.m, err)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
    }

    pub fn error_at(&self, m: usize) -> Option<f64> {
        self.entries.iter().find(|e| e.m == m).and_then(|e| e.error)
    }

    pub fn final_residual(&self) -> Option<f64> {
        self.entries.last().map(|e| e.residual)
    }

    /// CSV serialization: header `m,rel_error,residual,flops`, one row
    /// per recorded iteration, round-trip float formatting. An unknown
    /// error is an empty field.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,rel_error,residual,flops\n");
        for e in &self.entries {
            let err = e.error.map(|v| v.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{},{},{}\n", e.m, err, e.residual, e.flops));
        }
        out
    }
}

/// Default discrepancy safety factor.
pub const DISCREPANCY_TAU: f64 = 1.01;

/// Outcome of the discrepancy stopping rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscrepancyStop {
    pub m: usize,
    /// False when no recorded residual fell below the threshold and the
    /// last iteration was returned instead.
    pub triggered: bool,
}

/// First recorded `m` whose residual drops to `tau * noise_norm`;
/// when none does, the last recorded `m` with `triggered = false`.
pub fn discrepancy_stop(trace: &SolverTrace, noise_norm_estimate: f64, tau: f64) -> DiscrepancyStop {
    let threshold = tau * noise_norm_estimate;
    for e in &trace.entries {
        if e.residual <= threshold {
            return DiscrepancyStop {
                m: e.m,
                triggered: true,
            };
        }
    }
    DiscrepancyStop {
        m: trace.entries.last().map(|e| e.m).unwrap_or(0),
        triggered: false,
    }
}

/// Shared second phase of the reconstruction methods: extend one
/// Gram-Schmidt Arnoldi space over `op` from the seed and assemble
/// `x_m = ||seed|| V_m f(H_m) e_1` at each (recorded) step. A singular
/// Hessenberg stops the iteration at the previous step; breakdown
/// terminates normally with the flag set.
pub(crate) fn reconstruct_with_matrix_function(
    op: &dyn LinearOperator,
    seed: &Vector,
    lambda: f64,
    m_max: usize,
    record_every_step: bool,
    setup_flops: u64,
    seed_error_estimate: Option<f64>,
    diagnostics: &dyn Fn(&Vector) -> (Option<f64>, f64),
) -> SolverTrace {
    let n = op.dim();
    let seed_norm = seed.norm2();
    let mut process = ArnoldiProcess::new(op, seed, false);
    let mut entries = Vec::new();
    let mut final_iterate = seed.clone();
    let mut recon_flops_cum: u64 = 0;

    while process.m() < m_max && process.step() {
        let m = process.m();
        let hm = process.hessenberg(m);
        let y = match eval_f_on_hessenberg(&hm, lambda) {
            Ok(y) => y,
            // Defective Ritz configuration: stop at m-1.
            Err(_) => break,
        };
        let mu = m as u64;
        let nu = n as u64;
        recon_flops_cum += 2 * mu * mu * mu / 3 + 2 * mu * mu + mu + 2 * nu * mu + nu;

        let stopping = process.breakdown() || m == m_max;
        if record_every_step || stopping {
            let mut x = process.basis_combination(&y);
            x.scale_in_place(seed_norm);
            let (error, residual) = diagnostics(&x);
            entries.push(TraceEntry {
                m,
                error,
                residual,
                flops: setup_flops + process.flops() + recon_flops_cum,
            });
            final_iterate = x;
        }
        if process.breakdown() {
            break;
        }
    }

    let breakdown = process.breakdown();
    SolverTrace {
        entries,
        final_iterate,
        seed_error_estimate,
        breakdown,
    }
}

pub(crate) fn lu_flops(n: usize) -> u64 {
    let n = n as u64;
    2 * n * n * n / 3
}

pub(crate) fn cholesky_flops(n: usize) -> u64 {
    let n = n as u64;
    n * n * n / 3
}

pub(crate) fn solve_flops(n: usize) -> u64 {
    let n = n as u64;
    2 * n * n
}

pub(crate) fn gram_flops(rows: usize, cols: usize) -> u64 {
    (rows as u64) * (cols as u64) * (cols as u64 + 1)
}
