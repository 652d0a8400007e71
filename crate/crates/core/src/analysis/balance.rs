use super::AnalysisError;
use crate::la::{
    cond2_estimate, cond2_estimate_op, lu_factor, lu_solve, lu_solve_transpose, DenseMatrix,
};

/// Result of balancing the preconditioner conditioning against the
/// preconditioned-system conditioning.
#[derive(Debug, Clone, Copy)]
pub struct LambdaBalance {
    /// Bisection solution of
    /// `kappa(A + lambda I) = kappa((A + lambda I)^{-1} A)`, or the
    /// `1/kappa` fallback when no sign change was bracketed.
    pub lambda_star: f64,
    /// False when the bracket had no sign change and the fallback was
    /// returned.
    pub converged: bool,
    /// The condition estimate of `A` the fallbacks derive from.
    pub kappa_estimate: f64,
    /// `1/kappa(A)` heuristic.
    pub fallback_inv_kappa: f64,
    /// `1/sqrt(kappa(A))` heuristic.
    pub fallback_inv_sqrt_kappa: f64,
}

const LOG10_LO: f64 = -16.0;
const LOG10_HI: f64 = 2.0;
const BISECTION_WIDTH: f64 = 0.02;

/// Balances `kappa(A + lambda I)` against
/// `kappa((A + lambda I)^{-1} A)` by bisection on `log10 lambda` over
/// `[-16, 2]`. Both sides use the power-iteration condition estimator;
/// the right side works through the composed operator with one LU of
/// `A + lambda I` per evaluation (and one LU of `A` shared across all).
pub fn lambda_balance(a: &DenseMatrix) -> Result<LambdaBalance, AnalysisError> {
    let n = a.require_square().map_err(AnalysisError::La)?;
    let kappa = cond2_estimate(a);
    if !kappa.is_finite() {
        return Err(AnalysisError::La(
            crate::la::LaError::SingularToWorkingPrecision,
        ));
    }
    let fallback_inv_kappa = 1.0 / kappa;
    let fallback_inv_sqrt_kappa = 1.0 / kappa.sqrt();

    let flu_a = lu_factor(a)?;

    // log10 kappa(preconditioner) - log10 kappa(preconditioned system)
    let gap = |log10_lambda: f64| -> Result<f64, AnalysisError> {
        let lambda = 10f64.powf(log10_lambda);
        let shifted = a.plus_scaled_identity(lambda);
        let flu_s = lu_factor(&shifted)?;
        let k_pre = cond2_estimate(&shifted);
        // B = (A + lambda I)^{-1} A;  B^{-1} = A^{-1} (A + lambda I)
        let k_sys = cond2_estimate_op(
            n,
            |v| lu_solve(&flu_s, &a.matvec(v)).expect("shifted solve"),
            |v| a.matvec_transpose(&lu_solve_transpose(&flu_s, v).expect("shifted solve^T")),
            |v| lu_solve(&flu_a, &shifted.matvec(v)).expect("base solve"),
            |v| shifted.matvec_transpose(&lu_solve_transpose(&flu_a, v).expect("base solve^T")),
        );
        if !k_pre.is_finite() || !k_sys.is_finite() {
            return Err(AnalysisError::La(
                crate::la::LaError::SingularToWorkingPrecision,
            ));
        }
        Ok(k_pre.log10() - k_sys.log10())
    };

    let mut lo = LOG10_LO;
    let mut hi = LOG10_HI;
    let g_lo = gap(lo)?;
    let g_hi = gap(hi)?;

    // Estimator noise floor: gaps this small carry no sign information.
    const DEGENERATE: f64 = 1e-6;
    if g_lo.abs() < DEGENERATE || g_hi.abs() < DEGENERATE || g_lo.signum() == g_hi.signum() {
        return Ok(LambdaBalance {
            lambda_star: fallback_inv_kappa,
            converged: false,
            kappa_estimate: kappa,
            fallback_inv_kappa,
            fallback_inv_sqrt_kappa,
        });
    }

    let mut g_lo = g_lo;
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        let g_mid = gap(mid)?;
        if g_mid.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }

    Ok(LambdaBalance {
        lambda_star: 10f64.powf(0.5 * (lo + hi)),
        converged: true,
        kappa_estimate: kappa,
        fallback_inv_kappa,
        fallback_inv_sqrt_kappa,
    })
}
