use super::{
    lu_flops, reconstruct_with_matrix_function, solve_flops, AspConfig, SolverError, SolverTrace,
};
use crate::krylov::MatOperator;
use crate::la::{lu_factor, lu_solve, DenseMatrix, LaError, Vector};
use crate::problems::TestProblem;

/// Evaluates `f(H) e_1` with `f(z) = 1 + lambda/z` as
/// `e_1 + lambda * H^{-1} e_1` through one small LU solve. For this
/// rational function the identity is exact, so no general matrix-function
/// algorithm is needed. `lambda = 0` short-circuits to `e_1`.
pub fn eval_f_on_hessenberg(hm: &DenseMatrix, lambda: f64) -> Result<Vector, LaError> {
    let m = hm.require_square()?;
    let e1 = Vector::unit(m, 0);
    if lambda == 0.0 {
        return Ok(e1);
    }
    let f = lu_factor(hm)?;
    let s = lu_solve(&f, &e1)?;
    let mut y = e1;
    y.axpy(lambda, &s);
    Ok(y)
}

/// Shift-preconditioned reconstruction on a test problem; the exact
/// solution feeds the trace's error column.
pub fn asp_solve(problem: &TestProblem, cfg: &AspConfig) -> Result<SolverTrace, SolverError> {
    asp_solve_system(&problem.a, &problem.b_exact, Some(&problem.x_exact), cfg)
}

/// Shift-preconditioned reconstruction on a general system `A x = b`:
/// factor `A + lambda I` once, solve for the seed, then rebuild the
/// unshifted solution with the Arnoldi matrix-function evaluation over
/// the Krylov space of `A` and the seed. One decomposition is extended
/// incrementally across all steps.
pub fn asp_solve_system(
    a: &DenseMatrix,
    b: &Vector,
    x_exact: Option<&Vector>,
    cfg: &AspConfig,
) -> Result<SolverTrace, SolverError> {
    let n = a.require_square().map_err(SolverError::La)?;
    if b.len() != n {
        return Err(SolverError::La(LaError::DimensionMismatch {
            expected: n,
            got: b.len(),
        }));
    }

    let shifted = a.plus_scaled_identity(cfg.lambda);
    let f = lu_factor(&shifted)?;
    let seed = lu_solve(&f, b)?;

    // One refinement step estimates the seed-solution error.
    let r = b.sub(&shifted.matvec(&seed));
    let correction = lu_solve(&f, &r)?;
    let seed_error_estimate = correction.norm2();

    let setup_flops = lu_flops(n) + 2 * solve_flops(n) + 2 * (n as u64) * (n as u64);

    let op = MatOperator::new(a);
    let x_exact_norm = x_exact.map(|x| x.norm2());
    let diagnostics = move |x: &Vector| {
        let error = x_exact.map(|xe| x.sub(xe).norm2() / x_exact_norm.unwrap());
        let residual = a.matvec(x).sub(b).norm2();
        (error, residual)
    };

    Ok(reconstruct_with_matrix_function(
        &op,
        &seed,
        cfg.lambda,
        cfg.m_max,
        cfg.record_every_step,
        setup_flops,
        Some(seed_error_estimate),
        &diagnostics,
    ))
}
