use super::lu::{lu_factor, lu_solve, lu_solve_transpose};
use super::matrix::{DenseMatrix, Vector};

const POWER_ITERATIONS: usize = 30;

/// Order-of-magnitude 2-norm condition estimate of a square matrix.
///
/// The largest singular value comes from 30 power iterations on `A^T A`
/// started from the all-ones vector; the smallest from 30 inverse power
/// iterations through one LU factorization. The estimate feeds shift
/// heuristics only, so factor-of-a-few accuracy is the design point.
///
/// A matrix that is singular to working precision yields `f64::INFINITY`
/// (check with `is_finite`).
pub fn cond2_estimate(a: &DenseMatrix) -> f64 {
    assert!(a.is_square(), "cond2_estimate expects a square matrix");
    let f = match lu_factor(a) {
        Ok(f) => f,
        Err(_) => return f64::INFINITY,
    };
    cond2_estimate_op(
        a.rows(),
        |v| a.matvec(v),
        |v| a.matvec_transpose(v),
        |v| lu_solve(&f, v).expect("factor solve"),
        |v| lu_solve_transpose(&f, v).expect("factor transpose solve"),
    )
}

/// Condition estimate over an abstract operator `B` given its action,
/// its transpose action, and solves with `B` and `B^T`. Same scheme as
/// [`cond2_estimate`]: power iteration on `B^T B` for the largest
/// singular value, inverse power iteration for the smallest.
pub fn cond2_estimate_op(
    n: usize,
    apply: impl Fn(&Vector) -> Vector,
    apply_t: impl Fn(&Vector) -> Vector,
    solve: impl Fn(&Vector) -> Vector,
    solve_t: impl Fn(&Vector) -> Vector,
) -> f64 {
    // sigma_max: v <- B^T B v, normalized each step.
    let mut v = Vector::ones(n).scale(1.0 / (n as f64).sqrt());
    let mut sigma_max = 0.0;
    for _ in 0..POWER_ITERATIONS {
        let bv = apply(&v);
        let w = apply_t(&bv);
        let (vn, norm) = w.normalized();
        if norm == 0.0 {
            return f64::INFINITY;
        }
        sigma_max = norm.sqrt();
        v = vn;
    }

    // sigma_min: v <- (B^T B)^{-1} v = B^{-1} B^{-T} v.
    let mut u = Vector::ones(n).scale(1.0 / (n as f64).sqrt());
    let mut inv_sigma_min_sq = 0.0;
    for _ in 0..POWER_ITERATIONS {
        let s = solve_t(&u);
        let w = solve(&s);
        let (un, norm) = w.normalized();
        if norm == 0.0 {
            // B^(-T) annihilated the probe: treat as perfectly conditioned
            // direction, keep previous estimate.
            break;
        }
        if !norm.is_finite() {
            return f64::INFINITY;
        }
        inv_sigma_min_sq = norm;
        u = un;
    }
    if inv_sigma_min_sq == 0.0 {
        return f64::INFINITY;
    }
    let sigma_min = 1.0 / inv_sigma_min_sq.sqrt();
    sigma_max / sigma_min
}
