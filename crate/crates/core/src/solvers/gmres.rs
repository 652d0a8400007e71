use super::{lu_flops, solve_flops, SolverError, SolverTrace, TraceEntry};
use crate::krylov::{ArnoldiProcess, HouseholderArnoldi, LinearOperator, ShiftedInverseOperator};
use crate::la::{lu_factor, DenseMatrix, Vector};

/// Basis orthogonalization for the GMRES baseline. Householder keeps
/// the Krylov basis orthogonal to machine precision (the reference
/// implementation); the Gram-Schmidt variant loses orthogonality and
/// with it one or two orders of attainable accuracy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orthogonalization {
    Householder,
    Mgs,
}

enum Engine<'a> {
    Hh(HouseholderArnoldi<'a>),
    Mgs(ArnoldiProcess<'a>),
}

impl<'a> Engine<'a> {
    fn new(op: &'a dyn LinearOperator, b: &Vector, orth: Orthogonalization) -> (Self, f64) {
        match orth {
            Orthogonalization::Householder => {
                let e = HouseholderArnoldi::new(op, b);
                let beta = e.beta0();
                (Engine::Hh(e), beta)
            }
            Orthogonalization::Mgs => {
                let e = ArnoldiProcess::new(op, b, false);
                (Engine::Mgs(e), b.norm2())
            }
        }
    }

    fn step(&mut self) -> bool {
        match self {
            Engine::Hh(e) => e.step(),
            Engine::Mgs(e) => e.step(),
        }
    }

    fn m(&self) -> usize {
        match self {
            Engine::Hh(e) => e.m(),
            Engine::Mgs(e) => e.m(),
        }
    }

    fn breakdown(&self) -> bool {
        match self {
            Engine::Hh(e) => e.breakdown(),
            Engine::Mgs(e) => e.breakdown(),
        }
    }

    fn flops(&self) -> u64 {
        match self {
            Engine::Hh(e) => e.flops(),
            Engine::Mgs(e) => e.flops(),
        }
    }

    /// Hessenberg column `j` padded to length `j + 2`.
    fn h_col(&self, j: usize) -> Vec<f64> {
        let raw: Vec<f64> = match self {
            Engine::Hh(e) => e.h_col_raw(j).to_vec(),
            Engine::Mgs(e) => {
                let h = e.hessenberg(e.m());
                let mut col: Vec<f64> = (0..e.m().min(j + 2)).map(|i| h.get(i, j)).collect();
                if col.len() < j + 2 {
                    col.push(e.subdiag()[j]);
                }
                col
            }
        };
        let mut col = raw;
        col.resize(j + 2, 0.0);
        col
    }

    fn basis_combination(&self, y: &Vector) -> Vector {
        match self {
            Engine::Hh(e) => e.basis_combination(y),
            Engine::Mgs(e) => e.basis_combination(y),
        }
    }
}

/// GMRES with zero initial guess, recording per-iteration diagnostics.
/// Uses the Householder basis (the reference configuration).
pub fn gmres(
    op: &dyn LinearOperator,
    b: &Vector,
    m_max: usize,
    x_exact: Option<&Vector>,
) -> SolverTrace {
    gmres_with(op, b, m_max, x_exact, Orthogonalization::Householder)
}

/// GMRES with a chosen orthogonalization variant.
pub fn gmres_with(
    op: &dyn LinearOperator,
    b: &Vector,
    m_max: usize,
    x_exact: Option<&Vector>,
    orth: Orthogonalization,
) -> SolverTrace {
    gmres_inner(op, b, m_max, x_exact, orth, None, 0)
}

/// Shift-preconditioned GMRES: ordinary GMRES on
/// `(A + lambda I)^{-1} A x = (A + lambda I)^{-1} b` with the shifted
/// matrix LU-factored once. The recorded residual is the original-system
/// residual `||A x_m - b||`; each iteration's flop count includes the
/// inner solve.
pub fn pgmres(
    a: &DenseMatrix,
    b: &Vector,
    lambda: f64,
    m_max: usize,
    x_exact: Option<&Vector>,
) -> Result<SolverTrace, SolverError> {
    assert!(lambda > 0.0, "shift must be positive");
    let n = a.require_square().map_err(SolverError::La)?;
    let shifted = a.plus_scaled_identity(lambda);
    let flu = lu_factor(&shifted)?;
    let rhs = crate::la::lu_solve(&flu, b)?;
    let op = ShiftedInverseOperator::new(a, flu);
    let setup = lu_flops(n) + solve_flops(n);
    Ok(gmres_inner(
        &op,
        &rhs,
        m_max,
        x_exact,
        Orthogonalization::Householder,
        Some((a, b)),
        setup,
    ))
}

/// Core loop: incremental least squares on the extended Hessenberg via
/// Givens rotations. `residual_system` overrides the residual diagnostic
/// (used by the preconditioned variant to report against the original
/// system).
fn gmres_inner(
    op: &dyn LinearOperator,
    b: &Vector,
    m_max: usize,
    x_exact: Option<&Vector>,
    orth: Orthogonalization,
    residual_system: Option<(&DenseMatrix, &Vector)>,
    setup_flops: u64,
) -> SolverTrace {
    let n = op.dim();
    assert_eq!(b.len(), n, "rhs dimension mismatch");
    if b.norm2() == 0.0 {
        return SolverTrace {
            entries: Vec::new(),
            final_iterate: Vector::zeros(n),
            seed_error_estimate: None,
            breakdown: false,
        };
    }

    let (mut engine, beta) = Engine::new(op, b, orth);
    let x_exact_norm = x_exact.map(|x| x.norm2());

    // Rotated upper-triangular columns of the Hessenberg and rhs.
    let mut r_cols: Vec<Vec<f64>> = Vec::new();
    let mut g = vec![beta];
    let mut rot: Vec<(f64, f64)> = Vec::new();

    let mut entries = Vec::new();
    let mut final_iterate = Vector::zeros(n);
    let mut ls_flops_cum: u64 = 0;

    while engine.m() < m_max && engine.step() {
        let m = engine.m();
        let j = m - 1;
        let mut col = engine.h_col(j);

        for (i, &(c, s)) in rot.iter().enumerate() {
            let a0 = col[i];
            let a1 = col[i + 1];
            col[i] = c * a0 + s * a1;
            col[i + 1] = -s * a0 + c * a1;
        }
        let (c, s) = {
            let a0 = col[j];
            let a1 = col[j + 1];
            let r = (a0 * a0 + a1 * a1).sqrt();
            if r == 0.0 {
                (1.0, 0.0)
            } else {
                (a0 / r, a1 / r)
            }
        };
        col[j] = c * col[j] + s * col[j + 1];
        col[j + 1] = 0.0;
        rot.push((c, s));
        g.push(0.0);
        let g0 = g[j];
        g[j] = c * g0;
        g[j + 1] = -s * g0;

        r_cols.push(col[..=j].to_vec());

        // Back-substitute R y = g[..m].
        let mut y = vec![0.0; m];
        for i in (0..m).rev() {
            let mut acc = g[i];
            for k in (i + 1)..m {
                acc -= r_cols[k][i] * y[k];
            }
            y[i] = acc / r_cols[i][i];
        }
        let x = engine.basis_combination(&Vector::from_vec(y));

        let mu = m as u64;
        ls_flops_cum += 6 * mu + mu * mu + 2 * (n as u64) * mu;

        let error = x_exact.map(|xe| x.sub(xe).norm2() / x_exact_norm.unwrap());
        let residual = match residual_system {
            Some((a0, b0)) => a0.matvec(&x).sub(b0).norm2(),
            None => op.apply(&x).sub(b).norm2(),
        };
        entries.push(TraceEntry {
            m,
            error,
            residual,
            flops: setup_flops + engine.flops() + ls_flops_cum,
        });
        final_iterate = x;

        if engine.breakdown() {
            break;
        }
    }

    SolverTrace {
        entries,
        final_iterate,
        seed_error_estimate: None,
        breakdown: engine.breakdown(),
    }
}
