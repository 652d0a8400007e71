use super::AnalysisError;
use crate::krylov::{ArnoldiProcess, MatOperator};
use crate::la::{eig_sym_jacobi, lu_factor, lu_solve, DenseMatrix, Vector};

/// Newton-form polynomial interpolant on distinct nodes, built from
/// divided differences. Numerically steadier than the Lagrange form for
/// clustered nodes; confluent nodes are the caller's problem.
#[derive(Debug, Clone)]
pub struct NewtonInterpolant {
    nodes: Vec<f64>,
    /// Divided differences `f[x_0], f[x_0,x_1], ...`.
    coeffs: Vec<f64>,
}

impl NewtonInterpolant {
    pub fn new(nodes: &[f64], values: &[f64]) -> Self {
        assert_eq!(nodes.len(), values.len());
        assert!(!nodes.is_empty());
        let m = nodes.len();
        let mut coeffs = values.to_vec();
        for k in 1..m {
            for i in (k..m).rev() {
                coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (nodes[i] - nodes[i - k]);
            }
        }
        Self {
            nodes: nodes.to_vec(),
            coeffs,
        }
    }

    /// Horner evaluation of the Newton form.
    pub fn eval(&self, x: f64) -> f64 {
        let m = self.coeffs.len();
        let mut p = self.coeffs[m - 1];
        for i in (0..m - 1).rev() {
            p = self.coeffs[i] + (x - self.nodes[i]) * p;
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }
}

/// Tikhonov filter factors `g_i` and their Arnoldi-corrected versions
/// `f_i^(m)` over a set of step counts.
#[derive(Debug, Clone)]
pub struct FilterFactorReport {
    /// Eigenvalues of `A`, sorted decreasing.
    pub eigenvalues: Vector,
    /// `g_i = lambda_i / (lambda_i + lambda)`.
    pub tikhonov_factors: Vector,
    /// Requested step counts, in the order given.
    pub m_list: Vec<usize>,
    /// `f_i^(m) = lambda_i p_{m-1}(lambda_i) / (lambda_i + lambda)`,
    /// one vector per requested `m`.
    pub corrected_factors: Vec<Vector>,
    /// `p_{m-1}(0)` per requested `m`; the trailing corrected factors
    /// approach `p_{m-1}(0) * g_i`.
    pub p_at_zero: Vec<f64>,
    pub lambda: f64,
}

impl FilterFactorReport {
    /// CSV serialization: `i,eigenvalue,g_i,f_i_m4,f_i_m6,...` with one
    /// corrected-factor column per requested step count.
    pub fn to_csv(&self) -> String {
        let mut header = String::from("i,eigenvalue,g_i");
        for m in &self.m_list {
            header.push_str(&format!(",f_i_m{m}"));
        }
        header.push('\n');
        let mut out = header;
        for i in 0..self.eigenvalues.len() {
            out.push_str(&format!(
                "{},{},{}",
                i + 1,
                self.eigenvalues[i],
                self.tikhonov_factors[i]
            ));
            for f in &self.corrected_factors {
                out.push_str(&format!(",{}", f[i]));
            }
            out.push('\n');
        }
        out
    }
}

const RITZ_SEPARATION_REL: f64 = 1e-12;

/// Filter factors of the shift-preconditioned reconstruction on a
/// symmetric matrix.
///
/// The first phase damps spectral component `i` by
/// `g_i = lambda_i/(lambda_i + lambda)`; after `m` Arnoldi steps the
/// correction rescales it to `f_i^(m) = lambda_i p_{m-1}(lambda_i) /
/// (lambda_i + lambda)` where `p_{m-1}` interpolates `f` at the Ritz
/// values. The symmetric restriction keeps every eigenproblem within the
/// Jacobi solver; the normal-equations case is covered by passing
/// `A^T A` (with squared spectrum) in place of `A`.
///
/// `b` seeds the Krylov space through the phase-one solve
/// `(A + lambda I) x_seed = b`, matching the solver's iteration exactly.
pub fn filter_factors(
    a: &DenseMatrix,
    b: &Vector,
    lambda: f64,
    m_list: &[usize],
) -> Result<FilterFactorReport, AnalysisError> {
    assert!(lambda >= 0.0, "shift must be nonnegative");
    assert!(!m_list.is_empty());
    let eig = eig_sym_jacobi(a)?;
    let n = eig.values.len();

    let tikhonov_factors = Vector::from_vec(
        eig.values
            .as_slice()
            .iter()
            .map(|&li| if lambda == 0.0 { 1.0 } else { li / (li + lambda) })
            .collect(),
    );

    // Phase-one seed, exactly as the solver computes it.
    let shifted = a.plus_scaled_identity(lambda);
    let flu = lu_factor(&shifted)?;
    let seed = lu_solve(&flu, b)?;

    let op = MatOperator::new(a);
    let mut process = ArnoldiProcess::new(&op, &seed, false);
    let m_max = *m_list.iter().max().unwrap();
    while process.m() < m_max && process.step() {
        if process.breakdown() {
            break;
        }
    }
    if process.m() < m_max {
        return Err(AnalysisError::BreakdownBeforeM {
            requested: m_max,
            reached: process.m(),
        });
    }

    let mut corrected_factors = Vec::with_capacity(m_list.len());
    let mut p_at_zero = Vec::with_capacity(m_list.len());
    for &m in m_list {
        let hm = process.hessenberg(m).symmetrized();
        let ritz = eig_sym_jacobi(&hm)?.values;
        let spread = ritz[0].abs().max(ritz[m - 1].abs()).max(1e-300);
        for w in ritz.as_slice().windows(2) {
            if (w[0] - w[1]).abs() <= RITZ_SEPARATION_REL * spread {
                return Err(AnalysisError::ConfluentRitzValues { m });
            }
        }
        if ritz.as_slice().iter().any(|&r| r == 0.0) {
            return Err(AnalysisError::DegenerateSpectrum { m });
        }

        let fvals: Vec<f64> = ritz.as_slice().iter().map(|&r| 1.0 + lambda / r).collect();
        let p = NewtonInterpolant::new(ritz.as_slice(), &fvals);

        let mut factors = Vec::with_capacity(n);
        for i in 0..n {
            let li = eig.values[i];
            if li + lambda == 0.0 {
                return Err(AnalysisError::DegenerateSpectrum { m });
            }
            if lambda == 0.0 {
                factors.push(1.0);
            } else {
                factors.push(li * p.eval(li) / (li + lambda));
            }
        }
        corrected_factors.push(Vector::from_vec(factors));
        p_at_zero.push(p.eval(0.0));
    }

    Ok(FilterFactorReport {
        eigenvalues: eig.values,
        tikhonov_factors,
        m_list: m_list.to_vec(),
        corrected_factors,
        p_at_zero,
        lambda,
    })
}
