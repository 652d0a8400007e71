use super::matrix::{DenseMatrix, Vector};
use super::LaError;

/// Cholesky factorization of an SPD matrix: `S = L L^T`, `L` lower
/// triangular with positive diagonal.
#[derive(Debug, Clone)]
pub struct CholeskyFactor {
    l: DenseMatrix,
}

impl CholeskyFactor {
    pub fn n(&self) -> usize {
        self.l.rows()
    }

    pub fn l(&self) -> &DenseMatrix {
        &self.l
    }

    /// Solves `S x = b` by forward and backward substitution.
    pub fn solve(&self, b: &Vector) -> Result<Vector, LaError> {
        let n = self.n();
        if b.len() != n {
            return Err(LaError::DimensionMismatch {
                expected: n,
                got: b.len(),
            });
        }
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut acc = b[i];
            for j in 0..i {
                acc -= self.l.get(i, j) * y[j];
            }
            y[i] = acc / self.l.get(i, i);
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut acc = y[i];
            for j in (i + 1)..n {
                acc -= self.l.get(j, i) * x[j];
            }
            x[i] = acc / self.l.get(i, i);
        }
        Ok(Vector::from_vec(x))
    }
}

/// Factors a symmetric positive definite matrix.
///
/// The input must be symmetric to within `1e-12 * max|S|`; it is
/// symmetrized before factoring so both triangles contribute equally.
pub fn cholesky_factor(s: &DenseMatrix) -> Result<CholeskyFactor, LaError> {
    let n = s.require_square()?;
    let asym = s.max_asymmetry();
    let scale = s.max_abs();
    if asym > 1e-12 * scale.max(1e-300) {
        return Err(LaError::NotSymmetric { max_asymmetry: asym });
    }
    let sym = s.symmetrized();

    let mut l = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let mut diag = sym.get(j, j);
        for k in 0..j {
            let ljk = l.get(j, k);
            diag -= ljk * ljk;
        }
        if diag <= 0.0 {
            return Err(LaError::NotPositiveDefinite);
        }
        let ljj = diag.sqrt();
        l.set(j, j, ljj);
        for i in (j + 1)..n {
            let mut acc = sym.get(i, j);
            for k in 0..j {
                acc -= l.get(i, k) * l.get(j, k);
            }
            l.set(i, j, acc / ljj);
        }
    }
    Ok(CholeskyFactor { l })
}
