use super::matrix::{DenseMatrix, Vector};
use super::{LaError, PIVOT_FLOOR};

/// LU factorization with partial pivoting: `P A = L U`.
///
/// `lu` packs the unit-lower factor below the diagonal and `U` on and
/// above it; `perm[i]` is the source row of the `i`-th pivoted row.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: DenseMatrix,
    perm: Vec<usize>,
    sign: f64,
}

impl LuFactors {
    pub fn n(&self) -> usize {
        self.lu.rows()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Sign of the row permutation, `+1` or `-1`.
    pub fn perm_sign(&self) -> f64 {
        self.sign
    }

    pub fn packed(&self) -> &DenseMatrix {
        &self.lu
    }

    /// Unit-lower factor as a full matrix.
    pub fn l(&self) -> DenseMatrix {
        let n = self.n();
        DenseMatrix::from_fn(n, n, |i, j| {
            if i == j {
                1.0
            } else if i > j {
                self.lu.get(i, j)
            } else {
                0.0
            }
        })
    }

    /// Upper factor as a full matrix.
    pub fn u(&self) -> DenseMatrix {
        let n = self.n();
        DenseMatrix::from_fn(n, n, |i, j| if i <= j { self.lu.get(i, j) } else { 0.0 })
    }
}

/// Factors a square matrix with partial pivoting. Deterministic for a
/// given input; ties in the pivot search keep the lowest row index.
pub fn lu_factor(a: &DenseMatrix) -> Result<LuFactors, LaError> {
    let n = a.require_square()?;
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;

    for k in 0..n {
        let mut pivot_row = k;
        let mut pivot_val = lu.get(k, k).abs();
        for i in (k + 1)..n {
            let v = lu.get(i, k).abs();
            if v > pivot_val {
                pivot_val = v;
                pivot_row = i;
            }
        }
        if pivot_val < PIVOT_FLOOR {
            return Err(LaError::SingularToWorkingPrecision);
        }
        if pivot_row != k {
            for j in 0..n {
                let t = lu.get(k, j);
                lu.set(k, j, lu.get(pivot_row, j));
                lu.set(pivot_row, j, t);
            }
            perm.swap(k, pivot_row);
            sign = -sign;
        }
        let pivot = lu.get(k, k);
        for i in (k + 1)..n {
            let m = lu.get(i, k) / pivot;
            lu.set(i, k, m);
            if m == 0.0 {
                continue;
            }
            for j in (k + 1)..n {
                let v = lu.get(i, j) - m * lu.get(k, j);
                lu.set(i, j, v);
            }
        }
    }

    Ok(LuFactors { lu, perm, sign })
}

/// Solves `A x = b` from the packed factors.
pub fn lu_solve(f: &LuFactors, b: &Vector) -> Result<Vector, LaError> {
    let n = f.n();
    if b.len() != n {
        return Err(LaError::DimensionMismatch {
            expected: n,
            got: b.len(),
        });
    }
    // Forward substitution on P b with unit L.
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut acc = b[f.perm[i]];
        for j in 0..i {
            acc -= f.lu.get(i, j) * y[j];
        }
        y[i] = acc;
    }
    // Back substitution with U.
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = y[i];
        for j in (i + 1)..n {
            acc -= f.lu.get(i, j) * x[j];
        }
        x[i] = acc / f.lu.get(i, i);
    }
    Ok(Vector::from_vec(x))
}

/// Solves `A^T x = b` from the same factors: `A^T = U^T L^T P`.
pub fn lu_solve_transpose(f: &LuFactors, b: &Vector) -> Result<Vector, LaError> {
    let n = f.n();
    if b.len() != n {
        return Err(LaError::DimensionMismatch {
            expected: n,
            got: b.len(),
        });
    }
    // U^T y = b (forward, lower triangular with U's diagonal).
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut acc = b[i];
        for j in 0..i {
            acc -= f.lu.get(j, i) * y[j];
        }
        y[i] = acc / f.lu.get(i, i);
    }
    // L^T z = y (backward, unit diagonal).
    let mut z = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = y[i];
        for j in (i + 1)..n {
            acc -= f.lu.get(j, i) * z[j];
        }
        z[i] = acc;
    }
    // x = P^T z: row i of the pivoted system came from source row perm[i].
    let mut x = vec![0.0; n];
    for i in 0..n {
        x[f.perm[i]] = z[i];
    }
    Ok(Vector::from_vec(x))
}
