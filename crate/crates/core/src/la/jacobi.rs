use super::matrix::{DenseMatrix, Vector};
use super::LaError;

/// Eigendecomposition of a symmetric matrix: `S = Q diag(values) Q^T`.
#[derive(Debug, Clone)]
pub struct SymEigen {
    /// Eigenvalues sorted in decreasing order.
    pub values: Vector,
    /// Orthonormal eigenvectors, column `i` pairing with `values[i]`.
    pub vectors: DenseMatrix,
}

const MAX_SWEEPS: usize = 50;

/// Cyclic Jacobi eigensolver for symmetric matrices.
///
/// Sweeps rotate every off-diagonal pair per pass until the off-diagonal
/// Frobenius norm drops below `1e-14 * ||S||_F` or the sweep cap (50) is
/// hit, in which case [`LaError::NoConvergence`] reports the achieved
/// norm. Input must be symmetric to within `1e-12 * max|S|`; it is
/// symmetrized before iterating.
pub fn eig_sym_jacobi(s: &DenseMatrix) -> Result<SymEigen, LaError> {
    let n = s.require_square()?;
    let asym = s.max_asymmetry();
    let scale = s.max_abs();
    if asym > 1e-12 * scale.max(1e-300) {
        return Err(LaError::NotSymmetric { max_asymmetry: asym });
    }
    let mut a = s.symmetrized();
    let mut q = DenseMatrix::identity(n);
    let target = 1e-14 * a.frobenius_norm();

    let off_norm = |a: &DenseMatrix| -> f64 {
        let mut acc = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                let v = a.get(i, j);
                acc += 2.0 * v * v;
            }
        }
        acc.sqrt()
    };

    let mut achieved = off_norm(&a);
    if achieved > target {
        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            for p in 0..n {
                for r in (p + 1)..n {
                    let apr = a.get(p, r);
                    if apr == 0.0 {
                        continue;
                    }
                    // Stable rotation choice (Rutishauser).
                    let theta = (a.get(r, r) - a.get(p, p)) / (2.0 * apr);
                    let t = if theta >= 0.0 {
                        1.0 / (theta + (1.0 + theta * theta).sqrt())
                    } else {
                        -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let sn = t * c;

                    // A <- J^T A J on rows/columns p and r.
                    for k in 0..n {
                        let akp = a.get(k, p);
                        let akr = a.get(k, r);
                        a.set(k, p, c * akp - sn * akr);
                        a.set(k, r, sn * akp + c * akr);
                    }
                    for k in 0..n {
                        let apk = a.get(p, k);
                        let ark = a.get(r, k);
                        a.set(p, k, c * apk - sn * ark);
                        a.set(r, k, sn * apk + c * ark);
                    }
                    // Accumulate Q <- Q J.
                    for k in 0..n {
                        let qkp = q.get(k, p);
                        let qkr = q.get(k, r);
                        q.set(k, p, c * qkp - sn * qkr);
                        q.set(k, r, sn * qkp + c * qkr);
                    }
                }
            }
            achieved = off_norm(&a);
            if achieved <= target {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(LaError::NoConvergence {
                achieved_off_norm: achieved,
            });
        }
    }

    // Sort eigenpairs by decreasing eigenvalue.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(j, j).partial_cmp(&a.get(i, i)).unwrap());
    let values = Vector::from_vec(order.iter().map(|&i| a.get(i, i)).collect());
    let vectors = DenseMatrix::from_fn(n, n, |i, j| q.get(i, order[j]));

    Ok(SymEigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix_sorted_descending() {
        let s = DenseMatrix::from_rows(&[
            &[3.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0],
            &[0.0, 0.0, 2.0],
        ]);
        let e = eig_sym_jacobi(&s).unwrap();
        assert_eq!(e.values.as_slice(), &[3.0, 2.0, 1.0]);
        // Axis eigenvectors, up to sign.
        assert!((e.vectors.get(0, 0).abs() - 1.0).abs() < 1e-14);
        assert!((e.vectors.get(2, 1).abs() - 1.0).abs() < 1e-14);
        assert!((e.vectors.get(1, 2).abs() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn known_2x2_pair() {
        let s = DenseMatrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let e = eig_sym_jacobi(&s).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn reconstruction_and_orthogonality() {
        let mut rng = crate::rng::Rng64::new(21);
        let raw = DenseMatrix::from_fn(20, 20, |_, _| rng.uniform_symmetric());
        let s = raw.symmetrized();
        let e = eig_sym_jacobi(&s).unwrap();
        let n = 20;

        // trace(S) = sum of eigenvalues
        let trace: f64 = (0..n).map(|i| s.get(i, i)).sum();
        let lam_sum: f64 = e.values.as_slice().iter().sum();
        assert!((trace - lam_sum).abs() <= 1e-12 * trace.abs().max(1.0));

        // || S q_i - lambda_i q_i || small per pair
        let scale = s.max_abs();
        for i in 0..n {
            let qi = e.vectors.col_vector(i);
            let r = s.matvec(&qi).sub(&qi.scale(e.values[i]));
            assert!(r.norm2() <= 1e-10 * scale.max(1.0));
        }

        // Q orthonormal
        let qtq = e.vectors.transpose().matmul(&e.vectors);
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((qtq.get(i, j) - target).abs());
            }
        }
        assert!(worst <= 1e-12, "orthogonality defect {worst}");

        // Full reconstruction in Frobenius norm
        let mut recon = DenseMatrix::zeros(n, n);
        for k in 0..n {
            let qk = e.vectors.col_vector(k);
            for i in 0..n {
                for j in 0..n {
                    let v = recon.get(i, j) + e.values[k] * qk[i] * qk[j];
                    recon.set(i, j, v);
                }
            }
        }
        let mut diff = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let d = recon.get(i, j) - s.get(i, j);
                diff += d * d;
            }
        }
        assert!(diff.sqrt() <= 1e-10 * s.frobenius_norm());
    }

    #[test]
    fn asymmetric_rejected() {
        let s = DenseMatrix::from_rows(&[&[1.0, 1.0], &[0.0, 1.0]]);
        assert!(matches!(eig_sym_jacobi(&s), Err(LaError::NotSymmetric { .. })));
    }
}
