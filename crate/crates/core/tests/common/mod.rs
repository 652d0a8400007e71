//! Independent oracles shared by the integration suites. Everything here
//! deliberately avoids the library's own solution paths: plain Gaussian
//! elimination without pivoting, and a shifted QR iteration built on the
//! QR factorization only.

use illposed::la::{qr_factor, DenseMatrix, Vector};

/// Naive Gaussian elimination without pivoting. Valid only on
/// well-conditioned inputs with benign pivots; that is the point — it is
/// an independent route, not a robust solver.
pub fn gauss_solve_no_pivot(a: &DenseMatrix, b: &Vector) -> Vector {
    let n = a.rows();
    assert!(a.is_square() && b.len() == n);
    let mut m = a.clone();
    let mut rhs: Vec<f64> = b.as_slice().to_vec();
    for k in 0..n {
        let pivot = m.get(k, k);
        assert!(pivot.abs() > 1e-12, "oracle needs benign pivots");
        for i in (k + 1)..n {
            let factor = m.get(i, k) / pivot;
            if factor == 0.0 {
                continue;
            }
            for j in k..n {
                let v = m.get(i, j) - factor * m.get(k, j);
                m.set(i, j, v);
            }
            rhs[i] -= factor * rhs[k];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        for j in (i + 1)..n {
            acc -= m.get(i, j) * x[j];
        }
        x[i] = acc / m.get(i, i);
    }
    Vector::from_vec(x)
}

/// Eigenvalues of a symmetric matrix by shifted QR iteration with
/// trailing deflation, sorted decreasing. Independent of the Jacobi path.
pub fn qr_eigenvalues_symmetric(a: &DenseMatrix) -> Vec<f64> {
    let mut work = a.symmetrized();
    let mut out = Vec::with_capacity(a.rows());
    let mut guard = 0usize;
    while work.rows() > 1 {
        guard += 1;
        assert!(guard < 100_000, "QR oracle failed to converge");
        let n = work.rows();
        let off = work.get(n - 1, n - 2).abs();
        let scale = work.get(n - 1, n - 1).abs() + work.get(n - 2, n - 2).abs();
        if off <= 1e-15 * (scale + 1e-300) {
            out.push(work.get(n - 1, n - 1));
            work = DenseMatrix::from_fn(n - 1, n - 1, |i, j| work.get(i, j));
            continue;
        }
        // Wilkinson shift from the trailing 2x2 block.
        let aa = work.get(n - 2, n - 2);
        let bb = work.get(n - 2, n - 1);
        let cc = work.get(n - 1, n - 1);
        let d = 0.5 * (aa - cc);
        let denom = d.abs() + (d * d + bb * bb).sqrt();
        let mu = if denom == 0.0 {
            cc - bb.abs()
        } else {
            cc - d.signum() * bb * bb / denom
        };
        let shifted = work.plus_scaled_identity(-mu);
        let (q, r) = qr_factor(&shifted);
        work = r.matmul(&q).plus_scaled_identity(mu).symmetrized();
    }
    out.push(work.get(0, 0));
    out.sort_by(|x, y| y.partial_cmp(x).unwrap());
    out
}

#[allow(dead_code)]
pub fn assert_close(got: f64, want: f64, tol: f64, what: &str) {
    assert!(
        (got - want).abs() <= tol,
        "{what}: got {got:e}, want {want:e} (tol {tol:e})"
    );
}
