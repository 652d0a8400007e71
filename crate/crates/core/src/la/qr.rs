use super::matrix::DenseMatrix;

/// Householder QR of an `m x n` matrix with `m >= n`: returns the full
/// orthogonal `Q` (`m x m`) and upper-triangular/trapezoidal `R` (`m x n`).
pub fn qr_factor(a: &DenseMatrix) -> (DenseMatrix, DenseMatrix) {
    let m = a.rows();
    let n = a.cols();
    assert!(m >= n, "qr_factor expects rows >= cols");

    let mut r = a.clone();
    // Householder unit vectors, one per eliminated column.
    let mut reflectors: Vec<Vec<f64>> = Vec::with_capacity(n.min(m.saturating_sub(1)));

    for k in 0..n.min(m - 1) {
        let mut norm2 = 0.0;
        for i in k..m {
            let v = r.get(i, k);
            norm2 += v * v;
        }
        let norm = norm2.sqrt();
        if norm == 0.0 {
            reflectors.push(vec![0.0; m - k]);
            continue;
        }
        let alpha = if r.get(k, k) >= 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..m).map(|i| r.get(i, k)).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            reflectors.push(vec![0.0; m - k]);
            continue;
        }
        for x in &mut v {
            *x /= vnorm;
        }
        // Apply P = I - 2 v v^T to the trailing block of R.
        for j in k..n {
            let mut dot = 0.0;
            for i in k..m {
                dot += v[i - k] * r.get(i, j);
            }
            for i in k..m {
                let val = r.get(i, j) - 2.0 * v[i - k] * dot;
                r.set(i, j, val);
            }
        }
        reflectors.push(v);
    }
    // Zero out rounding residue below the diagonal.
    for j in 0..n {
        for i in (j + 1)..m {
            r.set(i, j, 0.0);
        }
    }

    // Q = P_0 P_1 ... P_{k-1} applied to the identity.
    let mut q = DenseMatrix::identity(m);
    for (k, v) in reflectors.iter().enumerate().rev() {
        if v.iter().all(|x| *x == 0.0) {
            continue;
        }
        for j in 0..m {
            let mut dot = 0.0;
            for i in k..m {
                dot += v[i - k] * q.get(i, j);
            }
            for i in k..m {
                let val = q.get(i, j) - 2.0 * v[i - k] * dot;
                q.set(i, j, val);
            }
        }
    }
    (q, r)
}
