use super::{BlurSpec, ImagingError};
use crate::krylov::LinearOperator;
use crate::la::{DenseMatrix, Vector};

/// Dense restoration is capped at this many unknowns (`N = n^2`).
pub const DENSE_BLUR_MAX_N: usize = 4096;

/// Banded symmetric Toeplitz blur factor `T`: first row
/// `v_j = exp(-(j-1)^2 / (2 sigma^2))` for `j <= q`, zero beyond the
/// half-bandwidth. The full blur operator is `(2 pi sigma^2)^{-1} T (x) T`.
///
/// The whole quotient sits inside the exponent: that is what samples the
/// Gaussian point-spread function
/// `h(x, y) = (2 pi sigma^2)^{-1} exp(-(x^2 + y^2) / (2 sigma^2))` on
/// the pixel grid. A reading with the `1/(2 sigma^2)` factor outside the
/// exponent would not discretize that kernel.
pub fn build_blur_factor(spec: &BlurSpec) -> DenseMatrix {
    let q = spec.q;
    let s2 = 2.0 * spec.sigma * spec.sigma;
    DenseMatrix::from_fn(spec.n, spec.n, |i, j| {
        let d = i.abs_diff(j);
        if d < q {
            (-((d * d) as f64) / s2).exp()
        } else {
            0.0
        }
    })
}

fn kron_scale(spec: &BlurSpec) -> f64 {
    1.0 / (2.0 * std::f64::consts::PI * spec.sigma * spec.sigma)
}

/// The blur operator in Kronecker form, applying
/// `x -> (2 pi sigma^2)^{-1} vec(T X T^T)` without forming the `N x N`
/// matrix. Works at any image side, unlike the dense path.
pub struct BlurOperator {
    t: DenseMatrix,
    n: usize,
    scale: f64,
}

impl BlurOperator {
    pub fn new(spec: &BlurSpec) -> Self {
        let op = Self {
            t: build_blur_factor(spec),
            n: spec.n,
            scale: kron_scale(spec),
        };
        debug_assert!(
            crate::krylov::linearity_defect(&op, 0xB1u64) <= 1e-12,
            "blur operator must be linear"
        );
        op
    }

    pub fn factor(&self) -> &DenseMatrix {
        &self.t
    }
}

impl LinearOperator for BlurOperator {
    fn dim(&self) -> usize {
        self.n * self.n
    }

    fn apply(&self, v: &Vector) -> Vector {
        let n = self.n;
        assert_eq!(v.len(), n * n);
        // Row-major vec(X): X[i][j] = v[i*n + j]. Y = T X T^T, and with
        // T symmetric this matches the Kronecker product on vec.
        let x = DenseMatrix::from_fn(n, n, |i, j| v[i * n + j]);
        let tx = self.t.matmul(&x);
        let y = tx.matmul(&self.t.transpose());
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.scale * y.get(i, j));
            }
        }
        Vector::from_vec(out)
    }

    fn flops_per_apply(&self) -> u64 {
        let n = self.n as u64;
        // two n x n products plus the scaling pass
        2 * (2 * n * n * n) + n * n
    }
}

/// Explicit dense blur matrix `A = (2 pi sigma^2)^{-1} T (x) T` with the
/// row-major pixel convention: `A[(i,j),(k,l)] = c T[i][k] T[j][l]`.
/// Errors past the dense desk-scale cap.
pub fn blur_matrix(spec: &BlurSpec) -> Result<DenseMatrix, ImagingError> {
    let n = spec.n;
    let big_n = n * n;
    if big_n > DENSE_BLUR_MAX_N {
        return Err(ImagingError::TooLargeForDense {
            n_sq: big_n,
            max: DENSE_BLUR_MAX_N,
        });
    }
    let t = build_blur_factor(spec);
    let c = kron_scale(spec);
    let mut a = DenseMatrix::zeros(big_n, big_n);
    for i in 0..n {
        for k in 0..n {
            let tik = t.get(i, k);
            if tik == 0.0 {
                continue;
            }
            for j in 0..n {
                for l in 0..n {
                    let tjl = t.get(j, l);
                    if tjl != 0.0 {
                        a.set(i * n + j, k * n + l, c * tik * tjl);
                    }
                }
            }
        }
    }
    Ok(a)
}
