use super::LinearOperator;
use crate::la::{DenseMatrix, Vector};

/// Relative breakdown tolerance: the iteration stops once
/// `h_{m+1,m} <= 1e-14 * ||A v_1||`, i.e. at machine-precision scale,
/// since breakdown means an invariant subspace was found.
pub(crate) const BREAKDOWN_REL_TOL: f64 = 1e-14;

/// Product of the Hessenberg subdiagonal, carried in log10 space so that
/// superlinear decay does not underflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubdiagProduct {
    /// `log10` of the product, `-inf` when any factor is exactly zero.
    pub log10: f64,
    /// True when some `h_{i+1,i}` was exactly zero.
    pub is_zero: bool,
}

impl SubdiagProduct {
    /// The product as a plain double; underflows to 0 when tiny.
    pub fn value(&self) -> f64 {
        if self.is_zero {
            0.0
        } else {
            10f64.powf(self.log10)
        }
    }
}

/// Finished Arnoldi factorization `A V_m = V_m H_m + h_{m+1,m} v_{m+1} e_m^T`.
#[derive(Debug, Clone)]
pub struct ArnoldiDecomposition {
    /// Orthonormal basis `V_m`, `n x m`.
    pub v: DenseMatrix,
    /// Extended Hessenberg, `(m+1) x m`; the last row carries only
    /// `h_{m+1,m}` in its final column.
    pub h: DenseMatrix,
    /// Number of completed steps.
    pub m: usize,
    /// True when the iteration stopped on a (near-)invariant subspace.
    pub breakdown: bool,
    /// Subdiagonal entries `h_{i+1,i}`, all nonnegative.
    pub subdiag: Vec<f64>,
    /// `v_{m+1}` when the space did not break down.
    pub next_basis: Option<Vector>,
}

impl ArnoldiDecomposition {
    /// Leading `m x m` Hessenberg block.
    pub fn hessenberg(&self, m: usize) -> DenseMatrix {
        assert!(m <= self.m);
        DenseMatrix::from_fn(m, m, |i, j| self.h.get(i, j))
    }

    /// Running product `prod_{i=1..m} h_{i+1,i}` in log10 space; the
    /// empty product (`m = 0`) is 1.
    pub fn subdiag_product(&self, m: usize) -> SubdiagProduct {
        assert!(m <= self.m, "requested product past step {}", self.m);
        let mut log10 = 0.0;
        let mut is_zero = false;
        for &h in &self.subdiag[..m] {
            if h == 0.0 {
                is_zero = true;
                log10 = f64::NEG_INFINITY;
                break;
            }
            log10 += h.log10();
        }
        SubdiagProduct { log10, is_zero }
    }
}

/// Frobenius norm of `A V_m - V_m H_m - h_{m+1,m} v_{m+1} e_m^T`, the
/// defect in the Arnoldi relation for a decomposition built from `A`.
pub fn arnoldi_relation_residual(a: &DenseMatrix, d: &ArnoldiDecomposition) -> f64 {
    let n = a.rows();
    let m = d.m;
    if m == 0 {
        return 0.0;
    }
    let av = a.matmul(&d.v);
    let vh = d.v.matmul(&d.hessenberg(m));
    let hsub = d.h.get(m, m - 1);
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..m {
            let mut r = av.get(i, j) - vh.get(i, j);
            if j == m - 1 {
                if let Some(vnext) = &d.next_basis {
                    r -= hsub * vnext[i];
                }
            }
            acc += r * r;
        }
    }
    acc.sqrt()
}

/// Largest entry of `|V^T V - I|`, the orthogonality defect of the basis
/// (including `v_{m+1}` when present).
pub fn basis_orthogonality_defect(d: &ArnoldiDecomposition) -> f64 {
    let mut cols: Vec<Vector> = (0..d.m).map(|j| d.v.col_vector(j)).collect();
    if let Some(vnext) = &d.next_basis {
        cols.push(vnext.clone());
    }
    let k = cols.len();
    let mut worst: f64 = 0.0;
    for i in 0..k {
        for j in i..k {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((cols[i].dot(&cols[j]) - target).abs());
        }
    }
    worst
}

/// Incremental single-pass Gram-Schmidt Arnoldi over an operator.
///
/// One orthogonalization pass per step with every coefficient taken
/// against the unorthogonalized image `w = A v_m`, and no
/// re-orthogonalization: the orthogonality of the basis is deliberately
/// allowed to degrade, which caps how small the computed subdiagonal
/// entries can get and makes the reconstruction solvers stagnate at
/// their best accuracy instead of diverging. A sequential-update pass
/// would hold orthogonality long enough for near-zero Ritz values to
/// appear, and the `f(H_m)` correction then amplifies basis noise
/// catastrophically. An optional full second pass exists for
/// experiments.
pub struct ArnoldiProcess<'a> {
    op: &'a dyn LinearOperator,
    /// v_1 .. v_{m+1}; one more than completed steps unless breakdown.
    basis: Vec<Vector>,
    /// Column j holds h_{1..j+1, j}.
    h_cols: Vec<Vec<f64>>,
    subdiag: Vec<f64>,
    breakdown: bool,
    /// Reference scale `||A v_1||` for the breakdown test.
    scale_ref: Option<f64>,
    reorthogonalize: bool,
    flops: u64,
}

impl<'a> ArnoldiProcess<'a> {
    /// Starts from `v1`, normalizing it if needed.
    pub fn new(op: &'a dyn LinearOperator, v1: &Vector, reorthogonalize: bool) -> Self {
        assert_eq!(v1.len(), op.dim(), "seed dimension mismatch");
        let (v, norm) = v1.normalized();
        assert!(norm > 0.0, "seed vector must be nonzero");
        Self {
            op,
            basis: vec![v],
            h_cols: Vec::new(),
            subdiag: Vec::new(),
            breakdown: false,
            scale_ref: None,
            reorthogonalize,
            flops: 0,
        }
    }

    /// Completed steps.
    pub fn m(&self) -> usize {
        self.h_cols.len()
    }

    pub fn breakdown(&self) -> bool {
        self.breakdown
    }

    /// Flops spent on applies and orthogonalization so far.
    pub fn flops(&self) -> u64 {
        self.flops
    }

    pub fn subdiag(&self) -> &[f64] {
        &self.subdiag
    }

    /// Runs one more step. Returns false when the process can no longer
    /// advance (breakdown or full dimension reached).
    pub fn step(&mut self) -> bool {
        if self.breakdown || self.m() >= self.op.dim() {
            return false;
        }
        let m = self.m(); // about to produce column m (0-based)
        let n = self.op.dim();
        let mut w = self.op.apply(&self.basis[m]);
        self.flops += self.op.flops_per_apply();

        if self.scale_ref.is_none() {
            self.scale_ref = Some(w.norm2());
        }

        // Coefficients against the unorthogonalized w, then one sweep.
        let mut col = Vec::with_capacity(m + 2);
        for k in 0..=m {
            col.push(self.basis[k].dot(&w));
        }
        for k in 0..=m {
            w.axpy(-col[k], &self.basis[k]);
        }
        if self.reorthogonalize {
            for k in 0..=m {
                let corr = self.basis[k].dot(&w);
                w.axpy(-corr, &self.basis[k]);
                col[k] += corr;
            }
            self.flops += 4 * (m as u64 + 1) * n as u64;
        }
        let hnext = w.norm2();
        self.flops += 4 * (m as u64 + 1) * (n as u64) + 3 * n as u64;

        col.push(hnext);
        self.h_cols.push(col);
        self.subdiag.push(hnext);

        let tol = BREAKDOWN_REL_TOL * self.scale_ref.unwrap_or(1.0);
        if hnext <= tol {
            self.breakdown = true;
        } else {
            self.basis.push(w.scale(1.0 / hnext));
        }
        true
    }

    /// Leading `m x m` Hessenberg block of the current factorization.
    pub fn hessenberg(&self, m: usize) -> DenseMatrix {
        assert!(m <= self.m());
        DenseMatrix::from_fn(m, m, |i, j| {
            let col = &self.h_cols[j];
            if i < col.len() {
                col[i]
            } else {
                0.0
            }
        })
    }

    /// Linear combination `V_m y` of the first `m = y.len()` basis vectors.
    pub fn basis_combination(&self, y: &Vector) -> Vector {
        let m = y.len();
        assert!(m <= self.basis.len());
        let mut out = Vector::zeros(self.op.dim());
        for (k, vk) in self.basis.iter().take(m).enumerate() {
            out.axpy(y[k], vk);
        }
        out
    }

    pub fn basis_vector(&self, k: usize) -> &Vector {
        &self.basis[k]
    }

    /// Freezes the current state into a decomposition.
    pub fn into_decomposition(self) -> ArnoldiDecomposition {
        let m = self.h_cols.len();
        let next_basis = if self.basis.len() > m {
            Some(self.basis[m].clone())
        } else {
            None
        };
        decomposition_from_parts(
            self.op.dim(),
            &self.basis,
            &self.h_cols,
            self.subdiag,
            self.breakdown,
            next_basis,
        )
    }
}

pub(crate) fn decomposition_from_parts(
    n: usize,
    basis: &[Vector],
    h_cols: &[Vec<f64>],
    subdiag: Vec<f64>,
    breakdown: bool,
    next_basis: Option<Vector>,
) -> ArnoldiDecomposition {
    let m = h_cols.len();
    let mut v = DenseMatrix::zeros(n, m);
    for (j, col) in basis.iter().take(m).enumerate() {
        v.set_col(j, col);
    }
    let h = DenseMatrix::from_fn(m + 1, m, |i, j| {
        let col = &h_cols[j];
        if i < col.len() {
            col[i]
        } else {
            0.0
        }
    });
    ArnoldiDecomposition {
        v,
        h,
        m,
        breakdown,
        subdiag,
        next_basis,
    }
}

/// Runs single-pass Gram-Schmidt Arnoldi (see [`ArnoldiProcess`]) for up
/// to `m_max` steps.
pub fn arnoldi_mgs(op: &dyn LinearOperator, v1: &Vector, m_max: usize) -> ArnoldiDecomposition {
    arnoldi_mgs_with(op, v1, m_max, false)
}

/// As [`arnoldi_mgs`], with an optional full re-orthogonalization pass
/// per step (off in all solvers; provided for experiments only).
pub fn arnoldi_mgs_with(
    op: &dyn LinearOperator,
    v1: &Vector,
    m_max: usize,
    reorthogonalize: bool,
) -> ArnoldiDecomposition {
    let mut p = ArnoldiProcess::new(op, v1, reorthogonalize);
    while p.m() < m_max && p.step() {
        if p.breakdown() {
            break;
        }
    }
    p.into_decomposition()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::krylov::MatOperator;

    #[test]
    fn identity_operator_breaks_down_immediately() {
        let a = DenseMatrix::identity(5);
        let op = MatOperator::new(&a);
        let v1 = Vector::from_vec(vec![0.5, -0.5, 0.5, -0.5, 0.0]);
        let d = arnoldi_mgs(&op, &v1, 10);
        assert_eq!(d.m, 1);
        assert!(d.breakdown);
        assert!((d.h.get(0, 0) - 1.0).abs() < 1e-15);
        assert!(d.h.get(1, 0).abs() <= 1e-14);
    }

    #[test]
    fn two_step_diagonal_hand_computation() {
        // A = diag(1,2), v1 = (1,1)/sqrt(2): H2 = [[1.5, 0.5], [0.5, 1.5]]
        let a = DenseMatrix::from_rows(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let op = MatOperator::new(&a);
        let s = 1.0 / 2f64.sqrt();
        let d = arnoldi_mgs(&op, &Vector::from_vec(vec![s, s]), 2);
        assert_eq!(d.m, 2);
        let h = d.hessenberg(2);
        assert!((h.get(0, 0) - 1.5).abs() < 1e-14);
        assert!((h.get(0, 1) - 0.5).abs() < 1e-14);
        assert!((h.get(1, 0) - 0.5).abs() < 1e-14);
        assert!((h.get(1, 1) - 1.5).abs() < 1e-14);
    }

    #[test]
    fn subdiag_products() {
        let d = ArnoldiDecomposition {
            v: DenseMatrix::zeros(2, 2),
            h: DenseMatrix::zeros(3, 2),
            m: 2,
            breakdown: false,
            subdiag: vec![0.5, 0.1],
            next_basis: None,
        };
        assert_eq!(d.subdiag_product(0).value(), 1.0);
        assert!((d.subdiag_product(2).value() - 0.05).abs() < 1e-16);
        assert!(!d.subdiag_product(2).is_zero);
    }

    #[test]
    fn subdiag_product_with_zero_factor() {
        let d = ArnoldiDecomposition {
            v: DenseMatrix::zeros(2, 2),
            h: DenseMatrix::zeros(3, 2),
            m: 2,
            breakdown: true,
            subdiag: vec![0.5, 0.0],
            next_basis: None,
        };
        let p = d.subdiag_product(2);
        assert!(p.is_zero);
        assert_eq!(p.value(), 0.0);
    }

    #[test]
    fn arnoldi_relation_on_random_operator() {
        let mut rng = crate::rng::Rng64::new(77);
        let a = DenseMatrix::from_fn(30, 30, |_, _| rng.uniform_symmetric());
        let op = MatOperator::new(&a);
        let v1 = Vector::from_vec((0..30).map(|_| rng.uniform_symmetric()).collect());
        let d = arnoldi_mgs(&op, &v1, 12);
        assert_eq!(d.m, 12);
        let res = arnoldi_relation_residual(&a, &d);
        assert!(res <= 1e-10 * a.frobenius_norm(), "residual {res:e}");
    }

    #[test]
    fn symmetric_operator_gives_tridiagonal_hessenberg() {
        let mut rng = crate::rng::Rng64::new(5);
        let a = DenseMatrix::from_fn(25, 25, |_, _| rng.uniform_symmetric()).symmetrized();
        let op = MatOperator::new(&a);
        let v1 = Vector::ones(25);
        let d = arnoldi_mgs(&op, &v1, 8);
        let h = d.hessenberg(8);
        let scale = a.max_abs();
        for i in 0..8 {
            for j in 0..8 {
                if j + 1 < i || j > i + 1 {
                    assert!(
                        h.get(i, j).abs() <= 1e-8 * scale,
                        "H[{i}][{j}] = {}",
                        h.get(i, j)
                    );
                }
            }
        }
    }
}
