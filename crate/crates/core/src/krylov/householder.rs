use super::arnoldi::{decomposition_from_parts, ArnoldiDecomposition, BREAKDOWN_REL_TOL};
use super::LinearOperator;
use crate::la::Vector;

/// Householder reflector `I - 2 w w^T` acting on the trailing components
/// `start..`; `w` is unit (or all zero, meaning the identity).
struct Reflector {
    start: usize,
    w: Vec<f64>,
}

impl Reflector {
    /// Builds the reflector that maps `z` to `(z[..k], beta, 0, ...)`,
    /// returning it with `beta = -sign(z[k]) * ||z[k..]||`.
    fn zeroing_tail(z: &Vector, k: usize) -> (Reflector, f64) {
        let n = z.len();
        let mut norm2 = 0.0;
        for i in k..n {
            norm2 += z[i] * z[i];
        }
        let sigma = norm2.sqrt();
        if sigma == 0.0 {
            return (
                Reflector {
                    start: k,
                    w: vec![0.0; n - k],
                },
                0.0,
            );
        }
        let beta = if z[k] >= 0.0 { -sigma } else { sigma };
        let mut w: Vec<f64> = (k..n).map(|i| z[i]).collect();
        w[0] -= beta; // z[k] + sign(z[k]) * sigma, no cancellation
        let wnorm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut w {
            *x /= wnorm;
        }
        (Reflector { start: k, w }, beta)
    }

    fn apply(&self, z: &mut Vector) {
        if self.w.is_empty() || self.w.iter().all(|x| *x == 0.0) {
            return;
        }
        let mut dot = 0.0;
        for (i, wi) in self.w.iter().enumerate() {
            dot += wi * z[self.start + i];
        }
        let dot2 = 2.0 * dot;
        for (i, wi) in self.w.iter().enumerate() {
            z[self.start + i] -= dot2 * wi;
        }
    }
}

/// Incremental Householder Arnoldi.
///
/// The basis is represented through accumulated reflectors, so its
/// orthogonality holds to machine precision at every step regardless of
/// the operator's conditioning. Internally the subdiagonal entries are
/// signed; [`Self::into_decomposition`] rescales basis vectors and
/// Hessenberg entries by a diagonal sign matrix so the public invariants
/// (`v_1` along the seed, `h_{i+1,i} >= 0`) match the Gram-Schmidt form.
pub struct HouseholderArnoldi<'a> {
    op: &'a dyn LinearOperator,
    reflectors: Vec<Reflector>,
    /// Raw basis vectors v_0 .. (signs not yet normalized).
    basis: Vec<Vector>,
    /// Raw Hessenberg columns, column j of length j+2 (or n at full dim).
    h_cols: Vec<Vec<f64>>,
    /// Signed value with `b = beta0 * v_0` for seed `b`.
    beta0: f64,
    breakdown: bool,
    scale_ref: Option<f64>,
    flops: u64,
}

impl<'a> HouseholderArnoldi<'a> {
    pub fn new(op: &'a dyn LinearOperator, seed: &Vector) -> Self {
        let n = op.dim();
        assert_eq!(seed.len(), n, "seed dimension mismatch");
        assert!(seed.norm2() > 0.0, "seed vector must be nonzero");
        let (r0, beta0) = Reflector::zeroing_tail(seed, 0);
        let mut v0 = Vector::unit(n, 0);
        r0.apply(&mut v0);
        Self {
            op,
            reflectors: vec![r0],
            basis: vec![v0],
            h_cols: Vec::new(),
            beta0,
            breakdown: false,
            scale_ref: None,
            flops: 0,
        }
    }

    pub fn m(&self) -> usize {
        self.h_cols.len()
    }

    pub fn breakdown(&self) -> bool {
        self.breakdown
    }

    pub fn flops(&self) -> u64 {
        self.flops
    }

    /// `beta` with `seed = beta * v_0` (raw signs).
    pub fn beta0(&self) -> f64 {
        self.beta0
    }

    /// Raw (signed) Hessenberg column `j`, length `j+2` (`j+1` at full
    /// dimension).
    pub fn h_col_raw(&self, j: usize) -> &[f64] {
        &self.h_cols[j]
    }

    /// Raw combination `V_m y`.
    pub fn basis_combination(&self, y: &Vector) -> Vector {
        let m = y.len();
        assert!(m <= self.basis.len());
        let mut out = Vector::zeros(self.op.dim());
        for (k, vk) in self.basis.iter().take(m).enumerate() {
            out.axpy(y[k], vk);
        }
        out
    }

    /// Runs one more step; false once the process terminated.
    pub fn step(&mut self) -> bool {
        if self.breakdown || self.m() >= self.op.dim() {
            return false;
        }
        let n = self.op.dim();
        let col = self.m();

        let u = self.op.apply(&self.basis[col]);
        self.flops += self.op.flops_per_apply();
        if self.scale_ref.is_none() {
            self.scale_ref = Some(u.norm2());
        }

        // z = R_col ... R_0 u
        let mut z = u;
        for r in &self.reflectors {
            r.apply(&mut z);
        }
        self.flops += 4 * (col as u64 + 1) * n as u64;

        if col + 1 < n {
            let (r_next, beta) = Reflector::zeroing_tail(&z, col + 1);
            self.flops += 3 * n as u64;
            let mut hcol: Vec<f64> = (0..=col).map(|i| z[i]).collect();
            hcol.push(beta);
            self.h_cols.push(hcol);

            let tol = BREAKDOWN_REL_TOL * self.scale_ref.unwrap_or(1.0);
            if beta.abs() <= tol {
                self.breakdown = true;
            } else {
                self.reflectors.push(r_next);
                // v_{col+1} = R_0 ... R_{col+1} e_{col+1}
                let mut v = Vector::unit(n, col + 1);
                for r in self.reflectors.iter().rev() {
                    r.apply(&mut v);
                }
                self.flops += 4 * (col as u64 + 2) * n as u64;
                self.basis.push(v);
            }
        } else {
            // Full dimension: no component left to orthogonalize away.
            let hcol: Vec<f64> = (0..n).map(|i| z[i]).collect();
            self.h_cols.push(hcol);
            self.breakdown = true;
        }
        true
    }

    /// Sign-normalized decomposition: `v_1` points along the seed and
    /// every subdiagonal entry is nonnegative.
    pub fn into_decomposition(self) -> ArnoldiDecomposition {
        let m = self.h_cols.len();
        let n = self.op.dim();

        // d_0 aligns v_0 with the seed; d_{j+1} keeps h_{j+1,j} >= 0.
        let mut d = Vec::with_capacity(m + 1);
        d.push(if self.beta0 >= 0.0 { 1.0 } else { -1.0 });
        for j in 0..m {
            let raw_sub = if j + 1 < self.h_cols[j].len() {
                self.h_cols[j][j + 1]
            } else {
                0.0
            };
            let sign = if raw_sub >= 0.0 { 1.0 } else { -1.0 };
            d.push(d[j] * sign);
        }

        let basis: Vec<Vector> = self
            .basis
            .iter()
            .enumerate()
            .map(|(j, v)| v.scale(d[j.min(m)]))
            .collect();
        let h_cols: Vec<Vec<f64>> = self
            .h_cols
            .iter()
            .enumerate()
            .map(|(j, col)| {
                col.iter()
                    .enumerate()
                    .map(|(i, &v)| d[i.min(m)] * v * d[j])
                    .collect()
            })
            .collect();
        let subdiag: Vec<f64> = h_cols
            .iter()
            .enumerate()
            .map(|(j, col)| if j + 1 < col.len() { col[j + 1] } else { 0.0 })
            .collect();
        let next_basis = if basis.len() > m {
            Some(basis[m].clone())
        } else {
            None
        };
        decomposition_from_parts(n, &basis, &h_cols, subdiag, self.breakdown, next_basis)
    }
}

/// Runs Householder Arnoldi for up to `m_max` steps and returns the
/// sign-normalized decomposition.
pub fn arnoldi_householder(
    op: &dyn LinearOperator,
    v1: &Vector,
    m_max: usize,
) -> ArnoldiDecomposition {
    let mut p = HouseholderArnoldi::new(op, v1);
    while p.m() < m_max && p.step() {
        if p.breakdown() {
            break;
        }
    }
    p.into_decomposition()
}
