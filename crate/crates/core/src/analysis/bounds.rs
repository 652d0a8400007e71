use super::AnalysisError;
use crate::krylov::ArnoldiDecomposition;
use crate::la::{eig_sym_jacobi, DenseMatrix};

/// Field-of-values bound constants: the general case carries a constant
/// between 2 and 11.08; symmetry allows 1.
pub const K_LOW: f64 = 2.0;
pub const K_HIGH: f64 = 11.08;
pub const K_SYMMETRIC: f64 = 1.0;

/// Per-step value of the reconstruction error bound
/// `K * lambda * ||x_seed|| * a^-(m+1) * prod h_{i+1,i}`, carried in
/// log10 so the `a^-(m+1)` growth cannot overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundEntry {
    pub m: usize,
    pub log10_k_symmetric: f64,
    pub log10_k_low: f64,
    pub log10_k_high: f64,
}

/// Error-bound report over a decomposition.
#[derive(Debug, Clone)]
pub struct ErrorBoundReport {
    /// Leftmost point of the field of values, `lambda_min((A + A^T)/2)`.
    pub a_left: f64,
    pub lambda: f64,
    pub seed_norm: f64,
    /// True when `A` is symmetric, in which case `K = 1` applies.
    pub symmetric: bool,
    /// Entries for `m = 0 ..= decomposition.m` (the `m = 0` row uses the
    /// empty subdiagonal product).
    pub entries: Vec<BoundEntry>,
}

impl ErrorBoundReport {
    /// The sharpest applicable bound at step `m`, as log10: the `K = 1`
    /// column for symmetric operators, `K = 2` otherwise.
    pub fn log10_bound(&self, m: usize) -> Option<f64> {
        self.entries.iter().find(|e| e.m == m).map(|e| {
            if self.symmetric {
                e.log10_k_symmetric
            } else {
                e.log10_k_low
            }
        })
    }
}

/// Evaluates the field-of-values error bound for a decomposition built
/// from `A`. Requires the leftmost point of the field of values (the
/// smallest eigenvalue of the symmetric part) to be positive; otherwise
/// [`AnalysisError::BoundNotApplicable`] is returned.
pub fn error_bound(
    decomp: &ArnoldiDecomposition,
    a: &DenseMatrix,
    lambda: f64,
    seed_norm: f64,
) -> Result<ErrorBoundReport, AnalysisError> {
    assert!(lambda >= 0.0);
    assert!(seed_norm >= 0.0);
    let sym_part = a.symmetrized();
    let eig = eig_sym_jacobi(&sym_part)?;
    let a_left = eig.values[eig.values.len() - 1];
    if a_left <= 0.0 {
        return Err(AnalysisError::BoundNotApplicable { a: a_left });
    }
    let symmetric = a.max_asymmetry() <= 1e-12 * a.max_abs().max(1e-300);

    let base = lambda.log10() + seed_norm.log10();
    let mut entries = Vec::with_capacity(decomp.m + 1);
    for m in 0..=decomp.m {
        let prod = decomp.subdiag_product(m);
        let shared = base - (m as f64 + 1.0) * a_left.log10() + prod.log10;
        entries.push(BoundEntry {
            m,
            log10_k_symmetric: K_SYMMETRIC.log10() + shared,
            log10_k_low: K_LOW.log10() + shared,
            log10_k_high: K_HIGH.log10() + shared,
        });
    }

    Ok(ErrorBoundReport {
        a_left,
        lambda,
        seed_norm,
        symmetric,
        entries,
    })
}

/// One point of the subdiagonal decay history.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayPoint {
    pub m: usize,
    /// `log10 prod_{i=1..m} h_{i+1,i}`.
    pub log10_product: f64,
    /// The step ratio `h_{m+1,m}` itself.
    pub ratio: f64,
}

/// Subdiagonal decay diagnostic: superlinear decay of the product shows
/// up as step ratios that trend downward.
#[derive(Debug, Clone)]
pub struct DecayDiagnostic {
    pub points: Vec<DecayPoint>,
    /// Least-squares slope of `log10 h_{m+1,m}` against `m`.
    pub slope: f64,
    /// True when the ratios trend downward (slope below `-1e-6`).
    pub superlinear: bool,
}

/// Emits the product sequence and successive ratios of a decomposition
/// with at least 3 steps, plus the superlinearity verdict.
pub fn decay_diagnostic(decomp: &ArnoldiDecomposition) -> DecayDiagnostic {
    assert!(decomp.m >= 3, "need at least 3 steps for a trend");
    let points: Vec<DecayPoint> = (1..=decomp.m)
        .map(|m| DecayPoint {
            m,
            log10_product: decomp.subdiag_product(m).log10,
            ratio: decomp.subdiag[m - 1],
        })
        .collect();

    // Fit log10(ratio) ~ a + slope*m over the nonzero prefix.
    let usable: Vec<(f64, f64)> = points
        .iter()
        .take_while(|p| p.ratio > 0.0)
        .map(|p| (p.m as f64, p.ratio.log10()))
        .collect();
    let (slope, superlinear) = if usable.len() < 2 {
        // The space collapsed immediately; decay is as fast as it gets.
        (f64::NEG_INFINITY, true)
    } else {
        let k = usable.len() as f64;
        let sx: f64 = usable.iter().map(|(x, _)| x).sum();
        let sy: f64 = usable.iter().map(|(_, y)| y).sum();
        let sxx: f64 = usable.iter().map(|(x, _)| x * x).sum();
        let sxy: f64 = usable.iter().map(|(x, y)| x * y).sum();
        let slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
        (slope, slope < -1e-6)
    };

    DecayDiagnostic {
        points,
        slope,
        superlinear,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::la::Vector;

    fn decomp_with_subdiag(subdiag: Vec<f64>) -> ArnoldiDecomposition {
        let m = subdiag.len();
        ArnoldiDecomposition {
            v: DenseMatrix::zeros(m + 1, m),
            h: DenseMatrix::zeros(m + 1, m),
            m,
            breakdown: false,
            subdiag,
            next_basis: None,
        }
    }

    #[test]
    fn constant_ratios_are_not_superlinear() {
        let d = decomp_with_subdiag(vec![0.3; 8]);
        let diag = decay_diagnostic(&d);
        assert!(!diag.superlinear, "slope {}", diag.slope);
        assert!(diag.slope.abs() <= 1e-9);
    }

    #[test]
    fn geometric_in_exponent_is_superlinear() {
        let d = decomp_with_subdiag((1..=8).map(|i| 10f64.powi(-(i as i32))).collect());
        let diag = decay_diagnostic(&d);
        assert!(diag.superlinear);
        assert!((diag.slope + 1.0).abs() <= 1e-9, "slope {}", diag.slope);
    }

    #[test]
    fn bound_on_identity_at_m_zero() {
        // A = I, lambda = 1, seed_norm = 1: empty product, a = 1, so the
        // m = 0 bound is K itself.
        let a = DenseMatrix::identity(3);
        let d = decomp_with_subdiag(vec![0.0]);
        let r = error_bound(&d, &a, 1.0, 1.0).unwrap();
        assert!(r.symmetric);
        let e0 = r.entries[0];
        assert_eq!(e0.m, 0);
        assert!((e0.log10_k_symmetric - 0.0).abs() < 1e-14);
        assert!((e0.log10_k_low - K_LOW.log10()).abs() < 1e-14);
        assert!((e0.log10_k_high - K_HIGH.log10()).abs() < 1e-14);
    }

    #[test]
    fn symmetric_flag_selects_k1_column() {
        let a = DenseMatrix::from_rows(&[&[2.0, 0.5], &[0.5, 1.0]]);
        let d = decomp_with_subdiag(vec![0.1]);
        let r = error_bound(&d, &a, 0.5, 2.0).unwrap();
        assert!(r.symmetric);
        assert_eq!(r.log10_bound(1).unwrap(), r.entries[1].log10_k_symmetric);
    }

    #[test]
    fn indefinite_symmetric_part_rejected() {
        let a = DenseMatrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let d = decomp_with_subdiag(vec![0.1]);
        assert!(matches!(
            error_bound(&d, &a, 1.0, 1.0),
            Err(AnalysisError::BoundNotApplicable { .. })
        ));
    }

    #[test]
    fn bound_stays_finite_in_log_space_under_underflow() {
        // Tiny a and strong decay: the plain product underflows but the
        // log10 bookkeeping stays finite.
        let a = DenseMatrix::from_rows(&[&[1e-30, 0.0], &[0.0, 1.0]]);
        let subdiag: Vec<f64> = (1..=12).map(|i| 10f64.powi(-30 * i as i32 / 2)).collect();
        let d = decomp_with_subdiag(subdiag);
        let r = error_bound(&d, &a, 1.0, 1.0).unwrap();
        for e in &r.entries {
            assert!(e.log10_k_low.is_finite());
        }
        let _ = Vector::zeros(1);
    }
}
