use super::ProblemError;
use crate::la::DenseMatrix;

/// Regularization operator families for the Tikhonov penalty `||H x||`.
/// The 2-D kinds act on vectorized `n x n` grids (`N = n^2`, row-major
/// vectorization matching [`crate::imaging::GrayImage`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegOperatorKind {
    /// `H = I_N`.
    Identity,
    /// `N x N` tridiagonal second-difference operator: 2 on the
    /// diagonal, -1 off.
    SecondDerivative1D,
    /// `2N x N` stack of one-dimensional forward differences along both
    /// grid directions, with unit last rows so `H^T H` stays nonsingular.
    GradientStack2D,
    /// `N x N` five-point Laplacian with zero-Dirichlet boundary.
    Laplacian2D,
}

impl RegOperatorKind {
    /// Parses the CLI spelling: `identity`, `d2`, `grad2d`, `lap2d`.
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "identity" => Some(Self::Identity),
            "d2" => Some(Self::SecondDerivative1D),
            "grad2d" => Some(Self::GradientStack2D),
            "lap2d" => Some(Self::Laplacian2D),
            _ => None,
        }
    }

    pub fn cli_name(&self) -> &'static str {
        match self {
            Self::Identity => "identity",
            Self::SecondDerivative1D => "d2",
            Self::GradientStack2D => "grad2d",
            Self::Laplacian2D => "lap2d",
        }
    }
}

fn grid_side(n: usize) -> Result<usize, ProblemError> {
    let side = (n as f64).sqrt().round() as usize;
    if side * side == n {
        Ok(side)
    } else {
        Err(ProblemError::NotAPerfectSquare { n })
    }
}

/// Upper-bidiagonal forward difference with a unit last row: diag 1,
/// superdiagonal -1, entry `(n-1, n-1) = 1`. Nonsingular by construction.
fn forward_difference(n: usize) -> DenseMatrix {
    DenseMatrix::from_fn(n, n, |i, j| {
        if i == j {
            1.0
        } else if j == i + 1 && i + 1 < n {
            -1.0
        } else {
            0.0
        }
    })
}

/// Builds the dense regularization matrix of the given kind for system
/// dimension `n` (`n = N` for 1-D kinds, `N = side^2` for 2-D kinds).
pub fn build_reg_operator(kind: RegOperatorKind, n: usize) -> Result<DenseMatrix, ProblemError> {
    match kind {
        RegOperatorKind::Identity => Ok(DenseMatrix::identity(n)),
        RegOperatorKind::SecondDerivative1D => Ok(DenseMatrix::from_fn(n, n, |i, j| {
            if i == j {
                2.0
            } else if i.abs_diff(j) == 1 {
                -1.0
            } else {
                0.0
            }
        })),
        RegOperatorKind::GradientStack2D => {
            let side = grid_side(n)?;
            let h1 = forward_difference(side);
            // Row-major vectorization: index (r, c) -> r*side + c.
            // Top block I (x) H1 differences along grid columns, bottom
            // block H1 (x) I along grid rows.
            let mut h = DenseMatrix::zeros(2 * n, n);
            for r in 0..side {
                for i in 0..side {
                    for j in 0..side {
                        let v = h1.get(i, j);
                        if v != 0.0 {
                            h.set(r * side + i, r * side + j, v);
                        }
                    }
                }
            }
            for i in 0..side {
                for j in 0..side {
                    let v = h1.get(i, j);
                    if v != 0.0 {
                        for c in 0..side {
                            h.set(n + i * side + c, j * side + c, v);
                        }
                    }
                }
            }
            Ok(h)
        }
        RegOperatorKind::Laplacian2D => {
            let side = grid_side(n)?;
            let mut h = DenseMatrix::zeros(n, n);
            for r in 0..side {
                for c in 0..side {
                    let idx = r * side + c;
                    h.set(idx, idx, 4.0);
                    if c + 1 < side {
                        h.set(idx, idx + 1, -1.0);
                        h.set(idx + 1, idx, -1.0);
                    }
                    if r + 1 < side {
                        h.set(idx, idx + side, -1.0);
                        h.set(idx + side, idx, -1.0);
                    }
                }
            }
            Ok(h)
        }
    }
}
