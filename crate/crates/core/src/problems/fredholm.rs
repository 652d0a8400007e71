use super::{ProblemError, TestProblem};
use crate::la::{DenseMatrix, Vector};

const MIN_SIZE: usize = 8;

/// Midpoint collocation of `int K(s,t) x(t) dt = b(s)`: `A[i][j] =
/// h_t * K(s_i, t_j)` on midpoint grids, `x_exact[j] = x(t_j)` and
/// `b_exact = A x_exact`.
fn discretize(
    name: &str,
    n: usize,
    s_range: (f64, f64),
    t_range: (f64, f64),
    kernel: impl Fn(f64, f64) -> f64,
    solution: impl Fn(f64) -> f64,
) -> Result<TestProblem, ProblemError> {
    if n < MIN_SIZE {
        return Err(ProblemError::SizeTooSmall { n, min: MIN_SIZE });
    }
    let hs = (s_range.1 - s_range.0) / n as f64;
    let ht = (t_range.1 - t_range.0) / n as f64;
    let s = |i: usize| s_range.0 + (i as f64 + 0.5) * hs;
    let t = |j: usize| t_range.0 + (j as f64 + 0.5) * ht;

    let a = DenseMatrix::from_fn(n, n, |i, j| ht * kernel(s(i), t(j)));
    let x_exact = Vector::from_vec((0..n).map(|j| solution(t(j))).collect());
    let b_exact = a.matvec(&x_exact);

    Ok(TestProblem {
        name: name.to_string(),
        n,
        a,
        b_exact,
        x_exact,
    })
}

/// BAART: `K(s,t) = exp(s cos t)` on `s in [0, pi/2]`, `t in [0, pi]`,
/// exact solution `x(t) = sin t`. Severely ill-posed.
pub fn baart(n: usize) -> Result<TestProblem, ProblemError> {
    discretize(
        "baart",
        n,
        (0.0, std::f64::consts::FRAC_PI_2),
        (0.0, std::f64::consts::PI),
        |s, t| (s * t.cos()).exp(),
        |t| t.sin(),
    )
}

/// SHAW: one-dimensional image restoration model on
/// `[-pi/2, pi/2]^2` with `K = (cos s + cos t)^2 (sin u / u)^2`,
/// `u = pi (sin s + sin t)`; two-hump exact solution.
pub fn shaw(n: usize) -> Result<TestProblem, ProblemError> {
    discretize(
        "shaw",
        n,
        (-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2),
        (-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2),
        |s, t| {
            let u = std::f64::consts::PI * (s.sin() + t.sin());
            let sinc = if u.abs() < 1e-30 { 1.0 } else { u.sin() / u };
            let c = s.cos() + t.cos();
            c * c * sinc * sinc
        },
        |t| 2.0 * (-6.0 * (t - 0.8).powi(2)).exp() + (-2.0 * (t + 0.5).powi(2)).exp(),
    )
}

/// FOXGOOD: `K = sqrt(s^2 + t^2)` on `[0,1]^2`, `x(t) = t`. Severely
/// ill-posed without the usual square-integrable kernel smoothness.
pub fn foxgood(n: usize) -> Result<TestProblem, ProblemError> {
    discretize(
        "foxgood",
        n,
        (0.0, 1.0),
        (0.0, 1.0),
        |s, t| (s * s + t * t).sqrt(),
        |t| t,
    )
}

/// GRAVITY: one-dimensional gravity surveying on `[0,1]^2` with
/// `K = d (d^2 + (s-t)^2)^(-3/2)` at depth `d` (default 0.25) and
/// `x(t) = sin(pi t) + 0.5 sin(2 pi t)`. Symmetric positive definite.
pub fn gravity(n: usize) -> Result<TestProblem, ProblemError> {
    gravity_with_depth(n, 0.25)
}

/// GRAVITY with an explicit depth parameter.
pub fn gravity_with_depth(n: usize, depth: f64) -> Result<TestProblem, ProblemError> {
    assert!(depth > 0.0, "depth must be positive");
    discretize(
        "gravity",
        n,
        (0.0, 1.0),
        (0.0, 1.0),
        move |s, t| {
            let d2 = depth * depth + (s - t) * (s - t);
            depth / (d2 * d2.sqrt())
        },
        |t| (std::f64::consts::PI * t).sin() + 0.5 * (2.0 * std::f64::consts::PI * t).sin(),
    )
}

/// Dispatch by name: `baart`, `shaw`, `foxgood`, `gravity`.
pub fn generate(name: &str, n: usize) -> Result<TestProblem, ProblemError> {
    match name.to_ascii_lowercase().as_str() {
        "baart" => baart(n),
        "shaw" => shaw(n),
        "foxgood" => foxgood(n),
        "gravity" => gravity(n),
        other => Err(ProblemError::UnknownProblem(other.to_string())),
    }
}

/// The four gallery names, in the fixed order used by experiment sweeps.
pub const GALLERY: [&str; 4] = ["baart", "foxgood", "shaw", "gravity"];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::la::{cholesky_factor, cond2_estimate, eig_sym_jacobi, lu_factor};

    #[test]
    fn consistency_by_construction() {
        for name in GALLERY {
            for n in [40, 80, 160] {
                let p = generate(name, n).unwrap();
                let r = p.a.matvec(&p.x_exact).sub(&p.b_exact);
                assert!(
                    r.norm2() <= 1e-8 * p.b_exact.norm2(),
                    "{name}({n}) inconsistent"
                );
            }
        }
    }

    #[test]
    fn gravity_symmetric_and_spd() {
        let p = gravity(12).unwrap();
        assert!(p.a.max_asymmetry() <= 1e-14);
        assert!(cholesky_factor(&p.a).is_ok(), "gravity(12) not SPD");
    }

    #[test]
    fn shaw_and_gravity_symmetric_at_gallery_sizes() {
        for n in [40, 160] {
            let s = shaw(n).unwrap();
            assert!(s.a.max_asymmetry() <= 1e-13 * s.a.max_abs());
            let g = gravity(n).unwrap();
            assert!(g.a.max_asymmetry() <= 1e-13 * g.a.max_abs());
        }
    }

    #[test]
    fn baart_is_severely_ill_conditioned() {
        let p = baart(240).unwrap();
        let k = cond2_estimate(&p.a);
        assert!(k >= 1e15, "kappa(baart(240)) = {k:e}");
    }

    #[test]
    fn shaw_spectrum_decays_superalgebraically() {
        let p = shaw(160).unwrap();
        let e = eig_sym_jacobi(&p.a).unwrap();
        // Spectral decay measured through |lambda|, eigensolver oracle.
        let mags: Vec<f64> = e.values.as_slice().iter().map(|v| v.abs()).collect();
        let max = mags.iter().cloned().fold(0.0, f64::max);
        let mut sorted = mags.clone();
        sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert!(sorted[19] / max <= 1e-10, "ratio {}", sorted[19] / max);
    }

    #[test]
    fn all_problems_factorizable() {
        for name in GALLERY {
            let p = generate(name, 40).unwrap();
            assert!(lu_factor(&p.a).is_ok(), "{name} should LU-factor");
        }
    }

    #[test]
    fn unknown_name_and_small_size_rejected() {
        assert!(matches!(
            generate("bart", 40),
            Err(ProblemError::UnknownProblem(_))
        ));
        assert!(matches!(
            generate("baart", 4),
            Err(ProblemError::SizeTooSmall { .. })
        ));
    }

    #[test]
    fn generation_is_deterministic() {
        let p1 = shaw(40).unwrap();
        let p2 = shaw(40).unwrap();
        assert_eq!(p1.a, p2.a);
        assert_eq!(p1.b_exact, p2.b_exact);
    }
}
