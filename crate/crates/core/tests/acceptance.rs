//! Acceptance suite: one test per contract criterion, each printing a
//! single PASS line on success (run with `--nocapture` to see them).
//! Tolerances are pinned in code; nothing here is calibrated at runtime.

mod common;

use common::qr_eigenvalues_symmetric;
use illposed::analysis::{decay_diagnostic, error_bound, filter_factors};
use illposed::imaging::{deblur_atp, test_pattern, BlurSpec};
use illposed::krylov::{
    arnoldi_householder, arnoldi_mgs, arnoldi_relation_residual, ArnoldiProcess, MatOperator,
};
use illposed::la::{
    cholesky_factor, cond2_estimate, eig_sym_jacobi, lu_factor, lu_solve, DenseMatrix, Vector,
};
use illposed::problems::{add_noise, baart, generate, gravity, shaw, NoiseSpec, RegOperatorKind, GALLERY};
use illposed::rng::Rng64;
use illposed::solvers::{asp_solve, atp_solve, gmres, pgmres, AspConfig, AtpConfig};

fn pass(name: &str, detail: String) {
    println!("ACCEPTANCE {name}: PASS ({detail})");
}

/// Criterion 1: LU/Cholesky reconstruction residuals at 1e-10 on 200
/// random matrices up to 200x200, and the Jacobi eigensolver against a
/// QR-iteration oracle on GRAVITY(12) at 1e-10 relative.
#[test]
fn kernel_factorization_oracles() {
    let mut rng = Rng64::new(1001);
    let mut worst_lu: f64 = 0.0;
    let mut worst_chol: f64 = 0.0;
    for trial in 0..200 {
        let n = 2 + (trial * 97) % 199; // sizes spread over 2..=200
        let a = DenseMatrix::from_fn(n, n, |_, _| rng.uniform_symmetric());

        // P A = L U reconstruction, relative to the input magnitude.
        let f = lu_factor(&a).unwrap();
        let lu = f.l().matmul(&f.u());
        let mut res: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                res = res.max((a.get(f.perm()[i], j) - lu.get(i, j)).abs());
            }
        }
        let rel = res / a.max_abs();
        worst_lu = worst_lu.max(rel);
        assert!(rel <= 1e-10, "LU reconstruction {rel:e} at n={n}");

        // S = L L^T reconstruction on an SPD Gram lift.
        let s = a.gram().plus_scaled_identity(0.1);
        let c = cholesky_factor(&s).unwrap();
        let llt = c.l().matmul(&c.l().transpose());
        let mut resc: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                resc = resc.max((s.get(i, j) - llt.get(i, j)).abs());
            }
        }
        let relc = resc / s.max_abs();
        worst_chol = worst_chol.max(relc);
        assert!(relc <= 1e-10, "Cholesky reconstruction {relc:e} at n={n}");
    }

    let p = gravity(12).unwrap();
    let jac = eig_sym_jacobi(&p.a).unwrap();
    let oracle = qr_eigenvalues_symmetric(&p.a);
    let scale = jac.values[0];
    let mut worst_eig: f64 = 0.0;
    for i in 0..12 {
        worst_eig = worst_eig.max((jac.values[i] - oracle[i]).abs() / scale);
    }
    assert!(worst_eig <= 1e-10, "Jacobi vs QR oracle {worst_eig:e}");

    pass(
        "kernel-factorization-oracles",
        format!("lu {worst_lu:.1e}, chol {worst_chol:.1e}, eig {worst_eig:.1e}"),
    );
}

/// Criterion 2: Arnoldi relation at 1e-10 * ||A||_F for both engines on
/// all four gallery problems, N = 160, m = 25.
#[test]
fn arnoldi_relation_gallery() {
    let mut worst: f64 = 0.0;
    for name in GALLERY {
        let p = generate(name, 160).unwrap();
        let shifted = p.a.plus_scaled_identity(1e-5);
        let seed = lu_solve(&lu_factor(&shifted).unwrap(), &p.b_exact).unwrap();
        let op = MatOperator::new(&p.a);
        let scale = p.a.frobenius_norm();
        for (variant, d) in [
            ("gram-schmidt", arnoldi_mgs(&op, &seed, 25)),
            ("householder", arnoldi_householder(&op, &seed, 25)),
        ] {
            let rel = arnoldi_relation_residual(&p.a, &d) / scale;
            worst = worst.max(rel);
            assert!(rel <= 1e-10, "{name}/{variant}: relation residual {rel:e}");
        }
    }
    pass("arnoldi-relation-gallery", format!("worst {worst:.1e}"));
}

/// Criterion 3: noise-free BAART(240), each shift in {1e-3..1e-9} gets a
/// minimum relative error at or below 1e-3, attained by m <= 15.
#[test]
fn asp_accuracy_baart() {
    let p = baart(240).unwrap();
    let mut detail = String::new();
    for lam in [1e-3, 1e-5, 1e-7, 1e-9] {
        let t = asp_solve(&p, &AspConfig::new(lam, 30)).unwrap();
        let (argmin, min_err) = t.min_error().unwrap();
        assert!(min_err <= 1e-3, "lambda={lam:e}: min error {min_err:e}");
        assert!(argmin <= 15, "lambda={lam:e}: argmin {argmin}");
        detail.push_str(&format!("{min_err:.1e}@{argmin} "));
    }
    pass("asp-accuracy-baart", detail.trim().to_string());
}

/// Criterion 4: stagnation versus semi-convergence on noise-free
/// BAART(240) with a 30-step cap. The reconstruction ends within 10x of
/// its minimum; the orthogonal-basis GMRES baseline ends at least 100x
/// above its own minimum (its run ends at the numerically invariant
/// subspace, m = 12 here, with the divergence long since established).
#[test]
fn stagnation_vs_semiconvergence() {
    let p = baart(240).unwrap();

    let t = asp_solve(&p, &AspConfig::new(1e-5, 30)).unwrap();
    let (_, asp_min) = t.min_error().unwrap();
    let asp_last_entry = t.entries.last().unwrap();
    let asp_last = asp_last_entry.error.unwrap();
    assert_eq!(asp_last_entry.m, 30, "ASP must reach the cap");
    assert!(
        asp_last <= 10.0 * asp_min,
        "ASP final {asp_last:e} vs min {asp_min:e}"
    );

    let op = MatOperator::new(&p.a);
    let g = gmres(&op, &p.b_exact, 30, Some(&p.x_exact));
    let (_, g_min) = g.min_error().unwrap();
    let g_last = g.entries.last().unwrap().error.unwrap();
    assert!(
        g_last >= 100.0 * g_min,
        "GMRES final {g_last:e} vs min {g_min:e}"
    );

    pass(
        "stagnation-vs-semiconvergence",
        format!(
            "asp x{:.2}, gmres x{:.1e} (ends m={})",
            asp_last / asp_min,
            g_last / g_min,
            g.entries.last().unwrap().m
        ),
    );
}

/// Criterion 5: BAART(240) with 1e-3 relative noise and the second-
/// derivative penalty. At lambda = 1e10 the median minimum relative
/// error over ten seeds stays at or below 6e-2 with argmin <= 10; at
/// lambda = 1 no iterate ever doubles the first iterate's error.
#[test]
fn atp_noise_accuracy() {
    let p = baart(240).unwrap();
    let mut mins = Vec::new();
    for seed in 0..10u64 {
        let noisy = add_noise(&p.b_exact, &NoiseSpec::new(1e-3, seed));
        let cfg = AtpConfig::new(1e10, RegOperatorKind::SecondDerivative1D, 30);
        let t = atp_solve(&p.a, &noisy, Some(&p.x_exact), &cfg).unwrap();
        let (argmin, min_err) = t.min_error().unwrap();
        assert!(argmin <= 10, "seed {seed}: argmin {argmin}");
        mins.push(min_err);
    }
    mins.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = 0.5 * (mins[4] + mins[5]);
    assert!(median <= 6e-2, "median min error {median:e}");

    let noisy = add_noise(&p.b_exact, &NoiseSpec::new(1e-3, 7));
    let cfg1 = AtpConfig::new(1.0, RegOperatorKind::SecondDerivative1D, 30);
    let t1 = atp_solve(&p.a, &noisy, Some(&p.x_exact), &cfg1).unwrap();
    let first = t1.entries[0].error.unwrap();
    let worst = t1
        .entries
        .iter()
        .map(|e| e.error.unwrap())
        .fold(0.0f64, f64::max);
    assert!(
        worst <= 2.0 * first,
        "lambda=1 deteriorated: first {first:e}, worst {worst:e}"
    );

    pass(
        "atp-noise-accuracy",
        format!("median {median:.1e}, lambda=1 ratio {:.2}", worst / first),
    );
}

/// Criterion 6: for each gallery problem at N = 160, the noise-free
/// minimum error varies by at most 10x as the shift sweeps the
/// recommended range [kappa^-1/2, kappa^-1/4].
#[test]
fn lambda_plateau() {
    let mut detail = String::new();
    for name in GALLERY {
        let p = generate(name, 160).unwrap();
        let kappa = cond2_estimate(&p.a);
        let lo = kappa.powf(-0.5).log10();
        let hi = kappa.powf(-0.25).log10();
        let mut best = f64::INFINITY;
        let mut worst: f64 = 0.0;
        for k in 0..7 {
            let lam = 10f64.powf(lo + (hi - lo) * k as f64 / 6.0);
            let t = asp_solve(&p, &AspConfig::new(lam, 30)).unwrap();
            let (_, min_err) = t.min_error().unwrap();
            best = best.min(min_err);
            worst = worst.max(min_err);
        }
        let ratio = worst / best;
        assert!(ratio <= 10.0, "{name}: plateau ratio {ratio}");
        detail.push_str(&format!("{name} x{ratio:.1} "));
    }
    pass("lambda-plateau", detail.trim().to_string());
}

/// Criterion 7: filter factors on GRAVITY(12) at lambda = 1/sqrt(kappa).
/// At m = N the corrected factors must all return to 1 within 1e-8; at
/// m = 8 the leading factors (i <= 6) sit within 0.1 of 1 and the
/// damped tail (i > 8 with eigenvalue at or below lambda) within 0.1 of
/// p(0) * g_i.
#[test]
fn filter_factor_correction() {
    let p = gravity(12).unwrap();
    let kappa = cond2_estimate(&p.a);
    let lam = 1.0 / kappa.sqrt();
    let report = filter_factors(&p.a, &p.b_exact, lam, &[8, 12]).unwrap();

    // m = 8 clauses first, so their result is visible even when the
    // full-interpolation clause fails.
    let f8 = &report.corrected_factors[0];
    for i in 0..6 {
        assert!(
            (f8[i] - 1.0).abs() <= 0.1,
            "m=8, i={}: f = {}",
            i + 1,
            f8[i]
        );
    }
    let p0 = report.p_at_zero[0];
    for i in 8..12 {
        if report.eigenvalues[i] <= lam {
            let target = p0 * report.tikhonov_factors[i];
            assert!(
                (f8[i] - target).abs() <= 0.1,
                "m=8 tail i={}: f = {} vs p(0) g = {target}",
                i + 1,
                f8[i]
            );
        }
    }

    let f12 = &report.corrected_factors[1];
    let mut worst: f64 = 0.0;
    for i in 0..12 {
        worst = worst.max((f12[i] - 1.0).abs());
    }
    if worst > 1e-8 {
        println!(
            "ACCEPTANCE filter-factor-correction: FAIL (m=12 worst |f_i - 1| = {worst:.1e}, \
             required 1e-8; the m=8 clauses passed)"
        );
        panic!("full interpolation must reset every factor to 1: worst |f_i - 1| = {worst:e}");
    }

    pass("filter-factor-correction", format!("m=12 worst {worst:.1e}"));
}

/// Criterion 8: superlinear subdiagonal decay verdicts on SHAW(160) and
/// GRAVITY(160) reconstructions at m = 20.
#[test]
fn superlinear_subdiag_decay() {
    let mut detail = String::new();
    for p in [shaw(160).unwrap(), gravity(160).unwrap()] {
        let lam = 1.0 / cond2_estimate(&p.a).sqrt();
        let shifted = p.a.plus_scaled_identity(lam);
        let seed = lu_solve(&lu_factor(&shifted).unwrap(), &p.b_exact).unwrap();
        let op = MatOperator::new(&p.a);
        let d = arnoldi_mgs(&op, &seed, 20);
        let diag = decay_diagnostic(&d);
        assert!(diag.superlinear, "{}: slope {}", p.name, diag.slope);
        detail.push_str(&format!("{} slope {:.2} ", p.name, diag.slope));
    }
    pass("superlinear-subdiag-decay", detail.trim().to_string());
}

/// Criterion 9: on GRAVITY(40), where the leftmost field-of-values point
/// is positive, the K = 1 bound upper-envelopes the measured
/// reconstruction error at every step where it is representable.
#[test]
fn error_bound_envelope() {
    let p = gravity(40).unwrap();
    let kappa = cond2_estimate(&p.a);
    let lam = 1.0 / kappa.sqrt();
    let shifted = p.a.plus_scaled_identity(lam);
    let flu = lu_factor(&shifted).unwrap();
    let seed = lu_solve(&flu, &p.b_exact).unwrap();

    // Reference x = f(A) seed via a direct solve with A.
    let fa = lu_factor(&p.a).unwrap();
    let mut x_ref = seed.clone();
    x_ref.axpy(lam, &lu_solve(&fa, &seed).unwrap());

    let op = MatOperator::new(&p.a);
    let mut proc = ArnoldiProcess::new(&op, &seed, false);
    let mut measured = Vec::new();
    while proc.m() < 15 && proc.step() {
        let m = proc.m();
        let hm = proc.hessenberg(m);
        let y = illposed::solvers::eval_f_on_hessenberg(&hm, lam).unwrap();
        let mut x = proc.basis_combination(&y);
        x.scale_in_place(seed.norm2());
        measured.push((m, x.sub(&x_ref).norm2()));
        if proc.breakdown() {
            break;
        }
    }
    let d = proc.into_decomposition();
    let report = error_bound(&d, &p.a, lam, seed.norm2()).expect("a > 0 on GRAVITY(40)");
    assert!(report.symmetric, "GRAVITY is symmetric, K = 1 applies");

    let mut checked = 0;
    for (m, em) in &measured {
        let log_bound = report.log10_bound(*m).unwrap();
        if log_bound <= -307.0 {
            continue; // below representable range
        }
        if *em > 0.0 {
            assert!(
                log_bound >= em.log10(),
                "m={m}: bound 1e{log_bound:.1} below measured {em:e}"
            );
        }
        checked += 1;
    }
    assert!(checked >= 10, "too few comparable steps");
    pass(
        "error-bound-envelope",
        format!("a={:.1e}, {checked} steps enveloped", report.a_left),
    );
}

/// Criterion 10: 32x32 deblurring, q = 6, sigma = 1.5, 1e-3 noise, the
/// Laplacian penalty. Restored relative error at lambda = 1e2 stays at
/// or below 0.2, and the minima across lambda in {1, 1e2, 1e4} agree
/// within a factor 2.
#[test]
fn deblur_accuracy() {
    let img = test_pattern(32);
    let x_true = img.to_vector();
    let spec = BlurSpec::new(32, 6, 1.5).unwrap();
    let noise = NoiseSpec::new(1e-3, 11);

    let mut mins = Vec::new();
    let mut rel_at_1e2 = None;
    for lambda in [1.0, 1e2, 1e4] {
        let (restored, trace) = deblur_atp(
            &img,
            &spec,
            &noise,
            RegOperatorKind::Laplacian2D,
            lambda,
            100,
        )
        .unwrap();
        let (_, min_abs) = trace.min_error().unwrap();
        mins.push(min_abs);
        if lambda == 1e2 {
            let rel = restored.to_vector().sub(&x_true).norm2() / x_true.norm2();
            rel_at_1e2 = Some(rel);
        }
    }
    let rel = rel_at_1e2.unwrap();
    assert!(rel <= 0.2, "restored relative error {rel}");
    let spread = mins.iter().cloned().fold(0.0f64, f64::max)
        / mins.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(spread <= 2.0, "lambda spread {spread}");
    pass(
        "deblur-accuracy",
        format!("rel {rel:.3}, lambda spread x{spread:.2}"),
    );
}

/// Criterion 11: on BAART(240) at lambda = 1e-5 every per-iteration flop
/// increment of the preconditioned GMRES baseline strictly exceeds the
/// reconstruction method's.
#[test]
fn cost_ordering() {
    let p = baart(240).unwrap();
    let asp = asp_solve(&p, &AspConfig::new(1e-5, 12)).unwrap();
    let pg = pgmres(&p.a, &p.b_exact, 1e-5, 12, Some(&p.x_exact)).unwrap();
    let asp_d: Vec<u64> = asp.entries.windows(2).map(|w| w[1].flops - w[0].flops).collect();
    let pg_d: Vec<u64> = pg.entries.windows(2).map(|w| w[1].flops - w[0].flops).collect();
    assert!(!asp_d.is_empty() && !pg_d.is_empty());
    for (i, (a, g)) in asp_d.iter().zip(&pg_d).enumerate() {
        assert!(g > a, "iteration {}: {g} <= {a}", i + 2);
        assert!(*a > 0 && *g > 0, "flops must strictly increase");
    }
    pass(
        "cost-ordering",
        format!("asp ~{}k, pgmres ~{}k per step", asp_d[0] / 1000, pg_d[0] / 1000),
    );
}

/// Companion check for the determinism criterion at the library level:
/// identical configuration and seed reproduce a trace bit for bit. The
/// end-to-end CSV byte-identity check lives in the command-line crate's
/// acceptance suite.
#[test]
fn trace_determinism() {
    let p = baart(240).unwrap();
    let noisy1 = add_noise(&p.b_exact, &NoiseSpec::new(1e-3, 42));
    let noisy2 = add_noise(&p.b_exact, &NoiseSpec::new(1e-3, 42));
    assert_eq!(noisy1, noisy2);
    let cfg = AtpConfig::new(1e10, RegOperatorKind::SecondDerivative1D, 15);
    let t1 = atp_solve(&p.a, &noisy1, Some(&p.x_exact), &cfg).unwrap();
    let t2 = atp_solve(&p.a, &noisy2, Some(&p.x_exact), &cfg).unwrap();
    assert_eq!(t1.to_csv(), t2.to_csv());
    pass("trace-determinism", format!("{} rows identical", t1.entries.len()));
}
