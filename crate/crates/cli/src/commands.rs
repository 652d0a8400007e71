use crate::opts::Cli;
use illposed::analysis::filter_factors;
use illposed::imaging::{deblur_atp, read_pgm, test_pattern, write_pgm, BlurSpec, GrayImage};
use illposed::krylov::MatOperator;
use illposed::la::cond2_estimate;
use illposed::problems::{
    add_noise, generate, write_matrix_text, write_vector_text, NoiseSpec, RegOperatorKind, GALLERY,
};
use illposed::solvers::{asp_solve, atp_solve, gmres, pgmres, AspConfig, AtpConfig, SolverTrace};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Fixed-order configuration comment carried by every CSV artifact.
fn config_header(cmd: &str, fields: &[(&str, String)]) -> String {
    let mut line = format!("# cmd={cmd}");
    for (k, v) in fields {
        let _ = write!(line, " {k}={v}");
    }
    let _ = write!(line, " version={VERSION}");
    line.push('\n');
    line
}

fn ensure_out_dir(dir: &Path) -> Result<(), String> {
    fs::create_dir_all(dir).map_err(|e| format!("cannot create output directory {dir:?}: {e}"))
}

fn write_text(path: &Path, content: &str) -> Result<(), String> {
    fs::write(path, content).map_err(|e| format!("cannot write {path:?}: {e}"))
}

fn fmt_lambda(lambda: f64) -> String {
    format!("{lambda:e}")
}

fn summary_line(method: &str, lambda: Option<f64>, trace: &SolverTrace) -> String {
    let (argmin, min_err) = trace
        .min_error()
        .map(|(m, e)| (m.to_string(), e.to_string()))
        .unwrap_or_default();
    let lam = lambda.map(fmt_lambda).unwrap_or_default();
    let final_res = trace.final_residual().map(|r| r.to_string()).unwrap_or_default();
    format!("{method},{lam},{min_err},{argmin},{final_res}\n")
}

/// `asp-sweep`: one trace CSV per shift plus a GMRES baseline and a
/// summary table of (method, lambda, min error, argmin m, final residual).
pub fn run_asp_sweep(cli: &Cli) -> Result<(), String> {
    let name = cli.require_problem()?;
    let n = cli.require_size()?;
    let out = cli.require_out()?.clone();
    ensure_out_dir(&out)?;
    let m_max = cli.m_max.unwrap_or(30);
    let lambdas = if cli.lambdas.is_empty() {
        vec![1e-3, 1e-5, 1e-7, 1e-9]
    } else {
        cli.lambdas.clone()
    };

    let problem = generate(name, n).map_err(|e| e.to_string())?;
    let mut summary = String::from("method,lambda,min_error,argmin_m,final_residual\n");

    for &lambda in &lambdas {
        let trace = asp_solve(&problem, &AspConfig::new(lambda, m_max)).map_err(|e| e.to_string())?;
        let header = config_header(
            "asp-sweep",
            &[
                ("problem", name.to_string()),
                ("size", n.to_string()),
                ("lambda", fmt_lambda(lambda)),
                ("m_max", m_max.to_string()),
            ],
        );
        let fname = format!("asp_{name}{n}_lambda{}.csv", fmt_lambda(lambda));
        write_text(&out.join(fname), &(header + &trace.to_csv()))?;
        summary.push_str(&summary_line("asp", Some(lambda), &trace));
    }

    let op = MatOperator::new(&problem.a);
    let baseline = gmres(&op, &problem.b_exact, m_max, Some(&problem.x_exact));
    let header = config_header(
        "asp-sweep",
        &[
            ("problem", name.to_string()),
            ("size", n.to_string()),
            ("baseline", "gmres".to_string()),
            ("m_max", m_max.to_string()),
        ],
    );
    write_text(
        &out.join(format!("gmres_{name}{n}.csv")),
        &(header + &baseline.to_csv()),
    )?;
    summary.push_str(&summary_line("gmres", None, &baseline));

    let sum_header = config_header(
        "asp-sweep",
        &[
            ("problem", name.to_string()),
            ("size", n.to_string()),
            ("m_max", m_max.to_string()),
        ],
    );
    write_text(&out.join(format!("summary_{name}{n}.csv")), &(sum_header + &summary))
}

/// `atp`: noisy-data runs, one trace per shift, GMRES baseline on the
/// same noisy data, summary table. The noise seed rides in the header.
pub fn run_atp(cli: &Cli) -> Result<(), String> {
    let name = cli.require_problem()?;
    let n = cli.require_size()?;
    let out = cli.require_out()?.clone();
    ensure_out_dir(&out)?;
    let m_max = cli.m_max.unwrap_or(30);
    let delta = cli.delta.unwrap_or(1e-3);
    if delta == 0.0 {
        eprintln!("warning: atp with --delta 0; this protocol targets noisy data");
    }
    let reg = parse_reg(cli.reg.as_deref().unwrap_or("d2"))?;
    let lambdas = if cli.lambdas.is_empty() {
        vec![1.0, 1e10]
    } else {
        cli.lambdas.clone()
    };

    let problem = generate(name, n).map_err(|e| e.to_string())?;
    let noise = NoiseSpec::new(delta, cli.seed);
    let noisy = add_noise(&problem.b_exact, &noise);

    let fields = |lambda: Option<f64>| -> Vec<(&'static str, String)> {
        let mut f = vec![
            ("problem", name.to_string()),
            ("size", n.to_string()),
            ("delta", format!("{delta:e}")),
            ("seed", cli.seed.to_string()),
            ("reg", reg.cli_name().to_string()),
            ("m_max", m_max.to_string()),
        ];
        if let Some(l) = lambda {
            f.insert(2, ("lambda", fmt_lambda(l)));
        }
        f
    };

    let mut summary = String::from("method,lambda,min_error,argmin_m,final_residual\n");
    for &lambda in &lambdas {
        let cfg = AtpConfig::new(lambda, reg, m_max);
        let trace =
            atp_solve(&problem.a, &noisy, Some(&problem.x_exact), &cfg).map_err(|e| e.to_string())?;
        let header = config_header("atp", &fields(Some(lambda)));
        let fname = format!("atp_{name}{n}_lambda{}.csv", fmt_lambda(lambda));
        write_text(&out.join(fname), &(header + &trace.to_csv()))?;
        summary.push_str(&summary_line("atp", Some(lambda), &trace));
    }

    let op = MatOperator::new(&problem.a);
    let baseline = gmres(&op, &noisy, m_max, Some(&problem.x_exact));
    let header = config_header("atp", &fields(None));
    write_text(
        &out.join(format!("gmres_{name}{n}_noisy.csv")),
        &(header + &baseline.to_csv()),
    )?;
    summary.push_str(&summary_line("gmres", None, &baseline));

    let sum_header = config_header("atp", &fields(None));
    write_text(&out.join(format!("summary_{name}{n}.csv")), &(sum_header + &summary))
}

/// `cost`: the same run expressed against cumulative flops, for the
/// reconstruction method and the preconditioned GMRES baseline.
pub fn run_cost(cli: &Cli) -> Result<(), String> {
    let name = cli.require_problem()?;
    let n = cli.require_size()?;
    let out = cli.require_out()?.clone();
    ensure_out_dir(&out)?;
    let m_max = cli.m_max.unwrap_or(30);
    let lambda = cli.lambdas.first().copied().unwrap_or(1e-5);

    let problem = generate(name, n).map_err(|e| e.to_string())?;
    let asp = asp_solve(&problem, &AspConfig::new(lambda, m_max)).map_err(|e| e.to_string())?;
    let pg = pgmres(&problem.a, &problem.b_exact, lambda, m_max, Some(&problem.x_exact))
        .map_err(|e| e.to_string())?;

    let fields = vec![
        ("problem", name.to_string()),
        ("size", n.to_string()),
        ("lambda", fmt_lambda(lambda)),
        ("m_max", m_max.to_string()),
    ];
    for (tag, trace) in [("asp", &asp), ("pgmres", &pg)] {
        let mut csv = String::from("flops,m,rel_error,residual\n");
        for e in &trace.entries {
            let err = e.error.map(|v| v.to_string()).unwrap_or_default();
            let _ = writeln!(csv, "{},{},{},{}", e.flops, e.m, err, e.residual);
        }
        let header = config_header("cost", &fields);
        write_text(&out.join(format!("cost_{tag}_{name}{n}.csv")), &(header + &csv))?;
    }
    Ok(())
}

/// `lambda-accuracy`: best attainable error over the iteration as a
/// function of the shift, per gallery problem. Noisy when --delta is set.
pub fn run_lambda_accuracy(cli: &Cli) -> Result<(), String> {
    let n = cli.size.unwrap_or(160);
    let out = cli.require_out()?.clone();
    ensure_out_dir(&out)?;
    let m_max = cli.m_max.unwrap_or(30);
    let delta = cli.delta.unwrap_or(0.0);
    let lambdas = if cli.lambdas.is_empty() {
        (-12..=0).map(|e| 10f64.powi(e)).collect()
    } else {
        cli.lambdas.clone()
    };

    let problems: Vec<&str> = match cli.problem.as_deref() {
        Some(name) => vec![name],
        None => GALLERY.to_vec(),
    };

    for name in problems {
        let problem = generate(name, n).map_err(|e| e.to_string())?;
        let kappa = cond2_estimate(&problem.a);
        let noisy = if delta > 0.0 {
            add_noise(&problem.b_exact, &NoiseSpec::new(delta, cli.seed))
        } else {
            problem.b_exact.clone()
        };

        let mut csv = String::from("lambda,min_error,argmin_m\n");
        for &lambda in &lambdas {
            let trace = if delta > 0.0 {
                let cfg = AtpConfig::new(lambda, RegOperatorKind::SecondDerivative1D, m_max);
                atp_solve(&problem.a, &noisy, Some(&problem.x_exact), &cfg)
                    .map_err(|e| e.to_string())?
            } else {
                asp_solve(&problem, &AspConfig::new(lambda, m_max)).map_err(|e| e.to_string())?
            };
            if let Some((argmin, min_err)) = trace.min_error() {
                let _ = writeln!(csv, "{},{},{}", fmt_lambda(lambda), min_err, argmin);
            }
        }
        let header = config_header(
            "lambda-accuracy",
            &[
                ("problem", name.to_string()),
                ("size", n.to_string()),
                ("delta", format!("{delta:e}")),
                ("seed", cli.seed.to_string()),
                ("m_max", m_max.to_string()),
                ("kappa_estimate", format!("{kappa:e}")),
            ],
        );
        write_text(&out.join(format!("lambda_accuracy_{name}{n}.csv")), &(header + &csv))?;
    }
    Ok(())
}

/// `filters`: Tikhonov and corrected filter factors.
pub fn run_filters(cli: &Cli) -> Result<(), String> {
    let name = cli.require_problem()?;
    let n = cli.require_size()?;
    let out = cli.require_out()?.clone();
    ensure_out_dir(&out)?;
    let m_list = if cli.m_list.is_empty() {
        vec![4, 6, 8, 10]
    } else {
        cli.m_list.clone()
    };

    let problem = generate(name, n).map_err(|e| e.to_string())?;
    let lambda = match cli.lambdas.first() {
        Some(&l) => l,
        None => 1.0 / cond2_estimate(&problem.a).sqrt(),
    };
    let report =
        filter_factors(&problem.a, &problem.b_exact, lambda, &m_list).map_err(|e| e.to_string())?;

    let header = config_header(
        "filters",
        &[
            ("problem", name.to_string()),
            ("size", n.to_string()),
            ("lambda", fmt_lambda(lambda)),
            ("m_list", m_list.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("+")),
        ],
    );
    write_text(&out.join(format!("filters_{name}{n}.csv")), &(header + &report.to_csv()))
}

/// `deblur`: blur + noise + restore, PGM triple per cell plus an
/// accuracy table over the shift grid and the requested 2-D operators.
pub fn run_deblur(cli: &Cli) -> Result<(), String> {
    let out = cli.require_out()?.clone();
    ensure_out_dir(&out)?;
    let n = cli.size.unwrap_or(32);
    let m_max = cli.m_max.unwrap_or(100);
    let delta = cli.delta.unwrap_or(1e-3);
    let lambdas = if cli.lambdas.is_empty() {
        vec![1.0, 1e2, 1e4, 1e6]
    } else {
        cli.lambdas.clone()
    };
    let regs: Vec<RegOperatorKind> = match cli.reg.as_deref() {
        Some(s) => vec![parse_reg(s)?],
        None => vec![RegOperatorKind::GradientStack2D, RegOperatorKind::Laplacian2D],
    };

    let img = match &cli.input {
        Some(path) => {
            let loaded = read_pgm(path).map_err(|e| e.to_string())?;
            if loaded.side() != n {
                return Err(format!(
                    "input image is {}x{}, but --size is {n}",
                    loaded.side(),
                    loaded.side()
                ));
            }
            loaded
        }
        None => test_pattern(n),
    };
    let spec = BlurSpec::new(n, cli.q, cli.sigma).map_err(|e| e.to_string())?;
    let noise = NoiseSpec::new(delta, cli.seed);
    let x_true = img.to_vector();

    // Original and blurred-noisy references.
    write_pgm(&img, &out.join("original.pgm")).map_err(|e| e.to_string())?;
    {
        let a = illposed::imaging::blur_matrix(&spec).map_err(|e| e.to_string())?;
        let blurred = add_noise(&a.matvec(&x_true), &noise);
        let img_b = GrayImage::from_vector_clamped(n, &blurred);
        write_pgm(&img_b, &out.join("blurred_noisy.pgm")).map_err(|e| e.to_string())?;
    }

    let mut csv = String::from("reg,lambda,min_error,argmin_m,final_error,restored_rel_error\n");
    for &reg in &regs {
        for &lambda in &lambdas {
            let (restored, trace) =
                deblur_atp(&img, &spec, &noise, reg, lambda, m_max).map_err(|e| e.to_string())?;
            let fname = format!("restored_{}_lambda{}.pgm", reg.cli_name(), fmt_lambda(lambda));
            write_pgm(&restored, &out.join(fname)).map_err(|e| e.to_string())?;

            let (argmin, min_err) = trace.min_error().unwrap_or((0, f64::NAN));
            let final_err = trace
                .entries
                .last()
                .and_then(|e| e.error)
                .unwrap_or(f64::NAN);
            let rel = restored.to_vector().sub(&x_true).norm2() / x_true.norm2();
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{}",
                reg.cli_name(),
                fmt_lambda(lambda),
                min_err,
                argmin,
                final_err,
                rel
            );
        }
    }
    let header = config_header(
        "deblur",
        &[
            ("size", n.to_string()),
            ("q", cli.q.to_string()),
            ("sigma", cli.sigma.to_string()),
            ("delta", format!("{delta:e}")),
            ("seed", cli.seed.to_string()),
            ("m_max", m_max.to_string()),
        ],
    );
    write_text(&out.join("deblur_accuracy.csv"), &(header + &csv))
}

/// `gallery`: plain-text export of (A, b_exact, x_exact).
pub fn run_gallery(cli: &Cli) -> Result<(), String> {
    let name = cli.require_problem()?;
    let n = cli.require_size()?;
    let out = cli.require_out()?.clone();
    ensure_out_dir(&out)?;
    let problem = generate(name, n).map_err(|e| e.to_string())?;

    let write_with = |path: PathBuf, f: &dyn Fn(&mut Vec<u8>) -> std::io::Result<()>| {
        let mut buf = Vec::new();
        f(&mut buf).map_err(|e| format!("serialize failed: {e}"))?;
        fs::write(&path, buf).map_err(|e| format!("cannot write {path:?}: {e}"))
    };
    write_with(out.join(format!("{name}{n}_A.txt")), &|w| {
        write_matrix_text(&problem.a, w)
    })?;
    write_with(out.join(format!("{name}{n}_b.txt")), &|w| {
        write_vector_text(&problem.b_exact, w)
    })?;
    write_with(out.join(format!("{name}{n}_x.txt")), &|w| {
        write_vector_text(&problem.x_exact, w)
    })
}

fn parse_reg(s: &str) -> Result<RegOperatorKind, String> {
    RegOperatorKind::parse(s)
        .ok_or_else(|| format!("unknown --reg '{s}' (expected identity|d2|grad2d|lap2d)"))
}
