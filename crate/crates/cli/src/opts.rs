use std::path::PathBuf;

/// Parsed command line. Every experiment validates the fields it needs
/// against module preconditions before any compute starts.
#[derive(Debug, Clone)]
pub struct Cli {
    pub command: String,
    pub problem: Option<String>,
    pub size: Option<usize>,
    pub lambdas: Vec<f64>,
    pub delta: Option<f64>,
    pub seed: u64,
    pub m_max: Option<usize>,
    pub reg: Option<String>,
    pub out: Option<PathBuf>,
    /// Step counts for the filter report (repeatable `--m`).
    pub m_list: Vec<usize>,
    pub q: usize,
    pub sigma: f64,
    pub input: Option<PathBuf>,
}

pub const USAGE: &str = "\
usage: illposed <command> [flags]

commands:
  asp-sweep        noise-free shift sweep with a GMRES baseline
  atp              noisy-data runs with the Tikhonov preconditioner
  cost             flop-indexed cost comparison against PGMRES
  lambda-accuracy  best attainable error as a function of the shift
  filters          Tikhonov and corrected filter factors
  deblur           image deblurring demonstration (PGM in/out)
  gallery          export a test problem as plain-text matrices

flags:
  --problem NAME   baart | shaw | foxgood | gravity
  --size N         problem dimension
  --lambda X       regularization parameter (repeatable)
  --delta X        relative noise level
  --seed N         noise seed (default 0)
  --m-max N        iteration cap
  --reg KIND       identity | d2 | grad2d | lap2d
  --out DIR        output directory (created if missing)
  --m N            filter report step count (repeatable, filters only)
  --q N            blur half-bandwidth (deblur only, default 6)
  --sigma X        blur width in pixels (deblur only, default 1.5)
  --input PATH     input PGM image (deblur only, default: built-in pattern)
";

pub fn parse(args: &[String]) -> Result<Cli, String> {
    let mut it = args.iter();
    let command = it
        .next()
        .ok_or_else(|| "missing command".to_string())?
        .clone();

    let mut cli = Cli {
        command,
        problem: None,
        size: None,
        lambdas: Vec::new(),
        delta: None,
        seed: 0,
        m_max: None,
        reg: None,
        out: None,
        m_list: Vec::new(),
        q: 6,
        sigma: 1.5,
        input: None,
    };

    while let Some(flag) = it.next() {
        let mut value = || -> Result<&String, String> {
            it.next().ok_or_else(|| format!("flag {flag} needs a value"))
        };
        match flag.as_str() {
            "--problem" => cli.problem = Some(value()?.clone()),
            "--size" => cli.size = Some(parse_num(value()?, "--size")?),
            "--lambda" => cli.lambdas.push(parse_float(value()?, "--lambda")?),
            "--delta" => cli.delta = Some(parse_float(value()?, "--delta")?),
            "--seed" => cli.seed = parse_num(value()?, "--seed")? as u64,
            "--m-max" => cli.m_max = Some(parse_num(value()?, "--m-max")?),
            "--reg" => cli.reg = Some(value()?.clone()),
            "--out" => cli.out = Some(PathBuf::from(value()?)),
            "--m" => cli.m_list.push(parse_num(value()?, "--m")?),
            "--q" => cli.q = parse_num(value()?, "--q")?,
            "--sigma" => cli.sigma = parse_float(value()?, "--sigma")?,
            "--input" => cli.input = Some(PathBuf::from(value()?)),
            other => return Err(format!("unknown flag {other}")),
        }
    }
    Ok(cli)
}

fn parse_num(s: &str, what: &str) -> Result<usize, String> {
    s.parse().map_err(|_| format!("{what}: bad integer '{s}'"))
}

fn parse_float(s: &str, what: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("{what}: bad number '{s}'"))?;
    if !v.is_finite() {
        return Err(format!("{what}: value must be finite"));
    }
    Ok(v)
}

impl Cli {
    pub fn require_problem(&self) -> Result<&str, String> {
        self.problem
            .as_deref()
            .ok_or_else(|| "missing --problem".to_string())
    }

    pub fn require_size(&self) -> Result<usize, String> {
        self.size.ok_or_else(|| "missing --size".to_string())
    }

    pub fn require_out(&self) -> Result<&PathBuf, String> {
        self.out.as_ref().ok_or_else(|| "missing --out".to_string())
    }
}
