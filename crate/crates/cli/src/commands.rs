//! Subcommands of the `psxform` binary.

use std::fmt;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use psxform::closedform::{
    frft_kernel, frft_kernel_continued, frft_kernel_damped_hermite, frft_kernel_hermite, params_of_alpha,
};
use psxform::io::{load_field, save_field};
use psxform::quantum::OperatorKernel;
use psxform::{transform, Axis, Direction, Path, PhaseGrid};

use crate::config::{parse_tolerance, ConfigError, Overrides, RunConfig};
use crate::report::VerificationReport;
use crate::suites::{run_suite, SUITES};

/// Exit status for a run whose checks did not all pass.
pub const EXIT_VERIFY_FAILED: u8 = 1;
/// Exit status for configuration, parse and I/O errors.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug)]
pub struct CliError(anyhow::Error);

impl CliError {
    pub fn exit_code(&self) -> u8 {
        EXIT_USAGE
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if f.alternate() {
            write!(f, "{:#}", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl<E: Into<anyhow::Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.into())
    }
}

#[derive(Debug, Parser)]
#[command(name = "psxform", version, about = "Phase-space transform: evaluation and verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one verification suite, or `all`, and write a JSON report.
    Verify(VerifyArgs),
    /// Transform a field stored as CSV (columns p,q,re,im).
    Transform(TransformArgs),
    /// Tabulate the fractional Fourier kernel K_α(q1,q2) as CSV.
    Kernel(KernelArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name or `all`.
    pub suite: String,
    /// TOML configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Angle for the chirplet suite; repeatable.
    #[arg(long = "alpha")]
    pub alphas: Vec<f64>,
    /// Damping for the chirplet ε-ladder; repeatable.
    #[arg(long = "epsilon")]
    pub epsilons: Vec<f64>,
    /// Tolerance override `KEY=VALUE`; repeatable.
    #[arg(long = "tol", value_parser = parse_tolerance)]
    pub tolerances: Vec<(String, f64)>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Report directory (default `reports/`).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DirectionArg {
    Forward,
    Inverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathArg {
    Direct,
    Fast,
    Both,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "forward")]
    pub direction: DirectionArg,
    #[arg(long, value_enum, default_value = "fast")]
    pub path: PathArg,
    /// Output grid `min,max,n;min,max,n` (default: the input grid).
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelMethod {
    Closed,
    Hermite,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Sample grid `min,max,n;min,max,n` for (q1, q2).
    #[arg(long, allow_hyphen_values = true)]
    pub grid: String,
    #[arg(long, value_enum, default_value = "closed")]
    pub method: KernelMethod,
    /// Terms of the Hermite sum.
    #[arg(long, default_value_t = 100)]
    pub terms: usize,
    /// Evaluate the Hermite sum at α − iδ, where it converges geometrically.
    #[arg(long, default_value_t = 0.0)]
    pub damping: f64,
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `min,max,n;min,max,n`.
pub fn parse_grid(s: &str) -> anyhow::Result<PhaseGrid> {
    let axes: Vec<&str> = s.split(';').collect();
    if axes.len() != 2 {
        anyhow::bail!("grid `{s}`: expected `min,max,n;min,max,n`");
    }
    let axis = |part: &str| -> anyhow::Result<Axis> {
        let f: Vec<&str> = part.split(',').map(str::trim).collect();
        if f.len() != 3 {
            anyhow::bail!("grid axis `{part}`: expected `min,max,n`");
        }
        let min: f64 = f[0].parse().map_err(|e| anyhow::anyhow!("grid min `{}`: {e}", f[0]))?;
        let max: f64 = f[1].parse().map_err(|e| anyhow::anyhow!("grid max `{}`: {e}", f[1]))?;
        let n: usize = f[2].parse().map_err(|e| anyhow::anyhow!("grid n `{}`: {e}", f[2]))?;
        Ok(Axis::new(min, max, n)?)
    };
    Ok(PhaseGrid::new(axis(axes[0])?, axis(axes[1])?))
}

/// Runs a parsed command line; `Ok` carries the exit status.
pub fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Verify(a) => verify(a),
        Command::Transform(a) => run_transform(a),
        Command::Kernel(a) => kernel(a),
    }
}

fn verify(a: VerifyArgs) -> Result<u8, CliError> {
    let overrides =
        Overrides { alphas: a.alphas, epsilons: a.epsilons, out_dir: a.out, tolerances: a.tolerances, seed: a.seed };
    let cfg = RunConfig::resolve(a.config.as_deref(), &overrides).map_err(|e: ConfigError| anyhow::anyhow!(e))?;
    let names: Vec<&str> = if a.suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&a.suite.as_str()) {
        vec![a.suite.as_str()]
    } else {
        return Err(
            anyhow::anyhow!("unknown suite `{}`; expected `all` or one of {}", a.suite, SUITES.join(", ")).into()
        );
    };
    let mut reports = Vec::new();
    for name in names {
        log::info!("running suite {name}");
        reports.extend(run_suite(name, &cfg));
    }
    let report = VerificationReport::new(&a.suite, reports, &cfg);
    print!("{}", report.summary());
    let dir = cfg.out_dir.clone().unwrap_or_else(|| PathBuf::from("reports"));
    let path = report.write_to(&dir).map_err(|e| anyhow::anyhow!("writing report to {}: {e}", dir.display()))?;
    println!("report: {}", path.display());
    Ok(if report.overall_pass { 0 } else { EXIT_VERIFY_FAILED })
}

fn run_transform(a: TransformArgs) -> Result<u8, CliError> {
    let field = load_field(&a.input).map_err(|e| anyhow::anyhow!("{}: {e}", a.input.display()))?;
    let out = match &a.grid {
        Some(s) => parse_grid(s)?,
        None => *field.grid(),
    };
    let direction = match a.direction {
        DirectionArg::Forward => Direction::Forward,
        DirectionArg::Inverse => Direction::Inverse,
    };
    let timed = |path: Path| -> anyhow::Result<_> {
        let start = Instant::now();
        let r = transform(&field, &out, direction, path)?;
        Ok((r, start.elapsed()))
    };
    let result = match a.path {
        PathArg::Direct => {
            let (r, t) = timed(Path::Direct)?;
            println!("direct: {:.3} ms", t.as_secs_f64() * 1e3);
            r
        }
        PathArg::Fast => {
            let (r, t) = timed(Path::Fast)?;
            println!("fast: {:.3} ms", t.as_secs_f64() * 1e3);
            r
        }
        PathArg::Both => {
            let (d, td) = timed(Path::Direct)?;
            let (f, tf) = timed(Path::Fast)?;
            println!("direct: {:.3} ms", td.as_secs_f64() * 1e3);
            println!("fast: {:.3} ms", tf.as_secs_f64() * 1e3);
            println!("max |direct - fast|: {:.3e}", d.max_abs_diff(&f)?);
            f
        }
    };
    save_field(&a.out, &result)?;
    Ok(0)
}

fn kernel(a: KernelArgs) -> Result<u8, CliError> {
    if !a.alpha.is_finite() {
        return Err(anyhow::anyhow!("alpha must be finite").into());
    }
    if !(a.damping >= 0.0) || !a.damping.is_finite() {
        return Err(anyhow::anyhow!("damping must be >= 0, got {}", a.damping).into());
    }
    if a.method == KernelMethod::Hermite && a.terms == 0 {
        return Err(anyhow::anyhow!("terms must be at least 1").into());
    }
    // Rejects angles too close to a multiple of π.
    params_of_alpha(a.alpha)?;
    let grid = parse_grid(&a.grid)?;
    let closed_at = |x: f64, y: f64| -> psxform::Result<Complex64> {
        if a.damping > 0.0 {
            frft_kernel_continued(Complex64::new(a.alpha, -a.damping), x, y)
        } else {
            frft_kernel(a.alpha, x, y)
        }
    };
    let mut values = Vec::with_capacity(grid.len());
    let mut deviation = 0.0f64;
    for idx in 0..grid.len() {
        let (x, y) = grid.point(idx);
        let v = match a.method {
            KernelMethod::Closed => closed_at(x, y)?,
            KernelMethod::Hermite => {
                let v = if a.damping > 0.0 {
                    frft_kernel_damped_hermite(a.alpha, a.damping, x, y, a.terms)?
                } else {
                    frft_kernel_hermite(a.alpha, x, y, a.terms)?
                };
                let d = (v - closed_at(x, y)?).norm();
                deviation = if d.is_nan() || deviation.is_nan() { f64::NAN } else { deviation.max(d) };
                v
            }
        };
        values.push(v);
    }
    let k = OperatorKernel::new(grid.p, grid.q, values)?;
    k.save(&a.out)?;
    if a.method == KernelMethod::Hermite {
        println!("max |hermite - closed|: {deviation:.3e} ({} terms, damping {})", a.terms, a.damping);
    }
    println!("wrote {} samples to {}", grid.len(), a.out.display());
    Ok(0)
}
