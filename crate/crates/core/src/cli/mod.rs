//! Batch command-line front end.
//!
//! Exit codes: 0 success (equality holds, checks pass), 1 analytic negative,
//! 2 input or usage error, 3 violated precondition. Standard output carries
//! only the payload or report; diagnostics go to standard error.

pub mod format;
mod fuzz;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::dense::{Matrix, Tolerances};
use crate::error::Error;
use crate::spectral::DEFAULT_GRID;
use crate::triangle::{
    abs_val, certify_proof_chain, extract_common_isometry, make_pair_spec,
    synthesize_equality_pair, triangle_defect,
};
use format::{read_matrix, save_matrix, write_matrix};
use report::{EffectiveConfig, RunReport};

pub use fuzz::FuzzMode;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed matrix file: {0}")]
    Parse(String),
    #[error(transparent)]
    Numeric(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "trieq",
    version,
    about = "Triangle equality |X+Y| = |X| + |Y|: detection, common partial isometry, certificates"
)]
struct Cli {
    /// Relative threshold for equality decisions
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Relative singular-value cutoff for rank decisions
    #[arg(long = "rank-tol", global = true, default_value_t = 1e-12)]
    rank_tol: f64,
    /// Number of directions for the numerical-range disk check
    #[arg(long, global = true, default_value_t = DEFAULT_GRID)]
    grid: usize,
    /// Suppress the report on standard output (payload files are still written)
    #[arg(long, global = true)]
    quiet: bool,
    /// Include wall-clock time in the report (makes reports non-reproducible)
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print |X| for the matrix in FILE
    Abs { input: PathBuf },
    /// Decide whether |X+Y| = |X| + |Y|
    Check { x: PathBuf, y: PathBuf },
    /// Extract the common partial isometry U with X = U|X|, Y = U|Y|
    Extract {
        x: PathBuf,
        y: PathBuf,
        /// Write U here instead of embedding it in the report
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the step-by-step certificate for an equality pair
    Certify { x: PathBuf, y: PathBuf },
    /// Run a seeded population of instances
    Fuzz {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FuzzMode::Equality)]
        mode: FuzzMode,
        /// Relative size of the perturbation in `perturbed` mode
        #[arg(long, default_value_t = 1e-6)]
        epsilon: f64,
    },
    /// Write a random pair satisfying the equality
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "out-x")]
        out_x: PathBuf,
        #[arg(long = "out-y")]
        out_y: PathBuf,
    },
}

impl ValueEnum for FuzzMode {
    fn value_variants<'a>() -> &'a [Self] {
        &[FuzzMode::Equality, FuzzMode::Counterexample, FuzzMode::Perturbed]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(self.name()))
    }
}

struct Context {
    tol: Tolerances,
    grid: usize,
    quiet: bool,
    timing: bool,
    echo: Vec<String>,
    started: Instant,
}

impl Context {
    fn report(&self) -> RunReport {
        RunReport::new(self.echo.clone(), EffectiveConfig::new(&self.tol, self.grid))
    }

    fn emit(&self, mut report: RunReport, out: &mut dyn Write) -> Result<(), CliError> {
        if self.quiet {
            return Ok(());
        }
        if self.timing {
            report.elapsed_ms = Some(self.started.elapsed().as_secs_f64() * 1e3);
        }
        write_out(out, &report.to_text())
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::Io {
        path: "<stdout>".into(),
        message: e.to_string(),
    })
}

fn verdict(pass: bool) -> String {
    if pass { "pass" } else { "fail" }.to_string()
}

fn read_square(path: &Path) -> Result<Matrix, CliError> {
    let m = read_matrix(path)?;
    if !m.is_square() {
        return Err(CliError::Usage(format!(
            "{}: expected a square matrix, got {}x{}",
            path.display(),
            m.rows(),
            m.cols()
        )));
    }
    Ok(m)
}

fn read_pair(x: &Path, y: &Path) -> Result<(Matrix, Matrix), CliError> {
    let (mx, my) = (read_square(x)?, read_square(y)?);
    if mx.shape() != my.shape() {
        return Err(CliError::Usage(format!(
            "shape mismatch: {} is {}x{}, {} is {}x{}",
            x.display(),
            mx.rows(),
            mx.cols(),
            y.display(),
            my.rows(),
            my.cols()
        )));
    }
    Ok((mx, my))
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_INPUT
                }
            };
        }
    };

    let tol = match Tolerances::new(cli.tol, cli.rank_tol, Tolerances::default().convergence_tol) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    if cli.grid < 8 {
        let _ = writeln!(err, "error: --grid must be at least 8, got {}", cli.grid);
        return EXIT_INPUT;
    }
    let ctx = Context {
        tol,
        grid: cli.grid,
        quiet: cli.quiet,
        timing: cli.timing,
        echo: args
            .iter()
            .skip(1)
            .map(|a| a.to_string_lossy().into_owned())
            .collect(),
        started: Instant::now(),
    };

    let result = match &cli.command {
        Command::Abs { input } => cmd_abs(&ctx, input, out),
        Command::Check { x, y } => cmd_check(&ctx, x, y, out),
        Command::Extract { x, y, out: dest } => cmd_extract(&ctx, x, y, dest.as_deref(), out),
        Command::Certify { x, y } => cmd_certify(&ctx, x, y, out, err),
        Command::Fuzz {
            n,
            trials,
            seed,
            mode,
            epsilon,
        } => fuzz::cmd_fuzz(&ctx, *n, *trials, *seed, *mode, *epsilon, out),
        Command::Gen {
            n,
            rank,
            seed,
            out_x,
            out_y,
        } => cmd_gen(&ctx, *n, *rank, *seed, out_x, out_y, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn cmd_abs(ctx: &Context, input: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let x = read_square(input)?;
    let a = abs_val(&x, &ctx.tol)?;
    write_out(out, &write_matrix(&a))?;
    Ok(EXIT_OK)
}

fn cmd_check(ctx: &Context, x: &Path, y: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let (mx, my) = read_pair(x, y)?;
    let r = triangle_defect(&mx, &my, &ctx.tol)?;
    let mut report = ctx.report();
    report
        .metric("defect", r.defect)
        .metric("scale", r.scale)
        .metric("threshold", r.threshold);
    report.step("triangle_equality", r.defect, r.threshold);
    report.verdict = verdict(r.holds);
    ctx.emit(report, out)?;
    Ok(if r.holds { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_extract(
    ctx: &Context,
    x: &Path,
    y: &Path,
    dest: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let (mx, my) = read_pair(x, y)?;
    let r = extract_common_isometry(&mx, &my, &ctx.tol)?;
    if let Some(path) = dest {
        save_matrix(path, &r.u)?;
    }
    let limit = 10.0 * ctx.tol.eq_tol;
    let mut report = ctx.report();
    report
        .metric("isometry_defect", r.isometry_defect)
        .metric("residual_x", r.residual_x)
        .metric("residual_y", r.residual_y)
        .metric("scale", r.scale);
    let ok_x = report.step("residual_x", r.residual_x, limit);
    let ok_y = report.step("residual_y", r.residual_y, limit);
    let ok = ok_x && ok_y;
    report.verdict = verdict(ok);
    if dest.is_none() {
        report.attach_matrix(&r.u);
    }
    ctx.emit(report, out)?;
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_certify(
    ctx: &Context,
    x: &Path,
    y: &Path,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let (mx, my) = read_pair(x, y)?;
    let mut report = ctx.report();
    match certify_proof_chain(&mx, &my, &ctx.tol, ctx.grid) {
        Ok(cert) => {
            report.metric("scale", cert.scale);
            report.steps = cert.steps.clone();
            let ok = cert.all_pass();
            report.verdict = verdict(ok);
            ctx.emit(report, out)?;
            Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Err(Error::EqualityPrecondition { defect, threshold }) => {
            let _ = writeln!(
                err,
                "precondition failed: triangle defect {defect:e} exceeds {threshold:e}"
            );
            report.metric("defect", defect).metric("threshold", threshold);
            report.verdict = "precondition".into();
            ctx.emit(report, out)?;
            Ok(EXIT_PRECONDITION)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_gen(
    ctx: &Context,
    n: usize,
    rank: usize,
    seed: u64,
    out_x: &Path,
    out_y: &Path,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if n == 0 || rank == 0 || rank > n {
        return Err(CliError::Usage(format!(
            "need 1 <= --rank <= --n, got n={n}, rank={rank}"
        )));
    }
    let spec = make_pair_spec(n, rank, seed, &ctx.tol)?;
    let (x, y) = synthesize_equality_pair(&spec, &ctx.tol)?;
    save_matrix(out_x, &x)?;
    save_matrix(out_y, &y)?;
    let r = triangle_defect(&x, &y, &ctx.tol)?;
    let mut report = ctx.report();
    report
        .metric("defect", r.defect)
        .metric("n", n)
        .metric("rank", rank)
        .metric("scale", r.scale)
        .metric("seed", seed);
    report.step("triangle_equality", r.defect, r.threshold);
    report.verdict = verdict(r.holds);
    ctx.emit(report, out)?;
    Ok(EXIT_OK)
}
