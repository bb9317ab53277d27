//! `teicp` command-line front end.
//!
//! Exit codes: 0 when a solution is found (or a certificate passes), 1 on
//! solver failure, 2 on malformed input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use teicp_core::solver::{certify, solve};
use teicp_core::{BOperator, NcpKind, Problem, SolveStatus, SolverConfig};

use crate::format::{BTag, FormatError, TensorData, TensorFile};
use crate::harness::{self, RngConfig, RunOptions};
use crate::report::{self, fmt17, sig17, sig17_vec, to_json, ConfigJson, SeedInfo, SolveJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "teicp", version, about = "Semismooth Newton solver for tensor eigenvalue complementarity problems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one problem from a single start.
    Solve(SolveArgs),
    /// Solve from many random starts and list the distinct solutions.
    Multistart(MultistartArgs),
    /// Write a random tensor file.
    Random(RandomArgs),
    /// Certify a candidate eigenpair `(λ, x)`.
    Check(CheckArgs),
    /// Run one of the numerical experiments.
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Debug, Clone, PartialEq)]
pub enum BChoice {
    Builtin(BTag),
    Tensor(PathBuf),
}

fn parse_b(s: &str) -> Result<BChoice, String> {
    if let Some(path) = s.strip_prefix("tensor:") {
        return Ok(BChoice::Tensor(PathBuf::from(path)));
    }
    BTag::parse(s)
        .map(BChoice::Builtin)
        .ok_or_else(|| format!("expected sphere-identity, diag-identity or tensor:PATH, found `{s}`"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NcpArg {
    /// Fischer–Burmeister.
    Fb,
    /// Penalized Fischer–Burmeister with weight `--tau`.
    Pfb,
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    /// Tensor file for `A`.
    #[arg(long, value_name = "PATH")]
    pub tensor: PathBuf,
    /// `B` operator; defaults to the file's `b` line, else sphere-identity
    /// for even order and diag-identity for odd order.
    #[arg(long, value_parser = parse_b, value_name = "sphere-identity|diag-identity|tensor:PATH")]
    pub b: Option<BChoice>,
    #[arg(long, value_enum, default_value_t = NcpArg::Pfb)]
    pub ncp: NcpArg,
    #[arg(long, default_value_t = SolverConfig::default().tau)]
    pub tau: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    #[arg(long, default_value_t = SolverConfig::default().eps)]
    pub eps: f64,
    #[arg(long, default_value_t = SolverConfig::default().rho)]
    pub rho: f64,
    #[arg(long, default_value_t = SolverConfig::default().p)]
    pub p: f64,
    #[arg(long, default_value_t = SolverConfig::default().beta)]
    pub beta: f64,
    #[arg(long, default_value_t = SolverConfig::default().max_iter)]
    pub max_iter: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    /// Record wall-clock times (reports are then no longer reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StartArg {
    /// `x⁰ = e/‖e‖`, `t⁰ = √(Ax⁰ᵐ/Bx⁰ᵐ)`.
    Canonical,
    /// Random start drawn from `--seed`.
    Random,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, value_enum, default_value_t = StartArg::Canonical)]
    pub start: StartArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct MultistartArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, default_value_t = 100)]
    pub starts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Solve starts in parallel; results are identical to the serial run.
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    /// Entries on `[−1, 1]`, symmetrized, `a_{1…1} = 0.5`.
    Symmetric,
    /// Entries on `(0, 1)`, not symmetrized.
    Nonneg,
}

#[derive(Debug, Clone, Args)]
pub struct RandomArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Symmetric)]
    pub kind: KindArg,
    #[arg(long)]
    pub order: usize,
    #[arg(long)]
    pub dim: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Record this `B` operator in the file header.
    #[arg(long, value_parser = parse_b)]
    pub b: Option<BChoice>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long)]
    pub lambda: f64,
    /// Comma-separated components of `x`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub x: Vec<f64>,
    #[arg(long, default_value_t = harness::CERTIFY_TOL)]
    pub tol: f64,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Experiment {
    /// Success rate of random symmetric instances per start budget.
    SuccessRate(SuccessRateArgs),
    /// Random nonnegative tensors from the canonical start.
    Nonneg(NonnegArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SuccessRateArgs {
    #[arg(long)]
    pub order: usize,
    #[arg(long)]
    pub dim: usize,
    #[arg(long, default_value_t = 10)]
    pub instances: usize,
    #[arg(long, value_delimiter = ',', default_value = "1,5,10")]
    pub budgets: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = SolverConfig::default().tau)]
    pub tau: f64,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Clone, Args)]
pub struct NonnegArgs {
    #[arg(long)]
    pub order: usize,
    #[arg(long)]
    pub dim: usize,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = SolverConfig::default().tau)]
    pub tau: f64,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Problem(#[from] teicp_core::Error),
    #[error("{0}")]
    Input(String),
    #[error("cannot write {path}: {message}")]
    Output { path: String, message: String },
}

impl SolverArgs {
    fn config(&self, tau: f64) -> Result<SolverConfig, CliError> {
        let cfg = SolverConfig {
            eps: self.eps,
            rho: self.rho,
            p: self.p,
            beta: self.beta,
            tau,
            max_iter: self.max_iter,
            ..SolverConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl ProblemArgs {
    /// `τ` as stored in the solver configuration: 1 for plain FB.
    fn tau(&self) -> Result<f64, CliError> {
        match self.ncp {
            NcpArg::Fb => Ok(1.0),
            NcpArg::Pfb if self.tau > 0.0 && self.tau < 1.0 => Ok(self.tau),
            NcpArg::Pfb => Err(CliError::Input(format!("--tau must lie in (0, 1), found {}", self.tau))),
        }
    }

    fn ncp(&self) -> Result<NcpKind, CliError> {
        Ok(match self.ncp {
            NcpArg::Fb => NcpKind::FischerBurmeister,
            NcpArg::Pfb => NcpKind::penalized(self.tau()?)?,
        })
    }

    fn load(&self) -> Result<Problem, CliError> {
        let file = TensorFile::read(&self.tensor)?;
        let (m, n) = (file.tensor.order(), file.tensor.dim());
        let b = match (self.b.clone(), file.b) {
            (Some(BChoice::Builtin(tag)), _) | (None, Some(tag)) => tag.build(m, n)?,
            (Some(BChoice::Tensor(path)), _) => BOperator::Tensor(TensorFile::read(&path)?.tensor.to_semi_symmetric()),
            (None, None) if m % 2 == 0 => BOperator::sphere_identity(m, n)?,
            (None, None) => BOperator::diag_identity(m, n)?,
        };
        Ok(Problem::new(file.tensor.to_semi_symmetric(), b, self.ncp()?)?)
    }
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let result = match out {
        Some(path) => std::fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    };
    result.map_err(|e| CliError::Output {
        path: out.map_or_else(|| "standard output".into(), |p| p.display().to_string()),
        message: e.to_string(),
    })
}

fn status_code(status: SolveStatus) -> i32 {
    if status == SolveStatus::Solution {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

fn cmd_solve(args: &SolveArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let p = args.problem.load()?;
    let cfg = args.solver.config(args.problem.tau()?)?;
    let rng = RngConfig::new(args.seed);
    let (z0, seed) = match args.start {
        StartArg::Canonical => (harness::canonical_start(&p), None),
        StartArg::Random => (
            harness::random_start(p.dim(), &mut rng.rng()),
            Some(SeedInfo {
                seed: rng.seed,
                generator: rng.generator,
            }),
        ),
    };
    let clock = args.output.timing.then(Instant::now);
    let r = solve(&p, &z0, &cfg)?;
    let elapsed = clock.map(|c| c.elapsed().as_secs_f64());
    let text = match args.output.format {
        FormatArg::Json => to_json(&SolveJson::new(&r, &cfg, seed, elapsed)),
        FormatArg::Csv => report::iteration_csv(&r),
    };
    emit(&text, args.output.out.as_deref(), stdout)?;
    Ok(status_code(r.status))
}

#[derive(Serialize)]
struct MultistartJson<'a> {
    order: usize,
    dim: usize,
    starts: usize,
    seed: u64,
    generator: &'static str,
    config: ConfigJson,
    #[serde(flatten)]
    report: &'a harness::MultistartReport,
}

fn multistart_csv(r: &harness::MultistartReport) -> String {
    let n = r.distinct_solutions.first().map_or(0, |s| s.x.len());
    let mut out = String::from("lambda");
    for i in 1..=n {
        out.push_str(&format!(",x{i}"));
    }
    out.push_str(",hit_count,mean_iterations,certified\n");
    for s in &r.distinct_solutions {
        let mut row = vec![fmt17(s.lambda)];
        row.extend(s.x.iter().map(|v| fmt17(*v)));
        row.push(s.hit_count.to_string());
        row.push(fmt17(s.mean_iterations));
        row.push(s.certified.to_string());
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn cmd_multistart(args: &MultistartArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    if args.starts == 0 {
        return Err(CliError::Input("--starts must be at least 1".into()));
    }
    let p = args.problem.load()?;
    let cfg = args.solver.config(args.problem.tau()?)?;
    let rng = RngConfig::new(args.seed);
    let opts = RunOptions {
        parallel: args.parallel,
        timing: args.output.timing,
    };
    let r = harness::multistart(&p, args.starts, &cfg, &mut rng.rng(), opts);
    let text = match args.output.format {
        FormatArg::Json => to_json(&MultistartJson {
            order: p.order(),
            dim: p.dim(),
            starts: args.starts,
            seed: rng.seed,
            generator: rng.generator,
            config: (&cfg).into(),
            report: &r,
        }),
        FormatArg::Csv => multistart_csv(&r),
    };
    emit(&text, args.output.out.as_deref(), stdout)?;
    Ok(if r.distinct_solutions.is_empty() { EXIT_FAILURE } else { EXIT_OK })
}

fn cmd_random(args: &RandomArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    if args.order < 2 || args.dim == 0 {
        return Err(CliError::Input("--order must be at least 2 and --dim positive".into()));
    }
    let b = match &args.b {
        None => None,
        Some(BChoice::Builtin(tag)) => Some(*tag),
        Some(BChoice::Tensor(_)) => {
            return Err(CliError::Input("a tensor file cannot reference another tensor file as B".into()))
        }
    };
    let mut rng = RngConfig::new(args.seed).rng();
    let tensor = match args.kind {
        KindArg::Symmetric => TensorData::Symmetric(harness::random_symmetric_instance(args.order, args.dim, &mut rng)),
        KindArg::Nonneg => TensorData::General(harness::random_nonneg_instance(args.order, args.dim, &mut rng)),
    };
    let text = crate::format::serialize_tensor(&TensorFile { tensor, b });
    emit(&text, args.out.as_deref(), stdout)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CheckJson {
    passed: bool,
    #[serde(serialize_with = "sig17")]
    lambda: f64,
    #[serde(serialize_with = "sig17_vec")]
    w: Vec<f64>,
    #[serde(serialize_with = "sig17")]
    min_x: f64,
    #[serde(serialize_with = "sig17")]
    min_w: f64,
    #[serde(serialize_with = "sig17")]
    complementarity: f64,
    #[serde(serialize_with = "sig17")]
    norm_deviation: f64,
    #[serde(serialize_with = "sig17")]
    tol: f64,
}

fn cmd_check(args: &CheckArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let p = args.problem.load()?;
    let c = certify(&p, args.lambda, &args.x, args.tol)?;
    let text = to_json(&CheckJson {
        passed: c.passed,
        lambda: c.lambda,
        w: c.w,
        min_x: c.min_x,
        min_w: c.min_w,
        complementarity: c.complementarity,
        norm_deviation: c.norm_deviation,
        tol: args.tol,
    });
    emit(&text, args.out.as_deref(), stdout)?;
    Ok(if c.passed { EXIT_OK } else { EXIT_FAILURE })
}

fn experiment_tau(tau: f64) -> Result<f64, CliError> {
    if tau > 0.0 && tau <= 1.0 {
        Ok(tau)
    } else {
        Err(CliError::Input(format!("--tau must lie in (0, 1], found {tau}")))
    }
}

fn check_shape(order: usize, dim: usize) -> Result<(), CliError> {
    if order < 2 || dim == 0 {
        return Err(CliError::Input("--order must be at least 2 and --dim positive".into()));
    }
    Ok(())
}

fn cmd_experiment(e: &Experiment, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match e {
        Experiment::SuccessRate(a) => {
            check_shape(a.order, a.dim)?;
            if a.budgets.is_empty() || a.budgets.contains(&0) || a.instances == 0 {
                return Err(CliError::Input("budgets and --instances must be positive".into()));
            }
            let cfg = a.solver.config(experiment_tau(a.tau)?)?;
            let opts = RunOptions {
                parallel: a.parallel,
                timing: false,
            };
            let mut rng = RngConfig::new(a.seed).rng();
            let row = harness::success_rate_experiment(a.order, a.dim, &a.budgets, a.instances, &cfg, &mut rng, opts);
            let text = match a.output.format {
                FormatArg::Json => to_json(&row),
                FormatArg::Csv => report::success_csv(std::slice::from_ref(&row)),
            };
            emit(&text, a.output.out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Experiment::Nonneg(a) => {
            check_shape(a.order, a.dim)?;
            if a.samples == 0 {
                return Err(CliError::Input("--samples must be positive".into()));
            }
            let cfg = a.solver.config(experiment_tau(a.tau)?)?;
            let opts = RunOptions {
                parallel: a.parallel,
                timing: a.output.timing,
            };
            let mut rng = RngConfig::new(a.seed).rng();
            let summary = harness::nonneg_experiment(a.order, a.dim, a.samples, &cfg, &mut rng, opts);
            let text = match a.output.format {
                FormatArg::Json => to_json(&summary),
                FormatArg::Csv => report::nonneg_csv(std::slice::from_ref(&summary)),
            };
            emit(&text, a.output.out.as_deref(), stdout)?;
            Ok(if summary.success_count == summary.samples.len() { EXIT_OK } else { EXIT_FAILURE })
        }
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a, stdout),
        Command::Multistart(a) => cmd_multistart(a, stdout),
        Command::Random(a) => cmd_random(a, stdout),
        Command::Check(a) => cmd_check(a, stdout),
        Command::Experiment(e) => cmd_experiment(e, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

