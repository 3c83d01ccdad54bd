//! Command-line front end. [`run`] parses arguments, executes one command
//! and returns the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use mecsr_core::reductions::{reduce, Params, ReductionKind};
use mecsr_core::scoring::build_tensor;
use mecsr_core::solvers::{Budgets, Strategy};
use mecsr_core::Model;

use crate::bench::{parse_grid, run_bench, BenchSpec, Family, Quota};
use crate::error::{CliError, EXIT_NO, EXIT_OK};
use crate::formats::{
    instance_to_json, parse, read_file, read_instance, read_text, solve_result_to_json,
    source_from_json, to_canonical, write_text, ProfileFile,
};
use crate::parallel::solve;
use crate::provenance::{read_sidecar, sha256_hex, sidecar_path, Provenance};
use crate::random::{self, InstanceShape};
use crate::verify::verify_instance;

#[derive(Debug, Parser)]
#[command(name = "mecsr", version, about = "Exact solvers and reduction checks for election control by rule selection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a random instance drawn from a seeded generator.
    Generate(GenerateArgs),
    /// Build an instance from a source problem and write its provenance sidecar.
    Reduce(ReduceArgs),
    /// Decide an instance. Exit 0 when feasible, 1 when not.
    Solve(SolveArgs),
    /// Compare the source oracle with the solver on a reduced instance.
    Verify(VerifyArgs),
    /// Sweep a parameter grid and emit one JSON row per cell.
    Bench(BenchArgs),
    /// Build an instance from a preference profile.
    Score(ScoreArgs),
}

#[derive(Debug, Args)]
struct SolverOpts {
    /// auto, brute, min_unanimous, min_subsets or subset_fpt
    #[arg(long, default_value = "auto", value_parser = parse_strategy)]
    strategy: Strategy,
    /// Largest ell^t brute force may enumerate.
    #[arg(long)]
    budget_assignments: Option<u64>,
    /// Largest voter count for the subset-based solvers.
    #[arg(long)]
    cap_n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl SolverOpts {
    fn budgets(&self) -> Result<Budgets, CliError> {
        let mut b = Budgets::default();
        if let Some(a) = self.budget_assignments {
            if a == 0 {
                return Err(CliError::usage("--budget-assignments must be positive"));
            }
            b.max_assignments = a;
        }
        if let Some(n) = self.cap_n {
            if n == 0 {
                return Err(CliError::usage("--cap-n must be positive"));
            }
            b.min_subsets_max_n = n;
            b.subset_fpt_max_n = n;
        }
        Ok(b)
    }

    fn threads(&self) -> Result<usize, CliError> {
        if self.threads == 0 {
            return Err(CliError::usage("--threads must be positive"));
        }
        Ok(self.threads)
    }
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|e: mecsr_core::Error| e.to_string())
}

fn parse_model(s: &str) -> Result<Model, String> {
    s.parse().map_err(|e: mecsr_core::Error| e.to_string())
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    ell: usize,
    #[arg(long, default_value = "sum", value_parser = parse_model)]
    model: Model,
    #[arg(long, default_value_t = 1)]
    d: u64,
    #[arg(long, default_value_t = 1)]
    alpha: usize,
    /// Smallest tensor value.
    #[arg(long, default_value_t = 0)]
    min: u64,
    /// Largest tensor value.
    #[arg(long, default_value_t = 3)]
    max: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    /// dominating-set, dominating-set-two-rules, set-packing, partition,
    /// 3sat or multicolor-clique
    #[arg(long)]
    reduction: String,
    #[arg(long)]
    source: PathBuf,
    #[arg(long)]
    k: Option<usize>,
    /// Build partition instances whose total is odd.
    #[arg(long)]
    force: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[command(flatten)]
    solver: SolverOpts,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Read the source from here instead of the path in the sidecar.
    #[arg(long)]
    source: Option<PathBuf>,
    /// Log disagreements of the two-rule dominating-set construction and
    /// exit 0.
    #[arg(long)]
    diagnostic: bool,
    #[command(flatten)]
    solver: SolverOpts,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Grid such as `1..4,8`; empty means no cells.
    #[arg(long, default_value = "1")]
    n: String,
    #[arg(long, default_value = "1")]
    t: String,
    #[arg(long, default_value = "2")]
    ell: String,
    #[arg(long, default_value = "sum", value_parser = parse_model)]
    model: Model,
    /// random, zero or min-worst
    #[arg(long, default_value = "random")]
    family: String,
    #[arg(long, default_value_t = 1)]
    d: u64,
    /// Integer, or `n` for all voters.
    #[arg(long, default_value = "n")]
    alpha: String,
    #[arg(long, default_value_t = 0)]
    min: u64,
    #[arg(long, default_value_t = 3)]
    max: u64,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    solver: SolverOpts,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ScoreArgs {
    #[arg(long)]
    profile: PathBuf,
    #[arg(long, default_value = "sum", value_parser = parse_model)]
    model: Model,
    #[arg(long, default_value_t = 1)]
    d: u64,
    #[arg(long, default_value_t = 1)]
    alpha: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Writes to `path`, or to `stdout` when no path is given.
fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => write_text(path, text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::usage(format!("cannot write to stdout: {e}"))),
    }
}

fn generate(a: &GenerateArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let shape = InstanceShape {
        n: a.n,
        t: a.t,
        ell: a.ell,
        model: a.model,
        d: a.d,
        alpha: a.alpha,
        lo: a.min,
        hi: a.max,
    };
    let inst = random::instance(&mut random::rng(a.seed), &shape)?;
    emit(a.out.as_deref(), &instance_to_json(&inst), stdout)?;
    Ok(EXIT_OK)
}

fn reduce_cmd(a: &ReduceArgs) -> Result<i32, CliError> {
    let kind: ReductionKind = a.reduction.parse()?;
    let bytes = read_file(&a.source)?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|e| CliError::parse(format!("{}: not UTF-8: {e}", a.source.display())))?;
    let source = source_from_json(kind, &text, &a.source.display().to_string())?;
    let params = Params {
        k: a.k,
        force: a.force,
    };
    let inst = reduce(kind, &source, params)?;
    write_text(&a.out, &instance_to_json(&inst))?;
    let sidecar = Provenance::new(kind, &a.source, &bytes, params);
    write_text(&sidecar_path(&a.out), &sidecar.to_json())?;
    Ok(EXIT_OK)
}

fn solve_cmd(a: &SolveArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let inst = read_instance(&a.instance)?;
    let result = solve(&inst, a.solver.strategy, &a.solver.budgets()?, a.solver.threads()?)?;
    emit(a.out.as_deref(), &solve_result_to_json(&result), stdout)?;
    Ok(if result.feasible { EXIT_OK } else { EXIT_NO })
}

fn verify_cmd(a: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let prov = read_sidecar(&a.instance)?;
    let kind = prov.kind()?;
    if a.diagnostic && kind != ReductionKind::DominatingSetTwoRules {
        return Err(CliError::usage(format!(
            "--diagnostic applies to dominating-set-two-rules only, not {kind}"
        )));
    }
    let source_path = a.source.clone().unwrap_or_else(|| PathBuf::from(&prov.source));
    let bytes = read_file(&source_path)?;
    let digest = sha256_hex(&bytes);
    if digest != prov.source_sha256 {
        return Err(CliError::usage(format!(
            "{} has sha256 {digest}, provenance records {}",
            source_path.display(),
            prov.source_sha256
        )));
    }
    let text = read_text(&source_path)?;
    let source = source_from_json(kind, &text, &source_path.display().to_string())?;
    let inst = read_instance(&a.instance)?;
    if reduce(kind, &source, prov.params())? != inst {
        return Err(CliError::usage(format!(
            "{} differs from the instance its provenance regenerates",
            a.instance.display()
        )));
    }
    let mut report = verify_instance(
        kind,
        &source,
        prov.params(),
        &inst,
        a.solver.strategy,
        &a.solver.budgets()?,
        a.solver.threads()?,
    )?;
    let mut code = if report.agree { EXIT_OK } else { EXIT_NO };
    if !report.agree && a.diagnostic {
        report.details.diagnostic = true;
        let _ = write!(stderr, "mecsr: discrepancy recorded: {}", to_canonical(&report));
        code = EXIT_OK;
    }
    emit(a.out.as_deref(), &to_canonical(&report), stdout)?;
    Ok(code)
}

fn bench_cmd(a: &BenchArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let spec = BenchSpec {
        ns: parse_grid(&a.n)?,
        ts: parse_grid(&a.t)?,
        ells: parse_grid(&a.ell)?,
        model: a.model,
        family: a.family.parse::<Family>()?,
        strategy: a.solver.strategy,
        d: a.d,
        alpha: a.alpha.parse::<Quota>()?,
        lo: a.min,
        hi: a.max,
        repeats: a.repeats.max(1),
        seed: a.seed,
        budgets: a.solver.budgets()?,
        threads: a.solver.threads()?,
    };
    let text: String = run_bench(&spec).iter().map(to_canonical).collect();
    emit(a.out.as_deref(), &text, stdout)?;
    Ok(EXIT_OK)
}

fn score_cmd(a: &ScoreArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let text = read_text(&a.profile)?;
    let (profile, rules) = parse::<ProfileFile>(&text, &a.profile.display().to_string())?.split();
    let inst = build_tensor(&profile, &rules)?.into_instance(a.model, a.d, a.alpha)?;
    emit(a.out.as_deref(), &instance_to_json(&inst), stdout)?;
    Ok(EXIT_OK)
}

/// Runs one command; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Generate(a) => generate(a, stdout),
        Command::Reduce(a) => reduce_cmd(a),
        Command::Solve(a) => solve_cmd(a, stdout),
        Command::Verify(a) => verify_cmd(a, stdout, stderr),
        Command::Bench(a) => bench_cmd(a, stdout),
        Command::Score(a) => score_cmd(a, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "mecsr: {e}");
            e.code
        }
    }
}
