//! `disruptplan` command-line tool: ground PDDL, compile disruption-aware
//! tasks, solve them optimally, check plans and run the benchmark.

pub mod bench;
pub mod commands;
pub mod error;
mod svg;

use std::ffi::OsString;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use disruptplan::compile::{Mode, Omega};
use disruptplan::corpus::{bundled, load_dir, seed_from_env};
use disruptplan::pddl::GroundOptions;
use disruptplan::search::{Heuristic, SearchLimits};

use crate::bench::{run_bench, BenchConfig};
use crate::commands::*;
pub use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "disruptplan", version, about = "Cost-optimal planning that also minimises plan disruption")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ground a PDDL domain and problem into task JSON.
    Ground(GroundArgs),
    /// Compile a task into its lazy or eager disruption-aware form.
    Compile(CompileArgs),
    /// Solve a task (plain or compiled JSON) optimally with A*.
    Solve(SolveArgs),
    /// Validate a plan file and report its cost and disruption.
    Evaluate(EvaluateArgs),
    /// Run every corpus task through all approaches and weights.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GroundArgs {
    pub domain: PathBuf,
    pub problem: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Keep static predicates as fluents.
    #[arg(long)]
    pub no_prune: bool,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_actions: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Lazy,
    Eager,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Lazy => Mode::Lazy,
            ModeArg::Eager => Mode::Eager,
        }
    }
}

#[derive(Debug, Args)]
pub struct CompileArgs {
    pub task: PathBuf,
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    /// Disruption weight as `p/q` or a decimal.
    #[arg(long, default_value = "1")]
    pub omega: Omega,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write domain.pddl and problem.pddl into this directory.
    #[arg(long)]
    pub emit_pddl: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct LimitArgs {
    #[arg(long, default_value = "hmax")]
    pub heuristic: Heuristic,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_expansions: u64,
    /// Seconds; 0 disables the time limit.
    #[arg(long, default_value_t = 30.0)]
    pub time_limit: f64,
}

impl LimitArgs {
    pub fn limits(&self) -> SearchLimits {
        SearchLimits {
            max_expansions: self.max_expansions,
            time_limit: (self.time_limit > 0.0).then(|| Duration::from_secs_f64(self.time_limit)),
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub task: PathBuf,
    #[command(flatten)]
    pub limits: LimitArgs,
    /// Plan file destination; stdout when absent.
    #[arg(long)]
    pub plan_out: Option<PathBuf>,
    /// Stats JSON destination; stderr when absent.
    #[arg(long)]
    pub stats_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// The original task JSON.
    pub task: PathBuf,
    pub plan: PathBuf,
    /// Compiled task JSON the plan belongs to.
    #[arg(long)]
    pub compiled: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Corpus directory; the bundled corpus when absent.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    #[arg(long, default_value = "bench-out")]
    pub out_dir: PathBuf,
    /// Comma-separated disruption weights.
    #[arg(long, value_delimiter = ',', default_values = ["1/1000", "1", "1000"])]
    pub omega: Vec<Omega>,
    #[command(flatten)]
    pub limits: LimitArgs,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    #[arg(long, default_value_t = 200_000)]
    pub oracle_budget: usize,
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_file(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            let tail = if text.ends_with('\n') { "" } else { "\n" };
            match write!(out, "{text}{tail}").and_then(|()| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::io("<stdout>", e)),
                _ => Ok(()),
            }
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Ground(a) => {
            let options = GroundOptions { prune_static: !a.no_prune, max_actions: a.max_actions };
            let json = ground_text(&read_file(&a.domain)?, &read_file(&a.problem)?, options)?;
            emit(a.out.as_ref(), &json)
        }
        Command::Compile(a) => {
            let c = compile_task(&read_file(&a.task)?, a.mode.into(), a.omega)?;
            if let Some(dir) = &a.emit_pddl {
                let scale = emit_to_dir(&c, dir)?;
                eprintln!("wrote {} with cost scale {scale}", dir.display());
            }
            emit(a.out.as_ref(), &compiled_json(&c))
        }
        Command::Solve(a) => {
            let solved = solve_text(&read_file(&a.task)?, a.limits.heuristic, a.limits.limits())?;
            let stats = serde_json::to_string_pretty(&solved.stats)?;
            emit(a.plan_out.as_ref(), &solved.plan_text)?;
            match &a.stats_out {
                Some(p) => write_file(p, &stats),
                None => {
                    eprintln!("{stats}");
                    Ok(())
                }
            }
        }
        Command::Evaluate(a) => {
            let compiled = a.compiled.as_ref().map(|p| read_file(p)).transpose()?;
            let report = evaluate_text(&read_file(&a.task)?, &read_file(&a.plan)?, compiled.as_deref())?;
            emit(a.out.as_ref(), &serde_json::to_string_pretty(&report)?)
        }
        Command::Bench(a) => {
            let corpus = match &a.corpus {
                Some(dir) => load_dir(dir).map_err(|e| CliError::io(dir, e))?,
                None => bundled(seed_from_env()),
            };
            if corpus.is_empty() {
                return Err(CliError::Usage("corpus is empty".into()));
            }
            let mut config = BenchConfig::new(corpus);
            config.omegas = a.omega;
            config.heuristic = a.limits.heuristic;
            config.limits = a.limits.limits();
            config.jobs = a.jobs;
            config.repeats = a.repeats;
            config.oracle_budget = a.oracle_budget;
            let report = run_bench(&config)?;
            report.write_to(&a.out_dir)?;
            let solved = report.rows.iter().filter(|r| r.solved()).count();
            eprintln!("{solved}/{} rows solved; results in {}", report.rows.len(), a.out_dir.display());
            Ok(())
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
