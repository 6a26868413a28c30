//! Command-line front end. The binary only calls [`run`].
//!
//! Exit codes: 0 success, 2 parse or validation error, 3 trivial instance
//! (still prints `{"robcov":"0"}`), 4 instance too large for the oracle,
//! 5 a broken invariant chain.

use crate::error::Error;
use crate::fixtures::{self, GeneratorSpec, RandomGraphSpec};
use crate::format::{instance_to_json, parse_instance};
use crate::instance::{ProblemInstance, ProblemKind};
use crate::model::{evaluate_thrifty, Solution, SolveOptions};
use crate::oracle::{exhaustive_robcov, minimax_opt, SizeLimits};
use crate::rational::{format_rational, parse_rational, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_TRIVIAL: i32 = 3;
pub const EXIT_TOO_LARGE: i32 = 4;
pub const EXIT_INVARIANT: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "thrifty",
    version,
    about = "Thrifty multistage robust covering solvers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated instance (or a batch, one per line) to stdout.
    Generate(GenerateArgs),
    /// Solve an instance and print the plan report.
    Solve(SolveArgs),
    /// Solve, then evaluate the plan in closed form and exhaustively.
    Evaluate(OracleArgs),
    /// Exact optimal worst case of a tiny instance.
    Oracle(OracleArgs),
    /// Compare the solver with the exact optimum.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    Lowerbound,
    SubsetBad,
    Setcover,
    Mincut,
    Steinertree,
    Steinerforest,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub kind: Generator,
    #[arg(long = "T", default_value_t = 2)]
    pub horizon: usize,
    /// Growth rate for the lower-bound family.
    #[arg(long, default_value = "2/5")]
    pub epsilon: String,
    /// Base of the subset-uncertainty family.
    #[arg(long, default_value_t = 4)]
    pub lambda: u64,
    /// Elements (set cover) or vertices (graphs).
    #[arg(long, default_value_t = 5)]
    pub size: usize,
    /// Sets (set cover) or edges (graphs).
    #[arg(long, default_value_t = 6)]
    pub actions: usize,
    #[arg(long, default_value_t = 2)]
    pub pairs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Emit this many tiny oracle-sized instances instead, one per line.
    #[arg(long)]
    pub batch: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preprocess {
    #[value(name = "appendix-a")]
    AppendixA,
    None,
}

#[derive(Debug, Args)]
pub struct SolverFlags {
    #[arg(long)]
    pub beta_override: Option<String>,
    /// Use a single guess of the optimum instead of the doubling grid.
    #[arg(long)]
    pub guess: Option<String>,
    #[arg(long, value_enum, default_value = "none")]
    pub preprocess: Preprocess,
    /// Merge days whose inflations are within this factor.
    #[arg(long)]
    pub merge_r: Option<String>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub path: PathBuf,
    #[command(flatten)]
    pub flags: SolverFlags,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub path: PathBuf,
    #[command(flatten)]
    pub flags: SolverFlags,
    /// Oracle size limits as `units,actions,days`.
    #[arg(long)]
    pub limits: Option<String>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Instance file; omit with `--batch`.
    pub path: Option<PathBuf>,
    #[command(flatten)]
    pub flags: SolverFlags,
    #[arg(long)]
    pub limits: Option<String>,
    /// Compare this many seeded tiny instances of `--problem`.
    #[arg(long)]
    pub batch: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "setcover")]
    pub problem: String,
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TooLarge(_) => EXIT_TOO_LARGE,
            Error::TrivialInstance => EXIT_TRIVIAL,
            Error::Infeasible => EXIT_INVARIANT,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: String) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message,
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub robcov: String,
    pub day0_cost: String,
    pub jstar: usize,
    pub tau: String,
    pub guess: String,
    pub net: Vec<usize>,
    pub day0_purchase: Vec<usize>,
    pub conservative: bool,
    pub witness: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_guess: Option<usize>,
}

impl SolveReport {
    pub fn new(solution: &Solution) -> Self {
        let (plan, report) = (&solution.plan, &solution.report);
        Self {
            robcov: format_rational(&report.robcov),
            day0_cost: format_rational(&report.day0_cost),
            jstar: plan.critical_day,
            tau: format_rational(&plan.tau),
            guess: format_rational(&plan.guess),
            net: plan.net.clone(),
            day0_purchase: plan.day0_purchase.clone(),
            conservative: report.conservative,
            witness: report.witness.clone(),
            f_guess: plan.f_guess,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Bounds {
    pub lb: String,
    pub ub: String,
}

#[derive(Debug, Serialize)]
pub struct CompareReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub opt: String,
    pub algo: String,
    pub ratio: String,
    pub exhaustive_algo: String,
    pub bounds: Bounds,
}

fn rational_flag(name: &str, text: &Option<String>) -> CliResult<Option<Rational>> {
    text.as_ref()
        .map(|t| parse_rational(t).map_err(|e| invalid(format!("--{name}: {e}"))))
        .transpose()
}

pub fn solve_options(flags: &SolverFlags) -> CliResult<SolveOptions> {
    Ok(SolveOptions {
        beta_override: rational_flag("beta-override", &flags.beta_override)?,
        guess: rational_flag("guess", &flags.guess)?,
        merge_r: rational_flag("merge-r", &flags.merge_r)?,
        preprocess: flags.preprocess == Preprocess::AppendixA,
    })
}

pub fn parse_limits(text: &Option<String>) -> CliResult<SizeLimits> {
    let Some(text) = text else {
        return Ok(SizeLimits::default());
    };
    let parts: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| invalid(format!("--limits: expected units,actions,days, got {text:?}")))?;
    match parts[..] {
        [max_units, max_actions, max_horizon] => Ok(SizeLimits {
            max_units,
            max_actions,
            max_horizon,
        }),
        _ => Err(invalid(format!("--limits: expected three numbers, got {text:?}"))),
    }
}

fn load(path: &PathBuf) -> CliResult<ProblemInstance> {
    let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

/// Nothing has to be bought whatever the adversary does.
fn is_trivial(instance: &ProblemInstance) -> bool {
    let needed = match instance.problem.kind() {
        ProblemKind::SteinerTree => 2,
        _ => 1,
    };
    instance.schedule.final_k() < needed || instance.ground_units().is_empty()
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

/// Runs a parsed command, writing documents to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    let mut emit = |line: String| -> CliResult<()> {
        writeln!(out, "{line}").map_err(|e| invalid(format!("stdout: {e}")))
    };
    match &cli.command {
        Command::Generate(args) => {
            for instance in generate(args)? {
                emit(if args.batch.is_some() {
                    serde_json::to_string(&crate::format::InstanceFile::from_instance(&instance))
                        .expect("documents serialize")
                } else {
                    instance_to_json(&instance)
                })?;
            }
            Ok(EXIT_OK)
        }
        Command::Solve(args) => {
            let instance = load(&args.path)?;
            let options = solve_options(&args.flags)?;
            if is_trivial(&instance) {
                emit(r#"{"robcov":"0"}"#.into())?;
                eprintln!("trivial instance: the final requirement is empty");
                return Ok(EXIT_TRIVIAL);
            }
            let solution = instance.solve(&options)?;
            emit(json(&SolveReport::new(&solution)))?;
            Ok(EXIT_OK)
        }
        Command::Evaluate(args) => {
            let instance = load(&args.path)?;
            let options = solve_options(&args.flags)?;
            let limits = parse_limits(&args.limits)?;
            if is_trivial(&instance) {
                emit(r#"{"robcov":"0"}"#.into())?;
                return Ok(EXIT_TRIVIAL);
            }
            let solution = instance.solve(&options)?;
            let ground = instance.ground_units();
            let closed = evaluate_thrifty(&solution.plan, &instance.schedule, &ground)?;
            let exact = exhaustive_robcov(&instance, &solution.plan, &limits)?;
            if exact > closed.robcov || (!closed.conservative && exact != closed.robcov) {
                return Err(Failure {
                    code: EXIT_INVARIANT,
                    message: format!(
                        "closed form {} disagrees with exhaustive {}",
                        format_rational(&closed.robcov),
                        format_rational(&exact)
                    ),
                });
            }
            emit(format!(
                r#"{{"robcov":"{}","exhaustive":"{}","conservative":{}}}"#,
                format_rational(&closed.robcov),
                format_rational(&exact),
                closed.conservative
            ))?;
            Ok(EXIT_OK)
        }
        Command::Oracle(args) => {
            let instance = load(&args.path)?;
            let limits = parse_limits(&args.limits)?;
            let result = minimax_opt(&instance, &limits)?;
            let days: Vec<usize> = result.trace.purchase_days().into_iter().collect();
            emit(format!(
                r#"{{"opt":"{}","purchase_days":{},"trace_nodes":{}}}"#,
                format_rational(&result.value),
                json(&days),
                result.trace.node_count()
            ))?;
            Ok(EXIT_OK)
        }
        Command::Compare(args) => {
            let options = solve_options(&args.flags)?;
            let limits = parse_limits(&args.limits)?;
            let instances = match (&args.path, args.batch) {
                (Some(path), None) => vec![load(path)?],
                (None, Some(n)) => {
                    let kind: ProblemKind = args.problem.parse()?;
                    fixtures::tiny_batch(kind, n, args.seed)?
                }
                _ => return Err(invalid("compare takes either a path or --batch".into())),
            };
            let batch = args.batch.is_some();
            for (i, instance) in instances.iter().enumerate() {
                let mut report = compare(instance, &options, &limits)?;
                if batch {
                    report.index = Some(i);
                }
                emit(json(&report))?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn generate(args: &GenerateArgs) -> CliResult<Vec<ProblemInstance>> {
    let graph_kind = match args.kind {
        Generator::Setcover => Some(ProblemKind::SetCover),
        Generator::Mincut => Some(ProblemKind::MinCut),
        Generator::Steinertree => Some(ProblemKind::SteinerTree),
        Generator::Steinerforest => Some(ProblemKind::SteinerForest),
        _ => None,
    };
    if let Some(n) = args.batch {
        let kind = graph_kind.ok_or_else(|| invalid("--batch needs a random instance kind".into()))?;
        return Ok(fixtures::tiny_batch(kind, n, args.seed)?);
    }
    let spec = match args.kind {
        Generator::Lowerbound => GeneratorSpec::LowerBoundAllStages {
            horizon: args.horizon,
            epsilon: parse_rational(&args.epsilon).map_err(|e| invalid(format!("--epsilon: {e}")))?,
        },
        Generator::SubsetBad => GeneratorSpec::SubsetKRobustBad {
            horizon: args.horizon,
            lambda: args.lambda,
        },
        Generator::Setcover => GeneratorSpec::RandomSetCover {
            elements: args.size,
            sets: args.actions,
            horizon: args.horizon,
            seed: args.seed,
        },
        _ => GeneratorSpec::RandomGraph(RandomGraphSpec {
            problem: graph_kind.expect("graph generator"),
            vertices: args.size,
            edges: args.actions,
            pairs: args.pairs,
            horizon: args.horizon,
            seed: args.seed,
        }),
    };
    Ok(vec![spec.generate()?])
}

/// Solver against oracle, with the chain `lb <= opt <= exhaustive <= algo`
/// checked.
pub fn compare(
    instance: &ProblemInstance,
    options: &SolveOptions,
    limits: &SizeLimits,
) -> CliResult<CompareReport> {
    let opt = minimax_opt(instance, limits)?.value;
    let solution = instance.solve(options)?;
    let algo = solution.report.robcov.clone();
    let exhaustive = exhaustive_robcov(instance, &solution.plan, limits)?;
    let (lb, ub) = match instance.opt_bounds() {
        Ok(b) => b,
        Err(Error::TrivialInstance) => (Rational::zero(), Rational::zero()),
        Err(e) => return Err(e.into()),
    };
    let chain = [&lb, &opt, &exhaustive, &algo];
    if chain.windows(2).any(|w| w[0] > w[1]) || opt > ub {
        return Err(Failure {
            code: EXIT_INVARIANT,
            message: format!(
                "invariant chain broken: lb {} opt {} exhaustive {} algo {} ub {}",
                format_rational(&lb),
                format_rational(&opt),
                format_rational(&exhaustive),
                format_rational(&algo),
                format_rational(&ub)
            ),
        });
    }
    let ratio = if opt.is_zero() {
        "n/a".to_string()
    } else {
        format_rational(&(&algo / &opt))
    };
    Ok(CompareReport {
        index: None,
        opt: format_rational(&opt),
        algo: format_rational(&algo),
        ratio,
        exhaustive_algo: format_rational(&exhaustive),
        bounds: Bounds {
            lb: format_rational(&lb),
            ub: format_rational(&ub),
        },
    })
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(code) => code,
        Err(failure) => {
            if failure.code == EXIT_TRIVIAL {
                let _ = writeln!(out, r#"{{"robcov":"0"}}"#);
            }
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}
