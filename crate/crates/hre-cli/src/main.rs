//! `hre` command-line tool: rank concepts from a judgment matrix, check
//! consistency, run reproducible feasibility simulations, and diagnose
//! ranking optimality.
//!
//! Exit codes: 0 on success, 1 on input or usage errors, 2 when the
//! arithmetic method produces an infeasible (nonpositive) ranking, which is a
//! limitation of that method rather than bad input. Reports are UTF-8 JSON on
//! standard output; a short human summary goes to standard error when that is
//! a terminal.

mod io;
mod report;

use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use hre::{
    optimality_report, solve_arithmetic, solve_geometric, validate, ArithmeticOutcome,
    ExperimentConfig, HreProblem, KRule, PcMatrix, PriorityVector, Solution,
};
use report::{
    emit_json, input_digest, round_all, round_consistency, round_optimality, round_sig,
    simulate_csv, CheckReport, DiagnoseReport, RankReport, SimulateReport,
};

#[derive(Parser)]
#[command(
    name = "hre",
    version,
    about = "Ranking from pairwise comparisons with known reference priorities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive priorities from a judgment matrix
    Rank(RankArgs),
    /// Report reciprocity, consistency, and the inconsistency index
    Check(CheckArgs),
    /// Monte Carlo feasibility comparison of the two reference-set methods
    Simulate(SimulateArgs),
    /// Optimality diagnostics for a computed or provided ranking
    Diagnose(DiagnoseArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Geometric mean against the reference set (always feasible)
    HreGeom,
    /// Arithmetic mean against the reference set (may be infeasible)
    HreArith,
    /// Principal eigenvector of the full matrix
    Ev,
    /// Geometric mean of rows of the full matrix
    Gm,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::HreGeom => "hre-geom",
            Method::HreArith => "hre-arith",
            Method::Ev => "ev",
            Method::Gm => "gm",
        }
    }

    fn needs_reference(self) -> bool {
        matches!(self, Method::HreGeom | Method::HreArith)
    }
}

#[derive(Args)]
struct RankArgs {
    /// Matrix CSV: n rows of n positive numbers; `#` comments; fractions allowed
    matrix: PathBuf,
    /// Known priorities JSON, e.g. {"2": 5, "3": 7} (1-based concept indices)
    #[arg(long)]
    known: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Method::HreGeom)]
    method: Method,
    /// Logarithm base for the intermediate geometric system
    #[arg(long, default_value_t = 10.0)]
    base: f64,
    /// Report normalized (sum-to-one) priorities instead of natural units
    #[arg(long)]
    normalize: bool,
    /// Significant digits in the report
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
    precision: u8,
}

#[derive(Args)]
struct CheckArgs {
    matrix: PathBuf,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
    precision: u8,
}

#[derive(Args)]
struct SimulateArgs {
    /// Smallest matrix size (inclusive)
    #[arg(long)]
    n_min: usize,
    /// Largest matrix size (inclusive)
    #[arg(long)]
    n_max: usize,
    /// Trials per (n, sigma) cell
    #[arg(long)]
    trials: u32,
    /// Comma-separated noise levels, e.g. 0.5,1,2
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    sigma: Vec<f64>,
    #[arg(long)]
    seed: u64,
    /// Fix the number of unknown concepts per trial (default: random in 1..n)
    #[arg(long)]
    unknowns: Option<usize>,
    /// Judgment cap: entries are clamped to [1/bound, bound]
    #[arg(long, default_value_t = 9.0)]
    scale_bound: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Run trials on one thread (results are identical either way)
    #[arg(long)]
    serial: bool,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
    precision: u8,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct DiagnoseArgs {
    matrix: PathBuf,
    #[arg(long)]
    known: Option<PathBuf>,
    /// JSON array with one positive value per concept; replaces solving
    #[arg(long, conflicts_with = "method")]
    solution: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Method::HreGeom)]
    method: Method,
    #[arg(long, default_value_t = 10.0)]
    base: f64,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
    precision: u8,
}

/// Failure that should reach the user as `error: ...` with the given code.
struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: 1,
        }
    }

    fn infeasible(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: 2,
        }
    }
}

impl From<io::InputError> for Failure {
    fn from(e: io::InputError) -> Self {
        Failure::input(e.0)
    }
}

impl From<hre::Error> for Failure {
    fn from(e: hre::Error) -> Self {
        Failure::input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let outcome = match cli.command {
        Command::Rank(args) => cmd_rank(&args),
        Command::Check(args) => cmd_check(&args),
        Command::Simulate(args) => cmd_simulate(&args),
        Command::Diagnose(args) => cmd_diagnose(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn summarize(line: &str) {
    if std::io::stderr().is_terminal() {
        eprintln!("{line}");
    }
}

fn build_problem(
    matrix: &PcMatrix,
    known: &Option<PathBuf>,
    method: Method,
) -> Result<Option<HreProblem>, Failure> {
    match (method.needs_reference(), known) {
        (true, Some(path)) => {
            let reference = io::load_known(path)?;
            Ok(Some(HreProblem::new(matrix.clone(), reference)?))
        }
        (true, None) => Err(Failure::input(format!(
            "method {} requires --known with at least one reference priority",
            method.name()
        ))),
        (false, Some(_)) => Err(Failure::input(format!(
            "method {} ranks the full matrix and does not take --known",
            method.name()
        ))),
        (false, None) => Ok(None),
    }
}

/// Optimality diagnostics apply only to reciprocal matrices and strictly
/// positive rankings; anything else yields `None`.
fn try_optimality(
    priorities: &PriorityVector,
    matrix: &PcMatrix,
    focus: Option<&[usize]>,
    precision: u8,
) -> Option<hre::OptimalityReport> {
    if !validate(matrix).reciprocal {
        return None;
    }
    optimality_report(priorities, matrix, focus)
        .ok()
        .map(|r| round_optimality(&r, precision))
}

fn cmd_rank(args: &RankArgs) -> Result<u8, Failure> {
    let matrix = io::load_matrix(&args.matrix)?;
    let problem = build_problem(&matrix, &args.known, args.method)?;
    let digest = input_digest(&matrix, problem.as_ref().map(|p| p.reference()));
    let consistency = round_consistency(&validate(&matrix), args.precision);

    let solved: Result<Solution, (Vec<f64>, Vec<hre::Warning>)> = match args.method {
        Method::HreGeom => Ok(solve_geometric(problem.as_ref().unwrap(), args.base)?),
        Method::HreArith => match solve_arithmetic(problem.as_ref().unwrap())? {
            ArithmeticOutcome::Feasible(s) => Ok(s),
            ArithmeticOutcome::Infeasible { raw, warnings } => Err((raw, warnings)),
        },
        Method::Ev => Ok(hre::ev_method(&matrix)?),
        Method::Gm => Ok(hre::gm_method(&matrix)?),
    };

    let focus_owned = problem.as_ref().map(|p| p.unknown_indices());
    let report = match &solved {
        Ok(solution) => {
            let priorities = if args.normalize {
                solution.priorities.normalized()
            } else {
                solution.priorities.values()
            };
            RankReport {
                method: args.method.name().to_string(),
                n: matrix.n(),
                feasible: true,
                priorities: round_all(priorities, args.precision),
                normalized: Some(round_all(solution.priorities.normalized(), args.precision)),
                ranking: Some(solution.priorities.ranking()),
                warnings: solution.warnings.iter().map(|w| w.to_string()).collect(),
                consistency,
                optimality: try_optimality(
                    &solution.priorities,
                    &matrix,
                    focus_owned.as_deref(),
                    args.precision,
                ),
                input_digest: digest,
            }
        }
        Err((raw, warnings)) => RankReport {
            method: args.method.name().to_string(),
            n: matrix.n(),
            feasible: false,
            priorities: round_all(raw, args.precision),
            normalized: None,
            ranking: None,
            warnings: warnings.iter().map(|w| w.to_string()).collect(),
            consistency,
            optimality: None,
            input_digest: digest,
        },
    };

    print!("{}", emit_json(&report));
    match &solved {
        Ok(solution) => {
            let order = solution
                .priorities
                .ranking()
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(" > ");
            summarize(&format!("{}: ranking {order}", args.method.name()));
            Ok(0)
        }
        Err(_) => {
            summarize(&format!(
                "{}: infeasible (nonpositive solved values); see report",
                args.method.name()
            ));
            Ok(2)
        }
    }
}

fn cmd_check(args: &CheckArgs) -> Result<u8, Failure> {
    let matrix = io::load_matrix(&args.matrix)?;
    let report = CheckReport {
        n: matrix.n(),
        consistency: round_consistency(&validate(&matrix), args.precision),
        input_digest: input_digest(&matrix, None),
    };
    print!("{}", emit_json(&report));
    summarize(&format!(
        "n={} reciprocal={} consistent={}",
        report.n, report.consistency.reciprocal, report.consistency.consistent
    ));
    Ok(0)
}

fn cmd_simulate(args: &SimulateArgs) -> Result<u8, Failure> {
    let config = ExperimentConfig {
        n_range: (args.n_min, args.n_max),
        k_rule: match args.unknowns {
            Some(k) => KRule::Fixed(k),
            None => KRule::Random,
        },
        trials: args.trials,
        sigmas: args.sigma.clone(),
        scale_bound: args.scale_bound,
        seed: args.seed,
    };
    let mut result = if args.serial {
        hre::run_experiment_serial(&config)?
    } else {
        hre::run_experiment(&config)?
    };
    for cell in &mut result.cells {
        cell.geometric_feasible_rate = round_sig(cell.geometric_feasible_rate, args.precision);
        cell.arithmetic_feasible_rate = round_sig(cell.arithmetic_feasible_rate, args.precision);
        cell.mean_koczkodaj = round_sig(cell.mean_koczkodaj, args.precision);
    }
    let out = match args.format {
        Format::Json => emit_json(&SimulateReport {
            config,
            cells: result.cells,
        }),
        Format::Csv => simulate_csv(&result.cells),
    };
    print!("{out}");
    Ok(0)
}

fn cmd_diagnose(args: &DiagnoseArgs) -> Result<u8, Failure> {
    let matrix = io::load_matrix(&args.matrix)?;
    if !validate(&matrix).reciprocal {
        return Err(Failure::input(
            "optimality diagnostics require a reciprocal matrix \
             (the gradient simplification assumes m[i][j] = 1/m[j][i]); \
             run `hre check` for the violation list"
                .to_string(),
        ));
    }

    let (method, priorities, warnings, problem) = match &args.solution {
        Some(path) => {
            let values = io::load_solution(path)?;
            if values.len() != matrix.n() {
                return Err(Failure::input(format!(
                    "solution has {} values but the matrix has {} concepts",
                    values.len(),
                    matrix.n()
                )));
            }
            let priorities = PriorityVector::new(values).map_err(Failure::from)?;
            let problem = match &args.known {
                Some(known_path) => {
                    let reference = io::load_known(known_path)?;
                    Some(HreProblem::new(matrix.clone(), reference)?)
                }
                None => None,
            };
            (None, priorities, Vec::new(), problem)
        }
        None => {
            let problem = build_problem(&matrix, &args.known, args.method)?;
            let solution = match args.method {
                Method::HreGeom => solve_geometric(problem.as_ref().unwrap(), args.base)?,
                Method::HreArith => match solve_arithmetic(problem.as_ref().unwrap())? {
                    ArithmeticOutcome::Feasible(s) => s,
                    ArithmeticOutcome::Infeasible { .. } => {
                        return Err(Failure::infeasible(
                            "arithmetic method is infeasible on this input; \
                             rerun with --method hre-geom"
                                .to_string(),
                        ));
                    }
                },
                Method::Ev => hre::ev_method(&matrix)?,
                Method::Gm => hre::gm_method(&matrix)?,
            };
            (
                Some(args.method.name().to_string()),
                solution.priorities,
                solution.warnings,
                problem,
            )
        }
    };

    let focus_owned = problem.as_ref().map(|p| p.unknown_indices());
    let optimality = optimality_report(&priorities, &matrix, focus_owned.as_deref())
        .map_err(Failure::from)?;
    let report = DiagnoseReport {
        method,
        n: matrix.n(),
        priorities: round_all(priorities.values(), args.precision),
        normalized: round_all(priorities.normalized(), args.precision),
        optimality: round_optimality(&optimality, args.precision),
        consistency: round_consistency(&validate(&matrix), args.precision),
        warnings: warnings.iter().map(|w| w.to_string()).collect(),
        input_digest: input_digest(&matrix, problem.as_ref().map(|p| p.reference())),
    };
    print!("{}", emit_json(&report));
    summarize(&format!(
        "gradient_max={} spread_condition={}",
        report.optimality.gradient_max, report.optimality.spread_condition
    ));
    Ok(0)
}
