//! Command-line driver: solve instances, generate them, verify solutions and
//! dual certificates, and run benchmark suites.
//!
//! Exit codes: 0 success, 2 parse/usage errors, 3 input infeasible for the
//! requested mode, 4 internal invariant violation, 1 other runtime errors
//! (and benchmark runs that observed a ratio above 4/3).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use twoconn::instances::{
    gen_complete, gen_cycle, gen_random_2connected, gen_theta, gen_tight, parse_graph,
    serialize_graph,
};
use twoconn::oracle::{degree_lower_bound, exact_min, format_rational, parse_certificate, Budget};
use twoconn::search::format_ratio;
use twoconn::{
    is_feasible, solve, DeletionOrder, EdgeSet, Error, Graph, Mode, SolveConfig, SolveReport,
};

mod bench;

#[derive(Parser)]
#[command(name = "twoconn", version, about = "Minimum 2-edge-/2-vertex-connected spanning subgraph solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and report the solution.
    Solve(SolveArgs),
    /// Generate an instance in the edge-list format.
    Gen(GenArgs),
    /// Verify a solution file and optionally a dual certificate.
    Verify(VerifyArgs),
    /// Run a benchmark suite.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    #[value(name = "2ecss")]
    TwoEcss,
    #[value(name = "2vcss")]
    TwoVcss,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::TwoEcss => Mode::TwoEcss,
            ModeArg::TwoVcss => Mode::TwoVcss,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Asc,
    Shuffled,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Auto,
    Off,
    Force,
}

#[derive(Args)]
struct SolveArgs {
    /// Feasibility notion to solve for.
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Instance file in edge-list format.
    #[arg(long)]
    input: PathBuf,
    /// Seed for the shuffled deletion order.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Deletion order used by the greedy passes.
    #[arg(long, value_enum, default_value = "asc")]
    order: OrderArg,
    /// When to compute the exact optimum: auto runs it only for m <= 22.
    #[arg(long, value_enum, default_value = "auto")]
    oracle: OracleArg,
    /// Emit the report as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenArgs {
    /// Instance family.
    #[arg(long)]
    family: String,
    /// Gadget count for the tight family.
    #[arg(long)]
    k: Option<usize>,
    /// Vertex count.
    #[arg(long)]
    n: Option<usize>,
    /// Chords beyond the Hamiltonian cycle (random family).
    #[arg(long)]
    extra: Option<usize>,
    /// Seed (random family).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Theta path lengths.
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    c: Option<usize>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Instance file.
    #[arg(long)]
    input: PathBuf,
    /// Solution file (edge-list format over the same vertex set).
    #[arg(long)]
    solution: PathBuf,
    /// Feasibility notion to verify against.
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Optional dual certificate to check.
    #[arg(long)]
    dual: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Which suite to run: small, tight, or scaling.
    #[arg(long)]
    suite: String,
    /// Base seed for the instance generators.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit results as JSON.
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Gen(args) => cmd_gen(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Bench(args) => bench::cmd_bench(args.suite.as_str(), args.seed, args.json),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::InvalidParameter(_) | Error::InvalidCertificate(_) => 2,
        Error::NotTwoConnected | Error::Infeasible { .. } | Error::TooFewVertices { .. } => 3,
        Error::Internal(_) | Error::Misuse(_) => 4,
        Error::BudgetExceeded { .. } => 1,
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })
}

fn load_graph(path: &Path) -> Result<Graph, Error> {
    parse_graph(&read_file(path)?)
}

/// Instances up to this edge count get an oracle run under `--oracle auto`.
const ORACLE_AUTO_EDGE_LIMIT: usize = 22;

fn cmd_solve(args: &SolveArgs) -> Result<ExitCode, Error> {
    let g = load_graph(&args.input)?;
    let mode: Mode = args.mode.into();
    let order = match args.order {
        OrderArg::Asc => DeletionOrder::Ascending,
        OrderArg::Shuffled => DeletionOrder::Shuffled { seed: args.seed },
    };
    let config = SolveConfig { mode, order, max_depth: None };
    let mut report = solve(&g, &config)?;

    // The library self-checks before reporting; re-verify here anyway since
    // the contract is to never print an unverified answer.
    if !is_feasible(&g, &report.solution_set(), mode) {
        return Err(Error::Internal("reported solution failed re-verification".into()));
    }

    let oracle_note = match args.oracle {
        OracleArg::Off => None,
        OracleArg::Auto if g.edge_count() > ORACLE_AUTO_EDGE_LIMIT => {
            Some(format!("oracle skipped (m = {} > {ORACLE_AUTO_EDGE_LIMIT})", g.edge_count()))
        }
        OracleArg::Auto => match exact_min(&g, mode, &Budget::default()) {
            Ok((opt, _)) => {
                report = report.with_oracle_opt(opt);
                None
            }
            Err(Error::BudgetExceeded { budget }) => {
                Some(format!("oracle budget of {budget} nodes exceeded"))
            }
            Err(e) => return Err(e),
        },
        OracleArg::Force => {
            let (opt, _) = exact_min(&g, mode, &Budget::default())?;
            report = report.with_oracle_opt(opt);
            None
        }
    };

    if args.json {
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
        if let Some(note) = oracle_note {
            eprintln!("note: {note}");
        }
    } else {
        print_report(&report, oracle_note.as_deref());
    }
    Ok(ExitCode::SUCCESS)
}

fn print_report(report: &SolveReport, oracle_note: Option<&str>) {
    println!("instance: n={} m={}", report.n, report.m);
    println!("mode: {}", report.mode);
    println!("cost: {}", report.cost);
    println!("initial cost: {}", report.initial_cost);
    println!("improvements: {}", report.improvement_count);
    println!("degree lower bound: {}", report.lower_bound_n);
    match (report.oracle_opt, &report.ratio_vs_oracle) {
        (Some(opt), Some(ratio)) => {
            println!("oracle optimum: {opt}");
            println!("ratio: {ratio}");
        }
        _ => {
            if let Some(note) = oracle_note {
                println!("oracle optimum: unavailable ({note})");
            } else {
                println!("oracle optimum: not requested");
            }
        }
    }
    let rendered: Vec<String> = report
        .solution_edges
        .iter()
        .map(|(u, v)| format!("({u},{v})"))
        .collect();
    println!("solution: {}", rendered.join(" "));
    println!("order: {} seed: {}", report.order, report.seed);
    println!("runtime: {:.3} ms", report.runtime.as_secs_f64() * 1e3);
    println!("self-check: feasible, inclusion-wise minimal");
}

fn cmd_gen(args: &GenArgs) -> Result<ExitCode, Error> {
    let need = |value: Option<usize>, name: &str| {
        value.ok_or_else(|| Error::InvalidParameter(format!("--{name} is required for this family")))
    };
    let g = match args.family.as_str() {
        "tight" => gen_tight(need(args.k, "k")?)?,
        "random" => gen_random_2connected(need(args.n, "n")?, need(args.extra, "extra")?, args.seed)?,
        "cycle" => gen_cycle(need(args.n, "n")?)?,
        "complete" => gen_complete(need(args.n, "n")?)?,
        "theta" => gen_theta(need(args.a, "a")?, need(args.b, "b")?, need(args.c, "c")?)?,
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown family {other:?}; expected tight, random, cycle, complete, or theta"
            )))
        }
    };
    let text = serialize_graph(&g);
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            Error::InvalidParameter(format!("cannot write {}: {e}", path.display()))
        })?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

/// Reads a solution file: edge-list format over the same vertex count as the
/// instance, with every line required to be an edge of the instance.
fn load_solution(path: &Path, g: &Graph) -> Result<EdgeSet, Error> {
    let parsed = parse_graph(&read_file(path)?)?;
    if parsed.vertex_count() != g.vertex_count() {
        return Err(Error::Parse {
            line: 1,
            msg: format!(
                "solution is over {} vertices but the instance has {}",
                parsed.vertex_count(),
                g.vertex_count()
            ),
        });
    }
    let mut set = g.empty_edge_set();
    for &(u, v) in parsed.edges() {
        let id = g.edge_id(u, v).ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("solution edge ({u}, {v}) is not an edge of the instance"),
        })?;
        set.insert(id);
    }
    Ok(set)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, Error> {
    let g = load_graph(&args.input)?;
    let mode: Mode = args.mode.into();
    let solution = load_solution(&args.solution, &g)?;
    println!("instance: n={} m={}", g.vertex_count(), g.edge_count());
    println!("solution: {} edges", solution.len());
    let feasible = is_feasible(&g, &solution, mode);
    println!("feasible ({mode}): {}", if feasible { "yes" } else { "no" });
    if feasible {
        let minimal = solution.iter().all(|id| {
            let mut smaller = solution.clone();
            smaller.remove(id);
            !is_feasible(&g, &smaller, mode)
        });
        println!("inclusion-wise minimal: {}", if minimal { "yes" } else { "no" });
    }
    if let Some(dual_path) = &args.dual {
        let cert = parse_certificate(&read_file(dual_path)?, &g)?;
        let (dual_feasible, objective) = twoconn::oracle::verify_dual(&g, &cert)?;
        println!("dual certificate: {}", if dual_feasible { "feasible" } else { "infeasible" });
        println!("dual objective: {}", format_rational(&objective));
        if dual_feasible {
            // The objective lower-bounds every 2-ECSS; solutions are integral.
            let bound = objective.ceil().to_integer();
            println!("implied 2-ECSS lower bound: {bound}");
        }
    }
    println!("degree lower bound: {}", degree_lower_bound(&g));
    Ok(ExitCode::SUCCESS)
}

// Shared with bench.
pub(crate) fn ratio_within_four_thirds(cost: usize, opt: usize) -> bool {
    // Exact integer comparison of cost/opt <= 4/3.
    3 * cost <= 4 * opt
}

pub(crate) fn ratio_string(cost: usize, opt: usize) -> String {
    format_ratio(cost, opt)
}
