//! `kuniv`: command-line front end over the graph universality toolkit.
//!
//! Every subcommand prints a deterministic JSON payload to stdout (or writes
//! it to `--out`). Exit codes: 0 success, 1 domain refusal (tie, budget,
//! unsupported instance), 2 usage error (bad flags, malformed or missing
//! files). `--report PATH` additionally writes a run envelope with the
//! command line, input digests, seed, and wall time; the envelope is the
//! only place timing appears, so payloads stay byte-comparable across runs.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use kuniv_core::rational::ExactRational;
use kuniv_core::{acceptance, coloring, constructions, game, io as gio, sparse, universality};
use kuniv_core::{Graph, NatOmega, VertexSet};

#[derive(Parser)]
#[command(
    name = "kuniv",
    version,
    about = "Pebble-game universality, extendibility, coloring and sparse-graph analysis of finite simple graphs",
    after_help = "Environment:\n  KUNIV_BUDGET  overrides the exhaustive-enumeration budget (default 16)"
)]
struct Cli {
    /// Write a run report (command, input digests, seed, wall time, result)
    /// to this path in addition to the normal output.
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a named deterministic family.
    Construct(ConstructArgs),
    /// Decide a graph property.
    #[command(subcommand)]
    Decide(DecideCmd),
    /// Solve the existential k-pebble game between two graphs.
    Game(GameArgs),
    /// Coloring number and witness ordering.
    Coloring(ColoringArgs),
    /// Closure of a vertex set under rigid small-set absorption.
    Closure(ClosureArgs),
    /// Sample a random graph with an explicit seed.
    Sample(SampleArgs),
    /// Seeded experiments over random graphs.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    /// Verify structural properties of the built-in constructions.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Export a graph to DOT for visualization.
    ExportDot(ExportDotArgs),
    /// Run the acceptance suite and print one pass/fail line per criterion.
    Acceptance(AcceptanceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Theorem3,
    Theorem4,
    Clique,
    Cycle,
    Path,
    Empty,
    Star,
    Tree,
    Paley,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Pebble-count parameter (theorem3, theorem4).
    #[arg(long)]
    k: Option<usize>,
    /// Size parameter (vertex count, or part count for theorem4, or prime
    /// order for paley).
    #[arg(long)]
    n: Option<usize>,
    /// Seed for the randomized families (tree).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum DecideCmd {
    /// Is the graph k-universal?
    Universal(DecideUniversalArgs),
    /// Is the graph k-extendible?
    Extendible(DecideExtendibleArgs),
}

#[derive(Args)]
struct DecideUniversalArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    /// Also write the full rank table here.
    #[arg(long)]
    ranks: Option<PathBuf>,
    /// Extract a refutation certificate when not universal.
    #[arg(long)]
    certificate: bool,
}

#[derive(Args)]
struct DecideExtendibleArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct GameArgs {
    #[arg(long)]
    from: PathBuf,
    #[arg(long)]
    to: PathBuf,
    #[arg(long)]
    k: usize,
    /// A round count, or "eternal".
    #[arg(long)]
    rounds: String,
}

#[derive(Args)]
struct ColoringArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Include the witness ordering in the output.
    #[arg(long)]
    witness: bool,
}

#[derive(Args)]
struct ClosureArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Comma-separated vertex ids of the seed set.
    #[arg(long, value_name = "V,V,...", default_value = "")]
    set: String,
    #[arg(long)]
    l: usize,
    /// Exact rational threshold parameter, written P/Q.
    #[arg(long)]
    alpha: ExactRational,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Gnp,
    Sparse,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long)]
    n: usize,
    /// Edge probability (gnp).
    #[arg(long)]
    p: Option<f64>,
    /// Density exponent as an exact rational P/Q (sparse).
    #[arg(long)]
    alpha: Option<ExactRational>,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Distribution of closure sizes over sparse random graphs.
    ClosureBound(ClosureBoundArgs),
}

#[derive(Args)]
struct ClosureBoundArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    alpha: ExactRational,
    #[arg(long)]
    l: usize,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Exhaustive same-part pair refutation check of the theorem3 family.
    Theorem3Pairs(VerifyT3Args),
    /// Shift automorphism, edge-rule audit, and distance floor of the
    /// theorem4 family.
    Theorem4(VerifyT4Args),
}

#[derive(Args)]
struct VerifyT3Args {
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct VerifyT4Args {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    /// Seed for the sampled checks.
    #[arg(long, default_value_t = 0xACCB)]
    seed: u64,
}

#[derive(Args)]
struct ExportDotArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AcceptanceArgs {
    /// Emit the suite result as JSON instead of the table.
    #[arg(long)]
    json: bool,
}

/// Errors are split by exit code: usage problems (including unreadable or
/// malformed inputs) exit 2, domain refusals exit 1.
enum CliError {
    Usage(String),
    Domain(String),
}

impl From<kuniv_core::Error> for CliError {
    fn from(e: kuniv_core::Error) -> Self {
        if e.is_domain() {
            CliError::Domain(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

fn read_graph(path: &Path, inputs: &mut BTreeMap<String, String>) -> Result<Graph, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    inputs.insert(
        path.display().to_string(),
        format!("{:x}", Sha256::digest(&bytes)),
    );
    let text = String::from_utf8(bytes)
        .map_err(|_| CliError::Usage(format!("{} is not UTF-8", path.display())))?;
    let parsed = match text.trim_start().chars().next() {
        Some('{') => gio::from_json(&text),
        _ => gio::from_edge_list(&text),
    };
    // any defect in the file is a usage error regardless of its variant
    parsed.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn enumeration_budget() -> Result<usize, CliError> {
    match std::env::var("KUNIV_BUDGET") {
        Err(_) => Ok(sparse::DEFAULT_ENUM_BUDGET),
        Ok(v) => v
            .parse()
            .map_err(|_| CliError::Usage(format!("KUNIV_BUDGET must be an integer, got {v:?}"))),
    }
}

fn parse_vertex_list(s: &str) -> Result<VertexSet, CliError> {
    let mut set = VertexSet::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = tok
            .parse()
            .map_err(|_| CliError::Usage(format!("bad vertex id {tok:?} in --set")))?;
        set.insert(v);
    }
    Ok(set)
}

struct Outcome {
    payload: Value,
    /// Printed to stdout instead of the payload when set (the payload still
    /// feeds the run report).
    text_override: Option<String>,
    /// Extra output files: (path, contents).
    files: Vec<(PathBuf, String)>,
    seed: Option<u64>,
    /// Command ran to completion but its verdict demands a failing exit.
    failed: bool,
}

impl Outcome {
    fn of(payload: Value) -> Self {
        Outcome {
            payload,
            text_override: None,
            files: Vec::new(),
            seed: None,
            failed: false,
        }
    }
}

fn run(cli: &Cli) -> Result<(Outcome, BTreeMap<String, String>), CliError> {
    let mut inputs = BTreeMap::new();
    let outcome = match &cli.command {
        Command::Construct(args) => construct(args)?,
        Command::Decide(DecideCmd::Universal(args)) => {
            let g = read_graph(&args.graph, &mut inputs)?;
            let report = universality::is_k_universal_with(&g, args.k, args.certificate)?;
            let mut files = Vec::new();
            if let Some(path) = &args.ranks {
                let table = universality::rank_table(&g, args.k)?;
                let entries: Vec<Value> = table
                    .entries()
                    .into_iter()
                    .map(|(tuple, rank)| json!({ "tuple": tuple, "rank": rank }))
                    .collect();
                let doc = json!({ "k": args.k, "n": g.n(), "ranks": entries });
                files.push((path.clone(), pretty(&doc)));
            }
            Outcome {
                files,
                ..Outcome::of(serde_json::to_value(&report).map_err(kuniv_core::Error::from)?)
            }
        }
        Command::Decide(DecideCmd::Extendible(args)) => {
            let g = read_graph(&args.graph, &mut inputs)?;
            let report = kuniv_core::extendibility::is_k_extendible(&g, args.k)?;
            Outcome::of(serde_json::to_value(&report).map_err(kuniv_core::Error::from)?)
        }
        Command::Game(args) => {
            let a = read_graph(&args.from, &mut inputs)?;
            let b = read_graph(&args.to, &mut inputs)?;
            let rounds = match args.rounds.as_str() {
                "eternal" => NatOmega::Omega,
                n => NatOmega::Finite(n.parse().map_err(|_| {
                    CliError::Usage(format!(
                        "--rounds must be a number or \"eternal\", got {n:?}"
                    ))
                })?),
            };
            let verdict = game::duplicator_wins(&a, &b, args.k, rounds)?;
            Outcome::of(serde_json::to_value(verdict).map_err(kuniv_core::Error::from)?)
        }
        Command::Coloring(args) => {
            let g = read_graph(&args.graph, &mut inputs)?;
            let (t, witness) = coloring::coloring_number(&g);
            let mut payload = json!({ "coloring_number": t });
            if args.witness {
                payload["witness"] =
                    serde_json::to_value(&witness).map_err(kuniv_core::Error::from)?;
            }
            Outcome::of(payload)
        }
        Command::Closure(args) => {
            let g = read_graph(&args.graph, &mut inputs)?;
            let budget = enumeration_budget()?;
            if args.l > budget {
                return Err(kuniv_core::Error::BudgetExceeded {
                    what: "closure candidate size l",
                    got: args.l,
                    budget,
                }
                .into());
            }
            let set = parse_vertex_list(&args.set)?;
            let result = sparse::closure(&g, &set, args.l, &args.alpha)?;
            Outcome::of(serde_json::to_value(&result).map_err(kuniv_core::Error::from)?)
        }
        Command::Sample(args) => sample(args)?,
        Command::Experiment(ExperimentCmd::ClosureBound(args)) => {
            let budget = enumeration_budget()?;
            if args.l > budget {
                return Err(kuniv_core::Error::BudgetExceeded {
                    what: "closure candidate size l",
                    got: args.l,
                    budget,
                }
                .into());
            }
            let stats = sparse::closure_bound_experiment(
                args.n,
                &args.alpha,
                args.l,
                args.trials,
                args.seed,
            )?;
            Outcome {
                seed: Some(args.seed),
                ..Outcome::of(serde_json::to_value(&stats).map_err(kuniv_core::Error::from)?)
            }
        }
        Command::Verify(VerifyCmd::Theorem3Pairs(args)) => {
            let report = constructions::verify_theorem3_pairs(args.k)?;
            let failed = !report.violations.is_empty() || report.satisfiability_failures > 0;
            Outcome {
                failed,
                ..Outcome::of(serde_json::to_value(&report).map_err(kuniv_core::Error::from)?)
            }
        }
        Command::Verify(VerifyCmd::Theorem4(args)) => {
            let report = constructions::verify_theorem4(args.k, args.n, args.seed)?;
            Outcome {
                seed: Some(args.seed),
                failed: !report.passed,
                ..Outcome::of(serde_json::to_value(&report).map_err(kuniv_core::Error::from)?)
            }
        }
        Command::ExportDot(args) => {
            let g = read_graph(&args.graph, &mut inputs)?;
            let dot = gio::to_dot(&g);
            Outcome {
                files: vec![(args.out.clone(), dot)],
                ..Outcome::of(json!({
                    "out": args.out.display().to_string(),
                    "n": g.n(),
                    "edges": g.edge_count(),
                }))
            }
        }
        Command::Acceptance(args) => {
            let suite = acceptance::run_suite();
            Outcome {
                text_override: (!args.json).then(|| suite.table()),
                failed: !suite.all_passed,
                ..Outcome::of(serde_json::to_value(&suite).map_err(kuniv_core::Error::from)?)
            }
        }
    };
    Ok((outcome, inputs))
}

fn construct(args: &ConstructArgs) -> Result<Outcome, CliError> {
    let need = |opt: Option<usize>, what: &str| {
        opt.ok_or_else(|| CliError::Usage(format!("--{what} is required for this family")))
    };
    let (g, family) = match args.family {
        Family::Theorem3 => (
            constructions::theorem3_graph(need(args.k, "k")?)?,
            "theorem3",
        ),
        Family::Theorem4 => (
            constructions::theorem4_graph(need(args.k, "k")?, need(args.n, "n")?)?,
            "theorem4",
        ),
        Family::Clique => (constructions::clique(need(args.n, "n")?)?, "clique"),
        Family::Cycle => (constructions::cycle(need(args.n, "n")?)?, "cycle"),
        Family::Path => (constructions::path(need(args.n, "n")?)?, "path"),
        Family::Empty => (constructions::empty(need(args.n, "n")?)?, "empty"),
        Family::Star => (constructions::star(need(args.n, "n")?)?, "star"),
        Family::Tree => {
            let seed = args
                .seed
                .ok_or_else(|| CliError::Usage("--seed is required for tree".into()))?;
            (
                constructions::random_tree(need(args.n, "n")?, seed)?,
                "tree",
            )
        }
        Family::Paley => (constructions::paley(need(args.n, "n")?)?, "paley"),
    };
    Ok(Outcome {
        files: vec![(args.out.clone(), gio::to_json(&g))],
        seed: args.seed,
        ..Outcome::of(json!({
            "family": family,
            "n": g.n(),
            "edges": g.edge_count(),
            "out": args.out.display().to_string(),
        }))
    })
}

fn sample(args: &SampleArgs) -> Result<Outcome, CliError> {
    let (g, model) = match args.model {
        Model::Gnp => {
            let p = args
                .p
                .ok_or_else(|| CliError::Usage("--p is required for gnp".into()))?;
            (sparse::sample_gnp(args.n, p, args.seed)?, "gnp")
        }
        Model::Sparse => {
            let alpha = args
                .alpha
                .as_ref()
                .ok_or_else(|| CliError::Usage("--alpha is required for sparse".into()))?;
            (sparse::sample_sparse(args.n, alpha, args.seed)?, "sparse")
        }
    };
    Ok(Outcome {
        files: vec![(args.out.clone(), gio::to_json(&g))],
        seed: Some(args.seed),
        ..Outcome::of(json!({
            "model": model,
            "n": g.n(),
            "edges": g.edge_count(),
            "seed": args.seed,
            "out": args.out.display().to_string(),
        }))
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json rendering");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = std::time::Instant::now();
    let argv: Vec<String> = std::env::args().collect();
    match run(&cli) {
        Ok((outcome, inputs)) => {
            for (path, contents) in &outcome.files {
                if let Err(e) = std::fs::write(path, contents) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            match &outcome.text_override {
                Some(text) => print!("{text}"),
                None => print!("{}", pretty(&outcome.payload)),
            }
            if let Some(report_path) = &cli.report {
                let envelope = json!({
                    "command": argv.join(" "),
                    "inputs": inputs,
                    "seed": outcome.seed,
                    "wall_ms": started.elapsed().as_millis() as u64,
                    "result": outcome.payload,
                });
                if let Err(e) = std::fs::write(report_path, pretty(&envelope)) {
                    eprintln!("error: cannot write {}: {e}", report_path.display());
                    return ExitCode::from(2);
                }
            }
            if outcome.failed {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
