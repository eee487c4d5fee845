//! Command-line surface for the strongdom library: exact solves, graph
//! composition, bound verification, and seeded campaign sweeps.
//!
//! Exit codes: 0 success (bounds hold where checked), 2 parse/spec/
//! hypothesis problems, 3 capacity or timeout, 4 a checked bound was
//! violated, 5 I/O failure.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use strongdom::bounds::{evaluate, EvalError, Theorem, TheoremInstance};
use strongdom::campaign::{
    bounds_csv, constructions_csv, run_bounds_campaign, run_conjecture_campaign,
    run_construction_campaign, CampaignConfig,
};
use strongdom::compose::{self, CompositionSpec, GluingSpec};
use strongdom::families::{self, FamilyInstance};
use strongdom::graph::{emit_edge_list, graphs_text, parse_edge_list, Graph};
use strongdom::solver::{self, SolveError, SolveResult, SolverConfig};

const EXIT_USAGE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;
const EXIT_VIOLATED: u8 = 4;
const EXIT_IO: u8 = 5;

struct Failure {
    code: u8,
    msg: String,
}

type CliResult<T> = Result<T, Failure>;

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_USAGE, msg: msg.to_string() }
}

fn capacity(msg: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_CAPACITY, msg: msg.to_string() }
}

fn violated(msg: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_VIOLATED, msg: msg.to_string() }
}

fn io_err(msg: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_IO, msg: msg.to_string() }
}

#[derive(Parser)]
#[command(name = "strongdom", version, about = "Exact strong domination numbers, graph compositions, and bound verification campaigns")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact strong domination number of an edge-list graph
    GammaSt(SolveArgs),
    /// Exact domination number of an edge-list graph
    Gamma(SolveArgs),
    /// Build a composed graph from a JSON bundle of components plus a
    /// gluing or composition spec
    Compose {
        /// JSON file: {"components": [edge-list, ...], "glue": {...}} or
        /// {"components": [...], "spec": {"kind": "chain"|"link"|"circuit", ...}}
        bundle: PathBuf,
        /// Output edge-list path; a vertex-map sidecar lands next to it
        /// with extension .map.json
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate one theorem's bounds on an instance file
    Verify {
        /// Theorem id (see `verify --help`); short aliases like
        /// "2-gluing-lower" are accepted
        #[arg(long)]
        theorem: String,
        /// JSON instance: either a bare instance or a named family
        /// instance with expected values
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded verification campaign and write reports
    Campaign(CampaignArgs),
    /// Named example instances, random generators, and tightness search
    Families {
        #[command(subcommand)]
        sub: FamiliesCmd,
    },
}

#[derive(Args)]
struct SolveArgs {
    /// Edge-list file ("n <count>" header, one "u v" pair per line)
    file: PathBuf,
    /// Plain subset enumeration (small graphs only)
    #[arg(long, conflicts_with = "bnb")]
    oracle: bool,
    /// Branch-and-bound search (default)
    #[arg(long)]
    bnb: bool,
    /// Time budget in seconds
    #[arg(long, default_value_t = 30)]
    timeout: u64,
}

#[derive(Args)]
struct CampaignArgs {
    #[arg(long, value_enum, default_value_t = CampaignKind::Bounds)]
    kind: CampaignKind,
    /// Instances per theorem (default 200; 500 for the conjecture kind)
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Per-solve time budget in seconds
    #[arg(long, default_value_t = 30)]
    timeout: u64,
    /// Comma-separated theorem ids (bounds kind only; defaults to the
    /// proven set)
    #[arg(long)]
    theorems: Option<String>,
    #[arg(long, default_value_t = 2)]
    min_order: usize,
    #[arg(long, default_value_t = 7)]
    max_order: usize,
    #[arg(long, default_value_t = 2)]
    min_count: usize,
    #[arg(long, default_value_t = 4)]
    max_count: usize,
    #[arg(long, default_value_t = 18)]
    max_composed_order: usize,
    /// Base output path: writes <out>.csv and <out>.json
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print this format to stdout when --out is not given
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Exit 0 even when violations, timeouts, or errors occurred
    #[arg(long)]
    lenient: bool,
    /// For the conjecture kind: exit 4 when a counterexample is flagged
    /// (default is to report and exit 0)
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum FamiliesCmd {
    /// List the named instances and whether their recorded values verify
    List,
    /// Emit a named instance (or all of them) as JSON
    Emit {
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized search for instances attaining a bound exactly
    Tight {
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 400)]
        budget: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random connected graph (or tree) as an edge list
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Sample a uniform labeled tree instead
        #[arg(long)]
        tree: bool,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CampaignKind {
    Bounds,
    Constructions,
    Conjecture,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.cmd {
        Cmd::GammaSt(args) => cmd_solve(args, true),
        Cmd::Gamma(args) => cmd_solve(args, false),
        Cmd::Compose { bundle, out } => cmd_compose(&bundle, &out),
        Cmd::Verify { theorem, instance, format, out } => {
            cmd_verify(&theorem, &instance, format, out.as_deref())
        }
        Cmd::Campaign(args) => cmd_campaign(args),
        Cmd::Families { sub } => cmd_families(sub),
    }
}

// ---- shared helpers ------------------------------------------------------

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| io_err(format!("reading {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> CliResult<()> {
    std::fs::write(path, content).map_err(|e| io_err(format!("writing {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, content: &str) -> CliResult<()> {
    match out {
        Some(p) => write_file(p, content),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| if content.ends_with('\n') { Ok(()) } else { stdout.write_all(b"\n") })
                .map_err(|e| io_err(e))
        }
    }
}

fn load_graph(path: &Path) -> CliResult<Graph> {
    let text = read_file(path)?;
    parse_edge_list(&text).map_err(usage)
}

/// Solver settings honoring the STRONGDOM_SOLVER_LIMIT override (clamped to
/// the 64-vertex set representation).
fn solver_config(timeout_secs: u64) -> SolverConfig {
    let mut cfg = SolverConfig {
        timeout: std::time::Duration::from_secs(timeout_secs),
        ..SolverConfig::default()
    };
    if let Ok(v) = std::env::var("STRONGDOM_SOLVER_LIMIT") {
        if let Ok(limit) = v.trim().parse::<usize>() {
            cfg.oracle_limit = limit.min(strongdom::solver::MAX_EXACT_ORDER);
        }
    }
    cfg
}

fn solve_error(e: SolveError) -> Failure {
    capacity(e)
}

#[derive(Serialize)]
struct SolveOutput<'a> {
    value: usize,
    witness: Vec<usize>,
    nodes_explored: u64,
    elapsed_ms: u128,
    optimal: bool,
    method: &'a str,
}

fn cmd_solve(args: SolveArgs, strong: bool) -> CliResult<()> {
    let g = load_graph(&args.file)?;
    let cfg = solver_config(args.timeout);
    let method = if args.oracle { "oracle" } else { "bnb" };
    let result: SolveResult = match (strong, args.oracle) {
        (true, true) => solver::gamma_st_oracle_with(&g, &cfg),
        (true, false) => solver::gamma_st_with(&g, &cfg),
        (false, true) => solver::gamma_oracle_with(&g, &cfg),
        (false, false) => solver::gamma_with(&g, &cfg),
    }
    .map_err(solve_error)?;
    if !result.optimal {
        return Err(capacity(format!(
            "search timed out after {} nodes; best value so far {}",
            result.nodes_explored, result.value
        )));
    }
    let out = SolveOutput {
        value: result.value,
        witness: result.witness.iter().collect(),
        nodes_explored: result.nodes_explored,
        elapsed_ms: result.elapsed.as_millis(),
        optimal: result.optimal,
        method,
    };
    println!("{}", serde_json::to_string(&out).expect("solve output serializes"));
    Ok(())
}

// ---- compose -------------------------------------------------------------

/// Input bundle for `compose`: component edge lists plus exactly one
/// operation.
#[derive(Serialize, Deserialize)]
struct ComposeBundle {
    #[serde(with = "graphs_text")]
    components: Vec<Graph>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    glue: Option<GluingSpec>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    spec: Option<CompositionSpec>,
}

#[derive(Serialize)]
struct MapSidecar {
    n: usize,
    vertex_map: Vec<Vec<usize>>,
    special: Vec<usize>,
}

fn cmd_compose(bundle_path: &Path, out: &Path) -> CliResult<()> {
    let text = read_file(bundle_path)?;
    let bundle: ComposeBundle =
        serde_json::from_str(&text).map_err(|e| usage(format!("bad compose bundle: {e}")))?;
    let composed = match (&bundle.glue, &bundle.spec) {
        (Some(glue), None) => {
            if bundle.components.len() != 2 {
                return Err(usage(format!(
                    "gluing takes exactly 2 components, got {}",
                    bundle.components.len()
                )));
            }
            compose::r_glue(&bundle.components[0], &bundle.components[1], glue).map_err(usage)?
        }
        (None, Some(spec)) => compose::compose(&bundle.components, spec).map_err(usage)?,
        _ => {
            return Err(usage(
                "bundle must contain exactly one of \"glue\" or \"spec\"",
            ))
        }
    };
    write_file(out, &emit_edge_list(&composed.graph))?;
    let sidecar = MapSidecar {
        n: composed.graph.n(),
        vertex_map: composed.vertex_map.clone(),
        special: composed.special.clone(),
    };
    let sidecar_path = out.with_extension("map.json");
    write_file(
        &sidecar_path,
        &serde_json::to_string_pretty(&sidecar).expect("sidecar serializes"),
    )?;
    println!(
        "composed {} vertices, {} edges -> {} (+ {})",
        composed.graph.n(),
        composed.graph.edge_count(),
        out.display(),
        sidecar_path.display()
    );
    Ok(())
}

// ---- verify --------------------------------------------------------------

fn eval_error(e: EvalError) -> Failure {
    match e {
        EvalError::Timeout => capacity(e),
        EvalError::Solve(inner) => capacity(inner),
        other => usage(other),
    }
}

fn verify_csv(rep: &strongdom::bounds::BoundReport) -> String {
    let opt = |v: &Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
    let optu = |v: &Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
    format!(
        "theorem,n,lower_raw,lower,upper,exact,holds_lower,holds_upper,tight_lower,tight_upper\n{},{},{},{},{},{},{},{},{},{}\n",
        rep.theorem,
        rep.inputs.composed_n,
        opt(&rep.lower_raw),
        optu(&rep.lower),
        opt(&rep.upper),
        rep.exact,
        rep.holds_lower,
        rep.holds_upper,
        rep.tight_lower,
        rep.tight_upper,
    )
}

fn cmd_verify(theorem: &str, instance_path: &Path, format: Format, out: Option<&Path>) -> CliResult<()> {
    let theorem: Theorem = theorem.parse().map_err(usage)?;
    let text = read_file(instance_path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| usage(format!("bad instance JSON: {e}")))?;
    let (instance, family) = if value.get("instance").is_some() {
        let fi: FamilyInstance = serde_json::from_value(value)
            .map_err(|e| usage(format!("bad family instance: {e}")))?;
        (fi.instance.clone(), Some(fi))
    } else {
        let inst: TheoremInstance = serde_json::from_value(value)
            .map_err(|e| usage(format!("bad instance: {e}")))?;
        (inst, None)
    };
    let cfg = solver_config(30);
    if let Some(fi) = &family {
        fi.verify(&cfg).map_err(|e| violated(format!("recorded values failed: {e}")))?;
    }
    let rep = evaluate(theorem, &instance, &cfg).map_err(eval_error)?;
    let rendered = match format {
        Format::Json => serde_json::to_string_pretty(&rep).expect("report serializes"),
        Format::Csv => verify_csv(&rep),
    };
    emit(out, &rendered)?;
    if !rep.holds() {
        return Err(violated(format!(
            "bound violated: lower_raw={:?} exact={} upper={:?}",
            rep.lower_raw, rep.exact, rep.upper
        )));
    }
    Ok(())
}

// ---- campaign ------------------------------------------------------------

fn campaign_config(args: &CampaignArgs) -> CliResult<CampaignConfig> {
    let mut cfg = CampaignConfig {
        samples: args.samples.unwrap_or(match args.kind {
            CampaignKind::Conjecture => 500,
            _ => 200,
        }),
        seed: args.seed,
        timeout_secs: args.timeout,
        min_order: args.min_order,
        max_order: args.max_order,
        min_count: args.min_count,
        max_count: args.max_count,
        max_composed_order: args.max_composed_order,
        ..CampaignConfig::default()
    };
    if let Some(list) = &args.theorems {
        cfg.theorems = list
            .split(',')
            .map(|s| s.trim().parse::<Theorem>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(usage)?;
    }
    Ok(cfg)
}

fn cmd_campaign(args: CampaignArgs) -> CliResult<()> {
    let cfg = campaign_config(&args)?;
    match args.kind {
        CampaignKind::Bounds | CampaignKind::Conjecture => {
            let report = if args.kind == CampaignKind::Bounds {
                run_bounds_campaign(&cfg)
            } else {
                run_conjecture_campaign(&cfg)
            }
            .map_err(usage)?;
            let csv = bounds_csv(&report);
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            deliver(&args, &csv, &json)?;
            let a = &report.aggregates;
            eprintln!(
                "{}: {} instances, {} ok, {} violations, {} tight-lower, {} tight-upper, {} timeouts, {} errors",
                report.kind, a.total, a.ok, a.violations, a.tight_lower, a.tight_upper, a.timeouts, a.errors
            );
            if args.kind == CampaignKind::Conjecture {
                if a.violations == 0 {
                    eprintln!("no counterexample found in {} instances", a.total);
                } else {
                    eprintln!(
                        "{} counterexample candidate(s) recorded with full reproduction data",
                        a.violations
                    );
                    if args.strict {
                        return Err(violated("conjecture counterexample flagged"));
                    }
                }
                return Ok(());
            }
            if args.lenient {
                return Ok(());
            }
            if a.violations > 0 {
                return Err(violated(format!("{} bound violation(s)", a.violations)));
            }
            if a.timeouts > 0 {
                return Err(capacity(format!("{} timeout(s)", a.timeouts)));
            }
            if a.errors > 0 {
                return Err(usage(format!("{} instance error(s)", a.errors)));
            }
            Ok(())
        }
        CampaignKind::Constructions => {
            let report = run_construction_campaign(&cfg).map_err(usage)?;
            let csv = constructions_csv(&report);
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            deliver(&args, &csv, &json)?;
            let a = &report.aggregates;
            eprintln!(
                "constructions: {} built, {} ok, {} failures, {} errors",
                a.total, a.ok, a.failures, a.errors
            );
            if args.lenient {
                return Ok(());
            }
            if a.failures > 0 {
                return Err(violated(format!("{} invalid construction(s)", a.failures)));
            }
            if a.errors > 0 {
                return Err(usage(format!("{} construction error(s)", a.errors)));
            }
            Ok(())
        }
    }
}

fn deliver(args: &CampaignArgs, csv: &str, json: &str) -> CliResult<()> {
    match &args.out {
        Some(base) => {
            let csv_path = base.with_extension("csv");
            let json_path = base.with_extension("json");
            write_file(&csv_path, csv)?;
            write_file(&json_path, json)?;
            eprintln!("wrote {} and {}", csv_path.display(), json_path.display());
            Ok(())
        }
        None => emit(
            None,
            match args.format {
                Format::Csv => csv,
                Format::Json => json,
            },
        ),
    }
}

// ---- families ------------------------------------------------------------

fn cmd_families(sub: FamiliesCmd) -> CliResult<()> {
    match sub {
        FamiliesCmd::List => {
            let cfg = solver_config(30);
            for fi in families::catalog() {
                match fi.verify(&cfg) {
                    Ok(()) => println!("{}: ok", fi.name),
                    Err(e) => return Err(violated(format!("{}: {e}", fi.name))),
                }
            }
            Ok(())
        }
        FamiliesCmd::Emit { name, out } => {
            let catalog = families::catalog();
            let rendered = match &name {
                Some(n) => {
                    let fi = catalog
                        .iter()
                        .find(|fi| fi.name == *n)
                        .ok_or_else(|| usage(format!("no family instance named {n:?}")))?;
                    serde_json::to_string_pretty(fi)
                }
                None => serde_json::to_string_pretty(&catalog),
            }
            .expect("family instances serialize");
            emit(out.as_deref(), &rendered)
        }
        FamiliesCmd::Tight { theorem, budget, seed, out } => {
            let theorem: Theorem = theorem.parse().map_err(usage)?;
            let hits = families::tightness_search(theorem, budget, seed);
            let rendered =
                serde_json::to_string_pretty(&hits).expect("family instances serialize");
            emit(out.as_deref(), &rendered)?;
            eprintln!("{} tight instance(s) in {budget} samples", hits.len());
            Ok(())
        }
        FamiliesCmd::Random { n, p, tree, seed } => {
            let g = if tree {
                families::random_tree(n, seed)
            } else {
                families::random_connected(n, p, seed)
            }
            .map_err(usage)?;
            print!("{}", emit_edge_list(&g));
            Ok(())
        }
    }
}
