use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use plwd_core::algorithm::{FrontierRule, Pruning};
use plwd_core::bench::{distances_agree, run_bench, write_csv, BenchConfig, BenchError, Engine};
use plwd_core::dot::{export_dot, format_distance};
use plwd_core::fixtures::{five_paths, greedy_trap};
use plwd_core::format::{parse_any, serialize_edge_list, serialize_json};
use plwd_core::generate::{gen_monotone_dag, gen_random_dag, gen_star, gen_tree, WeightRange};
use plwd_core::oracle::Enumerator;
use plwd_core::special::SpecialOrder;
use plwd_core::{
    greedy_bellman_ford_plwd, DistanceReport, GraphDocument, LabelEngine, Orientation, VertexId,
    WeightSequence, WeightedDigraph,
};

#[derive(Parser)]
#[command(
    name = "plwd",
    version,
    about = "Path-length-weighted distances on weighted DAGs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a graph file and check that it is a valid DAG.
    Validate {
        /// Edge-list or JSON file; `-` reads standard input.
        file: PathBuf,
    },
    /// Distances from every vertex to a target, or from a source to every vertex.
    Compute(ComputeArgs),
    /// Compare the engine against brute-force path enumeration.
    Check {
        file: PathBuf,
        #[arg(long)]
        weights: Option<WeightSequence>,
        /// Only check distances to this vertex.
        #[arg(long, value_parser = parse_vertex)]
        target: Option<usize>,
        /// Refuse graphs with more paths than this between one pair.
        #[arg(long, default_value_t = plwd_core::oracle::DEFAULT_PATH_CAP)]
        path_cap: usize,
    },
    /// Write a generated graph to standard output.
    Generate(GenerateArgs),
    /// Label counts and timings per engine over a generated suite or files.
    Bench(BenchArgs),
    /// Graphviz rendering, optionally annotated with distances.
    ExportDot {
        file: PathBuf,
        #[command(flatten)]
        root: RootArgs,
        #[arg(long)]
        weights: Option<WeightSequence>,
    },
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct RootArgs {
    /// Measure distances to this vertex.
    #[arg(long, value_parser = parse_vertex)]
    target: Option<usize>,
    /// Measure distances from this vertex.
    #[arg(long = "from", value_parser = parse_vertex)]
    from: Option<usize>,
}

impl RootArgs {
    fn resolve(&self) -> Option<(VertexId, Orientation)> {
        match (self.target, self.from) {
            (Some(t), _) => Some((VertexId(t), Orientation::ToTarget)),
            (None, Some(s)) => Some((VertexId(s), Orientation::FromSource)),
            (None, None) => None,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Generic,
    Order1,
    Order2,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum FrontierArg {
    Changed,
    Printed,
}

#[derive(Args)]
struct ComputeArgs {
    file: PathBuf,
    #[command(flatten)]
    root: RootArgs,
    /// `const:<c>`, `invpow:<k>` or `list:v1,v2,...`. Defaults to the
    /// graph's own hint, then `invpow:1`.
    #[arg(long)]
    weights: Option<WeightSequence>,
    #[arg(long, value_enum, default_value = "generic")]
    engine: EngineArg,
    #[arg(long, value_enum, default_value = "changed")]
    frontier: FrontierArg,
    /// Print a path realising each distance.
    #[arg(long)]
    witness: bool,
    /// Full-precision JSON instead of the text table.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Tree,
    Star,
    Random,
    Monotone,
    GreedyTrap,
    FivePaths,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    family: Family,
    #[command(flatten)]
    params: FamilyParams,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Args, Clone)]
struct FamilyParams {
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge probability (random, monotone) or leaf-to-leaf probability (star).
    #[arg(long, default_value_t = 0.3)]
    prob: f64,
    #[arg(long, default_value_t = 1.0)]
    min_weight: f64,
    #[arg(long, default_value_t = 10.0)]
    max_weight: f64,
    /// Draw whole-number weights only.
    #[arg(long)]
    integers: bool,
}

impl FamilyParams {
    fn range(&self) -> WeightRange {
        WeightRange {
            lo: self.min_weight,
            hi: self.max_weight,
            integral: self.integers,
        }
    }

    fn generate(&self, family: Family, seed: u64) -> Result<GraphDocument, CliError> {
        let range = self.range();
        let doc = match family {
            Family::Tree => gen_tree(self.n, seed, range),
            Family::Star => gen_star(self.n, self.prob, seed, range),
            Family::Random => gen_random_dag(self.n, self.prob, seed, range),
            Family::Monotone => gen_monotone_dag(self.n, self.prob, seed, range),
            Family::GreedyTrap => {
                return Ok(GraphDocument::from_graph(&greedy_trap()).with_name("greedy-trap"))
            }
            Family::FivePaths => {
                return Ok(GraphDocument::from_graph(&five_paths()).with_name("five-paths"))
            }
        };
        doc.map_err(|e| CliError::Invalid(e.to_string()))
    }
}

#[derive(Args)]
struct BenchArgs {
    /// Graph files; when absent a suite is generated.
    files: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "monotone")]
    family: Family,
    /// Number of generated graphs.
    #[arg(long, default_value_t = 20)]
    count: u64,
    #[command(flatten)]
    params: FamilyParams,
    /// Reverse every generated graph (non-increasing monotone family).
    #[arg(long)]
    reverse: bool,
    #[arg(long, default_value = "invpow:1")]
    weights: WeightSequence,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "generic,order1,order2,greedy"
    )]
    engines: Vec<Engine>,
    /// Root vertex; every vertex when absent. Distances run from the root
    /// unless `--to-root` is given.
    #[arg(long, value_parser = parse_vertex)]
    root: Option<usize>,
    #[arg(long)]
    to_root: bool,
    /// Write `wall_ns = 0` so the output is reproducible byte for byte.
    #[arg(long)]
    deterministic: bool,
}

#[derive(Debug)]
enum CliError {
    Invalid(String),
    Mismatch(String),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Invalid(_) => ExitCode::from(1),
            CliError::Mismatch(_) => ExitCode::from(2),
        }
    }
}

fn invalid(e: impl ToString) -> CliError {
    CliError::Invalid(e.to_string())
}

fn parse_vertex(s: &str) -> Result<usize, String> {
    s.strip_prefix('v')
        .unwrap_or(s)
        .parse()
        .map_err(|_| format!("expected a vertex index such as 5 or v5, got {s:?}"))
}

fn read_document(path: &PathBuf) -> Result<GraphDocument, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| invalid(format!("stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?
    };
    parse_any(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load(path: &PathBuf) -> Result<(GraphDocument, WeightedDigraph), CliError> {
    let doc = read_document(path)?;
    let g = doc
        .to_graph()
        .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    Ok((doc, g))
}

fn weights_for(explicit: Option<WeightSequence>, doc: &GraphDocument) -> WeightSequence {
    explicit.or_else(|| doc.weights.clone()).unwrap_or_default()
}

fn compute_report(
    g: &WeightedDigraph,
    w: &WeightSequence,
    root: VertexId,
    orientation: Orientation,
    engine: EngineArg,
    frontier: FrontierArg,
    witnesses: bool,
) -> Result<DistanceReport, CliError> {
    let pruning = match engine {
        EngineArg::Generic => Pruning::Pareto,
        EngineArg::Order1 => Pruning::Special(SpecialOrder::Order1),
        EngineArg::Order2 => Pruning::Special(SpecialOrder::Order2),
        EngineArg::Greedy => {
            let mut report = match orientation {
                Orientation::ToTarget => greedy_bellman_ford_plwd(g, w, root),
                Orientation::FromSource => greedy_bellman_ford_plwd(&g.reversed(), w, root),
            }
            .map_err(invalid)?;
            report.orientation = orientation;
            if orientation == Orientation::FromSource {
                if let Some(paths) = report.witnesses.as_mut() {
                    for p in paths.iter_mut().flatten() {
                        *p = p.reversed();
                    }
                }
            }
            if !witnesses {
                report.witnesses = None;
            }
            return Ok(report);
        }
    };
    let frontier = match frontier {
        FrontierArg::Changed => FrontierRule::Changed,
        FrontierArg::Printed => FrontierRule::Printed,
    };
    LabelEngine::new(g, w)
        .orientation(orientation)
        .pruning(pruning)
        .frontier(frontier)
        .witnesses(witnesses)
        .run(root)
        .map(|o| o.report)
        .map_err(invalid)
}

fn engine_name(engine: EngineArg) -> &'static str {
    match engine {
        EngineArg::Generic => "generic",
        EngineArg::Order1 => "order1",
        EngineArg::Order2 => "order2",
        EngineArg::Greedy => "greedy",
    }
}

fn compute(args: &ComputeArgs) -> Result<String, CliError> {
    let (doc, g) = load(&args.file)?;
    let (root, orientation) = args
        .root
        .resolve()
        .ok_or_else(|| invalid("one of --target or --from is required"))?;
    let w = weights_for(args.weights.clone(), &doc);
    let report = compute_report(
        &g,
        &w,
        root,
        orientation,
        args.engine,
        args.frontier,
        args.witness,
    )?;

    if args.json {
        let distances: Vec<serde_json::Value> = report
            .values
            .iter()
            .map(|d| if d.is_finite() { json!(d) } else { json!(null) })
            .collect();
        let mut out = json!({
            "root": root.0,
            "orientation": match orientation {
                Orientation::ToTarget => "to-target",
                Orientation::FromSource => "from-source",
            },
            "weights": w.to_string(),
            "engine": engine_name(args.engine),
            "distances": distances,
        });
        if let Some(paths) = &report.witnesses {
            let paths: Vec<serde_json::Value> = paths
                .iter()
                .map(|p| match p {
                    Some(p) => json!(p.vertices().iter().map(|v| v.0).collect::<Vec<_>>()),
                    None => json!(null),
                })
                .collect();
            out["witnesses"] = json!(paths);
        }
        return Ok(format!(
            "{}\n",
            serde_json::to_string_pretty(&out).expect("json value")
        ));
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        "# {} v{}, weights {}, engine {}",
        orientation,
        root.0,
        w,
        engine_name(args.engine)
    );
    for (i, d) in report.values.iter().enumerate() {
        let _ = write!(out, "v{i}\t{}", format_distance(*d));
        if let Some(p) = report.witness(VertexId(i)) {
            let _ = write!(out, "\t{p}");
        }
        out.push('\n');
    }
    Ok(out)
}

fn check(
    file: &PathBuf,
    weights: Option<WeightSequence>,
    target: Option<usize>,
    path_cap: usize,
) -> Result<String, CliError> {
    let (doc, g) = load(file)?;
    let w = weights_for(weights, &doc);
    let n = g.n_vertices();
    let targets: Vec<usize> = match target {
        Some(t) if t >= n => {
            return Err(invalid(format!(
                "target v{t} out of range for {n} vertices"
            )))
        }
        Some(t) => vec![t],
        None => (0..n).collect(),
    };
    let enumerator = Enumerator::with_cap(path_cap);
    let mut compared = 0usize;
    let mut mismatches = Vec::new();
    for t in targets {
        let report = compute_report(
            &g,
            &w,
            VertexId(t),
            Orientation::ToTarget,
            EngineArg::Generic,
            FrontierArg::Changed,
            false,
        )?;
        for v in 0..n {
            let inventory = enumerator
                .all_paths(&g, VertexId(v), VertexId(t))
                .map_err(invalid)?;
            let mut expected = f64::INFINITY;
            for record in &inventory.paths {
                expected = expected.min(record.distance(&w).map_err(invalid)?);
            }
            let got = report.values[v];
            compared += 1;
            if !distances_agree(expected, got, 1e-9) {
                mismatches.push(format!(
                    "v{v} -> v{t}: engine {}, brute force {}",
                    format_distance(got),
                    format_distance(expected)
                ));
            }
        }
    }
    if mismatches.is_empty() {
        Ok(format!(
            "ok: {compared} distances match brute force (weights {w})\n"
        ))
    } else {
        Err(CliError::Mismatch(format!(
            "{} of {compared} distances differ from brute force:\n{}",
            mismatches.len(),
            mismatches.join("\n")
        )))
    }
}

fn generate(args: &GenerateArgs) -> Result<String, CliError> {
    let doc = args.params.generate(args.family, args.params.seed)?;
    Ok(match args.format {
        OutputFormat::Text => serialize_edge_list(&doc),
        OutputFormat::Json => format!("{}\n", serialize_json(&doc)),
    })
}

fn bench(args: &BenchArgs) -> Result<String, CliError> {
    let mut suite = Vec::new();
    if args.files.is_empty() {
        for i in 0..args.count {
            let seed = args.params.seed.wrapping_add(i);
            let doc = args.params.generate(args.family, seed)?;
            let doc = if args.reverse { doc.reversed() } else { doc };
            let id = doc.name.clone().unwrap_or_else(|| format!("g{i}"));
            suite.push((id, doc));
        }
    } else {
        for path in &args.files {
            let doc = read_document(path)?;
            suite.push((path.display().to_string(), doc));
        }
    }
    let config = BenchConfig {
        weights: args.weights.clone(),
        orientation: if args.to_root {
            Orientation::ToTarget
        } else {
            Orientation::FromSource
        },
        root: args.root,
        engines: args.engines.clone(),
        deterministic: args.deterministic,
    };
    let report = run_bench(&suite, &config).map_err(|e| match e {
        BenchError::EngineMismatch { .. } => CliError::Mismatch(e.to_string()),
        other => invalid(other),
    })?;
    for s in &report.skipped {
        eprintln!("skipped {} on {}: {}", s.engine, s.graph_id, s.reason);
    }
    Ok(write_csv(&report.records))
}

fn export(
    file: &PathBuf,
    root: &RootArgs,
    weights: Option<WeightSequence>,
) -> Result<String, CliError> {
    let (doc, g) = load(file)?;
    let report = match root.resolve() {
        Some((root, orientation)) => {
            let w = weights_for(weights, &doc);
            Some(compute_report(
                &g,
                &w,
                root,
                orientation,
                EngineArg::Generic,
                FrontierArg::Changed,
                false,
            )?)
        }
        None => None,
    };
    export_dot(&doc, report.as_ref()).map_err(invalid)
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Validate { file } => {
            let (doc, g) = load(&file)?;
            Ok(format!(
                "ok: {}{} vertices, {} edges\n",
                doc.name.map(|n| format!("{n}: ")).unwrap_or_default(),
                g.n_vertices(),
                g.n_edges()
            ))
        }
        Command::Compute(args) => compute(&args),
        Command::Check {
            file,
            weights,
            target,
            path_cap,
        } => check(&file, weights, target, path_cap),
        Command::Generate(args) => generate(&args),
        Command::Bench(args) => bench(&args),
        Command::ExportDot {
            file,
            root,
            weights,
        } => export(&file, &root, weights),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match &e {
                CliError::Invalid(msg) => eprintln!("error: {msg}"),
                CliError::Mismatch(msg) => eprintln!("mismatch: {msg}"),
            }
            e.exit_code()
        }
    }
}
