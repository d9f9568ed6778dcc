//! `rainbow`: construct, inspect, check, count and search properly
//! edge-colored graphs.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error.
//! Data goes to stdout, diagnostics to stderr.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rainbow_core::checkers::{self, CheckReport, Suite};
use rainbow_core::constructions::{d_star, hypercube, lower_bound_graph, ConstructionSpec};
use rainbow_core::format::{parse_graph_file, write_dot, write_graph_file};
use rainbow_core::search::{self, Objective, Pruning, SearchProblem};
use rainbow_core::{corpus, rainbow, EdgeColoredGraph, Error};

#[derive(Parser)]
#[command(
    name = "rainbow",
    version,
    about = "Rainbow paths and cycles in properly edge-colored graphs"
)]
struct Cli {
    /// Worker threads for enumeration and search.
    #[arg(long, global = true, env = "RAINBOW_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a hypercube-based construction as a colored edge list.
    Construct(ConstructArgs),
    /// Run bound checkers on a graph file or a seeded random corpus.
    Check(CheckArgs),
    /// Count rainbow paths or cycles.
    Count(CountArgs),
    /// Exhaustive extremal search on few vertices.
    Search(SearchArgs),
    /// Convert a graph file to another format.
    Export(ExportArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// Path-length parameter; builds the cube of dimension ell-1 plus diagonals.
    #[arg(long)]
    ell: Option<usize>,
    /// Number of disjoint blocks.
    #[arg(long, default_value_t = 1, requires = "ell")]
    copies: usize,
    /// Isolated vertices appended after the blocks.
    #[arg(long, default_value_t = 0, requires = "ell")]
    pad: usize,
    /// Total vertex count; uses as many blocks as fit and pads the rest.
    #[arg(long, requires = "ell", conflicts_with_all = ["copies", "pad"])]
    n: Option<usize>,
    /// Plain position-colored hypercube of this dimension.
    #[arg(long, conflicts_with = "ell")]
    hypercube: Option<usize>,
    /// Write Graphviz DOT instead of an edge list.
    #[arg(long)]
    dot: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    /// General checks at --ell.
    General,
    /// General checks at length 5 plus the length-5 specific ones.
    P5,
    /// Audit of the diagonal-augmented cube for --ell.
    Construction,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, conflicts_with = "random")]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "general")]
    suite: SuiteName,
    #[arg(long, default_value_t = 5)]
    ell: usize,
    /// Check this many random proper graphs instead of a file.
    #[arg(long)]
    random: Option<usize>,
    /// Generate rainbow-P_ell-free random graphs (with --random).
    #[arg(long, requires = "random")]
    path_free: bool,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    min_n: usize,
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    input: PathBuf,
    /// Rainbow cycles of this length.
    #[arg(long, conflicts_with = "paths", required_unless_present = "paths")]
    cycles: Option<usize>,
    /// Rainbow paths of this length (in edges).
    #[arg(long)]
    paths: Option<usize>,
    /// Also list every witness.
    #[arg(long)]
    witnesses: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveName {
    Edges,
    Cycles,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    ell: usize,
    #[arg(long, value_enum)]
    objective: ObjectiveName,
    /// Only graphs using exactly this many colors.
    #[arg(long)]
    colors: Option<usize>,
    /// Report every optimum, not just one.
    #[arg(long)]
    all_optima: bool,
    #[arg(long, default_value_t = search::DEFAULT_NODE_BUDGET)]
    node_budget: u64,
    /// Seconds.
    #[arg(long)]
    time_budget: Option<f64>,
    /// Disable bound pruning and isomorph rejection.
    #[arg(long)]
    no_prune: bool,
    /// Tabulate the optimum for every exact color count (cycles objective).
    #[arg(long, conflicts_with = "colors")]
    probe_colors: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Cel,
    Dot,
    Json,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    format: ExportFormat,
}

enum Failure {
    Usage(String),
    CheckFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon_pool(t) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match cli.command {
        Command::Construct(a) => construct(a),
        Command::Check(a) => check(a),
        Command::Count(a) => count(a),
        Command::Search(a) => run_search(a, cli.threads),
        Command::Export(a) => export(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::CheckFailed) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn rayon_pool(threads: usize) -> Result<(), String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build_global()
        .map_err(|e| e.to_string())
}

fn read_graph(path: &PathBuf) -> Result<EdgeColoredGraph, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_graph_file(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn construct(a: ConstructArgs) -> Outcome {
    let g = match (a.hypercube, a.ell, a.n) {
        (Some(d), _, _) => hypercube(d)?,
        (None, Some(ell), Some(n)) => lower_bound_graph(n, ell)?,
        (None, Some(ell), None) if a.copies == 1 && a.pad == 0 => d_star(ell)?,
        (None, Some(ell), None) => ConstructionSpec {
            ell,
            copies: a.copies,
            pad: a.pad,
        }
        .build()?,
        (None, None, _) => {
            return Err(Failure::Usage(
                "one of --ell or --hypercube is required".into(),
            ))
        }
    };
    if a.dot {
        print!("{}", write_dot(&g, "G"));
    } else {
        print!("{}", write_graph_file(&g));
    }
    Ok(())
}

fn print_report(label: &str, seed: Option<u64>, r: &CheckReport, json_out: bool) {
    if json_out {
        println!("{}", json!({ "graph": label, "seed": seed, "report": r }));
        return;
    }
    let status = if r.skipped {
        format!("skipped ({})", r.skip_reason.as_deref().unwrap_or(""))
    } else if r.holds {
        "holds".to_string()
    } else {
        "FAILS".to_string()
    };
    let seed = seed.map(|s| format!(" seed={s}")).unwrap_or_default();
    println!(
        "{label} {} ell={} bound={} observed={} {status}{seed}",
        r.check_name, r.ell, r.bound, r.observed_max
    );
}

fn check(a: CheckArgs) -> Outcome {
    let suite = match a.suite {
        SuiteName::General => Suite::General(a.ell),
        SuiteName::P5 => Suite::P5,
        SuiteName::Construction => {
            let r = checkers::verify_construction(a.ell)?;
            print_report(&format!("d_star({})", a.ell), None, &r, a.json);
            return if r.failed() {
                Err(Failure::CheckFailed)
            } else {
                Ok(())
            };
        }
    };

    let mut failed = false;
    if let Some(count) = a.random {
        if a.min_n > a.max_n || a.max_n > 10 || a.min_n < 2 {
            return Err(Failure::Usage("need 2 <= --min-n <= --max-n <= 10".into()));
        }
        let graphs = if a.path_free {
            let ell = match suite {
                Suite::General(l) => l,
                Suite::P5 => 5,
            };
            corpus::path_free_corpus(a.seed, count, ell, a.min_n..=a.max_n)
        } else {
            corpus::proper_corpus(a.seed, count, a.min_n..=a.max_n)
        };
        for (i, r) in checkers::run_corpus(&graphs, suite)? {
            failed |= r.failed();
            print_report(&i.to_string(), Some(a.seed), &r, a.json);
        }
    } else {
        let Some(path) = &a.input else {
            return Err(Failure::Usage(
                "one of --input or --random is required".into(),
            ));
        };
        let g = read_graph(path)?;
        g.check_proper()
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        for r in checkers::run_suite(&g, suite)? {
            failed |= r.failed();
            print_report(&path.display().to_string(), None, &r, a.json);
        }
    }
    if failed {
        Err(Failure::CheckFailed)
    } else {
        Ok(())
    }
}

fn count(a: CountArgs) -> Outcome {
    let g = read_graph(&a.input)?;
    if let Some(len) = a.paths {
        let paths = rainbow::enumerate_rainbow_paths(&g, len)?;
        if a.json {
            let ws: Vec<String> = paths.iter().map(ToString::to_string).collect();
            let mut doc = json!({ "kind": "path", "length": len, "total": paths.len() });
            if a.witnesses {
                doc["witnesses"] = json!(ws);
            }
            println!("{doc}");
        } else {
            println!("total {}", paths.len());
            if a.witnesses {
                for w in &paths {
                    println!("{w}");
                }
            }
        }
        return Ok(());
    }

    let len = a.cycles.expect("clap enforces one of --cycles/--paths");
    let cycles = rainbow::enumerate_rainbow_cycles(&g, len)?;
    let per_edge = rainbow::count_per_edge(&g, len)?;
    if a.json {
        let table: Vec<[u64; 4]> = g
            .edges()
            .iter()
            .zip(&per_edge)
            .map(|(e, &f)| [e.u as u64, e.v as u64, e.color as u64, f])
            .collect();
        let mut doc =
            json!({ "kind": "cycle", "length": len, "total": cycles.len(), "per_edge": table });
        if a.witnesses {
            doc["witnesses"] = json!(cycles.iter().map(ToString::to_string).collect::<Vec<_>>());
        }
        println!("{doc}");
    } else {
        println!("total {}", cycles.len());
        println!("# u v c f");
        for (e, f) in g.edges().iter().zip(&per_edge) {
            println!("{} {} {} {f}", e.u, e.v, e.color);
        }
        if a.witnesses {
            for w in &cycles {
                println!("{w}");
            }
        }
    }
    Ok(())
}

fn run_search(a: SearchArgs, threads: Option<usize>) -> Outcome {
    let objective = match a.objective {
        ObjectiveName::Edges => Objective::MaxEdges,
        ObjectiveName::Cycles => Objective::MaxRainbowCycles,
    };
    let mut p = SearchProblem::new(a.n, a.ell, objective);
    p.colors = a.colors;
    p.all_optima = a.all_optima;
    p.threads = threads;
    p.node_budget = a.node_budget;
    p.time_budget = match a.time_budget {
        Some(s) if !(s.is_finite() && s > 0.0) => {
            return Err(Failure::Usage(
                "--time-budget must be a positive number of seconds".into(),
            ))
        }
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    if a.no_prune {
        p.pruning = Pruning::NONE;
    }

    if a.probe_colors {
        if objective != Objective::MaxRainbowCycles {
            return Err(Failure::Usage(
                "--probe-colors needs --objective cycles".into(),
            ));
        }
        let probe = search::probe_color_count(a.n, a.ell, &p)?;
        if a.json {
            println!("{}", serde_json::to_string(&probe).expect("serializes"));
        } else {
            println!("# colors max_cycles exhaustive");
            for row in &probe.rows {
                let v = row.max_cycles.map_or("-".to_string(), |v| v.to_string());
                println!("{} {v} {}", row.colors, row.exhaustive);
            }
        }
        return Ok(());
    }

    let r = search::solve(&p)?;
    if a.json {
        println!("{}", r.to_json());
        return Ok(());
    }
    let objective = match r.objective {
        Objective::MaxEdges => "edges",
        Objective::MaxRainbowCycles => "cycles",
    };
    println!("# n {} ell {} objective {objective}", r.n, r.ell);
    println!("# value {}", r.value);
    println!("# exhaustive {}", r.exhaustive);
    println!(
        "# nodes {} pruned {} isomorphs {} ms {}",
        r.stats.nodes_visited,
        r.stats.pruned_by_bound,
        r.stats.isomorph_rejections,
        r.stats.wall_time_ms
    );
    match r.witness_text() {
        Some(text) => print!("{text}"),
        None => println!("# no graph satisfies the color constraint"),
    }
    for (i, g) in r.optima.iter().enumerate() {
        println!("# optimum {i}");
        for line in write_graph_file(g).lines() {
            println!("# {line}");
        }
    }
    Ok(())
}

fn export(a: ExportArgs) -> Outcome {
    let g = read_graph(&a.input)?;
    match a.format {
        ExportFormat::Cel => print!("{}", write_graph_file(&g)),
        ExportFormat::Dot => print!("{}", write_dot(&g, "G")),
        ExportFormat::Json => println!("{}", serde_json::to_string(&g).expect("serializes")),
    }
    Ok(())
}
