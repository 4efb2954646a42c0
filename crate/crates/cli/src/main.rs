use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use infcomm_core::aggregation::{DEFAULT_ALPHA, DEFAULT_BETA};
use infcomm_core::graph::{format_edge_list, format_weights};
use infcomm_core::pagerank::{DEFAULT_DAMPING, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
use infcomm_core::unconstrained::DEFAULT_EPSILON;
use infcomm_core::{
    brute_force_topr, connected_components, degeneracy, generate_powerlaw, k_core, load_weights, local_search, ndcg,
    non_overlapping_unconstrained, pagerank, parse_edge_list, sum_naive, tic_exact, tic_improved, verify_community,
    Aggregation, Community, ExactOptions, PowerLawSpec, ResultList, SearchParams, WeightedGraph,
};

mod report;

use report::{CommunityOut, CoreOut, CoreStatsReport, FilesReport, GraphStats, NdcgReport, Params, RankingIn, SearchReport};

/// Top-r k-influential community search on vertex-weighted graphs.
#[derive(Debug, Parser)]
#[command(name = "infcomm", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Search for the top-r communities.
    Search(SearchArgs),
    /// Exhaustive ground truth for small graphs (at most 20 vertices).
    Oracle(OracleArgs),
    /// Write PageRank scores as a weight file.
    Pagerank(PagerankArgs),
    /// Generate a power-law random graph.
    Gen(GenArgs),
    /// Compare two reports by NDCG.
    EvalNdcg(EvalNdcgArgs),
    /// Report k-core sizes.
    CoreStats(CoreStatsArgs),
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Edge list, one `u v` pair per line.
    #[arg(long)]
    input: PathBuf,
    /// `label weight` lines; missing vertices weigh 0.
    #[arg(long)]
    weights: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AggName {
    Min,
    Max,
    Sum,
    SumSurplus,
    Avg,
    WeightDensity,
    BalancedDensity,
}

#[derive(Debug, Args)]
struct FunctionArgs {
    #[arg(long, value_enum, default_value = "sum")]
    agg: AggName,
    /// Per-vertex surplus for sum-surplus [default: 1].
    #[arg(long)]
    alpha: Option<f64>,
    /// Per-vertex penalty for weight-density [default: 1].
    #[arg(long)]
    beta: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Unconstrained,
    Constrained,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Naive,
    Improved,
    Exact,
    Local,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Greedy,
    Random,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
    /// Size cap (constrained mode).
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, value_enum, default_value = "unconstrained")]
    mode: Mode,
    /// [default: improved when unconstrained, local when constrained]
    #[arg(long, value_enum)]
    algo: Option<Algo>,
    /// Approximation slack for the improved search [default: 0.1].
    #[arg(long)]
    epsilon: Option<f64>,
    #[command(flatten)]
    function: FunctionArgs,
    /// Neighbour ordering for the local search [default: greedy].
    #[arg(long, value_enum)]
    strategy: Option<Strategy>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    non_overlapping: bool,
    /// Worker threads for the exact enumeration.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Let the exact enumeration run on k-cores above 20 vertices.
    #[arg(long)]
    allow_large: bool,
    /// Also write the report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    s: Option<usize>,
    #[command(flatten)]
    function: FunctionArgs,
    #[arg(long)]
    non_overlapping: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PagerankArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_DAMPING)]
    damping: f64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Weight file to write.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WeightSource {
    Uniform,
    Pagerank,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    gamma: f64,
    #[arg(long, default_value_t = 1)]
    min_degree: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge list to write; weights go to `<out>.weights`.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "uniform")]
    weights: WeightSource,
}

#[derive(Debug, Args)]
struct EvalNdcgArgs {
    #[arg(long)]
    result: PathBuf,
    #[arg(long)]
    ideal: PathBuf,
    #[arg(long)]
    r: usize,
}

#[derive(Debug, Args)]
struct CoreStatsArgs {
    #[arg(long)]
    input: PathBuf,
    /// Only this k [default: every k up to the degeneracy].
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] infcomm_core::Error),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Contract(String),
}

type CliResult<T> = Result<T, CliError>;

fn usage_error(message: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::ArgumentConflict, message).exit()
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Search(args) => run_search(args),
        Command::Oracle(args) => run_oracle(args),
        Command::Pagerank(args) => run_pagerank(args),
        Command::Gen(args) => run_gen(args),
        Command::EvalNdcg(args) => run_eval_ndcg(args),
        Command::CoreStats(args) => run_core_stats(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn open(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|source| CliError::File {
        path: path.to_owned(),
        source,
    })
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::File {
        path: path.to_owned(),
        source,
    })
}

fn load_graph(args: &GraphArgs) -> CliResult<WeightedGraph> {
    let graph = parse_edge_list(open(&args.input)?)?;
    match &args.weights {
        Some(path) => Ok(load_weights(&graph, open(path)?)?),
        None => Ok(graph),
    }
}

fn graph_stats(graph: &WeightedGraph) -> GraphStats {
    GraphStats {
        n: graph.vertex_count(),
        m: graph.edge_count(),
        kmax: degeneracy(graph),
    }
}

fn emit<T: serde::Serialize>(value: &T, out: Option<&Path>) -> CliResult<()> {
    let text = serde_json::to_string(value).expect("reports serialize") + "\n";
    if let Some(path) = out {
        write_file(path, &text)?;
    }
    std::io::stdout()
        .write_all(text.as_bytes())
        .map_err(|source| CliError::File {
            path: PathBuf::from("<stdout>"),
            source,
        })
}

impl FunctionArgs {
    fn resolve(&self) -> Aggregation {
        if self.alpha.is_some() && self.agg != AggName::SumSurplus {
            usage_error("--alpha only applies to --agg sum-surplus");
        }
        if self.beta.is_some() && self.agg != AggName::WeightDensity {
            usage_error("--beta only applies to --agg weight-density");
        }
        let alpha = self.alpha.unwrap_or(DEFAULT_ALPHA);
        let beta = self.beta.unwrap_or(DEFAULT_BETA);
        match self.agg {
            AggName::Min => Aggregation::Min,
            AggName::Max => Aggregation::Max,
            AggName::Sum => Aggregation::Sum,
            AggName::SumSurplus => Aggregation::SumSurplus { alpha },
            AggName::Avg => Aggregation::Avg,
            AggName::WeightDensity => Aggregation::WeightDensity { beta },
            AggName::BalancedDensity => Aggregation::BalancedDensity,
        }
    }

    fn echo(&self, params: &mut Params, kind: Aggregation) {
        params.agg = Some(kind.name());
        match kind {
            Aggregation::SumSurplus { alpha } => params.alpha = Some(alpha),
            Aggregation::WeightDensity { beta } => params.beta = Some(beta),
            _ => {}
        }
    }
}

fn communities_out(graph: &WeightedGraph, list: &ResultList, k: usize, s: Option<usize>) -> CliResult<Vec<CommunityOut>> {
    list.iter()
        .enumerate()
        .map(|(i, c)| {
            verify_community(graph, c, k, s)
                .map_err(|v| CliError::Contract(format!("result {} failed verification: {v}", i + 1)))?;
            let mut members = c.labels(graph);
            members.sort_unstable();
            Ok(CommunityOut {
                rank: i + 1,
                value: c.value,
                size: c.len(),
                members,
            })
        })
        .collect()
}

fn run_search(args: SearchArgs) -> CliResult<()> {
    let kind = args.function.resolve();
    let algo = args.algo.unwrap_or(match args.mode {
        Mode::Unconstrained => Algo::Improved,
        Mode::Constrained => Algo::Local,
    });
    match (args.mode, algo) {
        (Mode::Constrained, Algo::Naive | Algo::Improved) => {
            usage_error("--algo naive and improved are unconstrained searches; use exact or local")
        }
        (Mode::Unconstrained, Algo::Exact) => usage_error("--algo exact needs --mode constrained"),
        _ => {}
    }
    if args.s.is_some() && args.mode == Mode::Unconstrained {
        usage_error("--s needs --mode constrained");
    }
    if args.epsilon.is_some() && algo != Algo::Improved {
        usage_error("--epsilon only applies to --algo improved");
    }
    if args.strategy.is_some() && algo != Algo::Local {
        usage_error("--strategy only applies to --algo local");
    }
    if args.allow_large && algo != Algo::Exact {
        usage_error("--allow-large only applies to --algo exact");
    }
    if args.non_overlapping && algo == Algo::Naive {
        usage_error("--non-overlapping is not available with --algo naive; use improved");
    }
    if args.threads == 0 {
        usage_error("--threads must be at least 1");
    }

    let graph = load_graph(&args.graph)?;
    let epsilon = args.epsilon.unwrap_or(DEFAULT_EPSILON);
    let greedy = args.strategy.unwrap_or(Strategy::Greedy) == Strategy::Greedy;
    let heuristic = algo == Algo::Local;

    let mut params = Params::new("search", args.k, args.r);
    params.mode = Some(match args.mode {
        Mode::Unconstrained => "unconstrained",
        Mode::Constrained => "constrained",
    });
    params.algo = Some(match algo {
        Algo::Naive => "naive",
        Algo::Improved => "improved",
        Algo::Exact => "exact",
        Algo::Local => "local",
    });
    params.s = args.s;
    params.epsilon = (algo == Algo::Improved).then_some(epsilon);
    params.strategy = heuristic.then_some(if greedy { "greedy" } else { "random" });
    params.seed = Some(args.seed);
    params.non_overlapping = args.non_overlapping;
    params.threads = Some(args.threads);
    params.heuristic = heuristic;
    args.function.echo(&mut params, kind);

    let search = SearchParams {
        k: args.k,
        r: args.r,
        s: args.s,
        epsilon,
        greedy,
        non_overlapping: args.non_overlapping,
        rng_seed: args.seed,
    };
    let started = Instant::now();
    let result = match algo {
        Algo::Naive => sum_naive(&graph, args.k, args.r, kind)?,
        Algo::Improved if args.non_overlapping => non_overlapping_unconstrained(&graph, args.k, args.r, kind)?,
        Algo::Improved => tic_improved(&graph, args.k, args.r, epsilon, kind)?,
        Algo::Exact => tic_exact(
            &graph,
            &search,
            kind,
            ExactOptions {
                allow_large: args.allow_large,
                threads: args.threads,
            },
        )?,
        Algo::Local => local_search(&graph, &search, kind)?,
    };
    let wall_time_ms = started.elapsed().as_secs_f64() * 1e3;

    let stats = graph_stats(&graph);
    eprintln!(
        "{} communities ({} {}, {}) in {:.1} ms; n={} m={} kmax={}",
        result.len(),
        params.algo.unwrap_or_default(),
        if heuristic { "heuristic" } else { "search" },
        kind,
        wall_time_ms,
        stats.n,
        stats.m,
        stats.kmax
    );
    let report = SearchReport {
        communities: communities_out(&graph, &result, args.k, args.s)?,
        params,
        graph: stats,
        wall_time_ms,
    };
    emit(&report, args.out.as_deref())
}

fn run_oracle(args: OracleArgs) -> CliResult<()> {
    let kind = args.function.resolve();
    let graph = load_graph(&args.graph)?;
    let mut params = Params::new("oracle", args.k, args.r);
    params.s = args.s;
    params.non_overlapping = args.non_overlapping;
    args.function.echo(&mut params, kind);

    let started = Instant::now();
    let result = brute_force_topr(&graph, args.k, args.r, args.s, kind, args.non_overlapping)?;
    let wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
    eprintln!("{} communities (exhaustive, {kind}) in {wall_time_ms:.1} ms", result.len());
    let report = SearchReport {
        communities: communities_out(&graph, &result, args.k, args.s)?,
        params,
        graph: graph_stats(&graph),
        wall_time_ms,
    };
    emit(&report, args.out.as_deref())
}

fn run_pagerank(args: PagerankArgs) -> CliResult<()> {
    let graph = parse_edge_list(open(&args.input)?)?;
    let scores = pagerank(&graph, args.damping, args.tol, args.max_iter)?;
    write_file(&args.out, &format_weights(&graph, &scores, |_| true))?;
    eprintln!("wrote {} PageRank scores to {}", scores.len(), args.out.display());
    emit(
        &FilesReport {
            graph: graph_stats(&graph),
            files: vec![args.out.display().to_string()],
        },
        None,
    )
}

fn run_gen(args: GenArgs) -> CliResult<()> {
    let spec = PowerLawSpec {
        n: args.n,
        gamma: args.gamma,
        min_degree: args.min_degree,
        seed: args.seed,
    };
    let graph = generate_powerlaw(&spec)?;
    let weights = match args.weights {
        WeightSource::Uniform => graph.weights().to_vec(),
        WeightSource::Pagerank => pagerank(&graph, DEFAULT_DAMPING, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)?,
    };
    let mut weights_path = args.out.clone().into_os_string();
    weights_path.push(".weights");
    let weights_path = PathBuf::from(weights_path);
    write_file(&args.out, &format_edge_list(&graph))?;
    // Isolated vertices cannot appear in an edge list, so their weights are dropped too.
    write_file(&weights_path, &format_weights(&graph, &weights, |v| graph.degree(v) > 0))?;
    eprintln!(
        "generated n={} m={} into {} and {}",
        graph.vertex_count(),
        graph.edge_count(),
        args.out.display(),
        weights_path.display()
    );
    emit(
        &FilesReport {
            graph: graph_stats(&graph),
            files: vec![args.out.display().to_string(), weights_path.display().to_string()],
        },
        None,
    )
}

fn read_ranking(path: &Path) -> CliResult<ResultList> {
    let report: RankingIn = serde_json::from_reader(open(path)?).map_err(|source| CliError::Json {
        path: path.to_owned(),
        source,
    })?;
    let entries = report
        .communities
        .into_iter()
        .map(|c| Community {
            members: c.members.iter().map(|&l| l as usize).collect(),
            value: c.value,
            k: 0,
            kind: Aggregation::Sum,
        })
        .collect();
    Ok(ResultList::from_ranked(entries))
}

fn run_eval_ndcg(args: EvalNdcgArgs) -> CliResult<()> {
    if args.r == 0 {
        usage_error("--r must be at least 1");
    }
    let result = read_ranking(&args.result)?;
    let ideal = read_ranking(&args.ideal)?;
    if ideal.iter().chain(&result).any(|c| c.value < 0.0) {
        return Err(CliError::Contract("NDCG needs non-negative values".into()));
    }
    let score = ndcg(&result, &ideal, args.r);
    eprintln!("NDCG@{} = {score}", args.r);
    emit(&NdcgReport { ndcg: score, r: args.r }, None)
}

fn run_core_stats(args: CoreStatsArgs) -> CliResult<()> {
    let graph = parse_edge_list(open(&args.input)?)?;
    let stats = graph_stats(&graph);
    let ks: Vec<usize> = match args.k {
        Some(k) => vec![k],
        None => (1..=stats.kmax).collect(),
    };
    let cores = ks
        .into_iter()
        .map(|k| {
            let core = k_core(&graph, k);
            let members = core.members();
            let m = members.iter().map(|&v| core.degree(v)).sum::<usize>() / 2;
            CoreOut {
                k,
                n: core.len(),
                m,
                components: connected_components(&core).len(),
            }
        })
        .collect::<Vec<_>>();
    for c in &cores {
        eprintln!("{}-core: n={} m={} components={}", c.k, c.n, c.m, c.components);
    }
    emit(&CoreStatsReport { graph: stats, cores }, None)
}
