use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bubble_radius::harness::{
    default_k_list, emit_plotdata, generate_gadget, generate_polarized, load_dataset, run_sweep, write_dataset,
    DatasetStats, LoadOptions, SweepConfig,
};
use bubble_radius::{
    classify, compute_brs, exact, mc, recommend, Algorithm, Backend, Color, Error, Graph, Result, WalkConfig,
};

#[derive(Parser)]
#[command(name = "bubble-radius", version, about = "Bubble radius analysis and edge recommendation")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Walk horizon.
    #[arg(long, global = true, default_value_t = 10)]
    t: usize,
    /// Cosmopolitan threshold.
    #[arg(long, global = true, default_value_t = 2.0)]
    theta_good: f64,
    /// Parochial threshold [default: t/2].
    #[arg(long, global = true)]
    theta_bad: Option<f64>,
    #[arg(long, global = true, default_value_t = 0.5)]
    epsilon: f64,
    #[arg(long, global = true, default_value_t = 0.05)]
    delta: f64,
    /// Walks per sampled source for centrality estimates.
    #[arg(long, global = true, default_value_t = 4)]
    kappa: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// exact | mc
    #[arg(long, global = true, default_value = "exact")]
    backend: Backend,
    /// Output file or directory; stdout when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

impl Global {
    fn walk(&self) -> Result<WalkConfig> {
        let cfg = WalkConfig::new(self.t)
            .with_thresholds(self.theta_good, self.theta_bad.unwrap_or(self.t as f64 / 2.0))
            .with_accuracy(self.epsilon, self.delta)
            .with_kappa(self.kappa)
            .with_seed(self.seed);
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct Input {
    /// Edge TSV: src, dst, weight.
    edges: PathBuf,
    /// Color TSV: node, R|B.
    colors: PathBuf,
    /// Rescale out-weights to sum to one.
    #[arg(long)]
    normalize: bool,
}

impl Input {
    fn load(&self) -> Result<Graph> {
        Ok(load_dataset(&self.edges, &self.colors, LoadOptions { normalize_weights: self.normalize })?.graph)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Size, cross-edge and parochial statistics.
    Stats(Input),
    /// Bubble radius of every node.
    Br(Input),
    /// Centrality of every parochial node of one color.
    Rwcc {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "R")]
        color: Color,
    },
    /// Edge recommendations for one color.
    Recommend {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "R")]
        color: Color,
        #[arg(long, short)]
        k: usize,
        #[arg(long, default_value = "repbublik+")]
        algorithm: Algorithm,
    },
    /// Budget sweep over algorithms and seeds.
    Sweep {
        #[command(flatten)]
        input: Input,
        /// Comma-separated algorithms [default: all].
        #[arg(long, value_delimiter = ',')]
        algorithms: Vec<Algorithm>,
        /// Comma-separated budgets [default: 1,2,4,6,... up to --max-k].
        #[arg(long, value_delimiter = ',')]
        k: Vec<usize>,
        /// Largest default budget [default: candidate universe size].
        #[arg(long)]
        max_k: Option<usize>,
        /// Number of seeds, counting up from --seed.
        #[arg(long, default_value_t = 10)]
        repetitions: u64,
        /// Write 0 as runtime so that output is reproducible.
        #[arg(long)]
        no_runtime: bool,
        /// Directory for per-curve plot data.
        #[arg(long)]
        plot_dir: Option<PathBuf>,
    },
    /// Set-cover gadget from a set file, one set per line as element ids.
    GenGadget {
        sets: PathBuf,
        /// Write `<prefix>.edges.tsv` and `<prefix>.colors.tsv`.
        prefix: PathBuf,
    },
    /// Random two-community graph.
    GenPolarized {
        #[arg(long)]
        n_red: usize,
        #[arg(long)]
        n_blue: usize,
        #[arg(long)]
        p_within: f64,
        #[arg(long)]
        p_cross: f64,
        prefix: PathBuf,
    },
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(fs::File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_pair(g: &Graph, prefix: &Path) -> Result<()> {
    let base = prefix.to_string_lossy();
    write_dataset(g, Path::new(&format!("{base}.edges.tsv")), Path::new(&format!("{base}.colors.tsv")))
}

fn parse_sets(text: &str) -> Result<(usize, Vec<Vec<usize>>)> {
    let mut sets = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let set = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| Error::ParseError { line: i + 1, message: format!("bad element {s:?}") }))
            .collect::<Result<Vec<usize>>>()?;
        sets.push(set);
    }
    let universe = sets.iter().flatten().max().map_or(0, |m| m + 1);
    Ok((universe, sets))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let g = &cli.global;
    let walk = g.walk()?;
    match cli.command {
        Command::Stats(input) => {
            let graph = input.load()?;
            let brs = compute_brs(&graph, &walk, g.backend, walk.seed)?;
            let mut out = output(&g.output)?;
            writeln!(out, "{}", DatasetStats::HEADER)?;
            writeln!(out, "{}", DatasetStats::compute(&graph, &brs, walk.theta_bad))?;
        }
        Command::Br(input) => {
            let graph = input.load()?;
            let brs = compute_brs(&graph, &walk, g.backend, walk.seed)?;
            let part = classify(&brs, graph.colors(), walk.theta_good, walk.theta_bad)?;
            let mut out = output(&g.output)?;
            writeln!(out, "node\tcolor\tbr\tclass")?;
            for v in graph.nodes() {
                let class = if part.cosmopolitan.binary_search(&v).is_ok() {
                    "cosmopolitan"
                } else if part.parochial(graph.color(v)).binary_search(&v).is_ok() {
                    "parochial"
                } else {
                    "neutral"
                };
                writeln!(out, "{v}\t{}\t{}\t{class}", graph.color(v), brs.get(v))?;
            }
        }
        Command::Rwcc { input, color } => {
            let graph = input.load()?;
            let brs = compute_brs(&graph, &walk, g.backend, walk.seed)?;
            let nodes = bubble_radius::parochial_of(&brs, graph.colors(), color, walk.theta_bad);
            let horizon = walk.centrality_horizon();
            let values: Vec<f64> = if nodes.is_empty() {
                Vec::new()
            } else {
                match g.backend {
                    Backend::Exact => exact::exact_rwcc_many(&graph, &nodes, &nodes, horizon)?,
                    Backend::MonteCarlo => mc::estimate_rwcc_many(
                        &graph, &nodes, &nodes, horizon, walk.epsilon, walk.delta, walk.kappa, walk.seed,
                    )?,
                }
            };
            let mut out = output(&g.output)?;
            writeln!(out, "node\trwcc")?;
            for (v, c) in nodes.iter().zip(values) {
                writeln!(out, "{v}\t{c}")?;
            }
        }
        Command::Recommend { input, color, k, algorithm } => {
            let graph = input.load()?;
            let plan = recommend(&graph, color, k, algorithm, &walk, g.backend, walk.seed)?;
            let mut out = output(&g.output)?;
            writeln!(out, "src\tdst\tweight")?;
            for e in plan.iter() {
                writeln!(out, "{}\t{}\t{}", e.src, e.dst, e.weight)?;
            }
            if plan.stopped_early() {
                log::warn!("stopped after {} of {k} insertions", plan.len());
            }
        }
        Command::Sweep { input, algorithms, k, max_k, repetitions, no_runtime, plot_dir } => {
            let graph = input.load()?;
            let mut cfg = SweepConfig::new(walk.clone(), k, (0..repetitions).map(|i| walk.seed + i).collect());
            if !algorithms.is_empty() {
                cfg.algorithms = algorithms;
            }
            cfg.backend = g.backend;
            cfg.record_runtime = !no_runtime;
            if cfg.k_list.is_empty() {
                let brs = compute_brs(&graph, &walk, g.backend, walk.seed)?;
                let part = classify(&brs, graph.colors(), walk.theta_good, walk.theta_bad)?;
                let universe = bubble_radius::harness::candidate_universe(&graph, &part.all_parochial());
                cfg.k_list = default_k_list(max_k.map_or(universe, |m| m.min(universe)));
            }
            let csv_path = g.output.clone().unwrap_or_else(|| PathBuf::from("sweep.csv"));
            let outcome = run_sweep(&graph, &cfg, Some(&csv_path))?;
            if let Some(dir) = plot_dir {
                emit_plotdata(&outcome.records, &dir)?;
            }
            if outcome.failures > 0 {
                log::error!("{} of {} cells failed", outcome.failures, outcome.records.len());
                return Ok(ExitCode::from(2));
            }
        }
        Command::GenGadget { sets, prefix } => {
            let (universe, sets) = parse_sets(&fs::read_to_string(sets)?)?;
            let gadget = generate_gadget::<f64>(universe, &sets, walk.t)?;
            write_pair(&gadget.graph, &prefix)?;
        }
        Command::GenPolarized { n_red, n_blue, p_within, p_cross, prefix } => {
            let graph = generate_polarized::<f64>(n_red, n_blue, p_within, p_cross, walk.seed)?;
            write_pair(&graph, &prefix)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
