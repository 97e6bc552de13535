//! Budget sweeps over algorithms and seeds, with CSV and plot-data output.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use crate::bias::{budget_allocation, compute_brs, even_split, parochial_of};
use crate::config::{Backend, WalkConfig};
use crate::error::{Error, Result};
use crate::exact::{gain_between, BrTable};
use crate::graph::{Color, ColoredGraph};
use crate::recommender::{Algorithm, StepGenerator};
use crate::scalar::Scalar;

pub const CSV_HEADER: [&str; 7] = ["algo", "K", "pct_candidate", "delta", "pct_parochial", "seed", "runtime_ms"];

/// Marker written in place of metrics for a failed cell.
pub const ERROR_MARKER: &str = "ERR";

/// One (algorithm, budget, seed) cell of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub algo: String,
    pub k: usize,
    /// `k` as a percentage of the candidate universe.
    pub pct_candidate: f64,
    /// Mean bubble-radius drop over the parochial nodes of the input graph.
    pub delta: f64,
    /// Share of the input's parochial nodes that are no longer parochial.
    pub pct_parochial: f64,
    pub seed: u64,
    pub runtime_ms: f64,
    pub error: Option<String>,
}

impl ExperimentRecord {
    fn csv_row(&self) -> Vec<String> {
        let (delta, pct) = match self.error {
            Some(_) => (ERROR_MARKER.to_string(), ERROR_MARKER.to_string()),
            None => (self.delta.to_string(), self.pct_parochial.to_string()),
        };
        vec![
            self.algo.clone(),
            self.k.to_string(),
            self.pct_candidate.to_string(),
            delta,
            pct,
            self.seed.to_string(),
            self.runtime_ms.to_string(),
        ]
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub algorithms: Vec<Algorithm>,
    /// Total insertion budgets, ascending.
    pub k_list: Vec<usize>,
    pub seeds: Vec<u64>,
    pub walk: WalkConfig,
    pub backend: Backend,
    /// When false every `runtime_ms` is 0, making output byte-reproducible.
    pub record_runtime: bool,
}

impl SweepConfig {
    pub fn new(walk: WalkConfig, k_list: Vec<usize>, seeds: Vec<u64>) -> Self {
        Self { algorithms: Algorithm::all(), k_list, seeds, walk, backend: Backend::Exact, record_runtime: true }
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub records: Vec<ExperimentRecord>,
    pub candidate_universe: usize,
    pub failures: usize,
}

/// Budgets `1, 2, 4, 6, 8, ...` up to and including `cap`.
pub fn default_k_list(cap: usize) -> Vec<usize> {
    let mut out = Vec::new();
    if cap >= 1 {
        out.push(1);
    }
    out.extend((2..=cap).step_by(2));
    out
}

/// Number of absent cross-color edges leaving the given parochial nodes.
pub fn candidate_universe<T: Scalar>(g: &ColoredGraph<T>, parochial: &[usize]) -> usize {
    parochial
        .iter()
        .map(|&v| {
            let other = g.color(v).opposite();
            let existing = g.out_targets(v).iter().filter(|&&u| g.color(u) == other).count();
            g.count_of(other) - existing
        })
        .sum()
}

struct Baseline<T> {
    brs: BrTable<T>,
    parochial: Vec<usize>,
    y_red: f64,
    y_blue: f64,
    universe: usize,
}

fn baseline<T: Scalar>(g: &ColoredGraph<T>, cfg: &SweepConfig) -> Result<Baseline<T>> {
    let brs = compute_brs(g, &cfg.walk, cfg.backend, cfg.walk.seed)?;
    let red = parochial_of(&brs, g.colors(), Color::Red, cfg.walk.theta_bad);
    let blue = parochial_of(&brs, g.colors(), Color::Blue, cfg.walk.theta_bad);
    let mass = |p: &[usize]| p.iter().map(|&v| brs.get(v).to_real()).sum::<f64>();
    let (y_red, y_blue) = (mass(&red), mass(&blue));
    let mut parochial: Vec<usize> = red.iter().chain(&blue).copied().collect();
    parochial.sort_unstable();
    let universe = candidate_universe(g, &parochial);
    Ok(Baseline { brs, parochial, y_red, y_blue, universe })
}

fn split(base: &Baseline<impl Scalar>, k: usize) -> (usize, usize) {
    budget_allocation(base.y_red, base.y_blue, k).unwrap_or_else(|_| even_split(k))
}

fn pct_of(k: usize, universe: usize) -> f64 {
    if universe == 0 {
        0.0
    } else {
        100.0 * k as f64 / universe as f64
    }
}

/// Runs one algorithm for one seed across every budget.
fn run_cell<T: Scalar>(
    g: &ColoredGraph<T>,
    cfg: &SweepConfig,
    base: &Baseline<T>,
    algo: Algorithm,
    seed: u64,
) -> Vec<ExperimentRecord> {
    let walk = cfg.walk.clone().with_seed(seed);
    let started = Instant::now();
    let mut gens: Result<Vec<Box<dyn StepGenerator<T> + '_>>> =
        Color::BOTH.iter().map(|&c| algo.generator(g, c, &walk, cfg.backend, seed)).collect();
    let mut out = Vec::with_capacity(cfg.k_list.len());
    for &k in &cfg.k_list {
        let mut record = ExperimentRecord {
            algo: algo.to_string(),
            k,
            pct_candidate: pct_of(k, base.universe),
            delta: 0.0,
            pct_parochial: 0.0,
            seed,
            runtime_ms: 0.0,
            error: None,
        };
        let result = match &mut gens {
            Ok(gens) => evaluate(g, cfg, base, gens, k),
            Err(e) => Err(e.clone()),
        };
        if cfg.record_runtime {
            record.runtime_ms = started.elapsed().as_secs_f64() * 1e3;
        }
        match result {
            Ok((delta, pct)) => {
                record.delta = delta;
                record.pct_parochial = pct;
            }
            Err(e) => {
                log::warn!("{algo} K={k} seed={seed}: {e}");
                record.error = Some(e.to_string());
                // later budgets extend this plan, so they fail too
                if gens.is_ok() {
                    gens = Err(e);
                }
            }
        }
        out.push(record);
    }
    out
}

fn evaluate<T: Scalar>(
    g: &ColoredGraph<T>,
    cfg: &SweepConfig,
    base: &Baseline<T>,
    gens: &mut [Box<dyn StepGenerator<T> + '_>],
    k: usize,
) -> Result<(f64, f64)> {
    let (k_red, k_blue) = split(base, k);
    let mut updated = None;
    for (gen, budget) in gens.iter_mut().zip([k_red, k_blue]) {
        gen.run_to(budget)?;
        let plan = gen.plan().prefix(budget);
        if !plan.is_empty() {
            updated = Some(updated.as_ref().unwrap_or(g).apply_plan(&plan)?);
        }
    }
    let Some(updated) = updated else { return Ok((0.0, 0.0)) };
    if base.parochial.is_empty() {
        return Ok((0.0, 0.0));
    }
    let after = compute_brs(&updated, &cfg.walk, cfg.backend, cfg.walk.seed)?;
    let delta = gain_between(&base.brs, &after, &base.parochial).to_real();
    let remaining = Color::BOTH
        .iter()
        .map(|&c| parochial_of(&after, updated.colors(), c, cfg.walk.theta_bad).len())
        .sum::<usize>();
    let before = base.parochial.len();
    let pct = (before.saturating_sub(remaining)) as f64 / before as f64;
    Ok((delta, pct))
}

/// Runs every (algorithm, K, seed) cell.
///
/// Each color's plan for budget `K` is the prefix of that color's plan for
/// the largest budget, so an algorithm runs once per seed and is read off at
/// every budget; `runtime_ms` is the cumulative time up to that budget.
/// Records are returned, and written to `out_path` if given, in algorithm
/// order, then `K`, then seed. A failed cell is kept with an error marker.
pub fn run_sweep<T: Scalar>(g: &ColoredGraph<T>, cfg: &SweepConfig, out_path: Option<&Path>) -> Result<SweepOutcome> {
    cfg.walk.validate()?;
    if cfg.k_list.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter("budgets must be ascending".into()));
    }
    let base = baseline(g, cfg)?;
    let mut writer = match out_path {
        Some(p) => {
            let mut w = csv::Writer::from_path(p)?;
            w.write_record(CSV_HEADER)?;
            w.flush()?;
            Some(w)
        }
        None => None,
    };
    let mut records = Vec::new();
    for &algo in &cfg.algorithms {
        let cells: Vec<Vec<ExperimentRecord>> =
            cfg.seeds.par_iter().map(|&seed| run_cell(g, cfg, &base, algo, seed)).collect();
        let mut rows: Vec<ExperimentRecord> = cells.into_iter().flatten().collect();
        rows.sort_by_key(|r| r.k);
        if let Some(w) = writer.as_mut() {
            for r in &rows {
                w.write_record(r.csv_row())?;
            }
            w.flush()?;
        }
        records.extend(rows);
    }
    let failures = records.iter().filter(|r| r.error.is_some()).count();
    Ok(SweepOutcome { records, candidate_universe: base.universe, failures })
}

/// Mean and population standard deviation.
fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn file_stem(algo: &str) -> String {
    algo.replace('+', "-plus").chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect()
}

/// Writes `<algo>_delta.tsv` and `<algo>_pct_parochial.tsv` per algorithm,
/// each with `pct_candidate`, mean and standard deviation across seeds,
/// ascending in `pct_candidate`. Failed cells are left out.
pub fn emit_plotdata(records: &[ExperimentRecord], out_dir: &Path) -> Result<Vec<PathBuf>> {
    let ok: Vec<&ExperimentRecord> = records.iter().filter(|r| r.error.is_none()).collect();
    if ok.is_empty() {
        return Err(Error::EmptyRecords);
    }
    fs::create_dir_all(out_dir)?;
    // algo -> K -> records, algorithms in first-seen order
    let mut order: Vec<&str> = Vec::new();
    let mut groups: BTreeMap<&str, BTreeMap<usize, Vec<&ExperimentRecord>>> = BTreeMap::new();
    for r in ok {
        if !order.contains(&r.algo.as_str()) {
            order.push(&r.algo);
        }
        groups.entry(&r.algo).or_default().entry(r.k).or_default().push(r);
    }
    let mut written = Vec::new();
    for algo in order {
        let by_k = &groups[algo];
        for (metric, get) in [
            ("delta", (|r: &ExperimentRecord| r.delta) as fn(&ExperimentRecord) -> f64),
            ("pct_parochial", |r: &ExperimentRecord| r.pct_parochial),
        ] {
            let path = out_dir.join(format!("{}_{metric}.tsv", file_stem(algo)));
            let mut f = File::create(&path)?;
            writeln!(f, "pct_candidate\tmean\tstddev")?;
            for rows in by_k.values() {
                let xs: Vec<f64> = rows.iter().map(|r| get(r)).collect();
                let (mean, std) = mean_std(&xs);
                writeln!(f, "{}\t{mean}\t{std}", rows[0].pct_candidate)?;
            }
            written.push(path);
        }
    }
    Ok(written)
}
