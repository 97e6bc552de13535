//! Greedy edge recommenders and randomized baselines.
//!
//! Every algorithm is a [`StepGenerator`]: it emits one insertion per call, so
//! a plan for budget `k` is always the first `k` insertions of a plan for any
//! larger budget.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bias::{compute_brs, parochial_of};
use crate::config::{Backend, WalkConfig};
use crate::error::{Error, Result};
use crate::exact::{self, BrTable};
use crate::graph::{Color, ColoredGraph, EdgeInsertion};
use crate::mc::{self, rng::{derive_seed, Domain, WalkRng}};
use crate::plan::InsertionPlan;
use crate::scalar::{ceil_bound, Scalar};
use crate::weight_oracle;

/// Default share of the parochial set kept by the centrality baselines.
pub const DEFAULT_TOP_PERCENT: f64 = 10.0;

/// How the target of an insertion is chosen among legal other-colored nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TargetPolicy {
    /// Smallest current bubble radius, ties to the lowest id.
    #[default]
    LowestBr,
    /// Uniform over legal targets from a seeded stream.
    UniformSeeded(u64),
}

/// Legal targets for a new edge out of `v`, ascending.
pub fn legal_targets<T: Scalar>(g: &ColoredGraph<T>, v: usize, plan: &InsertionPlan<T>) -> Vec<usize> {
    let other = g.color(v).opposite();
    g.nodes().filter(|&u| g.color(u) == other && plan.is_open(g, v, u)).collect()
}

fn has_legal_target<T: Scalar>(g: &ColoredGraph<T>, v: usize, plan: &InsertionPlan<T>) -> bool {
    let other = g.color(v).opposite();
    let existing = g.out_targets(v).iter().filter(|&&u| g.color(u) == other).count();
    existing + plan.count_from(v) < g.count_of(other)
}

/// Picks the target of the next insertion out of `v`.
pub fn select_target<T: Scalar>(
    g: &ColoredGraph<T>,
    brs: &BrTable<T>,
    v: usize,
    plan: &InsertionPlan<T>,
    policy: TargetPolicy,
) -> Result<usize> {
    if !g.contains_node(v) {
        return Err(Error::UnknownNode(v));
    }
    if g.count_of(g.color(v).opposite()) == 0 {
        return Err(Error::NoOppositeColor(g.color(v).opposite()));
    }
    let open = legal_targets(g, v, plan);
    let pick = match policy {
        TargetPolicy::LowestBr => {
            let mut best: Option<usize> = None;
            for &u in &open {
                if best.is_none_or(|b| brs.get(u) < brs.get(b)) {
                    best = Some(u);
                }
            }
            best
        }
        TargetPolicy::UniformSeeded(seed) => {
            if open.is_empty() {
                None
            } else {
                let mut rng = WalkRng::new(seed, Domain::Target, v as u64, plan.len() as u64);
                Some(open[rng.below(open.len())])
            }
        }
    };
    pick.ok_or(Error::NoLegalTarget(v))
}

fn check_colors<T: Scalar>(g: &ColoredGraph<T>, color: Color) -> Result<()> {
    if g.count_of(color.opposite()) == 0 {
        return Err(Error::NoOppositeColor(color.opposite()));
    }
    if g.count_of(color) == 0 {
        return Err(Error::NoOppositeColor(color));
    }
    Ok(())
}

/// Centralities of `nodes` with respect to the source set `nodes`.
fn centralities<T: Scalar>(
    g: &ColoredGraph<T>,
    nodes: &[usize],
    cfg: &WalkConfig,
    backend: Backend,
    seed: u64,
) -> Result<Vec<T>> {
    if nodes.is_empty() {
        return Ok(Vec::new());
    }
    let horizon = cfg.centrality_horizon();
    match backend {
        Backend::Exact => exact::exact_rwcc_many(g, nodes, nodes, horizon),
        Backend::MonteCarlo => Ok(mc::estimate_rwcc_many(g, nodes, nodes, horizon, cfg.epsilon, cfg.delta, cfg.kappa, seed)?
            .into_iter()
            .map(T::from_real)
            .collect()),
    }
}

/// An algorithm that grows an insertion plan one edge at a time.
pub trait StepGenerator<T: Scalar> {
    /// Adds one insertion, or returns `None` (marking the plan as stopped
    /// early) when no parochial source with a legal target is left.
    fn step(&mut self) -> Result<Option<EdgeInsertion<T>>>;

    fn plan(&self) -> &InsertionPlan<T>;

    fn into_plan(self: Box<Self>) -> InsertionPlan<T>;

    /// Runs until `k` insertions are planned or the algorithm stops.
    fn run_to(&mut self, k: usize) -> Result<()> {
        while self.plan().len() < k {
            if self.step()?.is_none() {
                break;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GreedyKind {
    Recompute,
    Penalized,
}

struct StaticScores<T> {
    brs: BrTable<T>,
    parochial: Vec<usize>,
    centrality: Vec<T>,
}

/// The greedy recommender in both flavours.
///
/// The recomputing flavour re-derives the parochial set, bubble radii and
/// centralities on `G` plus the plan at every step and maximizes
/// `R(v) * W(v, plan)`. The penalized flavour computes them once on `G` and
/// maximizes `R(v) * W(v, plan) / eta_v`.
pub struct Greedy<'g, T: Scalar> {
    g: &'g ColoredGraph<T>,
    cfg: WalkConfig,
    backend: Backend,
    policy: TargetPolicy,
    kind: GreedyKind,
    plan: InsertionPlan<T>,
    fixed: Option<StaticScores<T>>,
}

impl<'g, T: Scalar> Greedy<'g, T> {
    pub fn repbublik(g: &'g ColoredGraph<T>, color: Color, cfg: &WalkConfig, backend: Backend) -> Result<Self> {
        Self::new(g, color, cfg, backend, GreedyKind::Recompute)
    }

    pub fn repbublik_plus(g: &'g ColoredGraph<T>, color: Color, cfg: &WalkConfig, backend: Backend) -> Result<Self> {
        Self::new(g, color, cfg, backend, GreedyKind::Penalized)
    }

    fn new(g: &'g ColoredGraph<T>, color: Color, cfg: &WalkConfig, backend: Backend, kind: GreedyKind) -> Result<Self> {
        check_colors(g, color)?;
        Ok(Self {
            g,
            cfg: cfg.clone(),
            backend,
            policy: TargetPolicy::default(),
            kind,
            plan: InsertionPlan::new(color),
            fixed: None,
        })
    }

    pub fn with_policy(mut self, policy: TargetPolicy) -> Self {
        self.policy = policy;
        self
    }

    fn scores(&self, current: &ColoredGraph<T>, seed: u64) -> Result<StaticScores<T>> {
        let brs = compute_brs(current, &self.cfg, self.backend, seed)?;
        let parochial = parochial_of(&brs, current.colors(), self.plan.color(), self.cfg.theta_bad);
        let centrality = centralities(current, &parochial, &self.cfg, self.backend, seed)?;
        Ok(StaticScores { brs, parochial, centrality })
    }

    fn step_recompute(&mut self) -> Result<Option<EdgeInsertion<T>>> {
        let seed = match self.plan.len() {
            0 => self.cfg.seed,
            i => derive_seed(self.cfg.seed, Domain::Iteration, i as u64, 0),
        };
        let current = self.g.apply_plan(&self.plan)?;
        let s = self.scores(&current, seed)?;
        let mut best: Option<(usize, T)> = None;
        for (&v, &r) in s.parochial.iter().zip(&s.centrality) {
            if !has_legal_target(self.g, v, &self.plan) {
                continue;
            }
            let score = r * weight_oracle(self.g, v, &self.plan);
            if best.is_none_or(|(_, b)| score > b) {
                best = Some((v, score));
            }
        }
        let Some((v, _)) = best else { return Ok(None) };
        self.insert_from(v, &s.brs).map(Some)
    }

    fn step_penalized(&mut self) -> Result<Option<EdgeInsertion<T>>> {
        if self.fixed.is_none() {
            self.fixed = Some(self.scores(self.g, self.cfg.seed)?);
        }
        let s = self.fixed.as_ref().expect("scores computed above");
        // ties: fewer planned edges first, then lowest id
        let mut best: Option<(usize, T, usize)> = None;
        for (&v, &r) in s.parochial.iter().zip(&s.centrality) {
            if !has_legal_target(self.g, v, &self.plan) {
                continue;
            }
            let eta = self.plan.eta(v);
            let score = r * weight_oracle(self.g, v, &self.plan) / T::from_count(eta);
            let better = match best {
                None => true,
                Some((_, b, e)) => score > b || (score == b && eta < e),
            };
            if better {
                best = Some((v, score, eta));
            }
        }
        let Some((v, _, _)) = best else { return Ok(None) };
        let brs = self.fixed.take().expect("scores computed above");
        let out = self.insert_from(v, &brs.brs);
        self.fixed = Some(brs);
        out.map(Some)
    }

    fn insert_from(&mut self, v: usize, brs: &BrTable<T>) -> Result<EdgeInsertion<T>> {
        let u = select_target(self.g, brs, v, &self.plan, self.policy)?;
        let e = EdgeInsertion::new(v, u, weight_oracle(self.g, v, &self.plan));
        self.plan.push(self.g, e)?;
        Ok(e)
    }
}

impl<T: Scalar> StepGenerator<T> for Greedy<'_, T> {
    fn step(&mut self) -> Result<Option<EdgeInsertion<T>>> {
        let out = match self.kind {
            GreedyKind::Recompute => self.step_recompute()?,
            GreedyKind::Penalized => self.step_penalized()?,
        };
        if out.is_none() {
            self.plan.mark_stopped_early();
        }
        Ok(out)
    }

    fn plan(&self) -> &InsertionPlan<T> {
        &self.plan
    }

    fn into_plan(self: Box<Self>) -> InsertionPlan<T> {
        self.plan
    }
}

/// Randomized baseline: sources drawn uniformly from a fixed pool of
/// parochial nodes computed once on `G`, targets uniform among legal ones.
pub struct Baseline<'g, T: Scalar> {
    g: &'g ColoredGraph<T>,
    pool: Vec<usize>,
    plan: InsertionPlan<T>,
    rng: ChaCha8Rng,
}

impl<'g, T: Scalar> Baseline<'g, T> {
    /// Pool is the whole parochial set of `color`.
    pub fn pure_random(g: &'g ColoredGraph<T>, color: Color, cfg: &WalkConfig, backend: Backend, seed: u64) -> Result<Self> {
        check_colors(g, color)?;
        let brs = compute_brs(g, cfg, backend, cfg.seed)?;
        let pool = parochial_of(&brs, g.colors(), color, cfg.theta_bad);
        Ok(Self::with_pool(g, color, pool, seed))
    }

    /// Pool is the top `percent` of the parochial set by centrality.
    pub fn rcn(
        g: &'g ColoredGraph<T>,
        color: Color,
        percent: f64,
        cfg: &WalkConfig,
        backend: Backend,
        seed: u64,
    ) -> Result<Self> {
        Self::ranked(g, color, percent, cfg, backend, seed, false)
    }

    /// Pool is the top `percent` of the parochial set by centrality times
    /// the weight a first new edge would get.
    pub fn rwcn(
        g: &'g ColoredGraph<T>,
        color: Color,
        percent: f64,
        cfg: &WalkConfig,
        backend: Backend,
        seed: u64,
    ) -> Result<Self> {
        Self::ranked(g, color, percent, cfg, backend, seed, true)
    }

    fn ranked(
        g: &'g ColoredGraph<T>,
        color: Color,
        percent: f64,
        cfg: &WalkConfig,
        backend: Backend,
        seed: u64,
        weighted: bool,
    ) -> Result<Self> {
        if !(percent > 0.0 && percent < 100.0) {
            return Err(Error::InvalidPercentage(percent));
        }
        check_colors(g, color)?;
        let brs = compute_brs(g, cfg, backend, cfg.seed)?;
        let parochial = parochial_of(&brs, g.colors(), color, cfg.theta_bad);
        let scores = ranking_scores(g, &parochial, cfg, backend, weighted)?;
        let mut ranked: Vec<(usize, T)> = parochial.into_iter().zip(scores).collect();
        ranked.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal).then(a.0.cmp(&b.0)));
        let size = pool_size(ranked.len(), percent);
        let pool = ranked.into_iter().take(size).map(|(v, _)| v).collect();
        Ok(Self::with_pool(g, color, pool, seed))
    }

    fn with_pool(g: &'g ColoredGraph<T>, color: Color, pool: Vec<usize>, seed: u64) -> Self {
        if pool.is_empty() {
            log::warn!("no parochial {color} nodes; baseline plan stays empty");
        }
        let stream = derive_seed(seed, Domain::Baseline, color as u64, 0);
        Self { g, pool, plan: InsertionPlan::new(color), rng: ChaCha8Rng::seed_from_u64(stream) }
    }

    /// Source pool in ranking order.
    pub fn pool(&self) -> &[usize] {
        &self.pool
    }
}

/// `ceil(percent% * parochial)` nodes, at least one when any exist.
pub fn pool_size(parochial: usize, percent: f64) -> usize {
    if parochial == 0 {
        return 0;
    }
    (ceil_bound(parochial as f64 * percent / 100.0) as usize).clamp(1, parochial)
}

/// Scores the centrality baselines rank by.
pub fn ranking_scores<T: Scalar>(
    g: &ColoredGraph<T>,
    parochial: &[usize],
    cfg: &WalkConfig,
    backend: Backend,
    weighted: bool,
) -> Result<Vec<T>> {
    let mut scores = centralities(g, parochial, cfg, backend, cfg.seed)?;
    if weighted {
        let empty = InsertionPlan::new(g.color(parochial.first().copied().unwrap_or(0)));
        for (s, &v) in scores.iter_mut().zip(parochial) {
            *s *= weight_oracle(g, v, &empty);
        }
    }
    Ok(scores)
}

impl<T: Scalar> StepGenerator<T> for Baseline<'_, T> {
    fn step(&mut self) -> Result<Option<EdgeInsertion<T>>> {
        let live: Vec<usize> = self.pool.iter().copied().filter(|&v| has_legal_target(self.g, v, &self.plan)).collect();
        if live.is_empty() {
            self.plan.mark_stopped_early();
            return Ok(None);
        }
        let v = live[self.rng.random_range(0..live.len())];
        let open = legal_targets(self.g, v, &self.plan);
        let u = open[self.rng.random_range(0..open.len())];
        let e = EdgeInsertion::new(v, u, weight_oracle(self.g, v, &self.plan));
        self.plan.push(self.g, e)?;
        Ok(Some(e))
    }

    fn plan(&self) -> &InsertionPlan<T> {
        &self.plan
    }

    fn into_plan(self: Box<Self>) -> InsertionPlan<T> {
        self.plan
    }
}

/// Registered recommendation algorithms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Algorithm {
    RePBubLik,
    RePBubLikPlus,
    PureRandom,
    /// Top-N percent by centrality.
    Rcn(f64),
    /// Top-N percent by centrality times new-edge weight.
    Rwcn(f64),
}

impl Algorithm {
    /// The five algorithms compared by a default sweep.
    pub fn all() -> Vec<Algorithm> {
        vec![
            Algorithm::RePBubLik,
            Algorithm::RePBubLikPlus,
            Algorithm::PureRandom,
            Algorithm::Rcn(DEFAULT_TOP_PERCENT),
            Algorithm::Rwcn(DEFAULT_TOP_PERCENT),
        ]
    }

    /// Whether `seed` changes the output under the exact backend.
    pub fn is_randomized(self) -> bool {
        matches!(self, Algorithm::PureRandom | Algorithm::Rcn(_) | Algorithm::Rwcn(_))
    }

    /// Step generator for one color. `seed` drives the baselines; the greedy
    /// algorithms take theirs from `cfg`.
    pub fn generator<'g, T: Scalar>(
        self,
        g: &'g ColoredGraph<T>,
        color: Color,
        cfg: &WalkConfig,
        backend: Backend,
        seed: u64,
    ) -> Result<Box<dyn StepGenerator<T> + 'g>> {
        Ok(match self {
            Algorithm::RePBubLik => Box::new(Greedy::repbublik(g, color, cfg, backend)?),
            Algorithm::RePBubLikPlus => Box::new(Greedy::repbublik_plus(g, color, cfg, backend)?),
            Algorithm::PureRandom => Box::new(Baseline::pure_random(g, color, cfg, backend, seed)?),
            Algorithm::Rcn(n) => Box::new(Baseline::rcn(g, color, n, cfg, backend, seed)?),
            Algorithm::Rwcn(n) => Box::new(Baseline::rwcn(g, color, n, cfg, backend, seed)?),
        })
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::RePBubLik => f.write_str("repbublik"),
            Algorithm::RePBubLikPlus => f.write_str("repbublik+"),
            Algorithm::PureRandom => f.write_str("pure-random"),
            Algorithm::Rcn(n) => write!(f, "{n}-rcn"),
            Algorithm::Rwcn(n) => write!(f, "{n}-rwcn"),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    /// Accepts `repbublik`, `repbublik+` (or `repbublik-plus`), `pure-random`,
    /// and `rcn` / `rwcn` with an optional `N-` prefix.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let percent = |prefix: &str| -> Result<f64> {
            if prefix.is_empty() {
                return Ok(DEFAULT_TOP_PERCENT);
            }
            let n: f64 = prefix
                .trim_end_matches('-')
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("unknown algorithm {s:?}")))?;
            if n > 0.0 && n < 100.0 {
                Ok(n)
            } else {
                Err(Error::InvalidPercentage(n))
            }
        };
        match s.as_str() {
            "repbublik" => Ok(Algorithm::RePBubLik),
            "repbublik+" | "repbublik-plus" | "repbublikplus" => Ok(Algorithm::RePBubLikPlus),
            "pure-random" | "purerandom" | "random" => Ok(Algorithm::PureRandom),
            _ if s.ends_with("rwcn") => Ok(Algorithm::Rwcn(percent(&s[..s.len() - 4])?)),
            _ if s.ends_with("rcn") => Ok(Algorithm::Rcn(percent(&s[..s.len() - 3])?)),
            _ => Err(Error::InvalidParameter(format!("unknown algorithm {s:?}"))),
        }
    }
}

/// Greedy plan that recomputes scores on the updated graph at every step.
pub fn repbublik<T: Scalar>(
    g: &ColoredGraph<T>,
    color: Color,
    k: usize,
    cfg: &WalkConfig,
    backend: Backend,
) -> Result<InsertionPlan<T>> {
    let mut gen = Greedy::repbublik(g, color, cfg, backend)?;
    gen.run_to(k)?;
    Ok(gen.plan)
}

/// Greedy plan from scores computed once, with the repeat-source penalty.
pub fn repbublik_plus<T: Scalar>(
    g: &ColoredGraph<T>,
    color: Color,
    k: usize,
    cfg: &WalkConfig,
    backend: Backend,
) -> Result<InsertionPlan<T>> {
    let mut gen = Greedy::repbublik_plus(g, color, cfg, backend)?;
    gen.run_to(k)?;
    Ok(gen.plan)
}

/// Plan for `k` insertions from `algorithm`.
pub fn recommend<T: Scalar>(
    g: &ColoredGraph<T>,
    color: Color,
    k: usize,
    algorithm: Algorithm,
    cfg: &WalkConfig,
    backend: Backend,
    seed: u64,
) -> Result<InsertionPlan<T>> {
    let mut gen = algorithm.generator(g, color, cfg, backend, seed)?;
    gen.run_to(k)?;
    Ok(gen.into_plan())
}
