//! Exact dynamic programming for bounded random-walk quantities.
//!
//! Every routine propagates probability mass step by step over the sparse
//! transition rows, so a horizon `t` costs `O(t * |E|)` per pass. These are the
//! reference values for the Monte Carlo estimators and all property checks.

use crate::bias;
use crate::config::WalkConfig;
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, EdgeInsertion};
use crate::plan::InsertionPlan;
use crate::scalar::Scalar;
use crate::weight_oracle;

/// Default bound on the number of plans [`brute_force_opt`] will enumerate.
pub const DEFAULT_ENUMERATION_CAP: u128 = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Exact,
    Estimated,
}

/// Per-node bubble radius for one horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct BrTable<T> {
    values: Vec<T>,
    t: usize,
    provenance: Provenance,
}

impl<T: Scalar> BrTable<T> {
    pub fn new(values: Vec<T>, t: usize, provenance: Provenance) -> Self {
        Self { values, t, provenance }
    }

    pub fn get(&self, v: usize) -> T {
        self.values[v]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn horizon(&self) -> usize {
        self.t
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean_over(&self, nodes: &[usize]) -> T {
        if nodes.is_empty() {
            return T::zero();
        }
        let sum = nodes.iter().fold(T::zero(), |acc, &v| acc + self.values[v]);
        sum / T::from_count(nodes.len())
    }

    pub fn map_scalar<U: Scalar>(&self) -> BrTable<U> {
        BrTable {
            values: self.values.iter().map(|x| U::from_real(x.to_real())).collect(),
            t: self.t,
            provenance: self.provenance,
        }
    }
}

/// Per-step probabilities that a walk from `source` first reaches `target`,
/// never having touched the other color. `probs[i - 1]` is step `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstPassageProfile<T> {
    pub source: usize,
    pub target: usize,
    pub horizon: usize,
    pub probs: Vec<T>,
}

/// Probabilities `p_0 .. p_{t'-1}` that a walk from a node sits on that node
/// again before touching the other color, and their sum `F_{t'}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnMass<T> {
    pub probs: Vec<T>,
    pub total: T,
}

fn mask_of(n: usize, nodes: &[usize]) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for &v in nodes {
        if v >= n {
            return Err(Error::UnknownNode(v));
        }
        mask[v] = true;
    }
    Ok(mask)
}

/// `E[min(t, T_v(S))]` for every node `v`.
///
/// Sums the survival probabilities `s_i(v) = P(T_v(S) > i)` for
/// `i = 0 .. t - 1`. An empty `targets` set gives `t` everywhere.
pub fn exact_bounded_hitting<T: Scalar>(g: &ColoredGraph<T>, targets: &[usize], t: usize) -> Result<Vec<T>> {
    if t == 0 {
        return Err(Error::InvalidHorizon);
    }
    let n = g.node_count();
    let absorbed = mask_of(n, targets)?;
    let mut survive: Vec<T> = absorbed.iter().map(|&a| if a { T::zero() } else { T::one() }).collect();
    let mut total = survive.clone();
    let mut next = vec![T::zero(); n];
    for _ in 1..t {
        for v in 0..n {
            next[v] = if absorbed[v] {
                T::zero()
            } else {
                g.out_edges(v).fold(T::zero(), |acc, (u, w)| acc + w * survive[u]).flush()
            };
        }
        std::mem::swap(&mut survive, &mut next);
        for (acc, &s) in total.iter_mut().zip(&survive) {
            *acc += s;
        }
    }
    Ok(total)
}

/// Exact bubble radius of every node.
///
/// A single pass computes both colors at once: a node only ever reads the
/// survival values of same-colored neighbours, which are themselves
/// conditioned on the shared opposite color.
pub fn exact_br<T: Scalar>(g: &ColoredGraph<T>, t: usize) -> Result<BrTable<T>> {
    if t == 0 {
        return Err(Error::InvalidHorizon);
    }
    let n = g.node_count();
    let colors = g.colors();
    let mut survive = vec![T::one(); n];
    let mut total = survive.clone();
    let mut next = vec![T::zero(); n];
    for _ in 1..t {
        for v in 0..n {
            let c = colors[v];
            next[v] = g
                .out_edges(v)
                .filter(|&(u, _)| colors[u] == c)
                .fold(T::zero(), |acc, (u, w)| acc + w * survive[u])
                .flush();
        }
        std::mem::swap(&mut survive, &mut next);
        for (acc, &s) in total.iter_mut().zip(&survive) {
            *acc += s;
        }
    }
    Ok(BrTable::new(total, t, Provenance::Exact))
}

/// First-passage profile from `u` to the same-colored node `v`, avoiding the
/// other color.
pub fn exact_first_passage<T: Scalar>(
    g: &ColoredGraph<T>,
    u: usize,
    v: usize,
    t: usize,
) -> Result<FirstPassageProfile<T>> {
    let n = g.node_count();
    if u >= n {
        return Err(Error::UnknownNode(u));
    }
    if v >= n {
        return Err(Error::UnknownNode(v));
    }
    if u == v {
        return Err(Error::SourceIsTarget(u));
    }
    let own = g.color(u);
    if g.color(v) != own {
        return Err(Error::TargetInAvoidSet { start: u, target: v });
    }
    let mut dist = vec![T::zero(); n];
    dist[u] = T::one();
    let mut next = vec![T::zero(); n];
    let mut probs = Vec::with_capacity(t);
    for _ in 0..t {
        next.iter_mut().for_each(|x| *x = T::zero());
        for (x, &mass) in dist.iter().enumerate() {
            if mass == T::zero() {
                continue;
            }
            for (y, w) in g.out_edges(x) {
                next[y] += mass * w;
            }
        }
        probs.push(next[v].flush());
        for (y, m) in next.iter_mut().enumerate() {
            *m = if y == v || g.color(y) != own { T::zero() } else { m.flush() };
        }
        std::mem::swap(&mut dist, &mut next);
    }
    Ok(FirstPassageProfile { source: u, target: v, horizon: t, probs })
}

/// First-passage probabilities into `v` from every node of its color.
///
/// Runs backwards from the target: `out[i - 1][w]` is the probability that a
/// walk from `w` first reaches `v` at step `i` without touching the other
/// color. Entries for `v` itself and for other-colored nodes are zero.
pub fn first_passage_into<T: Scalar>(g: &ColoredGraph<T>, v: usize, t: usize) -> Result<Vec<Vec<T>>> {
    let n = g.node_count();
    if v >= n {
        return Err(Error::UnknownNode(v));
    }
    let own = g.color(v);
    let interior = |x: usize| x != v && g.color(x) == own;
    let mut out: Vec<Vec<T>> = Vec::with_capacity(t);
    if t == 0 {
        return Ok(out);
    }
    let first: Vec<T> = (0..n)
        .map(|w| if interior(w) { g.weight(w, v).unwrap_or_else(T::zero) } else { T::zero() })
        .collect();
    out.push(first);
    for i in 1..t {
        let prev = &out[i - 1];
        let step: Vec<T> = (0..n)
            .map(|w| {
                if !interior(w) {
                    return T::zero();
                }
                g.out_edges(w)
                    .filter(|&(x, _)| interior(x))
                    .fold(T::zero(), |acc, (x, wt)| acc + wt * prev[x])
                    .flush()
            })
            .collect();
        out.push(step);
    }
    Ok(out)
}

/// Return probabilities of `v` for steps `0 .. t' - 1` and their sum.
pub fn exact_return_mass<T: Scalar>(g: &ColoredGraph<T>, v: usize, horizon: usize) -> Result<ReturnMass<T>> {
    if horizon == 0 {
        return Err(Error::InvalidHorizon);
    }
    let n = g.node_count();
    if v >= n {
        return Err(Error::UnknownNode(v));
    }
    let own = g.color(v);
    let mut dist = vec![T::zero(); n];
    dist[v] = T::one();
    let mut next = vec![T::zero(); n];
    let mut probs = Vec::with_capacity(horizon);
    probs.push(T::one());
    for _ in 1..horizon {
        next.iter_mut().for_each(|x| *x = T::zero());
        for (x, &mass) in dist.iter().enumerate() {
            if mass == T::zero() {
                continue;
            }
            for (y, w) in g.out_edges(x) {
                if g.color(y) == own {
                    next[y] += mass * w;
                }
            }
        }
        next.iter_mut().for_each(|m| *m = m.flush());
        probs.push(next[v]);
        std::mem::swap(&mut dist, &mut next);
    }
    if horizon > 1 {
        // no self-loops, so a walk cannot be back after one step
        debug_assert!(probs[1] == T::zero());
    }
    let total = probs.iter().fold(T::zero(), |a, &p| a + p);
    Ok(ReturnMass { probs, total })
}

/// `max_v F_t(v)` over all nodes.
pub fn exact_gamma<T: Scalar>(g: &ColoredGraph<T>, t: usize) -> Result<T> {
    let mut best = T::zero();
    for v in g.nodes() {
        let f = exact_return_mass(g, v, t)?.total;
        if f > best {
            best = f;
        }
    }
    Ok(best)
}

fn check_same_color<T: Scalar>(g: &ColoredGraph<T>, v: usize, sources: &[usize]) -> Result<()> {
    if !g.contains_node(v) {
        return Err(Error::UnknownNode(v));
    }
    if sources.is_empty() {
        return Err(Error::EmptySourceSet);
    }
    let c = g.color(v);
    for &w in sources {
        if !g.contains_node(w) {
            return Err(Error::UnknownNode(w));
        }
        if g.color(w) != c {
            return Err(Error::MixedColorSet);
        }
    }
    Ok(())
}

/// Bounded random-walk closeness centrality of `v` with respect to `sources`:
/// `(1/|S|) sum_{w in S, w != v} sum_{i=1}^{t'} (t' - i) P(w reaches v first at i)`.
pub fn exact_rwcc<T: Scalar>(g: &ColoredGraph<T>, v: usize, sources: &[usize], horizon: usize) -> Result<T> {
    check_same_color(g, v, sources)?;
    if horizon == 0 {
        return Ok(T::zero());
    }
    let profile = first_passage_into(g, v, horizon)?;
    let tp = T::from_count(horizon);
    let mut sum = T::zero();
    for &w in sources.iter().filter(|&&w| w != v) {
        for (i, step) in profile.iter().enumerate() {
            let hit = step[w];
            if hit != T::zero() {
                sum += (tp - T::from_count(i + 1)) * hit;
            }
        }
    }
    Ok(sum / T::from_count(sources.len()))
}

/// Centrality of each node of `nodes` with respect to the same source set.
pub fn exact_rwcc_many<T: Scalar>(
    g: &ColoredGraph<T>,
    nodes: &[usize],
    sources: &[usize],
    horizon: usize,
) -> Result<Vec<T>> {
    nodes.iter().map(|&v| exact_rwcc(g, v, sources, horizon)).collect()
}

/// Mean bubble-radius drop over `nodes` after applying `plan` in order.
pub fn exact_gain<T: Scalar>(g: &ColoredGraph<T>, nodes: &[usize], plan: &InsertionPlan<T>, t: usize) -> Result<T> {
    if plan.is_empty() || nodes.is_empty() {
        return Ok(T::zero());
    }
    let before = exact_br(g, t)?;
    let after = exact_br(&g.apply_plan(plan)?, t)?;
    Ok(gain_between(&before, &after, nodes))
}

pub(crate) fn gain_between<T: Scalar>(before: &BrTable<T>, after: &BrTable<T>, nodes: &[usize]) -> T {
    if nodes.is_empty() {
        return T::zero();
    }
    let drop = nodes.iter().fold(T::zero(), |acc, &v| acc + before.get(v) - after.get(v));
    drop / T::from_count(nodes.len())
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Candidate insertions from the parochial nodes of `color` to every
/// other-colored node they do not already link to, in `(src, dst)` order.
pub fn candidate_edges<T: Scalar>(g: &ColoredGraph<T>, parochial: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &s in parochial {
        let other = g.color(s).opposite();
        for d in g.nodes() {
            if g.color(d) == other && !g.has_edge(s, d) {
                out.push((s, d));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Exhaustive optimum of the k-insertion problem for `color`.
///
/// Enumerates every `k`-subset of candidate edges (weights from the oracle,
/// applied in subset order) and returns the plan with the largest exact gain
/// over the parochial nodes of `color` in `g`. Ties keep the first subset in
/// lexicographic order.
pub fn brute_force_opt<T: Scalar>(
    g: &ColoredGraph<T>,
    color: Color,
    k: usize,
    cfg: &WalkConfig,
    cap: u128,
) -> Result<(InsertionPlan<T>, T)> {
    if k == 0 {
        return Ok((InsertionPlan::new(color), T::zero()));
    }
    let before = exact_br(g, cfg.t)?;
    let parochial = bias::parochial_of(&before, g.colors(), color, cfg.theta_bad);
    let candidates = candidate_edges(g, &parochial);
    let k = k.min(candidates.len());
    let plans = binomial(candidates.len() as u128, k as u128);
    if plans > cap {
        return Err(Error::EnumerationTooLarge { plans, cap });
    }
    let mut best_plan = InsertionPlan::new(color);
    let mut best_gain: Option<T> = None;
    if k == 0 {
        return Ok((best_plan, T::zero()));
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut plan = InsertionPlan::new(color);
        for &i in &idx {
            let (s, d) = candidates[i];
            let w = weight_oracle(g, s, &plan);
            plan.push(g, EdgeInsertion::new(s, d, w))?;
        }
        let after = exact_br(&g.apply_plan(&plan)?, cfg.t)?;
        let gain = gain_between(&before, &after, &parochial);
        if best_gain.is_none_or(|b| gain > b) {
            best_gain = Some(gain);
            best_plan = plan;
        }
        // next combination in lexicographic order
        let m = candidates.len();
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == m - k + pos - 1 {
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
        idx[pos - 1] += 1;
        for j in pos..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    Ok((best_plan, best_gain.unwrap_or_else(T::zero)))
}
