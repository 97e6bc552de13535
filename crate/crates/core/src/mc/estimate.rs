//! Sampling estimators for bubble radius and bounded closeness centrality.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{BrTable, Provenance};
use crate::graph::ColoredGraph;
use crate::mc::rng::{Domain, WalkRng};
use crate::mc::walk::WalkSampler;
use crate::scalar::{ceil_bound, Scalar};

/// Walk counts used by the estimators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleBudget {
    /// Walks per node for the bubble radius.
    pub r_br: u64,
    /// Sampled sources for the centrality.
    pub z_sources: u64,
    /// Walks per sampled source.
    pub kappa: u64,
}

impl SampleBudget {
    pub fn for_accuracy(n: usize, t: usize, epsilon: f64, delta: f64, kappa: usize) -> Result<Self> {
        if kappa == 0 {
            return Err(Error::InvalidAccuracy { name: "kappa", value: 0.0 });
        }
        Ok(Self {
            r_br: br_sample_size(n, t, epsilon, delta)?,
            z_sources: rwcc_sample_size(t.saturating_sub(2), epsilon, delta)?,
            kappa: kappa as u64,
        })
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidAccuracy { name: "delta", value: delta })
    }
}

/// `ceil((t^2 / eps^2) * ln(2n / delta))` walks per node bound every node's
/// error by `eps` simultaneously with probability at least `1 - delta`.
pub fn br_sample_size(n: usize, t: usize, epsilon: f64, delta: f64) -> Result<u64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidAccuracy { name: "epsilon", value: epsilon });
    }
    check_delta(delta)?;
    let t = t as f64;
    let x = (t * t) / (epsilon * epsilon) * (2.0 * n.max(1) as f64 / delta).ln();
    Ok(ceil_bound(x).max(1))
}

/// `ceil((t' / (2 eps))^2 / delta)` sampled sources bound the centrality
/// error by `eps` with probability at least `1 - delta`.
///
/// Any positive `epsilon` is accepted since the centrality ranges over
/// `[0, t']`.
pub fn rwcc_sample_size(horizon: usize, epsilon: f64, delta: f64) -> Result<u64> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidAccuracy { name: "epsilon", value: epsilon });
    }
    check_delta(delta)?;
    let half_range = horizon as f64 / (2.0 * epsilon);
    Ok(ceil_bound(half_range * half_range / delta))
}

/// Per-node bubble radius from `ceil((t^2/eps^2) ln(2n/delta))` walks each.
pub fn estimate_br<T: Scalar>(g: &ColoredGraph<T>, t: usize, epsilon: f64, delta: f64, seed: u64) -> Result<BrTable<f64>> {
    let r = br_sample_size(g.node_count(), t, epsilon, delta)?;
    estimate_br_with_walks(g, t, r, seed)
}

/// Bubble radius estimate from exactly `walks` capped walks per node.
///
/// Walk `k` from node `v` draws from the stream `(seed, v, k)` and lengths are
/// summed as integers, so the result is identical for any thread count.
pub fn estimate_br_with_walks<T: Scalar>(g: &ColoredGraph<T>, t: usize, walks: u64, seed: u64) -> Result<BrTable<f64>> {
    if t == 0 {
        return Err(Error::InvalidHorizon);
    }
    if walks == 0 {
        return Err(Error::InvalidAccuracy { name: "walks", value: 0.0 });
    }
    let sampler = WalkSampler::new(g);
    let values: Vec<f64> = (0..g.node_count())
        .into_par_iter()
        .map(|v| {
            let total: u64 = (0..walks)
                .map(|k| {
                    let mut rng = WalkRng::new(seed, Domain::BubbleRadius, v as u64, k);
                    sampler.capped_escape(v, t, &mut rng) as u64
                })
                .sum();
            total as f64 / walks as f64
        })
        .collect();
    Ok(BrTable::new(values, t, Provenance::Estimated))
}

fn check_sources<T: Scalar>(g: &ColoredGraph<T>, v: usize, sources: &[usize]) -> Result<()> {
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

/// Centrality estimate `t' - mean(h)` where each `h` averages `kappa` capped
/// first-hit times from a source drawn uniformly (with replacement) from
/// `sources`.
///
/// A walk that touches the other color, or never reaches `v`, counts as `t'`.
/// A drawn source equal to `v` also counts as `t'`, matching the exact value,
/// which gives the self term zero weight.
#[allow(clippy::too_many_arguments)]
pub fn estimate_rwcc<T: Scalar>(
    g: &ColoredGraph<T>,
    v: usize,
    sources: &[usize],
    horizon: usize,
    epsilon: f64,
    delta: f64,
    kappa: usize,
    seed: u64,
) -> Result<f64> {
    check_sources(g, v, sources)?;
    let z = rwcc_sample_size(horizon, epsilon, delta)?;
    let sampler = WalkSampler::new(g);
    Ok(rwcc_with_sampler(&sampler, v, sources, horizon, z, kappa, seed))
}

/// Centrality estimates for several targets sharing one source set.
#[allow(clippy::too_many_arguments)]
pub fn estimate_rwcc_many<T: Scalar>(
    g: &ColoredGraph<T>,
    nodes: &[usize],
    sources: &[usize],
    horizon: usize,
    epsilon: f64,
    delta: f64,
    kappa: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    for &v in nodes {
        check_sources(g, v, sources)?;
    }
    let z = rwcc_sample_size(horizon, epsilon, delta)?;
    let sampler = WalkSampler::new(g);
    Ok(nodes
        .par_iter()
        .map(|&v| rwcc_with_sampler(&sampler, v, sources, horizon, z, kappa, seed))
        .collect())
}

pub(crate) fn rwcc_with_sampler(
    sampler: &WalkSampler,
    v: usize,
    sources: &[usize],
    horizon: usize,
    z: u64,
    kappa: usize,
    seed: u64,
) -> f64 {
    if horizon == 0 || z == 0 {
        return 0.0;
    }
    let kappa = kappa.max(1) as u64;
    let total: u64 = (0..z)
        .map(|i| {
            let mut rng = WalkRng::new(seed, Domain::Centrality, v as u64, i);
            let w = sources[rng.below(sources.len())];
            if w == v {
                return horizon as u64 * kappa;
            }
            (0..kappa).map(|_| sampler.capped_first_hit(w, v, horizon, &mut rng) as u64).sum::<u64>()
        })
        .sum();
    horizon as f64 - total as f64 / (z * kappa) as f64
}
