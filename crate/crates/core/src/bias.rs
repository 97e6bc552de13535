//! Cosmopolitan / parochial classification and the structural-bias functional.

use crate::config::{check_thresholds, Backend, WalkConfig};
use crate::error::{Error, Result};
use crate::exact::{self, BrTable};
use crate::graph::{Color, ColoredGraph};
use crate::mc;
use crate::plan::InsertionPlan;
use crate::scalar::Scalar;

/// Nodes with BR at most `theta_good` (cosmopolitan) and at least `theta_bad`
/// (parochial, split by color). The two groups need not cover every node.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiasPartition {
    pub cosmopolitan: Vec<usize>,
    pub parochial_red: Vec<usize>,
    pub parochial_blue: Vec<usize>,
}

impl BiasPartition {
    pub fn parochial(&self, color: Color) -> &[usize] {
        match color {
            Color::Red => &self.parochial_red,
            Color::Blue => &self.parochial_blue,
        }
    }

    /// Parochial nodes of both colors, ascending.
    pub fn all_parochial(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.parochial_red.iter().chain(&self.parochial_blue).copied().collect();
        all.sort_unstable();
        all
    }

    pub fn parochial_count(&self) -> usize {
        self.parochial_red.len() + self.parochial_blue.len()
    }
}

/// Both threshold comparisons are inclusive.
pub fn classify<T: Scalar>(brs: &BrTable<T>, colors: &[Color], theta_good: f64, theta_bad: f64) -> Result<BiasPartition> {
    check_thresholds(theta_good, theta_bad, brs.horizon())?;
    let good = T::from_real(theta_good);
    let bad = T::from_real(theta_bad);
    let mut out = BiasPartition::default();
    for (v, &b) in brs.values().iter().enumerate() {
        if b <= good {
            out.cosmopolitan.push(v);
        } else if b >= bad {
            match colors[v] {
                Color::Red => out.parochial_red.push(v),
                Color::Blue => out.parochial_blue.push(v),
            }
        }
    }
    Ok(out)
}

/// Parochial nodes of one color for a single threshold.
pub fn parochial_of<T: Scalar>(brs: &BrTable<T>, colors: &[Color], color: Color, theta_bad: f64) -> Vec<usize> {
    let bad = T::from_real(theta_bad);
    brs.values()
        .iter()
        .enumerate()
        .filter(|&(v, &b)| colors[v] == color && b >= bad)
        .map(|(v, _)| v)
        .collect()
}

/// Sum of bubble radii over the parochial nodes of both colors.
pub fn structural_bias<T: Scalar>(brs: &BrTable<T>, partition: &BiasPartition) -> T {
    structural_bias_of(brs, partition, Color::Red) + structural_bias_of(brs, partition, Color::Blue)
}

pub fn structural_bias_of<T: Scalar>(brs: &BrTable<T>, partition: &BiasPartition, color: Color) -> T {
    partition.parochial(color).iter().fold(T::zero(), |acc, &v| acc + brs.get(v))
}

/// Bubble radii of every node under the chosen backend.
pub fn compute_brs<T: Scalar>(g: &ColoredGraph<T>, cfg: &WalkConfig, backend: Backend, seed: u64) -> Result<BrTable<T>> {
    match backend {
        Backend::Exact => exact::exact_br(g, cfg.t),
        Backend::MonteCarlo => Ok(mc::estimate_br(g, cfg.t, cfg.epsilon, cfg.delta, seed)?.map_scalar()),
    }
}

/// Mean bubble-radius drop over `nodes` caused by `plan`.
///
/// The Monte Carlo backend estimates before and after with the same seed so
/// that both estimates share their random numbers.
pub fn gain<T: Scalar>(
    g: &ColoredGraph<T>,
    nodes: &[usize],
    plan: &InsertionPlan<T>,
    cfg: &WalkConfig,
    backend: Backend,
) -> Result<T> {
    if nodes.is_empty() {
        return Err(Error::EmptyNodeSet);
    }
    match backend {
        Backend::Exact => exact::exact_gain(g, nodes, plan, cfg.t),
        Backend::MonteCarlo => {
            if plan.is_empty() {
                return Ok(T::zero());
            }
            let before = compute_brs(g, cfg, backend, cfg.seed)?;
            let after = compute_brs(&g.apply_plan(plan)?, cfg, backend, cfg.seed)?;
            Ok(exact::gain_between(&before, &after, nodes))
        }
    }
}

/// Splits `k` insertions between colors in proportion to their parochial BR
/// mass: `k_blue = ceil(k * y_blue / (y_blue + y_red))`, `k_red = k - k_blue`.
/// Returns `(k_red, k_blue)`.
pub fn budget_allocation(y_red: f64, y_blue: f64, k: usize) -> Result<(usize, usize)> {
    if k == 0 {
        return Ok((0, 0));
    }
    let total = y_red + y_blue;
    if total <= 0.0 {
        return Err(Error::BothColorsUnbiased(k));
    }
    let k_blue = (crate::scalar::ceil_bound(k as f64 * y_blue / total) as usize).min(k);
    Ok((k - k_blue, k_blue))
}

/// Even split used when neither color has parochial nodes.
pub fn even_split(k: usize) -> (usize, usize) {
    let k_blue = k.div_ceil(2);
    (k - k_blue, k_blue)
}
