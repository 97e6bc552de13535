//! Two-colored weighted directed graphs with row-stochastic out-weights.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::plan::InsertionPlan;
use crate::scalar::Scalar;

/// Deviation of an input row sum from one that is silently renormalized.
pub const INPUT_ROW_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub const BOTH: [Color; 2] = [Color::Red, Color::Blue];
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "R",
            Color::Blue => "B",
        })
    }
}

impl FromStr for Color {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "R" | "r" | "red" => Ok(Color::Red),
            "B" | "b" | "blue" => Ok(Color::Blue),
            other => Err(format!("unknown color {other:?}")),
        }
    }
}

/// A cross-color edge to be inserted together with its transition weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeInsertion<T> {
    pub src: usize,
    pub dst: usize,
    pub weight: T,
}

impl<T> EdgeInsertion<T> {
    pub fn new(src: usize, dst: usize, weight: T) -> Self {
        Self { src, dst, weight }
    }
}

/// Immutable two-colored directed graph in compressed row form.
///
/// Every node has at least one out-edge, out-weights of each node sum to one,
/// there are no self-loops and no parallel edges. Rows are sorted by target.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoredGraph<T> {
    colors: Vec<Color>,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<T>,
}

/// Validates the input edge list and builds the graph.
///
/// Rows whose weights sum to within [`INPUT_ROW_TOLERANCE`] of one are
/// rescaled to sum exactly to one; larger deviations are rejected.
pub fn build_graph<T: Scalar>(colors: Vec<Color>, edges: &[(usize, usize, T)]) -> Result<ColoredGraph<T>> {
    let n = colors.len();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
    for &(src, dst, w) in edges {
        if src >= n {
            return Err(Error::UnknownColor(src));
        }
        if dst >= n {
            return Err(Error::UnknownColor(dst));
        }
        if src == dst {
            return Err(Error::SelfLoop(src));
        }
        if w <= T::zero() {
            return Err(Error::InvalidWeight { src, dst, weight: w.to_real() });
        }
        rows[src].push((dst, w));
    }
    let tol = T::from_real(INPUT_ROW_TOLERANCE);
    let mut offsets = Vec::with_capacity(n + 1);
    let mut targets = Vec::with_capacity(edges.len());
    let mut weights = Vec::with_capacity(edges.len());
    offsets.push(0);
    for (v, row) in rows.iter_mut().enumerate() {
        if row.is_empty() {
            return Err(Error::ZeroOutDegree(v));
        }
        row.sort_by_key(|&(dst, _)| dst);
        if let Some(pair) = row.windows(2).find(|p| p[0].0 == p[1].0) {
            return Err(Error::DuplicateEdge(v, pair[0].0));
        }
        let sum = row.iter().fold(T::zero(), |acc, &(_, w)| acc + w);
        if (sum - T::one()).abs() > tol {
            return Err(Error::NonStochasticRow { node: v, sum: sum.to_real() });
        }
        for &(dst, w) in row.iter() {
            let w = if sum == T::one() { w } else { w / sum };
            if w > T::one() {
                return Err(Error::InvalidWeight { src: v, dst, weight: w.to_real() });
            }
            targets.push(dst);
            weights.push(w);
        }
        offsets.push(targets.len());
    }
    Ok(ColoredGraph { colors, offsets, targets, weights })
}

impl<T: Scalar> ColoredGraph<T> {
    pub fn node_count(&self) -> usize {
        self.colors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn contains_node(&self, v: usize) -> bool {
        v < self.colors.len()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn out_targets(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn out_weights(&self, v: usize) -> &[T] {
        &self.weights[self.offsets[v]..self.offsets[v + 1]]
    }

    /// `(target, weight)` pairs of `v`, ordered by target.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        self.out_targets(v).iter().copied().zip(self.out_weights(v).iter().copied())
    }

    pub fn has_edge(&self, src: usize, dst: usize) -> bool {
        self.out_targets(src).binary_search(&dst).is_ok()
    }

    pub fn weight(&self, src: usize, dst: usize) -> Option<T> {
        self.out_targets(src)
            .binary_search(&dst)
            .ok()
            .map(|i| self.out_weights(src)[i])
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.colors.len()
    }

    pub fn nodes_of(&self, color: Color) -> Vec<usize> {
        self.nodes().filter(|&v| self.colors[v] == color).collect()
    }

    pub fn count_of(&self, color: Color) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }

    /// All edges as `(src, dst, weight)` triples in row order.
    pub fn edges(&self) -> Vec<(usize, usize, T)> {
        self.nodes()
            .flat_map(|v| self.out_edges(v).map(move |(d, w)| (v, d, w)))
            .collect()
    }

    /// Number of edges from nodes of `from` to nodes of the other color.
    pub fn cross_edge_count(&self, from: Color) -> usize {
        self.nodes()
            .filter(|&v| self.colors[v] == from)
            .map(|v| self.out_targets(v).iter().filter(|&&d| self.colors[d] != from).count())
            .sum()
    }

    /// Largest `|row sum - 1|` over all nodes, as a real.
    pub fn max_row_deviation(&self) -> f64 {
        self.nodes()
            .map(|v| {
                let s = self.out_weights(v).iter().fold(T::zero(), |a, &w| a + w);
                (s - T::one()).abs().to_real()
            })
            .fold(0.0, f64::max)
    }

    fn check_insertion(&self, e: &EdgeInsertion<T>) -> Result<()> {
        if !self.contains_node(e.src) {
            return Err(Error::UnknownNode(e.src));
        }
        if !self.contains_node(e.dst) {
            return Err(Error::UnknownNode(e.dst));
        }
        if self.colors[e.src] == self.colors[e.dst] {
            return Err(Error::SameColorEndpoints(e.src, e.dst));
        }
        if e.weight <= T::zero() || e.weight >= T::one() {
            return Err(Error::InvalidWeight { src: e.src, dst: e.dst, weight: e.weight.to_real() });
        }
        Ok(())
    }

    /// Returns a new graph with `e` added: the existing out-weights of
    /// `e.src` are scaled by `1 - e.weight` and the new edge takes `e.weight`.
    pub fn insert_edge(&self, e: &EdgeInsertion<T>) -> Result<ColoredGraph<T>> {
        self.insert_edges(std::slice::from_ref(e))
    }

    /// Inserts `edges` one after the other, with the same result as folding
    /// [`ColoredGraph::insert_edge`] over them but a single rebuild.
    pub fn insert_edges(&self, edges: &[EdgeInsertion<T>]) -> Result<ColoredGraph<T>> {
        let n = self.node_count();
        let mut touched: Vec<Option<Vec<(usize, T)>>> = vec![None; n];
        for e in edges {
            self.check_insertion(e)?;
            let row = touched[e.src].get_or_insert_with(|| self.out_edges(e.src).collect());
            if row.iter().any(|&(d, _)| d == e.dst) {
                return Err(Error::EdgeExists(e.src, e.dst));
            }
            let keep = T::one() - e.weight;
            for entry in row.iter_mut() {
                entry.1 *= keep;
            }
            row.push((e.dst, e.weight));
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(self.edge_count() + edges.len());
        let mut weights = Vec::with_capacity(self.edge_count() + edges.len());
        offsets.push(0);
        for (v, slot) in touched.iter_mut().enumerate() {
            match slot.as_mut() {
                Some(row) => {
                    row.sort_by_key(|&(d, _)| d);
                    for &(d, w) in row.iter() {
                        targets.push(d);
                        weights.push(w);
                    }
                }
                None => {
                    targets.extend_from_slice(self.out_targets(v));
                    weights.extend_from_slice(self.out_weights(v));
                }
            }
            offsets.push(targets.len());
        }
        Ok(ColoredGraph { colors: self.colors.clone(), offsets, targets, weights })
    }

    /// Graph with every insertion of `plan` applied in plan order.
    pub fn apply_plan(&self, plan: &InsertionPlan<T>) -> Result<ColoredGraph<T>> {
        self.insert_edges(plan.edges())
    }

    /// Copy of the graph with node `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<ColoredGraph<T>> {
        let n = self.node_count();
        let mut colors = vec![Color::Red; n];
        for v in 0..n {
            colors[perm[v]] = self.colors[v];
        }
        let edges: Vec<_> = self.edges().into_iter().map(|(s, d, w)| (perm[s], perm[d], w)).collect();
        build_graph(colors, &edges)
    }

    /// Converts weights to another scalar type.
    pub fn map_scalar<U: Scalar>(&self) -> ColoredGraph<U> {
        ColoredGraph {
            colors: self.colors.clone(),
            offsets: self.offsets.clone(),
            targets: self.targets.clone(),
            weights: self.weights.iter().map(|w| U::from_real(w.to_real())).collect(),
        }
    }
}

/// Weight assigned to a new edge from `v`: `1 / (d + 1)` where `d` counts the
/// out-edges of `v` in `g` plus the insertions from `v` already in `plan`.
pub fn weight_oracle<T: Scalar>(g: &ColoredGraph<T>, v: usize, plan: &InsertionPlan<T>) -> T {
    let d = g.out_degree(v) + plan.count_from(v);
    T::one() / T::from_count(d + 1)
}
