//! Ordered sets of planned edge insertions.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, EdgeInsertion};
use crate::scalar::Scalar;

/// Ordered insertions whose sources all have one color and whose targets all
/// have the other, together with the per-source insertion counts.
#[derive(Debug, Clone, PartialEq)]
pub struct InsertionPlan<T> {
    color: Color,
    edges: Vec<EdgeInsertion<T>>,
    per_source: BTreeMap<usize, usize>,
    stopped_early: bool,
}

impl<T: Scalar> InsertionPlan<T> {
    pub fn new(color: Color) -> Self {
        Self { color, edges: Vec::new(), per_source: BTreeMap::new(), stopped_early: false }
    }

    /// Source color of the plan.
    pub fn color(&self) -> Color {
        self.color
    }

    pub fn edges(&self) -> &[EdgeInsertion<T>] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, EdgeInsertion<T>> {
        self.edges.iter()
    }

    /// Number of planned insertions with source `v`.
    pub fn count_from(&self, v: usize) -> usize {
        self.per_source.get(&v).copied().unwrap_or(0)
    }

    /// Penalty factor: one plus the insertions already planned from `v`.
    pub fn eta(&self, v: usize) -> usize {
        1 + self.count_from(v)
    }

    pub fn contains(&self, src: usize, dst: usize) -> bool {
        self.edges.iter().any(|e| e.src == src && e.dst == dst)
    }

    /// Whether `(src, dst)` could still be added: opposite colors, not an edge
    /// of `g` and not already planned.
    pub fn is_open(&self, g: &ColoredGraph<T>, src: usize, dst: usize) -> bool {
        g.color(src) != g.color(dst) && !g.has_edge(src, dst) && !self.contains(src, dst)
    }

    /// Appends `e` after checking it against `g` and the edges already planned.
    pub fn push(&mut self, g: &ColoredGraph<T>, e: EdgeInsertion<T>) -> Result<()> {
        if !g.contains_node(e.src) {
            return Err(Error::UnknownNode(e.src));
        }
        if !g.contains_node(e.dst) {
            return Err(Error::UnknownNode(e.dst));
        }
        if g.color(e.src) != self.color || g.color(e.dst) == self.color {
            return Err(Error::SameColorEndpoints(e.src, e.dst));
        }
        if g.has_edge(e.src, e.dst) || self.contains(e.src, e.dst) {
            return Err(Error::EdgeExists(e.src, e.dst));
        }
        if e.weight <= T::zero() || e.weight >= T::one() {
            return Err(Error::InvalidWeight { src: e.src, dst: e.dst, weight: e.weight.to_real() });
        }
        *self.per_source.entry(e.src).or_insert(0) += 1;
        self.edges.push(e);
        Ok(())
    }

    /// True when the producing algorithm ran out of parochial sources or
    /// legal targets before spending its budget.
    pub fn stopped_early(&self) -> bool {
        self.stopped_early
    }

    pub(crate) fn mark_stopped_early(&mut self) {
        self.stopped_early = true;
    }

    /// The first `k` insertions as a plan of their own.
    pub fn prefix(&self, k: usize) -> InsertionPlan<T> {
        let mut out = InsertionPlan::new(self.color);
        for e in self.edges.iter().take(k) {
            *out.per_source.entry(e.src).or_insert(0) += 1;
            out.edges.push(*e);
        }
        out
    }

    /// Plan built from raw insertions, validated in order.
    pub fn from_edges(g: &ColoredGraph<T>, color: Color, edges: &[EdgeInsertion<T>]) -> Result<Self> {
        let mut plan = InsertionPlan::new(color);
        for e in edges {
            plan.push(g, *e)?;
        }
        Ok(plan)
    }
}
