//! Synthetic graphs: the set-cover gadget and two-community random graphs.

use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{build_graph, Color, ColoredGraph};
use crate::scalar::Scalar;

/// Set-cover gadget and the id ranges of its parts.
///
/// Ids are laid out as elements, then sets, then the path nodes of every
/// set in set order, then the single blue sink.
#[derive(Debug, Clone)]
pub struct Gadget<T> {
    pub graph: ColoredGraph<T>,
    pub elements: Range<usize>,
    pub sets: Range<usize>,
    pub sink: usize,
}

/// Number of edges on the path from a set node to the sink.
pub fn gadget_path_len(t: usize) -> usize {
    t.div_ceil(2) - 1
}

/// Builds the gadget for a set system over `0..universe`.
///
/// Every element links uniformly to the sets containing it; every set node
/// starts a weight-one path of `ceil(t/2) - 1` edges into the blue sink. The
/// sink points back to the first node after the first set node.
pub fn generate_gadget<T: Scalar>(universe: usize, sets: &[Vec<usize>], t: usize) -> Result<Gadget<T>> {
    if t < 3 {
        return Err(Error::InvalidParameter(format!("gadget needs t >= 3, got {t}")));
    }
    if universe == 0 || sets.is_empty() {
        return Err(Error::InvalidParameter("gadget needs elements and sets".into()));
    }
    let mut member_of: Vec<Vec<usize>> = vec![Vec::new(); universe];
    for (j, set) in sets.iter().enumerate() {
        for &u in set {
            if u >= universe {
                return Err(Error::InvalidParameter(format!("set {j} names element {u} outside the universe")));
            }
            if !member_of[u].contains(&j) {
                member_of[u].push(j);
            }
        }
    }
    if let Some(u) = member_of.iter().position(Vec::is_empty) {
        return Err(Error::UncoveredElement(u));
    }

    let inner = gadget_path_len(t) - 1;
    let set_base = universe;
    let path_base = set_base + sets.len();
    let sink = path_base + inner * sets.len();
    let n = sink + 1;
    let mut colors = vec![Color::Red; n];
    colors[sink] = Color::Blue;

    let one = T::one();
    let mut edges = Vec::new();
    for (u, member) in member_of.iter().enumerate() {
        let w = one / T::from_count(member.len());
        for &j in member {
            edges.push((u, set_base + j, w));
        }
    }
    for j in 0..sets.len() {
        let mut prev = set_base + j;
        for k in 0..inner {
            let next = path_base + j * inner + k;
            edges.push((prev, next, one));
            prev = next;
        }
        edges.push((prev, sink, one));
    }
    let back = if inner > 0 { path_base } else { set_base };
    edges.push((sink, back, one));

    Ok(Gadget {
        graph: build_graph(colors, &edges)?,
        elements: 0..universe,
        sets: set_base..path_base,
        sink,
    })
}

/// Random two-community graph: red nodes `0..n_red`, blue nodes after them.
///
/// Every ordered pair of distinct nodes is linked independently with
/// probability `p_within` (same color) or `p_cross`, out-weights are uniform,
/// and a node left without out-edges gets one to a random node of its own
/// color (any other node if it is alone in its color).
pub fn generate_polarized<T: Scalar>(
    n_red: usize,
    n_blue: usize,
    p_within: f64,
    p_cross: f64,
    seed: u64,
) -> Result<ColoredGraph<T>> {
    let n = n_red + n_blue;
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two nodes".into()));
    }
    for (name, p) in [("p_within", p_within), ("p_cross", p_cross)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("{name}={p} is not a probability")));
        }
    }
    let color = |v: usize| if v < n_red { Color::Red } else { Color::Blue };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, row) in rows.iter_mut().enumerate() {
        for v in 0..n {
            if u == v {
                continue;
            }
            let p = if color(u) == color(v) { p_within } else { p_cross };
            if p > 0.0 && rng.random_bool(p) {
                row.push(v);
            }
        }
        if row.is_empty() {
            let own = if color(u) == Color::Red { 0..n_red } else { n_red..n };
            let v = if own.len() > 1 {
                let mut v = rng.random_range(own.start..own.end - 1);
                if v >= u {
                    v += 1;
                }
                v
            } else {
                let v = rng.random_range(0..n - 1);
                if v >= u { v + 1 } else { v }
            };
            row.push(v);
        }
    }
    let mut edges = Vec::new();
    for (u, row) in rows.iter().enumerate() {
        let w = T::one() / T::from_count(row.len());
        edges.extend(row.iter().map(|&v| (u, v, w)));
    }
    build_graph((0..n).map(color).collect(), &edges)
}
