//! Random graph fixtures shared by the integration tests.
#![allow(dead_code)]

use bubble_radius::{build_graph, Color, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random two-colored graph with random positive weights.
///
/// Each node has a random color (both colors always present) and links to
/// same-colored nodes with probability `p_within` and to other-colored nodes
/// with probability `p_cross`; nodes left without edges get one same-colored
/// edge when possible.
pub fn random_graph(rng: &mut impl Rng, n: usize, p_within: f64, p_cross: f64) -> Graph {
    assert!(n >= 2);
    let mut colors: Vec<Color> = (0..n).map(|_| if rng.random_bool(0.5) { Color::Red } else { Color::Blue }).collect();
    colors[0] = Color::Red;
    colors[1] = Color::Blue;
    let mut edges = Vec::new();
    for u in 0..n {
        let mut row: Vec<(usize, f64)> = Vec::new();
        for v in 0..n {
            if u == v {
                continue;
            }
            let p = if colors[u] == colors[v] { p_within } else { p_cross };
            if rng.random_bool(p) {
                row.push((v, rng.random_range(0.1..1.0)));
            }
        }
        if row.is_empty() {
            let same: Vec<usize> = (0..n).filter(|&v| v != u && colors[v] == colors[u]).collect();
            let pick = if same.is_empty() {
                (u + 1) % n
            } else {
                same[rng.random_range(0..same.len())]
            };
            row.push((pick, 1.0));
        }
        let sum: f64 = row.iter().map(|e| e.1).sum();
        edges.extend(row.into_iter().map(|(v, w)| (u, v, w / sum)));
    }
    build_graph(colors, &edges).expect("generated graph is valid")
}

/// Random graph of size in `sizes` with mostly same-colored edges, so that
/// many nodes have large bubble radii.
pub fn random_polarized(rng: &mut impl Rng, sizes: std::ops::RangeInclusive<usize>) -> Graph {
    let n = rng.random_range(sizes);
    let p_within = rng.random_range(0.1..0.4);
    let p_cross = rng.random_range(0.005..0.05);
    random_graph(rng, n, p_within, p_cross)
}

/// Absent cross-color edge out of some node of `color`, if any.
pub fn random_insertion(rng: &mut impl Rng, g: &Graph, sources: &[usize]) -> Option<(usize, usize)> {
    let mut options = Vec::new();
    for &s in sources {
        for d in g.nodes() {
            if g.color(d) != g.color(s) && !g.has_edge(s, d) {
                options.push((s, d));
            }
        }
    }
    if options.is_empty() {
        None
    } else {
        Some(options[rng.random_range(0..options.len())])
    }
}
