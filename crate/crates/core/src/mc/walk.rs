use crate::graph::{Color, ColoredGraph};
use crate::mc::rng::WalkRng;
use crate::scalar::Scalar;

/// Cumulative transition tables in `f64` for fast step sampling.
#[derive(Debug, Clone)]
pub struct WalkSampler {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    cdf: Vec<f64>,
    colors: Vec<Color>,
}

impl WalkSampler {
    pub fn new<T: Scalar>(g: &ColoredGraph<T>) -> Self {
        let n = g.node_count();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(g.edge_count());
        let mut cdf = Vec::with_capacity(g.edge_count());
        offsets.push(0);
        for v in 0..n {
            let mut acc = 0.0;
            for (d, w) in g.out_edges(v) {
                acc += w.to_real();
                targets.push(d);
                cdf.push(acc);
            }
            // guard the top of the row against rounding below one
            if let Some(last) = cdf.last_mut() {
                *last = f64::INFINITY;
            }
            offsets.push(targets.len());
        }
        Self { offsets, targets, cdf, colors: g.colors().to_vec() }
    }

    pub fn node_count(&self) -> usize {
        self.colors.len()
    }

    #[inline]
    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    #[inline]
    pub fn step(&self, v: usize, rng: &mut WalkRng) -> usize {
        let lo = self.offsets[v];
        let hi = self.offsets[v + 1];
        if hi - lo == 1 {
            return self.targets[lo];
        }
        let u = rng.unit();
        let row = &self.cdf[lo..hi];
        let i = row.partition_point(|&c| c <= u);
        self.targets[lo + i.min(hi - lo - 1)]
    }

    /// Length of a walk from `v` stopped on the first other-colored node or
    /// after `t` steps.
    #[inline]
    pub fn capped_escape(&self, v: usize, t: usize, rng: &mut WalkRng) -> usize {
        let own = self.colors[v];
        let mut x = v;
        for step in 1..=t {
            x = self.step(x, rng);
            if self.colors[x] != own {
                return step;
            }
        }
        t
    }

    /// Step at which a walk from `w` first reaches `target`, or `horizon` if it
    /// touches the other color first or runs out of steps.
    #[inline]
    pub fn capped_first_hit(&self, w: usize, target: usize, horizon: usize, rng: &mut WalkRng) -> usize {
        let own = self.colors[w];
        let mut x = w;
        for step in 1..=horizon {
            x = self.step(x, rng);
            if x == target {
                return step;
            }
            if self.colors[x] != own {
                return horizon;
            }
        }
        horizon
    }
}
