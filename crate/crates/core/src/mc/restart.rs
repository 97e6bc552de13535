//! Browsing sessions that restart from the start page after a failed walk.

use crate::error::{Error, Result};
use crate::graph::ColoredGraph;
use crate::mc::rng::{Domain, WalkRng};
use crate::mc::walk::WalkSampler;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SessionOutcome {
    /// Total steps over all segments up to the first other-colored node.
    Reached(usize),
    /// Every one of the `r` segments ran its `t` steps without escaping.
    NotReached,
}

impl SessionOutcome {
    /// Steps the user actually took; a failed session took `r * t` of them.
    pub fn steps_taken(self, t: usize, restarts: usize) -> usize {
        match self {
            SessionOutcome::Reached(s) => s,
            SessionOutcome::NotReached => t * restarts,
        }
    }

    pub fn reached(self) -> bool {
        matches!(self, SessionOutcome::Reached(_))
    }
}

fn run_session(sampler: &WalkSampler, v: usize, t: usize, restarts: usize, rng: &mut WalkRng) -> SessionOutcome {
    let own = sampler.color(v);
    let mut total = 0;
    for _ in 0..restarts {
        let mut x = v;
        for step in 1..=t {
            x = sampler.step(x, rng);
            if sampler.color(x) != own {
                return SessionOutcome::Reached(total + step);
            }
        }
        total += t;
    }
    SessionOutcome::NotReached
}

/// One session of at most `restarts` walk segments from `v`, each capped at
/// `t` steps; a segment that fails to reach the other color restarts at `v`.
pub fn simulate_restart_session<T: Scalar>(
    g: &ColoredGraph<T>,
    v: usize,
    t: usize,
    restarts: usize,
    seed: u64,
) -> Result<SessionOutcome> {
    Ok(simulate_restart_sessions(g, v, t, restarts, 1, seed)?[0])
}

/// `sessions` independent sessions; session `k` uses stream `(seed, v, k)`.
pub fn simulate_restart_sessions<T: Scalar>(
    g: &ColoredGraph<T>,
    v: usize,
    t: usize,
    restarts: usize,
    sessions: usize,
    seed: u64,
) -> Result<Vec<SessionOutcome>> {
    if restarts == 0 {
        return Err(Error::InvalidRestartBudget);
    }
    if t == 0 {
        return Err(Error::InvalidHorizon);
    }
    if !g.contains_node(v) {
        return Err(Error::UnknownNode(v));
    }
    let sampler = WalkSampler::new(g);
    Ok((0..sessions as u64)
        .map(|k| {
            let mut rng = WalkRng::new(seed, Domain::Restart, v as u64, k);
            run_session(&sampler, v, t, restarts, &mut rng)
        })
        .collect())
}
