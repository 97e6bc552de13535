//! Seeded Monte Carlo estimators and the restart session simulator.

mod estimate;
mod restart;
pub mod rng;
mod walk;

pub use estimate::{
    br_sample_size, estimate_br, estimate_br_with_walks, estimate_rwcc, estimate_rwcc_many, rwcc_sample_size,
    SampleBudget,
};
pub use restart::{simulate_restart_session, simulate_restart_sessions, SessionOutcome};
pub use walk::WalkSampler;
