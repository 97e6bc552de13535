//! Dataset ingestion, synthetic generators and experiment sweeps.

pub mod generate;
pub mod io;
pub mod sweep;

pub use generate::{gadget_path_len, generate_gadget, generate_polarized, Gadget};
pub use io::{load_dataset, write_dataset, Dataset, DatasetStats, LoadOptions};
pub use sweep::{
    candidate_universe, default_k_list, emit_plotdata, run_sweep, ExperimentRecord, SweepConfig, SweepOutcome,
};
