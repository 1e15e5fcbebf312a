//! Experiment configuration, deterministic execution and result files for permlab.

pub mod error;
pub mod experiment;
pub mod sample;
pub mod spec;
pub mod transfer;
pub mod verify;

pub use error::{HarnessError, Result};
pub use experiment::{run_experiment, Summary};
pub use spec::{ExperimentSpec, Mode};
pub use transfer::{transfer, TransferSummary};
pub use verify::{verify_all, Status, VerifyOptions, VerifyReport};

/// Caps the global worker pool at `PERMLAB_THREADS` when set. Outputs do not depend on it.
pub fn init_thread_pool() -> Result<()> {
    if let Ok(v) = std::env::var("PERMLAB_THREADS") {
        let threads: usize = v
            .trim()
            .parse()
            .map_err(|_| HarnessError::Invalid(format!("PERMLAB_THREADS must be a positive integer, got `{v}`")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
            .map_err(|e| HarnessError::Invalid(e.to_string()))?;
    }
    Ok(())
}
