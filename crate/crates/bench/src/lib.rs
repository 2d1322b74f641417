//! Experiment runner for `monocarleson-core`: flat JSON configs, named experiments,
//! CSV rows and JSON summaries.

pub mod config;
pub mod experiments;
pub mod report;

pub use config::ExperimentConfig;
pub use experiments::{ergodic_demo, run, Experiment};
pub use report::{Check, ExperimentReport};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "MONOCARLESON_THREADS";

/// Sizes the global thread pool from [`THREADS_ENV`] if set. Call once, before any work.
pub fn init_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.trim().parse().map_err(|_| anyhow::anyhow!("{THREADS_ENV} must be a positive integer, got {v:?}"))?;
        if n == 0 {
            anyhow::bail!("{THREADS_ENV} must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}
