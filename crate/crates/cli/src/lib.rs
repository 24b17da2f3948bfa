//! Loading point sets, running the clustering algorithms of `dimredkc` from a
//! configuration, and reporting results as JSON or CSV.

pub mod bench;
pub mod config;
pub mod error;
pub mod io;
pub mod report;
pub mod run;

pub use bench::{bench_scaling, write_bench_csv, BenchCell, BenchConfig, BenchRow};
pub use config::{Algorithm, MetricArg, ReportFormat, RunConfig};
pub use error::{CliError, CliResult};
pub use io::{load_points, Format};
pub use report::{RunReport, TrialReport};
pub use run::{run, run_on};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "DIMREDKC_THREADS";

/// Sizes the global thread pool from [`THREADS_ENV`], if set.
pub fn init_threads() -> CliResult<()> {
    match std::env::var(THREADS_ENV) {
        Ok(value) => {
            let threads: usize = value
                .trim()
                .parse()
                .ok()
                .filter(|&t| t > 0)
                .ok_or_else(|| {
                    CliError::Config(format!(
                        "{THREADS_ENV} must be a positive integer, got {value:?}"
                    ))
                })?;
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global()
                .map_err(|e| CliError::Other(e.into()))
        }
        Err(_) => Ok(()),
    }
}
