use std::io::Write;
use std::time::Duration;

use serde::Serialize;

use crate::config::{ReportFormat, RunConfig};
use crate::error::CliResult;

pub const SCHEMA_VERSION: u32 = 1;

/// Wall-clock seconds per phase. Phases an algorithm does not expose
/// separately are absent; `total` always covers the whole call.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timings {
    pub project: Option<f64>,
    pub solve: Option<f64>,
    pub pullback: Option<f64>,
    pub total: f64,
}

impl Timings {
    pub fn total_only(total: Duration) -> Self {
        Self {
            total: total.as_secs_f64(),
            ..Self::default()
        }
    }
}

/// One execution. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub seed: Option<u64>,
    pub centers: Vec<usize>,
    /// Exact covering radius in the original space.
    pub radius: Option<f64>,
    pub clusters: Option<Vec<Vec<usize>>>,
    pub max_diameter: Option<f64>,
    pub outliers: Option<Vec<usize>>,
    pub surrogate_radius: Option<f64>,
    pub k: Option<usize>,
    pub ell_prime: Option<usize>,
    pub timings: Timings,
}

impl TrialReport {
    /// The value the approximation guarantee speaks about.
    pub fn objective(&self) -> f64 {
        self.max_diameter.or(self.radius).expect("objective")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GuaranteeCheck {
    pub factor: f64,
    pub oracle_optimum: f64,
    pub violations: usize,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub config: RunConfig,
    pub n: usize,
    pub d: usize,
    pub trials: Vec<TrialReport>,
    pub guarantee: Option<GuaranteeCheck>,
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

fn joined(v: &[usize]) -> String {
    v.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

impl RunReport {
    pub fn write<W: Write>(&self, mut out: W, format: ReportFormat) -> CliResult<()> {
        match format {
            ReportFormat::Json => {
                serde_json::to_writer_pretty(&mut out, self).map_err(anyhow::Error::from)?;
                writeln!(out)?;
            }
            ReportFormat::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record([
                    "trial",
                    "seed",
                    "algo",
                    "radius",
                    "max_diameter",
                    "surrogate_radius",
                    "k",
                    "ell_prime",
                    "centers",
                    "outliers",
                    "project_s",
                    "solve_s",
                    "pullback_s",
                    "total_s",
                    "oracle_optimum",
                    "within_guarantee",
                ])
                .map_err(anyhow::Error::from)?;
                let algo = serde_json::to_value(self.config.algo).map_err(anyhow::Error::from)?;
                for (t, trial) in self.trials.iter().enumerate() {
                    let (oracle, within) = match &self.guarantee {
                        Some(g) => (
                            g.oracle_optimum.to_string(),
                            (trial.objective() <= g.factor * g.oracle_optimum).to_string(),
                        ),
                        None => (String::new(), String::new()),
                    };
                    w.write_record([
                        t.to_string(),
                        opt(&trial.seed),
                        algo.as_str().unwrap_or_default().to_string(),
                        opt(&trial.radius),
                        opt(&trial.max_diameter),
                        opt(&trial.surrogate_radius),
                        opt(&trial.k),
                        opt(&trial.ell_prime),
                        joined(&trial.centers),
                        trial.outliers.as_deref().map(joined).unwrap_or_default(),
                        opt(&trial.timings.project),
                        opt(&trial.timings.solve),
                        opt(&trial.timings.pullback),
                        trial.timings.total.to_string(),
                        oracle,
                        within,
                    ])
                    .map_err(anyhow::Error::from)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}
