use std::path::PathBuf;

use dimredkc::Metric;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::io::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MetricArg {
    Euclidean,
    Hamming,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Euclidean => Metric::Euclidean,
            MetricArg::Hamming => Metric::Hamming,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Farthest-first traversal in the original space (2-approximation).
    Gonzalez,
    /// Projected Gonzalez pulled back to the input (2+ε, Euclidean).
    DimredCenter,
    /// Traversal on squared projected distances (2+ε, Hamming).
    DimredHamCenter,
    /// Minimum-diameter clustering (2+ε, either metric).
    MinDiameter,
    /// ℓ-center with z outliers (3+ε, either metric).
    Outliers,
}

impl Algorithm {
    pub fn is_randomized(self) -> bool {
        self != Algorithm::Gonzalez
    }

    /// Approximation factor against the conservative optimum.
    pub fn guarantee(self, epsilon: Option<f64>) -> f64 {
        let eps = epsilon.unwrap_or(0.0);
        match self {
            Algorithm::Gonzalez => 2.0,
            Algorithm::DimredCenter | Algorithm::DimredHamCenter | Algorithm::MinDiameter => {
                2.0 + eps
            }
            Algorithm::Outliers => 3.0 + eps,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub input: PathBuf,
    pub format: Format,
    pub metric: MetricArg,
    pub algo: Algorithm,
    pub ell: usize,
    pub epsilon: Option<f64>,
    pub z: Option<usize>,
    pub beta: f64,
    pub seed: Option<u64>,
    pub trials: usize,
    pub out: Option<PathBuf>,
    pub report: ReportFormat,
}

impl RunConfig {
    pub fn new(
        input: impl Into<PathBuf>,
        format: Format,
        metric: MetricArg,
        algo: Algorithm,
        ell: usize,
    ) -> Self {
        Self {
            input: input.into(),
            format,
            metric,
            algo,
            ell,
            epsilon: None,
            z: None,
            beta: 1.0,
            seed: None,
            trials: 1,
            out: None,
            report: ReportFormat::Json,
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.ell == 0 {
            return bad("--l must be at least 1".into());
        }
        if self.trials == 0 {
            return bad("--trials must be at least 1".into());
        }
        if !(self.beta.is_finite() && self.beta > 0.0) {
            return bad(format!("--beta must be positive, got {}", self.beta));
        }
        if self.algo.is_randomized() {
            match self.epsilon {
                None => return bad(format!("--epsilon is required for {:?}", self.algo)),
                Some(e) if !(e > 0.0 && e < 0.5) => {
                    return bad(format!("--epsilon must lie in (0, 0.5), got {e}"))
                }
                Some(_) => {}
            }
            if self.seed.is_none() {
                return bad("--seed is required for randomized algorithms".into());
            }
        }
        match (self.algo, self.z) {
            (Algorithm::Outliers, None) => return bad("--z is required for outliers".into()),
            (Algorithm::Outliers, Some(_)) => {}
            (_, Some(_)) => return bad("--z is only accepted by outliers".into()),
            _ => {}
        }
        match (self.algo, self.metric) {
            (Algorithm::DimredCenter, MetricArg::Hamming) => {
                bad("dimred-center needs --metric euclidean".into())
            }
            (Algorithm::DimredHamCenter, MetricArg::Euclidean) => {
                bad("dimred-ham-center needs --metric hamming".into())
            }
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(algo: Algorithm) -> RunConfig {
        let mut c = RunConfig::new("x.csv", Format::Csv, MetricArg::Euclidean, algo, 2);
        c.epsilon = Some(0.25);
        c.seed = Some(1);
        c
    }

    #[test]
    fn epsilon_interval() {
        let mut c = base(Algorithm::DimredCenter);
        c.validate().unwrap();
        c.epsilon = Some(0.49);
        c.validate().unwrap();
        for e in [0.5, 0.0, -0.1, f64::NAN] {
            c.epsilon = Some(e);
            assert!(c.validate().is_err(), "{e}");
        }
    }

    #[test]
    fn seed_and_z_rules() {
        let mut c = base(Algorithm::MinDiameter);
        c.seed = None;
        assert!(c.validate().is_err());
        let mut c = base(Algorithm::Gonzalez);
        c.seed = None;
        c.epsilon = None;
        c.validate().unwrap();
        c.z = Some(1);
        assert_eq!(c.validate().unwrap_err().exit_code(), 2);
        let mut c = base(Algorithm::Outliers);
        assert!(c.validate().is_err());
        c.z = Some(0);
        c.validate().unwrap();
    }

    #[test]
    fn metric_must_match() {
        let mut c = base(Algorithm::DimredHamCenter);
        assert!(c.validate().is_err());
        c.metric = MetricArg::Hamming;
        c.validate().unwrap();
    }
}
