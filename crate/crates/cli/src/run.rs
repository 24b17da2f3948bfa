use std::time::Instant;

use dimredkc::oracle::{
    opt_center_conservative, opt_center_outliers_conservative, opt_min_diameter,
};
use dimredkc::{
    dimred_cen_out_with_beta, dimred_center, dimred_ham_center, euclid_min_diameter_with, gonzalez,
    ham_min_diameter_with, GonzalezSubroutine, Metric, OracleBudget, PointSet, ReductionParams,
};

use crate::config::{Algorithm, RunConfig};
use crate::error::CliResult;
use crate::io::load_points;
use crate::report::{GuaranteeCheck, RunReport, Timings, TrialReport};

/// Loads the input and executes the configured algorithm `trials` times.
/// Trial `t` uses seed `seed + t`. With more than one trial the objective
/// of every run is compared against the exhaustive oracle.
pub fn run(config: &RunConfig) -> CliResult<RunReport> {
    config.validate()?;
    let points = load_points(&config.input, config.format, config.metric.into())?;
    run_on(config, &points)
}

pub fn run_on(config: &RunConfig, points: &PointSet) -> CliResult<RunReport> {
    config.validate()?;
    let trials = (0..config.trials as u64)
        .map(|t| run_once(config, points, config.seed.map(|s| s.wrapping_add(t))))
        .collect::<CliResult<Vec<_>>>()?;
    let guarantee = if config.trials > 1 {
        let oracle_optimum = oracle_for(config, points)?;
        let factor = config.algo.guarantee(config.epsilon);
        let violations = trials
            .iter()
            .filter(|t| t.objective() > factor * oracle_optimum)
            .count();
        Some(GuaranteeCheck {
            factor,
            oracle_optimum,
            violations,
            trials: trials.len(),
        })
    } else {
        None
    };
    Ok(RunReport {
        schema: crate::report::SCHEMA_VERSION,
        config: config.clone(),
        n: points.len(),
        d: points.dim(),
        trials,
        guarantee,
    })
}

fn oracle_for(config: &RunConfig, points: &PointSet) -> CliResult<f64> {
    let budget = OracleBudget::default();
    Ok(match config.algo {
        Algorithm::Gonzalez | Algorithm::DimredCenter | Algorithm::DimredHamCenter => {
            opt_center_conservative(points, config.ell, &budget)?.radius
        }
        Algorithm::MinDiameter => opt_min_diameter(points, config.ell, &budget)?.max_diameter,
        Algorithm::Outliers => {
            opt_center_outliers_conservative(points, config.ell, config.z.unwrap_or(0), &budget)?
                .radius
        }
    })
}

fn run_once(config: &RunConfig, points: &PointSet, seed: Option<u64>) -> CliResult<TrialReport> {
    let ell = config.ell;
    let params = || {
        ReductionParams::new(config.epsilon.expect("validated"), seed.expect("validated"))
            .with_beta(config.beta)
    };
    let mut trial = TrialReport {
        seed,
        centers: Vec::new(),
        radius: None,
        clusters: None,
        max_diameter: None,
        outliers: None,
        surrogate_radius: None,
        k: None,
        ell_prime: None,
        timings: Timings::default(),
    };
    let start = Instant::now();
    match config.algo {
        Algorithm::Gonzalez => {
            let sol = gonzalez(points, ell, 0)?;
            trial.timings = Timings::total_only(start.elapsed());
            trial.centers = sol.centers;
            trial.radius = Some(sol.radius);
        }
        Algorithm::DimredCenter => {
            let (sol, rep) = dimred_center(
                points,
                ell,
                params().scaled(8.0),
                &GonzalezSubroutine::default(),
            )?;
            trial.timings = Timings {
                project: Some(rep.timings.project.as_secs_f64()),
                solve: Some(rep.timings.solve.as_secs_f64()),
                pullback: Some(rep.timings.pullback.as_secs_f64()),
                total: start.elapsed().as_secs_f64(),
            };
            trial.centers = sol.centers;
            trial.radius = Some(sol.radius);
            trial.surrogate_radius = Some(rep.reduced_radius);
            trial.k = Some(rep.k);
            trial.ell_prime = Some(rep.ell_prime);
        }
        Algorithm::DimredHamCenter => {
            let (sol, state) = dimred_ham_center(points, ell, params().scaled(5.0))?;
            trial.timings = Timings::total_only(start.elapsed());
            trial.centers = sol.centers;
            trial.radius = Some(sol.radius);
            trial.surrogate_radius = Some(state.surrogate_radius());
            trial.k = Some(state.k);
            trial.ell_prime = Some(ell);
        }
        Algorithm::MinDiameter => {
            let sol = match points.metric() {
                Metric::Euclidean => {
                    let (sol, rep) = euclid_min_diameter_with(points, ell, params())?;
                    if let Some(rep) = rep {
                        trial.k = Some(rep.k);
                        trial.ell_prime = Some(rep.ell_prime);
                        trial.surrogate_radius = Some(rep.reduced_radius);
                    }
                    sol
                }
                Metric::Hamming => {
                    let (sol, state) = ham_min_diameter_with(points, ell, params())?;
                    if let Some(state) = state {
                        trial.centers = state.centers();
                        trial.k = Some(state.k);
                        trial.surrogate_radius = Some(state.surrogate_radius());
                    }
                    sol
                }
            };
            trial.timings = Timings::total_only(start.elapsed());
            trial.max_diameter = Some(sol.max_diameter);
            trial.clusters = Some(sol.clusters);
        }
        Algorithm::Outliers => {
            let p = params();
            let z = config.z.expect("validated");
            let (sol, trace) =
                dimred_cen_out_with_beta(points, ell, p.epsilon / 8.0, z, p.seed, p.beta)?;
            trial.timings = Timings::total_only(start.elapsed());
            trial.centers = sol.centers;
            trial.radius = Some(sol.radius);
            trial.outliers = Some(sol.outliers);
            trial.surrogate_radius = Some(trace.surrogate_radius);
            trial.k = Some(trace.k);
        }
    }
    Ok(trial)
}
