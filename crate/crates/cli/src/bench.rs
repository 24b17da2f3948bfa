//! Per-phase timings of the projected pipeline over a grid of `(n, d, ℓ)`,
//! next to plain Gonzalez in the original space as a control.

use std::io::Write;
use std::time::{Duration, Instant};

use dimredkc::synth::gaussian;
use dimredkc::{dimred_center, gonzalez, GonzalezSubroutine, ReductionParams};
use serde::Serialize;

use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchCell {
    pub n: usize,
    pub d: usize,
    pub ell: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub cells: Vec<BenchCell>,
    /// Accuracy handed to the projection unchanged.
    pub epsilon: f64,
    pub seed: u64,
    /// Repetitions per cell; the minimum time of each phase is kept.
    pub reps: usize,
}

impl BenchConfig {
    /// Cartesian product of the given sizes.
    pub fn grid(
        ns: &[usize],
        ds: &[usize],
        ells: &[usize],
        epsilon: f64,
        seed: u64,
        reps: usize,
    ) -> Self {
        let mut cells = Vec::new();
        for &n in ns {
            for &d in ds {
                for &ell in ells {
                    cells.push(BenchCell { n, d, ell });
                }
            }
        }
        Self {
            cells,
            epsilon,
            seed,
            reps,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub d: usize,
    pub ell: usize,
    pub epsilon: f64,
    pub k: usize,
    pub project_s: f64,
    pub solve_s: f64,
    pub pullback_s: f64,
    pub control_s: f64,
}

pub fn bench_scaling(config: &BenchConfig) -> CliResult<Vec<BenchRow>> {
    let reps = config.reps.max(1);
    let mut rows = Vec::with_capacity(config.cells.len());
    for cell in &config.cells {
        let points = gaussian(cell.n, cell.d, config.seed);
        let params = ReductionParams::new(config.epsilon, config.seed);
        let mut best = [Duration::MAX; 4];
        let mut k = 0;
        for _ in 0..reps {
            let (_, report) =
                dimred_center(&points, cell.ell, params, &GonzalezSubroutine::default())?;
            k = report.k;
            let t = report.timings;
            for (slot, time) in best.iter_mut().zip([t.project, t.solve, t.pullback]) {
                *slot = (*slot).min(time);
            }
            let start = Instant::now();
            gonzalez(&points, cell.ell, 0)?;
            best[3] = best[3].min(start.elapsed());
        }
        rows.push(BenchRow {
            n: cell.n,
            d: cell.d,
            ell: cell.ell,
            epsilon: config.epsilon,
            k,
            project_s: best[0].as_secs_f64(),
            solve_s: best[1].as_secs_f64(),
            pullback_s: best[2].as_secs_f64(),
            control_s: best[3].as_secs_f64(),
        });
    }
    Ok(rows)
}

pub fn write_bench_csv<W: Write>(out: W, rows: &[BenchRow]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(anyhow::Error::from)?;
    }
    w.flush()?;
    Ok(())
}
