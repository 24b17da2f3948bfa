//! ℓ-center through a random projection: map the points to
//! `k = O(log n / ε²)` dimensions, solve there with any conservative
//! subroutine, and pull the centers back through `f⁻¹`.
//!
//! With an α-approximate subroutine the pulled-back centers are a
//! `(1+ε)(1+2ε)α` approximation w.h.p.; with Gonzalez and `ε/8` this is
//! `2+ε` ([`euclid_two_plus_eps`]).

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::gonzalez::farthest_first;
use crate::points::{
    evaluate_center_solution, CenterSolution, ClusteringSolution, Metric, PointSet,
};
use crate::projection::{target_dimension, ProjectedSet, ProjectionMap, DEFAULT_BETA};

/// A solver for m-center that only returns input points as centers.
pub trait ConservativeSubroutine {
    fn name(&self) -> &str;

    /// Declared approximation factor α.
    fn approximation_factor(&self) -> f64;

    /// Returns `m` distinct indices into `points`.
    fn solve(&self, points: &PointSet, m: usize) -> Result<Vec<usize>>;
}

/// Farthest-first traversal as a subroutine (α = 2).
#[derive(Debug, Clone, Copy, Default)]
pub struct GonzalezSubroutine {
    /// First center, as an index into the reduced point set.
    pub first: usize,
}

impl ConservativeSubroutine for GonzalezSubroutine {
    fn name(&self) -> &str {
        "gonzalez"
    }

    fn approximation_factor(&self) -> f64 {
        2.0
    }

    fn solve(&self, points: &PointSet, m: usize) -> Result<Vec<usize>> {
        Ok(farthest_first(points, m, self.first)?.chosen)
    }
}

/// Adapts a closure into a [`ConservativeSubroutine`].
///
/// This is the attachment point for faster O(α)-approximate m-center
/// solvers working on the reduced instance.
pub struct FnSubroutine<F> {
    name: String,
    alpha: f64,
    solver: F,
}

impl<F> FnSubroutine<F>
where
    F: Fn(&PointSet, usize) -> Result<Vec<usize>>,
{
    pub fn new(name: impl Into<String>, alpha: f64, solver: F) -> Self {
        Self {
            name: name.into(),
            alpha,
            solver,
        }
    }
}

impl<F> ConservativeSubroutine for FnSubroutine<F>
where
    F: Fn(&PointSet, usize) -> Result<Vec<usize>>,
{
    fn name(&self) -> &str {
        &self.name
    }

    fn approximation_factor(&self) -> f64 {
        self.alpha
    }

    fn solve(&self, points: &PointSet, m: usize) -> Result<Vec<usize>> {
        (self.solver)(points, m)
    }
}

/// Parameters of one randomized reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionParams {
    pub epsilon: f64,
    pub beta: f64,
    pub seed: u64,
}

impl ReductionParams {
    pub fn new(epsilon: f64, seed: u64) -> Self {
        Self {
            epsilon,
            beta: DEFAULT_BETA,
            seed,
        }
    }

    pub fn with_beta(self, beta: f64) -> Self {
        Self { beta, ..self }
    }

    /// The same parameters with `ε` divided by `divisor`.
    pub fn scaled(self, divisor: f64) -> Self {
        Self {
            epsilon: self.epsilon / divisor,
            ..self
        }
    }
}

/// Wall-clock split of one reduced run.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PhaseTimings {
    pub project: Duration,
    pub solve: Duration,
    pub pullback: Duration,
}

/// Diagnostics of one [`dimred_center`] call.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedRunReport {
    pub k: usize,
    pub ell: usize,
    /// `min(ℓ, |f(P)|)`.
    pub ell_prime: usize,
    /// Centers added arbitrarily because `|f(P)| < ℓ`.
    pub padded_count: usize,
    pub distinct_images: usize,
    pub seed: u64,
    pub epsilon: f64,
    pub subroutine: String,
    /// Covering radius of the subroutine's centers over `f(P)`.
    pub reduced_radius: f64,
    /// Covering radius of the returned centers over `P`.
    pub original_radius: f64,
    pub timings: PhaseTimings,
}

pub(crate) fn check_epsilon_half(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 0.5 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, 1/2), got {epsilon}"
        )))
    }
}

pub(crate) fn check_ell(points: &PointSet, ell: usize) -> Result<()> {
    if ell == 0 || ell >= points.len() {
        return Err(Error::InvalidParameter(format!(
            "need 1 ≤ ℓ < n, got ℓ={ell}, n={}",
            points.len()
        )));
    }
    Ok(())
}

fn check_subroutine_output(name: &str, output: &[usize], m: usize, n: usize) -> Result<()> {
    let fail = |reason: String| {
        Err(Error::Subroutine {
            name: name.to_string(),
            reason,
        })
    };
    if output.len() != m {
        return fail(format!("expected {m} centers, got {}", output.len()));
    }
    let mut seen = vec![false; n];
    for &i in output {
        if i >= n {
            return fail(format!("index {i} out of range for {n} reduced points"));
        }
        if std::mem::replace(&mut seen[i], true) {
            return fail(format!("index {i} returned twice"));
        }
    }
    Ok(())
}

/// Everything a reduced run produces, including the pieces the
/// min-diameter extension needs.
struct ReducedRun {
    solution: CenterSolution,
    report: ReducedRunReport,
    projected: ProjectedSet,
    /// `f⁻¹` of the subroutine's centers, in the subroutine's order.
    pulled_back: Vec<usize>,
}

fn run_reduced(
    points: &PointSet,
    ell: usize,
    params: ReductionParams,
    subroutine: &dyn ConservativeSubroutine,
) -> Result<ReducedRun> {
    if points.metric() != Metric::Euclidean {
        return Err(Error::MetricMismatch(
            "the projection wrapper handles Euclidean inputs; use ham_center for Hamming".into(),
        ));
    }
    check_ell(points, ell)?;
    check_epsilon_half(params.epsilon)?;
    let n = points.len();

    let started = Instant::now();
    let k = target_dimension(n, params.epsilon, params.beta)?;
    let map = ProjectionMap::generate(params.seed, k, points.dim())?;
    let projected = map.project(points)?;
    let reduced = projected.distinct_point_set();
    let project = started.elapsed();

    let started = Instant::now();
    let ell_prime = ell.min(projected.distinct_count());
    let reduced_centers = subroutine.solve(&reduced, ell_prime)?;
    check_subroutine_output(
        subroutine.name(),
        &reduced_centers,
        ell_prime,
        reduced.len(),
    )?;
    let solve = started.elapsed();

    let started = Instant::now();
    let reduced_radius = evaluate_center_solution(&reduced, &reduced_centers)?;
    let pulled_back: Vec<usize> = reduced_centers
        .iter()
        .map(|&t| {
            let image = projected.image(projected.distinct_indices()[t]);
            projected.preimage(image).expect("image of an input point")
        })
        .collect();
    let mut centers = pulled_back.clone();
    let mut is_center = vec![false; n];
    for &c in &centers {
        is_center[c] = true;
    }
    let padded_count = ell - ell_prime;
    centers.extend((0..n).filter(|&i| !is_center[i]).take(padded_count));
    let solution = CenterSolution::evaluate(points, centers)?;
    let pullback = started.elapsed();

    let report = ReducedRunReport {
        k,
        ell,
        ell_prime,
        padded_count,
        distinct_images: projected.distinct_count(),
        seed: params.seed,
        epsilon: params.epsilon,
        subroutine: subroutine.name().to_string(),
        reduced_radius,
        original_radius: solution.radius,
        timings: PhaseTimings {
            project,
            solve,
            pullback,
        },
    };
    Ok(ReducedRun {
        solution,
        report,
        projected,
        pulled_back,
    })
}

/// Projects `points`, runs `subroutine` on `f(P)` for `ℓ' = min(ℓ, |f(P)|)`
/// centers, maps them back through `f⁻¹` and pads with the lowest unused
/// indices up to `ℓ` centers. The radius is measured in the original space.
pub fn dimred_center(
    points: &PointSet,
    ell: usize,
    params: ReductionParams,
    subroutine: &dyn ConservativeSubroutine,
) -> Result<(CenterSolution, ReducedRunReport)> {
    let run = run_reduced(points, ell, params, subroutine)?;
    Ok((run.solution, run.report))
}

/// `(2+ε)`-approximate conservative ℓ-center: [`dimred_center`] with
/// Gonzalez and internal accuracy `ε/8`.
pub fn euclid_two_plus_eps(
    points: &PointSet,
    ell: usize,
    epsilon: f64,
    seed: u64,
) -> Result<(CenterSolution, ReducedRunReport)> {
    check_epsilon_half(epsilon)?;
    dimred_center(
        points,
        ell,
        ReductionParams::new(epsilon, seed).scaled(8.0),
        &GonzalezSubroutine::default(),
    )
}

/// `(2+ε)`-approximate minimum-diameter ℓ-clustering.
///
/// Runs [`euclid_two_plus_eps`] and assigns every point to the reduced
/// center nearest to its image; diameters are measured in the original
/// space. Unused cluster slots (when `|f(P)| < ℓ`) stay empty. With
/// `ℓ ≥ n` every point gets its own cluster.
pub fn euclid_min_diameter(
    points: &PointSet,
    ell: usize,
    epsilon: f64,
    seed: u64,
) -> Result<(ClusteringSolution, Option<ReducedRunReport>)> {
    euclid_min_diameter_with(points, ell, ReductionParams::new(epsilon, seed))
}

/// [`euclid_min_diameter`] with explicit parameters; `params.epsilon` is the
/// target accuracy, not the internal one.
pub fn euclid_min_diameter_with(
    points: &PointSet,
    ell: usize,
    params: ReductionParams,
) -> Result<(ClusteringSolution, Option<ReducedRunReport>)> {
    check_epsilon_half(params.epsilon)?;
    if points.metric() != Metric::Euclidean {
        return Err(Error::MetricMismatch("expected Euclidean points".into()));
    }
    if ell == 0 {
        return Err(Error::InvalidParameter("ℓ must be positive".into()));
    }
    if ell >= points.len() {
        return Ok((trivial_partition(points, ell)?, None));
    }
    let run = run_reduced(
        points,
        ell,
        params.scaled(8.0),
        &GonzalezSubroutine::default(),
    )?;
    let clusters = partition_by_images(&run.projected, &run.pulled_back, ell);
    let solution = ClusteringSolution::evaluate(points, clusters)?;
    Ok((solution, Some(run.report)))
}

/// Each point alone, padded with empty clusters up to `ell`.
pub(crate) fn trivial_partition(points: &PointSet, ell: usize) -> Result<ClusteringSolution> {
    let mut clusters: Vec<Vec<usize>> = (0..points.len()).map(|i| vec![i]).collect();
    clusters.resize(ell.max(points.len()), Vec::new());
    ClusteringSolution::evaluate(points, clusters)
}

fn partition_by_images(projected: &ProjectedSet, centers: &[usize], ell: usize) -> Vec<Vec<usize>> {
    let mut clusters = vec![Vec::new(); ell];
    for v in 0..projected.len() {
        let mut best = (0usize, f64::INFINITY);
        for (slot, &c) in centers.iter().enumerate() {
            let d = projected.sq_dist(v, c);
            if d < best.1 || (d == best.1 && c < centers[best.0]) {
                best = (slot, d);
            }
        }
        clusters[best.0].push(v);
    }
    clusters
}
