//! Farthest-first traversal in Hamming space driven by projected squared
//! distances `W_ij = ‖f(p_i) − f(p_j)‖²`, which approximate `ham(p_i, p_j)`
//! within `1 ± ε` w.h.p. The loop never touches the original `d`-bit rows;
//! exact Hamming distances are only used to report the final radius.

use rayon::prelude::*;

use crate::center_reduce::{check_ell, check_epsilon_half, trivial_partition, ReductionParams};
use crate::error::{Error, Result};
use crate::points::{
    evaluate_center_solution, CenterSolution, ClusteringSolution, Metric, PointSet,
};
use crate::projection::{target_dimension, ProjectedSet, ProjectionMap};

/// Surrogate rows and running minima of one traversal.
#[derive(Debug, Clone, PartialEq)]
pub struct SurrogateDistanceState {
    /// `(q, W_q·)` for every chosen center `q`, in pick order.
    pub rows: Vec<(usize, Vec<f64>)>,
    /// `min_{q ∈ T} W_qj` for every point `j`.
    pub current_min: Vec<f64>,
    /// Center attaining `current_min[j]` (earliest pick on ties).
    pub current_nearest: Vec<usize>,
    pub k: usize,
    pub seed: u64,
    pub epsilon: f64,
}

impl SurrogateDistanceState {
    pub fn centers(&self) -> Vec<usize> {
        self.rows.iter().map(|(q, _)| *q).collect()
    }

    /// `(p_q, r_w)`: the non-center point with the largest surrogate distance
    /// to the centers (lowest index on ties) and that distance.
    pub fn farthest(&self) -> Option<(usize, f64)> {
        let centers = self.centers();
        let mut best: Option<(usize, f64)> = None;
        for (j, &w) in self.current_min.iter().enumerate() {
            if centers.contains(&j) {
                continue;
            }
            if best.is_none_or(|(_, bw)| w > bw) {
                best = Some((j, w));
            }
        }
        best
    }

    /// `r_w = max_j min_{q ∈ T} W_qj`.
    pub fn surrogate_radius(&self) -> f64 {
        self.current_min.iter().copied().fold(0.0, f64::max)
    }

    /// `W_qj` for a chosen center `q`.
    pub fn w(&self, q: usize, j: usize) -> Option<f64> {
        self.rows
            .iter()
            .find(|(c, _)| *c == q)
            .map(|(_, row)| row[j])
    }
}

fn surrogate_row(projected: &ProjectedSet, q: usize) -> Vec<f64> {
    (0..projected.len())
        .into_par_iter()
        .map(|j| projected.sq_dist(q, j))
        .collect()
}

/// Picks `ℓ` centers of a Hamming point set, starting at `p_0`, each next
/// center maximizing the running surrogate minimum (lowest index on ties).
///
/// Exactly `ℓ` rows of `W` are computed. The returned radius is the exact
/// Hamming covering radius of the chosen centers.
pub fn dimred_ham_center(
    points: &PointSet,
    ell: usize,
    params: ReductionParams,
) -> Result<(CenterSolution, SurrogateDistanceState)> {
    if points.metric() != Metric::Hamming {
        return Err(Error::MetricMismatch("expected Hamming points".into()));
    }
    check_ell(points, ell)?;
    check_epsilon_half(params.epsilon)?;
    let n = points.len();
    let k = target_dimension(n, params.epsilon, params.beta)?;
    let projected = ProjectionMap::generate(params.seed, k, points.dim())?.project(points)?;

    let first_row = surrogate_row(&projected, 0);
    let mut state = SurrogateDistanceState {
        current_min: first_row.clone(),
        current_nearest: vec![0; n],
        rows: vec![(0, first_row)],
        k,
        seed: params.seed,
        epsilon: params.epsilon,
    };
    let mut in_t = vec![false; n];
    in_t[0] = true;

    // ℓ−2 rounds of pick / new row / update, then one final pick; the final
    // center also gets its row so that minima and nearest centers cover
    // all ℓ centers.
    for _ in 1..ell {
        let mut pick: Option<(usize, f64)> = None;
        for j in (0..n).filter(|&j| !in_t[j]) {
            let w = state.current_min[j];
            if pick.is_none_or(|(_, bw)| w > bw) {
                pick = Some((j, w));
            }
        }
        let (m, _) = pick.expect("n > ℓ leaves a candidate");
        in_t[m] = true;
        let row = surrogate_row(&projected, m);
        for (j, &w) in row.iter().enumerate() {
            if w < state.current_min[j] {
                state.current_min[j] = w;
                state.current_nearest[j] = m;
            }
        }
        state.rows.push((m, row));
    }

    let solution = CenterSolution::evaluate(points, state.centers())?;
    Ok((solution, state))
}

/// `(2+ε)`-approximate Hamming ℓ-center: [`dimred_ham_center`] at `ε/5`.
pub fn two_plus_eps_ham(
    points: &PointSet,
    ell: usize,
    epsilon: f64,
    seed: u64,
) -> Result<(CenterSolution, SurrogateDistanceState)> {
    check_epsilon_half(epsilon)?;
    dimred_ham_center(points, ell, ReductionParams::new(epsilon, seed).scaled(5.0))
}

/// `(2+ε)`-approximate Hamming minimum-diameter clustering: cluster `t`
/// holds the points whose surrogate-nearest center is the `t`-th pick.
/// Diameters are exact. With `ℓ ≥ n` every point gets its own cluster.
pub fn ham_min_diameter(
    points: &PointSet,
    ell: usize,
    epsilon: f64,
    seed: u64,
) -> Result<(ClusteringSolution, Option<SurrogateDistanceState>)> {
    ham_min_diameter_with(points, ell, ReductionParams::new(epsilon, seed))
}

/// [`ham_min_diameter`] with explicit parameters (target accuracy in
/// `params.epsilon`).
pub fn ham_min_diameter_with(
    points: &PointSet,
    ell: usize,
    params: ReductionParams,
) -> Result<(ClusteringSolution, Option<SurrogateDistanceState>)> {
    check_epsilon_half(params.epsilon)?;
    if points.metric() != Metric::Hamming {
        return Err(Error::MetricMismatch("expected Hamming points".into()));
    }
    if ell == 0 {
        return Err(Error::InvalidParameter("ℓ must be positive".into()));
    }
    if ell >= points.len() {
        return Ok((trivial_partition(points, ell)?, None));
    }
    let (_, state) = dimred_ham_center(points, ell, params.scaled(5.0))?;
    let centers = state.centers();
    let mut clusters = vec![Vec::new(); ell];
    for (j, nearest) in state.current_nearest.iter().enumerate() {
        let slot = centers.iter().position(|c| c == nearest).expect("center");
        clusters[slot].push(j);
    }
    let solution = ClusteringSolution::evaluate(points, clusters)?;
    Ok((solution, Some(state)))
}

/// Exact Hamming radius of the centers chosen by a traversal.
pub fn exact_radius(points: &PointSet, state: &SurrogateDistanceState) -> Result<f64> {
    evaluate_center_solution(points, &state.centers())
}
