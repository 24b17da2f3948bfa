//! ℓ-center with `z` outliers on projected interdistances.
//!
//! A greedy disk cover is run on a surrogate matrix `W` built from the
//! projected points: `W'_ij = ‖f(p_i) − f(p_j)‖` for Euclidean inputs and
//! `W''_ij = ‖f(p_i) − f(p_j)‖²` for Hamming inputs. The smallest radius in
//! the candidate set `B = {W_ij} ∪ {(1+2ε)·W_ij}` for which the greedy cover
//! succeeds is located by binary search.
//!
//! Both metrics share one engine; only the surrogate differs.

use rayon::prelude::*;

use crate::center_reduce::check_epsilon_half;
use crate::error::{Error, Result};
use crate::points::{OutlierSolution, PointSet};
use crate::projection::{target_dimension, ProjectedSet, ProjectionMap, DEFAULT_BETA};
use crate::Metric;

/// Which surrogate a [`SurrogateMatrix`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurrogateKind {
    /// Projected ℓ₂ distance.
    Euclidean,
    /// Squared projected ℓ₂ distance.
    Hamming,
}

impl SurrogateKind {
    pub fn for_metric(metric: Metric) -> Self {
        match metric {
            Metric::Euclidean => SurrogateKind::Euclidean,
            Metric::Hamming => SurrogateKind::Hamming,
        }
    }
}

/// Symmetric nonnegative `n × n` matrix with zero diagonal, plus each row's
/// column order sorted by value so that threshold balls are row prefixes.
#[derive(Debug, Clone, PartialEq)]
pub struct SurrogateMatrix {
    n: usize,
    kind: SurrogateKind,
    values: Vec<f64>,
    order: Vec<u32>,
}

impl SurrogateMatrix {
    /// Validates and indexes a row-major matrix.
    pub fn from_values(n: usize, values: Vec<f64>, kind: SurrogateKind) -> Result<Self> {
        if n == 0 || values.len() != n * n {
            return Err(Error::InvalidParameter(format!(
                "surrogate matrix needs n² = {} entries, got {}",
                n * n,
                values.len()
            )));
        }
        for i in 0..n {
            if values[i * n + i] != 0.0 {
                return Err(Error::InvalidParameter(format!("W[{i}][{i}] is not zero")));
            }
            for j in 0..n {
                let v = values[i * n + j];
                if !(v >= 0.0 && v.is_finite()) {
                    return Err(Error::InvalidParameter(format!("W[{i}][{j}] = {v}")));
                }
                if v != values[j * n + i] {
                    return Err(Error::InvalidParameter(format!(
                        "W is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let order = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let row = &values[i * n..(i + 1) * n];
                let mut idx: Vec<u32> = (0..n as u32).collect();
                idx.sort_by(|&a, &b| row[a as usize].total_cmp(&row[b as usize]).then(a.cmp(&b)));
                idx
            })
            .collect();
        Ok(Self {
            n,
            kind,
            values,
            order,
        })
    }

    /// All-pairs surrogate of a projected set.
    pub fn from_projection(projected: &ProjectedSet, kind: SurrogateKind) -> Self {
        let n = projected.len();
        let mut values = vec![0.0; n * n];
        values.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            for (j, slot) in row.iter_mut().enumerate() {
                // Evaluate with the smaller index first so W is exactly symmetric.
                let sq = projected.sq_dist(i.min(j), i.max(j));
                *slot = match kind {
                    SurrogateKind::Euclidean => sq.sqrt(),
                    SurrogateKind::Hamming => sq,
                };
            }
        });
        Self::from_values(n, values, kind).expect("projected distances form a valid surrogate")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn kind(&self) -> SurrogateKind {
        self.kind
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    /// Columns of row `i` whose value is at most `threshold`.
    pub fn ball(&self, i: usize, threshold: f64) -> &[u32] {
        let order = &self.order[i * self.n..(i + 1) * self.n];
        let row = self.row(i);
        let len = order.partition_point(|&j| row[j as usize] <= threshold);
        &order[..len]
    }

    /// Largest entry.
    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

/// Sorted, deduplicated candidate radii `{W_ij} ∪ {(1+2ε)·W_ij}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusCandidateSet(Vec<f64>);

impl RadiusCandidateSet {
    pub fn build(w: &SurrogateMatrix, epsilon: f64) -> Self {
        let inflate = 1.0 + 2.0 * epsilon;
        let mut values: Vec<f64> = w.values.iter().flat_map(|&v| [v, v * inflate]).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        Self(values)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Index of the first candidate `≥ r`.
    pub fn first_at_least(&self, r: f64) -> Option<usize> {
        let idx = self.0.partition_point(|&v| v < r);
        (idx < self.0.len()).then_some(idx)
    }
}

/// Outcome of one greedy cover attempt.
#[derive(Debug, Clone, PartialEq)]
pub struct GreedyVerdict {
    pub yes: bool,
    pub radius: f64,
    /// Center of each selected `G` set, in selection order.
    pub centers: Vec<usize>,
    /// Points newly marked by each selected `E` set; pairwise disjoint.
    pub covered_sets: Vec<Vec<usize>>,
    pub covered_count: usize,
}

impl GreedyVerdict {
    /// Points not marked by any selected `E` set, ascending.
    pub fn unmarked(&self, n: usize) -> Vec<usize> {
        let mut marked = vec![false; n];
        for set in &self.covered_sets {
            for &j in set {
                marked[j] = true;
            }
        }
        (0..n).filter(|&j| !marked[j]).collect()
    }
}

/// Greedy disk cover at radius `r`.
///
/// `G_i = {j : W_ij ≤ (1+ε)r}` and `E_i = {j : W_ij ≤ 3(1+ε)r}`. For `ℓ`
/// rounds the unselected `G_i` with the most unmarked points is chosen
/// (lowest `i` on ties) and the unmarked part of its `E_i` gets marked.
/// Already marked points may still be chosen as centers. The verdict is YES
/// iff at least `n − z` points end up marked.
pub fn greedy_cover(
    w: &SurrogateMatrix,
    ell: usize,
    epsilon: f64,
    z: usize,
    r: f64,
) -> GreedyVerdict {
    let n = w.len();
    let g_threshold = r * (1.0 + epsilon);
    let e_threshold = 3.0 * r * (1.0 + epsilon);
    let mut marked = vec![false; n];
    let mut selectable = vec![true; n];
    let mut centers = Vec::with_capacity(ell);
    let mut covered_sets = Vec::with_capacity(ell);
    let mut covered_count = 0usize;

    for _ in 0..ell.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in (0..n).filter(|&i| selectable[i]) {
            let size = w
                .ball(i, g_threshold)
                .iter()
                .filter(|&&j| !marked[j as usize])
                .count();
            if best.is_none_or(|(_, s)| size > s) {
                best = Some((i, size));
            }
        }
        let (chosen, _) = best.expect("fewer rounds than points");
        selectable[chosen] = false;
        let mut newly = Vec::new();
        for &j in w.ball(chosen, e_threshold) {
            let j = j as usize;
            if !marked[j] {
                marked[j] = true;
                newly.push(j);
            }
        }
        newly.sort_unstable();
        covered_count += newly.len();
        centers.push(chosen);
        covered_sets.push(newly);
    }

    GreedyVerdict {
        yes: covered_count + z >= n,
        radius: r,
        centers,
        covered_sets,
        covered_count,
    }
}

/// Diagnostics of one [`dimred_cen_out`] call.
#[derive(Debug, Clone, PartialEq)]
pub struct OutlierTrace {
    pub k: usize,
    pub seed: u64,
    pub epsilon: f64,
    pub kind: SurrogateKind,
    pub candidate_count: usize,
    /// Smallest candidate radius with a YES verdict.
    pub chosen_radius: f64,
    /// Number of greedy cover evaluations made by the binary search.
    pub greedy_calls: usize,
    /// `max` over non-outliers of the surrogate distance to the nearest center.
    pub surrogate_radius: f64,
}

/// Binary search for the smallest candidate with a YES verdict.
/// Returns the verdict and the number of greedy evaluations.
pub fn search_candidates(
    w: &SurrogateMatrix,
    candidates: &RadiusCandidateSet,
    ell: usize,
    epsilon: f64,
    z: usize,
) -> (GreedyVerdict, usize) {
    let b = candidates.as_slice();
    let (mut lo, mut hi) = (0usize, b.len() - 1);
    let mut calls = 1;
    let mut best = greedy_cover(w, ell, epsilon, z, b[hi]);
    assert!(best.yes, "the largest candidate always admits a cover");
    // invariant: verdict at b[hi] is YES, every index below lo is NO
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let verdict = greedy_cover(w, ell, epsilon, z, b[mid]);
        calls += 1;
        if verdict.yes {
            hi = mid;
            best = verdict;
        } else {
            lo = mid + 1;
        }
    }
    (best, calls)
}

/// Projects `points`, builds the surrogate for the point set's metric and
/// returns the centers of the smallest successful greedy cover. The
/// unmarked points of that cover are the outliers (possibly fewer than `z`).
pub fn dimred_cen_out(
    points: &PointSet,
    ell: usize,
    epsilon: f64,
    z: usize,
    seed: u64,
) -> Result<(OutlierSolution, OutlierTrace)> {
    dimred_cen_out_with_beta(points, ell, epsilon, z, seed, DEFAULT_BETA)
}

pub fn dimred_cen_out_with_beta(
    points: &PointSet,
    ell: usize,
    epsilon: f64,
    z: usize,
    seed: u64,
    beta: f64,
) -> Result<(OutlierSolution, OutlierTrace)> {
    let n = points.len();
    if ell == 0 || ell >= n || z >= n {
        return Err(Error::InvalidParameter(format!(
            "need 1 ≤ ℓ < n and z < n, got ℓ={ell}, z={z}, n={n}"
        )));
    }
    check_epsilon_half(epsilon)?;
    let kind = SurrogateKind::for_metric(points.metric());
    let k = target_dimension(n, epsilon, beta)?;
    let projected = ProjectionMap::generate(seed, k, points.dim())?.project(points)?;
    let w = SurrogateMatrix::from_projection(&projected, kind);
    let candidates = RadiusCandidateSet::build(&w, epsilon);
    let (verdict, greedy_calls) = search_candidates(&w, &candidates, ell, epsilon, z);

    let outliers = verdict.unmarked(n);
    let mut is_outlier = vec![false; n];
    for &o in &outliers {
        is_outlier[o] = true;
    }
    let surrogate_radius = (0..n)
        .filter(|&j| !is_outlier[j])
        .map(|j| {
            verdict
                .centers
                .iter()
                .map(|&c| w.get(c, j))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    let solution = OutlierSolution::evaluate(points, verdict.centers.clone(), outliers)?;
    let trace = OutlierTrace {
        k,
        seed,
        epsilon,
        kind,
        candidate_count: candidates.len(),
        chosen_radius: verdict.radius,
        greedy_calls,
        surrogate_radius,
    };
    Ok((solution, trace))
}

/// `(3+ε)`-approximate conservative ℓ-center with `z` outliers:
/// [`dimred_cen_out`] at internal accuracy `ε/8`.
pub fn three_plus_eps_out(
    points: &PointSet,
    ell: usize,
    epsilon: f64,
    z: usize,
    seed: u64,
) -> Result<(OutlierSolution, OutlierTrace)> {
    check_epsilon_half(epsilon)?;
    dimred_cen_out(points, ell, epsilon / 8.0, z, seed)
}
