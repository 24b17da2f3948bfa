//! Exhaustive solvers for tiny instances, used as ground truth.
//!
//! Every oracle checks its enumeration size against an [`OracleBudget`]
//! before starting and refuses with [`Error::BudgetExceeded`] instead of
//! truncating. Ties resolve to the lexicographically smallest candidate.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::points::{CenterSolution, ClusteringSolution, Metric, OutlierSolution, PointSet};

/// Hard caps on oracle enumeration sizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleBudget {
    pub max_n: usize,
    pub max_ell: usize,
    pub max_z: usize,
    /// Cap on `ℓⁿ` for the partition oracle.
    pub max_partitions: u64,
    /// Cap on the number of candidate center sets (times outlier sets).
    pub max_subsets: u64,
    /// Cap on grid-center evaluations (`#grid sets × n`).
    pub max_grid_evaluations: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_n: 16,
            max_ell: 5,
            max_z: 5,
            max_partitions: 1 << 24,
            max_subsets: 5_000_000,
            max_grid_evaluations: 200_000_000,
        }
    }
}

impl OracleBudget {
    fn check(&self, what: &str, value: u64, cap: u64) -> Result<()> {
        if value > cap {
            Err(Error::BudgetExceeded(format!(
                "{what} = {value} exceeds {cap}"
            )))
        } else {
            Ok(())
        }
    }

    fn check_sizes(&self, n: usize, ell: usize, z: usize) -> Result<()> {
        self.check("n", n as u64, self.max_n as u64)?;
        self.check("ℓ", ell as u64, self.max_ell as u64)?;
        self.check("z", z as u64, self.max_z as u64)
    }
}

/// `C(n, r)`, saturating.
pub fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u64 = 1;
    for i in 0..r {
        acc = acc.saturating_mul((n - i) as u64) / (i as u64 + 1);
    }
    acc
}

/// All pairwise distances, row-major.
fn distance_table(points: &PointSet) -> Vec<f64> {
    let n = points.len();
    let mut table = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let d = points.dist(i, j);
            table[i * n + j] = d;
            table[j * n + i] = d;
        }
    }
    table
}

fn check_ell(points: &PointSet, ell: usize) -> Result<()> {
    if ell == 0 || ell > points.len() {
        return Err(Error::InvalidParameter(format!(
            "need 1 ≤ ℓ ≤ n, got ℓ={ell}, n={}",
            points.len()
        )));
    }
    Ok(())
}

/// Optimal conservative ℓ-center by enumerating every ℓ-subset.
pub fn opt_center_conservative(
    points: &PointSet,
    ell: usize,
    budget: &OracleBudget,
) -> Result<CenterSolution> {
    let sol = opt_center_outliers_conservative(points, ell, 0, budget)?;
    Ok(CenterSolution {
        centers: sol.centers,
        radius: sol.radius,
        assignment: None,
    })
}

/// Optimal conservative ℓ-center with `z` outliers.
///
/// For a fixed center set the best outliers are the `z` non-centers
/// farthest from it, so only center sets are enumerated; ties among equally
/// far points discard the higher index.
pub fn opt_center_outliers_conservative(
    points: &PointSet,
    ell: usize,
    z: usize,
    budget: &OracleBudget,
) -> Result<OutlierSolution> {
    check_ell(points, ell)?;
    let n = points.len();
    budget.check_sizes(n, ell, z)?;
    budget.check(
        "C(n,ℓ)·C(n,z)",
        binomial(n, ell).saturating_mul(binomial(n, z)),
        budget.max_subsets,
    )?;
    let table = distance_table(points);

    let mut best: Option<(f64, Vec<usize>, Vec<usize>)> = None;
    for centers in (0..n).combinations(ell) {
        let mut reach: Vec<(f64, usize)> = (0..n)
            .filter(|i| !centers.contains(i))
            .map(|i| {
                let d = centers
                    .iter()
                    .map(|&c| table[i * n + c])
                    .fold(f64::INFINITY, f64::min);
                (d, i)
            })
            .collect();
        // farthest first; among equals the higher index is discarded first
        reach.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.cmp(&a.1)));
        let drop = z.min(reach.len());
        let radius = reach.get(drop).map_or(0.0, |r| r.0);
        if best.as_ref().is_none_or(|(r, _, _)| radius < *r) {
            let mut outliers: Vec<usize> = reach[..drop].iter().map(|r| r.1).collect();
            outliers.sort_unstable();
            best = Some((radius, centers, outliers));
        }
    }
    let (radius, centers, outliers) = best.expect("at least one subset");
    Ok(OutlierSolution {
        centers,
        outliers,
        radius,
    })
}

/// Optimal minimum-diameter partition into at most `ℓ` clusters, enumerated
/// as restricted-growth strings. Returns exactly `ℓ` clusters (trailing ones
/// may be empty).
pub fn opt_min_diameter(
    points: &PointSet,
    ell: usize,
    budget: &OracleBudget,
) -> Result<ClusteringSolution> {
    if ell == 0 {
        return Err(Error::InvalidParameter("ℓ must be positive".into()));
    }
    let n = points.len();
    budget.check("n", n as u64, budget.max_n as u64)?;
    let count = (ell as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    budget.check("ℓⁿ", count, budget.max_partitions)?;
    let table = distance_table(points);

    // labels[i] = block of point i; labels[i] ≤ 1 + max(labels[..i])
    let mut labels = vec![0usize; n];
    let mut best: Option<(f64, Vec<usize>)> = None;
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        i: usize,
        used: usize,
        current: f64,
        labels: &mut Vec<usize>,
        ell: usize,
        n: usize,
        table: &[f64],
        best: &mut Option<(f64, Vec<usize>)>,
    ) {
        if best.as_ref().is_some_and(|(b, _)| current >= *b) {
            return;
        }
        if i == n {
            *best = Some((current, labels.clone()));
            return;
        }
        for block in 0..(used + 1).min(ell) {
            let widest = (0..i)
                .filter(|&j| labels[j] == block)
                .map(|j| table[i * n + j])
                .fold(current, f64::max);
            labels[i] = block;
            recurse(
                i + 1,
                used.max(block + 1),
                widest,
                labels,
                ell,
                n,
                table,
                best,
            );
        }
    }
    recurse(0, 0, 0.0, &mut labels, ell, n, &table, &mut best);

    let (max_diameter, labels) = best.expect("a partition exists");
    let mut clusters = vec![Vec::new(); ell];
    for (i, &b) in labels.iter().enumerate() {
        clusters[b].push(i);
    }
    Ok(ClusteringSolution {
        clusters,
        max_diameter,
    })
}

/// Bracket on the unconstrained (centers anywhere in ℝᵈ) optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct GridBracket {
    /// Certified lower bound: `upper − half cell diagonal`, at least 0.
    pub lower: f64,
    /// Radius achieved by the best grid centers.
    pub upper: f64,
    pub centers: Vec<Vec<f64>>,
    pub grid_step: f64,
}

/// Optimal unconstrained ℓ-center with `z` outliers up to grid resolution.
///
/// Candidate centers are the lattice of spacing `grid_step` covering the
/// bounding box of the points. Optimal centers lie in that box and every box
/// point is within `grid_step·√d / 2` of a lattice point, which yields the
/// lower end of the bracket.
pub fn opt_center_unconstrained_grid(
    points: &PointSet,
    ell: usize,
    z: usize,
    grid_step: f64,
    budget: &OracleBudget,
) -> Result<GridBracket> {
    if points.metric() != Metric::Euclidean {
        return Err(Error::MetricMismatch(
            "grid oracle needs Euclidean points".into(),
        ));
    }
    if points.dim() > 3 {
        return Err(Error::InvalidParameter(format!(
            "grid oracle supports d ≤ 3, got {}",
            points.dim()
        )));
    }
    if !(grid_step > 0.0 && grid_step.is_finite()) {
        return Err(Error::InvalidParameter(format!("grid step {grid_step}")));
    }
    check_ell(points, ell)?;
    let (n, d) = (points.len(), points.dim());
    budget.check_sizes(n, ell, z)?;

    let lo: Vec<f64> = (0..d)
        .map(|c| {
            (0..n)
                .map(|i| points.coord(i, c))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let hi: Vec<f64> = (0..d)
        .map(|c| {
            (0..n)
                .map(|i| points.coord(i, c))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let steps: Vec<usize> = (0..d)
        .map(|c| ((hi[c] - lo[c]) / grid_step).ceil() as usize + 1)
        .collect();
    let grid_size: u64 = steps.iter().map(|&s| s as u64).product();
    budget.check(
        "grid evaluations",
        binomial(grid_size as usize, ell).saturating_mul(n as u64),
        budget.max_grid_evaluations,
    )?;

    let grid: Vec<Vec<f64>> = steps
        .iter()
        .enumerate()
        .map(|(c, &s)| {
            (0..s)
                .map(|t| lo[c] + t as f64 * grid_step)
                .collect::<Vec<_>>()
        })
        .multi_cartesian_product()
        .collect();
    // dist[g * n + i] = ‖grid_g − p_i‖
    let dist: Vec<f64> = grid
        .iter()
        .flat_map(|g| {
            (0..n).map(move |i| {
                g.iter()
                    .enumerate()
                    .map(|(c, &x)| (x - points.coord(i, c)).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
        })
        .collect();

    let keep = n.saturating_sub(z);
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut reach = vec![0.0; n];
    for set in (0..grid.len()).combinations(ell) {
        for (i, slot) in reach.iter_mut().enumerate() {
            *slot = set
                .iter()
                .map(|&g| dist[g * n + i])
                .fold(f64::INFINITY, f64::min);
        }
        let radius = if keep == 0 {
            0.0
        } else {
            // the keep-th smallest reach
            let (_, kth, _) = reach.select_nth_unstable_by(keep - 1, f64::total_cmp);
            *kth
        };
        if best.as_ref().is_none_or(|(r, _)| radius < *r) {
            best = Some((radius, set));
        }
    }
    let (upper, set) = best.expect("grid is nonempty");
    let half_diagonal = grid_step * (d as f64).sqrt() / 2.0;
    Ok(GridBracket {
        lower: (upper - half_diagonal).max(0.0),
        upper,
        centers: set.iter().map(|&g| grid[g].clone()).collect(),
        grid_step,
    })
}
