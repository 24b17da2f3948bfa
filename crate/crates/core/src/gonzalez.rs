//! Farthest-first traversal (Gonzalez), a conservative 2-approximation for
//! ℓ-center in any metric.

use crate::error::{Error, Result};
use crate::points::{nearest_center, CenterSolution, ClusteringSolution, PointSet};

/// Traversal state after some number of extensions.
#[derive(Debug, Clone, PartialEq)]
pub struct FarthestFirstState {
    /// Centers in the order they were picked.
    pub chosen: Vec<usize>,
    /// Distance of each point to its nearest chosen center.
    pub min_dist: Vec<f64>,
    /// Nearest chosen center of each point (earliest pick on ties).
    pub nearest: Vec<usize>,
    is_center: Vec<bool>,
}

impl FarthestFirstState {
    pub fn start(points: &PointSet, first: usize) -> Result<Self> {
        points.check_index(first)?;
        let n = points.len();
        let mut state = Self {
            chosen: Vec::new(),
            min_dist: vec![f64::INFINITY; n],
            nearest: vec![first; n],
            is_center: vec![false; n],
        };
        state.add(points, first);
        Ok(state)
    }

    fn add(&mut self, points: &PointSet, c: usize) {
        self.chosen.push(c);
        self.is_center[c] = true;
        for (j, (best, nearest)) in self
            .min_dist
            .iter_mut()
            .zip(self.nearest.iter_mut())
            .enumerate()
        {
            let d = points.dist(c, j);
            if d < *best {
                *best = d;
                *nearest = c;
            }
        }
    }

    /// The non-center point farthest from the chosen centers, lowest index
    /// on ties. `None` once every point is a center.
    pub fn farthest(&self) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for (j, &d) in self.min_dist.iter().enumerate() {
            if self.is_center[j] {
                continue;
            }
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((j, d));
            }
        }
        best
    }

    /// Adds the farthest point as a new center.
    pub fn extend(&mut self, points: &PointSet) -> Option<usize> {
        let (next, _) = self.farthest()?;
        self.add(points, next);
        Some(next)
    }

    /// Current covering radius.
    pub fn radius(&self) -> f64 {
        self.min_dist.iter().copied().fold(0.0, f64::max)
    }
}

/// Runs the traversal until `ell` centers are chosen.
pub fn farthest_first(points: &PointSet, ell: usize, first: usize) -> Result<FarthestFirstState> {
    if ell == 0 || ell > points.len() {
        return Err(Error::InvalidParameter(format!(
            "need 1 ≤ ℓ ≤ n, got ℓ={ell}, n={}",
            points.len()
        )));
    }
    let mut state = FarthestFirstState::start(points, first)?;
    while state.chosen.len() < ell {
        state.extend(points);
    }
    Ok(state)
}

/// Gonzalez' ℓ-center heuristic starting from `first` (0-based).
///
/// The assignment maps each point to its nearest center, breaking ties
/// toward the earlier pick.
pub fn gonzalez(points: &PointSet, ell: usize, first: usize) -> Result<CenterSolution> {
    let state = farthest_first(points, ell, first)?;
    let radius = state.radius();
    Ok(CenterSolution {
        centers: state.chosen,
        radius,
        assignment: Some(state.nearest),
    })
}

/// Partitions the points by nearest center, ties to the lowest point index.
/// Cluster `t` belongs to `centers[t]`.
pub fn assign_clusters(points: &PointSet, centers: &[usize]) -> Result<ClusteringSolution> {
    if centers.is_empty() {
        return Err(Error::EmptyCenters);
    }
    for &c in centers {
        points.check_index(c)?;
    }
    let mut clusters = vec![Vec::new(); centers.len()];
    for i in 0..points.len() {
        let (c, _) = nearest_center(points, i, centers);
        let slot = centers.iter().position(|&x| x == c).expect("center");
        clusters[slot].push(i);
    }
    ClusteringSolution::evaluate(points, clusters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::points::{evaluate_center_solution, Metric};

    fn square() -> PointSet {
        PointSet::from_rows(
            &[
                vec![0.0, 0.0],
                vec![10.0, 0.0],
                vec![0.0, 10.0],
                vec![1.0, 1.0],
            ],
            Metric::Euclidean,
        )
        .unwrap()
    }

    #[test]
    fn square_breaks_tie_toward_lower_index() {
        let sol = gonzalez(&square(), 2, 0).unwrap();
        assert_eq!(sol.centers, vec![0, 1]);
        assert_eq!(sol.radius, 10.0);
        sol.validate(&square(), 2).unwrap();
    }

    #[test]
    fn all_points_as_centers() {
        let sq = square();
        let sol = gonzalez(&sq, 4, 2).unwrap();
        assert_eq!(sol.radius, 0.0);
        let mut c = sol.centers.clone();
        c.sort();
        assert_eq!(c, vec![0, 1, 2, 3]);
    }

    #[test]
    fn duplicates_still_yield_distinct_centers() {
        let pts =
            PointSet::from_rows(&[vec![1.0], vec![1.0], vec![1.0]], Metric::Euclidean).unwrap();
        let sol = gonzalez(&pts, 3, 0).unwrap();
        assert_eq!(sol.centers, vec![0, 1, 2]);
    }

    #[test]
    fn rejects_bad_parameters() {
        let sq = square();
        assert!(gonzalez(&sq, 5, 0).is_err());
        assert!(gonzalez(&sq, 0, 0).is_err());
        assert!(gonzalez(&sq, 2, 4).is_err());
    }

    #[test]
    fn square_clusters() {
        let sq = square();
        let clusters = assign_clusters(&sq, &[0, 1]).unwrap();
        assert_eq!(clusters.clusters, vec![vec![0, 2, 3], vec![1]]);
        let radius = evaluate_center_solution(&sq, &[0, 1]).unwrap();
        assert!(clusters.max_diameter <= 2.0 * radius);
        let singletons = assign_clusters(&sq, &[0, 1, 2, 3]).unwrap();
        assert_eq!(singletons.max_diameter, 0.0);
        assert!(assign_clusters(&sq, &[]).is_err());
    }

    #[test]
    fn tracks_min_dist_and_separation() {
        let sq = square();
        let state = farthest_first(&sq, 3, 0).unwrap();
        for i in 0..sq.len() {
            let exact = state
                .chosen
                .iter()
                .map(|&c| sq.dist(i, c))
                .fold(f64::INFINITY, f64::min);
            assert_eq!(state.min_dist[i], exact);
        }
        let (s, r) = state.farthest().unwrap();
        let mut witnesses = state.chosen.clone();
        witnesses.push(s);
        for (a, &u) in witnesses.iter().enumerate() {
            for &v in &witnesses[a + 1..] {
                assert!(sq.dist(u, v) >= r);
            }
        }
    }
}
