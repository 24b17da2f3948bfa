//! Point sets, exact distance kernels and solution records.
//!
//! Indices are 0-based everywhere in the API. Hamming points are stored as
//! packed 64-bit words (bit `j` of a point lives in word `j / 64`, bit
//! position `j % 64`) and compared with XOR + popcount.

use crate::error::{Error, Result};

/// Distance function attached to a [`PointSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    /// ℓ₂ distance over real coordinates.
    Euclidean,
    /// Number of differing coordinates over `{0,1}` coordinates.
    Hamming,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Euclidean => "euclidean",
            Metric::Hamming => "hamming",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Storage {
    /// Row-major `n × dim` coordinates.
    Real(Vec<f64>),
    /// Row-major `n × words` packed bits, unused tail bits are zero.
    Bits { words: usize, data: Vec<u64> },
}

/// An immutable collection of `n ≥ 1` points of common dimension `dim ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    n: usize,
    dim: usize,
    storage: Storage,
}

pub(crate) fn words_for(dim: usize) -> usize {
    dim.div_ceil(64)
}

impl PointSet {
    /// Builds a point set from rows of real coordinates.
    ///
    /// With [`Metric::Hamming`] every coordinate must be exactly `0.0` or
    /// `1.0`; the rows are packed into bit words.
    pub fn from_rows(rows: &[Vec<f64>], metric: Metric) -> Result<Self> {
        let dim = rows.first().map(Vec::len).ok_or(Error::EmptyPointSet)?;
        let mut flat = Vec::with_capacity(rows.len() * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(dim, flat, metric)
    }

    /// Builds a point set from row-major coordinates.
    pub fn from_flat(dim: usize, data: Vec<f64>, metric: Metric) -> Result<Self> {
        if dim == 0 || data.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if !data.len().is_multiple_of(dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: data.len() % dim,
            });
        }
        let n = data.len() / dim;
        for (idx, &value) in data.iter().enumerate() {
            let (point, coordinate) = (idx / dim, idx % dim);
            if !value.is_finite() {
                return Err(Error::NonFinite { point, coordinate });
            }
            if metric == Metric::Hamming && value != 0.0 && value != 1.0 {
                return Err(Error::NonBinary {
                    point,
                    coordinate,
                    value,
                });
            }
        }
        match metric {
            Metric::Euclidean => Ok(Self {
                n,
                dim,
                storage: Storage::Real(data),
            }),
            Metric::Hamming => {
                let words = words_for(dim);
                let mut packed = vec![0u64; n * words];
                for (idx, &value) in data.iter().enumerate() {
                    if value == 1.0 {
                        let (point, coordinate) = (idx / dim, idx % dim);
                        packed[point * words + coordinate / 64] |= 1u64 << (coordinate % 64);
                    }
                }
                Ok(Self {
                    n,
                    dim,
                    storage: Storage::Bits {
                        words,
                        data: packed,
                    },
                })
            }
        }
    }

    /// Builds a Hamming point set from rows of booleans.
    pub fn from_bit_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let dim = rows.first().map(Vec::len).ok_or(Error::EmptyPointSet)?;
        if dim == 0 {
            return Err(Error::EmptyPointSet);
        }
        let words = words_for(dim);
        let mut data = vec![0u64; rows.len() * words];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            for (j, _) in row.iter().enumerate().filter(|(_, &b)| b) {
                data[i * words + j / 64] |= 1u64 << (j % 64);
            }
        }
        Ok(Self {
            n: rows.len(),
            dim,
            storage: Storage::Bits { words, data },
        })
    }

    /// Builds a Hamming point set from already packed words
    /// (`words_per_row = ceil(dim / 64)`); tail bits beyond `dim` must be 0.
    pub fn from_packed(dim: usize, data: Vec<u64>) -> Result<Self> {
        if dim == 0 || data.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let words = words_for(dim);
        if !data.len().is_multiple_of(words) {
            return Err(Error::DimensionMismatch {
                expected: words,
                found: data.len() % words,
            });
        }
        let tail = dim % 64;
        if tail != 0 {
            let mask = !((1u64 << tail) - 1);
            if let Some(row) = data
                .chunks_exact(words)
                .position(|row| row[words - 1] & mask != 0)
            {
                return Err(Error::NonBinary {
                    point: row,
                    coordinate: dim,
                    value: 1.0,
                });
            }
        }
        Ok(Self {
            n: data.len() / words,
            dim,
            storage: Storage::Bits { words, data },
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; a point set holds at least one point.
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric(&self) -> Metric {
        match self.storage {
            Storage::Real(_) => Metric::Euclidean,
            Storage::Bits { .. } => Metric::Hamming,
        }
    }

    /// Coordinates of point `i` for a Euclidean set.
    pub fn real_row(&self, i: usize) -> Option<&[f64]> {
        match &self.storage {
            Storage::Real(data) => Some(&data[i * self.dim..(i + 1) * self.dim]),
            Storage::Bits { .. } => None,
        }
    }

    /// Packed words of point `i` for a Hamming set.
    pub fn bit_row(&self, i: usize) -> Option<&[u64]> {
        match &self.storage {
            Storage::Bits { words, data } => Some(&data[i * words..(i + 1) * words]),
            Storage::Real(_) => None,
        }
    }

    /// Row-major real coordinates, only for Euclidean sets.
    pub fn real_data(&self) -> Option<&[f64]> {
        match &self.storage {
            Storage::Real(data) => Some(data),
            Storage::Bits { .. } => None,
        }
    }

    pub fn coord(&self, i: usize, j: usize) -> f64 {
        match &self.storage {
            Storage::Real(data) => data[i * self.dim + j],
            Storage::Bits { words, data } => ((data[i * words + j / 64] >> (j % 64)) & 1) as f64,
        }
    }

    /// Point `i` widened to real coordinates.
    pub fn row_vec(&self, i: usize) -> Vec<f64> {
        match self.real_row(i) {
            Some(row) => row.to_vec(),
            None => (0..self.dim).map(|j| self.coord(i, j)).collect(),
        }
    }

    /// Exact distance between points `i` and `j` in the set's metric.
    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        match &self.storage {
            Storage::Real(data) => euclidean(
                &data[i * self.dim..(i + 1) * self.dim],
                &data[j * self.dim..(j + 1) * self.dim],
            ),
            Storage::Bits { words, data } => hamming_words(
                &data[i * words..(i + 1) * words],
                &data[j * words..(j + 1) * words],
            ) as f64,
        }
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, n: self.n })
        }
    }

    /// The sub-collection of the given points, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        for &i in indices {
            self.check_index(i)?;
        }
        let storage = match &self.storage {
            Storage::Real(data) => Storage::Real(
                indices
                    .iter()
                    .flat_map(|&i| data[i * self.dim..(i + 1) * self.dim].iter().copied())
                    .collect(),
            ),
            Storage::Bits { words, data } => Storage::Bits {
                words: *words,
                data: indices
                    .iter()
                    .flat_map(|&i| data[i * words..(i + 1) * words].iter().copied())
                    .collect(),
            },
        };
        Ok(Self {
            n: indices.len(),
            dim: self.dim,
            storage,
        })
    }
}

/// ℓ₂ distance between two equal-length slices.
#[inline]
pub fn euclidean(p: &[f64], q: &[f64]) -> f64 {
    squared_euclidean(p, q).sqrt()
}

/// Squared ℓ₂ distance with a fixed four-lane summation order.
#[inline]
pub fn squared_euclidean(p: &[f64], q: &[f64]) -> f64 {
    debug_assert_eq!(p.len(), q.len());
    let mut acc = [0.0f64; 4];
    let pc = p.chunks_exact(4);
    let qc = q.chunks_exact(4);
    let tail: f64 = pc
        .remainder()
        .iter()
        .zip(qc.remainder())
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    for (a, b) in pc.zip(qc) {
        for lane in 0..4 {
            let diff = a[lane] - b[lane];
            acc[lane] += diff * diff;
        }
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

/// Number of differing bits between two packed rows.
#[inline]
pub fn hamming_words(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum()
}

/// Checked distance between two raw points.
pub fn distance(p: &[f64], q: &[f64], metric: Metric) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            found: q.len(),
        });
    }
    match metric {
        Metric::Euclidean => Ok(euclidean(p, q)),
        Metric::Hamming => {
            let mut count = 0usize;
            for (point, row) in [p, q].into_iter().enumerate() {
                if let Some((coordinate, &value)) =
                    row.iter().enumerate().find(|(_, &v)| v != 0.0 && v != 1.0)
                {
                    return Err(Error::NonBinary {
                        point,
                        coordinate,
                        value,
                    });
                }
            }
            for (a, b) in p.iter().zip(q) {
                if a != b {
                    count += 1;
                }
            }
            Ok(count as f64)
        }
    }
}

/// The center of `centers` closest to point `i` and its distance.
/// Ties go to the lowest point index.
pub fn nearest_center(points: &PointSet, i: usize, centers: &[usize]) -> (usize, f64) {
    let mut best = (usize::MAX, f64::INFINITY);
    for &c in centers {
        let d = points.dist(i, c);
        if d < best.1 || (d == best.1 && c < best.0) {
            best = (c, d);
        }
    }
    best
}

fn check_centers(points: &PointSet, centers: &[usize]) -> Result<()> {
    if centers.is_empty() {
        return Err(Error::EmptyCenters);
    }
    centers.iter().try_for_each(|&c| points.check_index(c))
}

/// Covering radius `max_i min_{c ∈ centers} dist(p_i, p_c)`.
pub fn evaluate_center_solution(points: &PointSet, centers: &[usize]) -> Result<f64> {
    check_centers(points, centers)?;
    Ok((0..points.len())
        .map(|i| nearest_center(points, i, centers).1)
        .fold(0.0, f64::max))
}

/// Covering radius over the points not listed in `outliers`.
pub fn evaluate_with_outliers(
    points: &PointSet,
    centers: &[usize],
    outliers: &[usize],
) -> Result<f64> {
    check_centers(points, centers)?;
    let mut discarded = vec![false; points.len()];
    for &o in outliers {
        points.check_index(o)?;
        discarded[o] = true;
    }
    Ok((0..points.len())
        .filter(|&i| !discarded[i])
        .map(|i| nearest_center(points, i, centers).1)
        .fold(0.0, f64::max))
}

/// Largest pairwise distance inside one index set.
pub fn diameter(points: &PointSet, members: &[usize]) -> f64 {
    let mut best = 0.0f64;
    for (a, &i) in members.iter().enumerate() {
        for &j in &members[a + 1..] {
            best = best.max(points.dist(i, j));
        }
    }
    best
}

/// Maximum intra-cluster diameter of a partition of `0..n`.
pub fn evaluate_clustering(points: &PointSet, clusters: &[Vec<usize>]) -> Result<f64> {
    let mut seen = vec![false; points.len()];
    for cluster in clusters {
        for &i in cluster {
            points.check_index(i)?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotAPartition(format!("point {i} appears twice")));
            }
        }
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::NotAPartition(format!(
            "point {missing} is unassigned"
        )));
    }
    Ok(clusters
        .iter()
        .map(|c| diameter(points, c))
        .fold(0.0, f64::max))
}

/// Centers given as input-point indices together with their covering radius.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterSolution {
    pub centers: Vec<usize>,
    pub radius: f64,
    /// For each point, the index of the center it is assigned to.
    pub assignment: Option<Vec<usize>>,
}

impl CenterSolution {
    /// Builds a solution and computes its exact covering radius.
    pub fn evaluate(points: &PointSet, centers: Vec<usize>) -> Result<Self> {
        let radius = evaluate_center_solution(points, &centers)?;
        Ok(Self {
            centers,
            radius,
            assignment: None,
        })
    }

    /// Checks the record against `points`: `ell` distinct in-range centers,
    /// a radius matching the recomputed one, and a consistent assignment.
    pub fn validate(&self, points: &PointSet, ell: usize) -> Result<()> {
        if self.centers.len() != ell {
            return Err(Error::InvalidParameter(format!(
                "expected {ell} centers, found {}",
                self.centers.len()
            )));
        }
        check_distinct(points, &self.centers)?;
        let recomputed = evaluate_center_solution(points, &self.centers)?;
        if !radius_matches(points.metric(), self.radius, recomputed) {
            return Err(Error::InvalidParameter(format!(
                "stored radius {} differs from recomputed {recomputed}",
                self.radius
            )));
        }
        if let Some(assignment) = &self.assignment {
            if assignment.len() != points.len() {
                return Err(Error::InvalidParameter("assignment length".into()));
            }
            if let Some(bad) = assignment.iter().find(|a| !self.centers.contains(a)) {
                return Err(Error::InvalidParameter(format!(
                    "assignment names {bad}, which is not a center"
                )));
            }
        }
        Ok(())
    }
}

fn radius_matches(metric: Metric, stored: f64, recomputed: f64) -> bool {
    match metric {
        Metric::Hamming => stored == recomputed,
        Metric::Euclidean => {
            (stored - recomputed).abs() <= 1e-12 * recomputed.abs().max(f64::MIN_POSITIVE)
        }
    }
}

fn check_distinct(points: &PointSet, indices: &[usize]) -> Result<()> {
    let mut seen = vec![false; points.len()];
    for &i in indices {
        points.check_index(i)?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidParameter(format!("index {i} repeated")));
        }
    }
    Ok(())
}

/// A partition of the input into clusters (some possibly empty).
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringSolution {
    pub clusters: Vec<Vec<usize>>,
    pub max_diameter: f64,
}

impl ClusteringSolution {
    pub fn evaluate(points: &PointSet, clusters: Vec<Vec<usize>>) -> Result<Self> {
        let max_diameter = evaluate_clustering(points, &clusters)?;
        Ok(Self {
            clusters,
            max_diameter,
        })
    }
}

/// Centers plus discarded points; the radius ignores the discarded points.
#[derive(Debug, Clone, PartialEq)]
pub struct OutlierSolution {
    pub centers: Vec<usize>,
    /// Sorted ascending, disjoint from `centers`.
    pub outliers: Vec<usize>,
    pub radius: f64,
}

impl OutlierSolution {
    pub fn evaluate(
        points: &PointSet,
        centers: Vec<usize>,
        mut outliers: Vec<usize>,
    ) -> Result<Self> {
        outliers.sort_unstable();
        let radius = evaluate_with_outliers(points, &centers, &outliers)?;
        Ok(Self {
            centers,
            outliers,
            radius,
        })
    }

    pub fn validate(&self, points: &PointSet, ell: usize, z: usize) -> Result<()> {
        if self.centers.len() != ell {
            return Err(Error::InvalidParameter(format!(
                "expected {ell} centers, found {}",
                self.centers.len()
            )));
        }
        if self.outliers.len() > z {
            return Err(Error::InvalidParameter(format!(
                "{} outliers exceed the allowance {z}",
                self.outliers.len()
            )));
        }
        check_distinct(points, &self.centers)?;
        check_distinct(points, &self.outliers)?;
        if let Some(c) = self.centers.iter().find(|c| self.outliers.contains(c)) {
            return Err(Error::InvalidParameter(format!(
                "center {c} is also an outlier"
            )));
        }
        let recomputed = evaluate_with_outliers(points, &self.centers, &self.outliers)?;
        if !radius_matches(points.metric(), self.radius, recomputed) {
            return Err(Error::InvalidParameter(format!(
                "stored radius {} differs from recomputed {recomputed}",
                self.radius
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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

    fn bits(rows: &[&str]) -> PointSet {
        let rows: Vec<Vec<bool>> = rows
            .iter()
            .map(|r| r.chars().map(|c| c == '1').collect())
            .collect();
        PointSet::from_bit_rows(&rows).unwrap()
    }

    #[test]
    fn distance_examples() {
        let p = [0.3, -1.0, 7.5];
        assert_eq!(distance(&p, &p, Metric::Euclidean).unwrap(), 0.0);
        assert_eq!(
            distance(&[0., 1., 0., 1.], &[0., 0., 1., 1.], Metric::Hamming).unwrap(),
            2.0
        );
        assert_eq!(
            distance(&[0., 0.], &[3., 4.], Metric::Euclidean).unwrap(),
            5.0
        );
    }

    #[test]
    fn distance_errors() {
        assert!(matches!(
            distance(&[0.0], &[0.0, 1.0], Metric::Euclidean),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            distance(&[0.0, 2.0], &[0.0, 1.0], Metric::Hamming),
            Err(Error::NonBinary {
                point: 0,
                coordinate: 1,
                ..
            })
        ));
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(
            PointSet::from_rows(&[], Metric::Euclidean),
            Err(Error::EmptyPointSet)
        );
        assert!(PointSet::from_rows(&[vec![1.0], vec![1.0, 2.0]], Metric::Euclidean).is_err());
        assert!(matches!(
            PointSet::from_rows(&[vec![0.0, 0.5]], Metric::Hamming),
            Err(Error::NonBinary { .. })
        ));
        assert!(PointSet::from_rows(&[vec![f64::NAN]], Metric::Euclidean).is_err());
        assert!(PointSet::from_packed(3, vec![0b1000]).is_err());
    }

    #[test]
    fn packed_and_widened_agree() {
        let rows = vec![vec![0.0, 1.0, 1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0, 0.0, 0.0]];
        let set = PointSet::from_rows(&rows, Metric::Hamming).unwrap();
        assert_eq!(set.metric(), Metric::Hamming);
        assert_eq!(set.row_vec(0), rows[0]);
        assert_eq!(set.dist(0, 1), 3.0);
    }

    #[test]
    fn center_radius_examples() {
        let sq = square();
        assert_eq!(evaluate_center_solution(&sq, &[0, 1, 2, 3]).unwrap(), 0.0);
        assert_eq!(evaluate_center_solution(&sq, &[0, 1]).unwrap(), 10.0);
        assert_eq!(
            evaluate_center_solution(&bits(&["0000", "1111"]), &[1]).unwrap(),
            4.0
        );
        assert_eq!(evaluate_center_solution(&sq, &[]), Err(Error::EmptyCenters));
    }

    #[test]
    fn clustering_examples() {
        let sq = square();
        let singletons: Vec<Vec<usize>> = (0..4).map(|i| vec![i]).collect();
        assert_eq!(evaluate_clustering(&sq, &singletons).unwrap(), 0.0);
        let pair =
            PointSet::from_rows(&[vec![0.0, 0.0], vec![3.0, 4.0]], Metric::Euclidean).unwrap();
        assert_eq!(evaluate_clustering(&pair, &[vec![0, 1]]).unwrap(), 5.0);
        let ham = bits(&["0000", "0001", "1110", "1111"]);
        assert_eq!(
            evaluate_clustering(&ham, &[vec![0, 1], vec![2, 3]]).unwrap(),
            1.0
        );
        assert!(evaluate_clustering(&ham, &[vec![0, 1], vec![2]]).is_err());
        assert!(evaluate_clustering(&ham, &[vec![0, 1, 2], vec![2, 3]]).is_err());
        // empty clusters are allowed
        assert_eq!(
            evaluate_clustering(&ham, &[vec![0, 1, 2, 3], vec![]]).unwrap(),
            4.0
        );
    }

    #[test]
    fn solution_validation() {
        let sq = square();
        let sol = CenterSolution::evaluate(&sq, vec![0, 1]).unwrap();
        sol.validate(&sq, 2).unwrap();
        assert!(sol.validate(&sq, 3).is_err());
        let dup = CenterSolution {
            centers: vec![0, 0],
            radius: 10.0,
            assignment: None,
        };
        assert!(dup.validate(&sq, 2).is_err());

        let out = OutlierSolution::evaluate(&sq, vec![0], vec![2, 1]).unwrap();
        assert_eq!(out.outliers, vec![1, 2]);
        assert_eq!(out.radius, 2f64.sqrt());
        out.validate(&sq, 1, 2).unwrap();
        assert!(out.validate(&sq, 1, 1).is_err());
        let overlapping = OutlierSolution::evaluate(&sq, vec![0], vec![0]).unwrap();
        assert!(overlapping.validate(&sq, 1, 1).is_err());
    }

    #[test]
    fn select_keeps_order() {
        let sq = square();
        let sub = sq.select(&[3, 1]).unwrap();
        assert_eq!(sub.row_vec(0), vec![1.0, 1.0]);
        assert_eq!(sub.len(), 2);
    }
}
