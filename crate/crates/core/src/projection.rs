//! Random ±1 projections `f(x) = R·x / √k` and the preimage map `f⁻¹`.
//!
//! `R` is a `k × d` matrix with i.i.d. uniform `±1` entries drawn from a
//! ChaCha20 stream keyed by the seed. It is stored as one packed bit row per
//! output coordinate (bit set ⇔ `+1`), which gives Hamming inputs an
//! `O(d / 64)` popcount path per output coordinate:
//! `Σ_j R_rj x_j = 2·|x ∧ pos_r| − |x|`.

use std::collections::HashMap;

use ndarray::{Array2, ArrayView2};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::points::{squared_euclidean, words_for, Metric, PointSet};

/// Failure exponent used when the caller does not pick one: the distortion
/// bound holds with probability at least `1 − n^{-β}`.
pub const DEFAULT_BETA: f64 = 1.0;

/// Smallest admissible target dimension
/// `k₀ = (4 + 2β) / (ε²/2 − ε³/3) · ln n`, rounded up and at least 1.
pub fn target_dimension(n: usize, epsilon: f64, beta: f64) -> Result<usize> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "beta must be positive, got {beta}"
        )));
    }
    let denom = epsilon * epsilon / 2.0 - epsilon.powi(3) / 3.0;
    let k0 = (4.0 + 2.0 * beta) / denom * (n.max(1) as f64).ln();
    Ok((k0.ceil() as usize).max(1))
}

/// A sampled `k × d` sign matrix together with the seed that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionMap {
    k: usize,
    dim: usize,
    seed: u64,
    words: usize,
    /// `k` packed rows; bit `j` of row `r` is set iff `R[r][j] = +1`.
    positive: Vec<u64>,
}

impl ProjectionMap {
    /// Draws the sign matrix deterministically from `seed`.
    pub fn generate(seed: u64, k: usize, dim: usize) -> Result<Self> {
        if k == 0 || dim == 0 {
            return Err(Error::InvalidParameter(format!(
                "projection needs k ≥ 1 and d ≥ 1, got k={k}, d={dim}"
            )));
        }
        let words = words_for(dim);
        let tail = dim % 64;
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let mut positive = vec![0u64; k * words];
        for row in positive.chunks_exact_mut(words) {
            for w in row.iter_mut() {
                *w = rng.next_u64();
            }
            if tail != 0 {
                row[words - 1] &= (1u64 << tail) - 1;
            }
        }
        Ok(Self {
            k,
            dim,
            seed,
            words,
            positive,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `1 / √k`.
    pub fn scale(&self) -> f64 {
        1.0 / (self.k as f64).sqrt()
    }

    /// True when the target dimension exceeds the input dimension.
    pub fn is_expanding(&self) -> bool {
        self.k > self.dim
    }

    /// Entry `R[row][col]` as `±1.0`.
    pub fn sign(&self, row: usize, col: usize) -> f64 {
        if (self.positive[row * self.words + col / 64] >> (col % 64)) & 1 == 1 {
            1.0
        } else {
            -1.0
        }
    }

    /// Dense `k × d` copy of the sign matrix.
    pub fn sign_matrix(&self) -> Array2<f64> {
        Array2::from_shape_fn((self.k, self.dim), |(r, c)| self.sign(r, c))
    }

    /// Fraction of `+1` entries.
    pub fn positive_fraction(&self) -> f64 {
        let ones: u64 = self.positive.iter().map(|w| w.count_ones() as u64).sum();
        ones as f64 / (self.k * self.dim) as f64
    }

    /// Maps every point of `points` and builds the preimage dictionary.
    pub fn project(&self, points: &PointSet) -> Result<ProjectedSet> {
        if points.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: points.dim(),
            });
        }
        let images = match points.metric() {
            Metric::Euclidean => self.project_real(points),
            Metric::Hamming => self.project_bits(points),
        };
        Ok(ProjectedSet::from_images(self.k, images))
    }

    fn project_bits(&self, points: &PointSet) -> Vec<f64> {
        let (k, words, scale) = (self.k, self.words, self.scale());
        let mut images = vec![0.0; points.len() * k];
        images.par_chunks_mut(k).enumerate().for_each(|(i, out)| {
            let x = points.bit_row(i).expect("hamming rows");
            let ones: i64 = x.iter().map(|w| w.count_ones() as i64).sum();
            for (r, slot) in out.iter_mut().enumerate() {
                let pos = &self.positive[r * words..(r + 1) * words];
                let agree: i64 = x
                    .iter()
                    .zip(pos)
                    .map(|(a, b)| (a & b).count_ones() as i64)
                    .sum();
                *slot = (2 * agree - ones) as f64 * scale;
            }
        });
        images
    }

    fn project_real(&self, points: &PointSet) -> Vec<f64> {
        let (n, d, k) = (points.len(), self.dim, self.k);
        let data = points.real_data().expect("euclidean rows");

        // Only distinct rows go through the product; duplicates copy the
        // image of their first occurrence, so equal inputs map to
        // bit-identical images.
        let mut first_of: HashMap<Vec<u64>, usize> = HashMap::new();
        let mut slot_of = Vec::with_capacity(n);
        let mut unique_rows: Vec<usize> = Vec::new();
        for i in 0..n {
            let key: Vec<u64> = data[i * d..(i + 1) * d]
                .iter()
                // +0.0 and -0.0 project identically
                .map(|v| (v + 0.0).to_bits())
                .collect();
            let slot = *first_of.entry(key).or_insert_with(|| {
                unique_rows.push(i);
                unique_rows.len() - 1
            });
            slot_of.push(slot);
        }
        let unique: Vec<f64> = if unique_rows.len() == n {
            data.to_vec()
        } else {
            unique_rows
                .iter()
                .flat_map(|&i| data[i * d..(i + 1) * d].iter().copied())
                .collect()
        };
        let x = ArrayView2::from_shape((unique_rows.len(), d), &unique).expect("shape");
        let signs = self.sign_matrix();
        let mut product = x.dot(&signs.t());
        product *= self.scale();
        let product = product.as_standard_layout();
        let flat = product.as_slice().expect("standard layout");

        let mut images = vec![0.0; n * k];
        images
            .par_chunks_mut(k)
            .zip(slot_of.par_iter())
            .for_each(|(out, &slot)| out.copy_from_slice(&flat[slot * k..(slot + 1) * k]));
        images
    }
}

type ImageKey = Vec<u64>;

fn image_key(image: &[f64]) -> ImageKey {
    image.iter().map(|v| v.to_bits()).collect()
}

/// Images `f(p_i)` of a point set plus the preimage dictionary.
#[derive(Debug, Clone)]
pub struct ProjectedSet {
    k: usize,
    images: Vec<f64>,
    preimage: HashMap<ImageKey, usize>,
    /// `representative[i] = min{ j : f(p_j) = f(p_i) }`.
    representative: Vec<usize>,
    /// Indices `j` with `representative[j] == j`, ascending.
    distinct: Vec<usize>,
}

impl ProjectedSet {
    /// Wraps row-major images of dimension `k`, resolving preimages to the
    /// smallest index attaining each image (bit-exact equality).
    pub fn from_images(k: usize, images: Vec<f64>) -> Self {
        assert!(
            k > 0 && images.len().is_multiple_of(k),
            "images must be n × k"
        );
        let n = images.len() / k;
        let mut preimage = HashMap::with_capacity(n);
        let mut representative = Vec::with_capacity(n);
        let mut distinct = Vec::new();
        for i in 0..n {
            let rep = *preimage
                .entry(image_key(&images[i * k..(i + 1) * k]))
                .or_insert(i);
            if rep == i {
                distinct.push(i);
            }
            representative.push(rep);
        }
        Self {
            k,
            images,
            preimage,
            representative,
            distinct,
        }
    }

    pub fn len(&self) -> usize {
        self.representative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representative.is_empty()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn image(&self, i: usize) -> &[f64] {
        &self.images[i * self.k..(i + 1) * self.k]
    }

    /// `|f(P)|`.
    pub fn distinct_count(&self) -> usize {
        self.distinct.len()
    }

    /// First-occurrence index of each distinct image, ascending.
    pub fn distinct_indices(&self) -> &[usize] {
        &self.distinct
    }

    /// `f⁻¹(image)`, the smallest input index mapped onto `image`.
    pub fn preimage(&self, image: &[f64]) -> Option<usize> {
        self.preimage.get(&image_key(image)).copied()
    }

    /// `f⁻¹(f(p_i))`.
    pub fn representative(&self, i: usize) -> usize {
        self.representative[i]
    }

    /// `‖f(p_i) − f(p_j)‖₂²`.
    #[inline]
    pub fn sq_dist(&self, i: usize, j: usize) -> f64 {
        squared_euclidean(self.image(i), self.image(j))
    }

    /// The distinct images `f(P)` as a Euclidean point set; point `t` of the
    /// result is the image of input `distinct_indices()[t]`.
    pub fn distinct_point_set(&self) -> PointSet {
        let data: Vec<f64> = self
            .distinct
            .iter()
            .flat_map(|&i| self.image(i).iter().copied())
            .collect();
        PointSet::from_flat(self.k, data, Metric::Euclidean).expect("finite images")
    }
}

/// Squared ℓ₂ distance between two images.
pub fn projected_sq_distance(u: &[f64], v: &[f64]) -> f64 {
    assert_eq!(u.len(), v.len(), "image dimensions differ");
    squared_euclidean(u, v)
}

/// `(1−ε)·‖u−v‖ ≤ ‖f(u)−f(v)‖ ≤ (1+ε)·‖u−v‖`.
pub fn euclidean_sandwich(original: f64, projected: f64, epsilon: f64) -> bool {
    (1.0 - epsilon) * original <= projected && projected <= (1.0 + epsilon) * original
}

/// `(1−ε)·ham(u,v) ≤ ‖f(u)−f(v)‖² ≤ (1+ε)·ham(u,v)`.
pub fn hamming_sandwich(ham: f64, projected_sq: f64, epsilon: f64) -> bool {
    (1.0 - epsilon) * ham <= projected_sq && projected_sq <= (1.0 + epsilon) * ham
}

/// Pairwise distortion census of one projection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Distortion {
    pub pairs: usize,
    pub violations: usize,
}

impl Distortion {
    pub fn violation_rate(&self) -> f64 {
        if self.pairs == 0 {
            0.0
        } else {
            self.violations as f64 / self.pairs as f64
        }
    }

    pub fn all_hold(&self) -> bool {
        self.violations == 0
    }
}

/// Does the pair `(i, j)` respect the distortion bound appropriate for the
/// metric (unsquared for Euclidean, squared against Hamming)?
pub fn pair_within_bounds(
    points: &PointSet,
    projected: &ProjectedSet,
    i: usize,
    j: usize,
    epsilon: f64,
) -> bool {
    let exact = points.dist(i, j);
    let sq = projected.sq_dist(i, j);
    match points.metric() {
        Metric::Euclidean => euclidean_sandwich(exact, sq.sqrt(), epsilon),
        Metric::Hamming => hamming_sandwich(exact, sq, epsilon),
    }
}

/// Counts unordered pairs violating the distortion bound.
pub fn distortion(points: &PointSet, projected: &ProjectedSet, epsilon: f64) -> Distortion {
    let n = points.len();
    let violations: usize = (0..n)
        .into_par_iter()
        .map(|i| {
            (i + 1..n)
                .filter(|&j| !pair_within_bounds(points, projected, i, j, epsilon))
                .count()
        })
        .sum();
    Distortion {
        pairs: n * (n - 1) / 2,
        violations,
    }
}
