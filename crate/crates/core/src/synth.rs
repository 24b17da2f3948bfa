//! Seeded synthetic point sets for tests, benchmarks and the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::points::{Metric, PointSet};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` points with i.i.d. standard normal coordinates.
pub fn gaussian(n: usize, dim: usize, seed: u64) -> PointSet {
    let mut rng = rng(seed);
    let data = (0..n * dim).map(|_| rng.sample(StandardNormal)).collect();
    PointSet::from_flat(dim, data, Metric::Euclidean).expect("finite samples")
}

/// `n` points with i.i.d. fair bits.
pub fn binary(n: usize, dim: usize, seed: u64) -> PointSet {
    let mut rng = rng(seed);
    let rows: Vec<Vec<bool>> = (0..n)
        .map(|_| (0..dim).map(|_| rng.random::<bool>()).collect())
        .collect();
    PointSet::from_bit_rows(&rows).expect("nonempty")
}

/// `n` points with coordinates uniform on `[0, side)`.
pub fn uniform_box(n: usize, dim: usize, side: f64, seed: u64) -> PointSet {
    let mut rng = rng(seed);
    let data = (0..n * dim).map(|_| rng.random::<f64>() * side).collect();
    PointSet::from_flat(dim, data, Metric::Euclidean).expect("finite samples")
}

/// Gaussian blobs: blob `b` is centered at `separation · e_b` with unit
/// per-coordinate noise scaled by `spread`. Returns the points and the blob
/// label of each point (points are laid out blob by blob).
pub fn gaussian_blobs(
    blobs: usize,
    per_blob: usize,
    dim: usize,
    separation: f64,
    spread: f64,
    seed: u64,
) -> (PointSet, Vec<usize>) {
    assert!(blobs <= dim, "one axis per blob");
    let mut rng = rng(seed);
    let mut data = Vec::with_capacity(blobs * per_blob * dim);
    let mut labels = Vec::with_capacity(blobs * per_blob);
    for b in 0..blobs {
        for _ in 0..per_blob {
            for c in 0..dim {
                let noise: f64 = rng.sample(StandardNormal);
                let offset = if c == b { separation } else { 0.0 };
                data.push(offset + spread * noise);
            }
            labels.push(b);
        }
    }
    let points = PointSet::from_flat(dim, data, Metric::Euclidean).expect("finite samples");
    (points, labels)
}

/// Binary blobs around random prototypes: each point flips every bit of its
/// prototype independently with probability `flip`.
pub fn binary_blobs(
    blobs: usize,
    per_blob: usize,
    dim: usize,
    flip: f64,
    seed: u64,
) -> (PointSet, Vec<usize>) {
    let mut rng = rng(seed);
    let prototypes: Vec<Vec<bool>> = (0..blobs)
        .map(|_| (0..dim).map(|_| rng.random::<bool>()).collect())
        .collect();
    let mut rows = Vec::with_capacity(blobs * per_blob);
    let mut labels = Vec::with_capacity(blobs * per_blob);
    for (b, proto) in prototypes.iter().enumerate() {
        for _ in 0..per_blob {
            rows.push(
                proto
                    .iter()
                    .map(|&bit| bit ^ rng.random_bool(flip))
                    .collect(),
            );
            labels.push(b);
        }
    }
    (PointSet::from_bit_rows(&rows).expect("nonempty"), labels)
}
