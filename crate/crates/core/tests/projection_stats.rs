//! Statistical behavior of the ±1 projection on random instances.

use dimredkc::points::euclidean;
use dimredkc::projection::{
    distortion, euclidean_sandwich, hamming_sandwich, projected_sq_distance,
};
use dimredkc::synth::{binary, gaussian};
use dimredkc::{target_dimension, Metric, PointSet, ProjectionMap};

#[test]
fn target_dimension_matches_independent_evaluation() {
    // ⌈6 / (0.02 − 0.008/3) · ln 10⁴⌉, evaluated in exact rationals + libm ln.
    assert_eq!(target_dimension(10_000, 0.2, 1.0).unwrap(), 3189);
    assert_eq!(target_dimension(200, 0.2, 1.0).unwrap(), 1835);
    assert_eq!(target_dimension(200, 0.4, 1.0).unwrap(), 542);
    // larger β only grows k
    assert!(target_dimension(200, 0.4, 2.0).unwrap() > 542);
}

#[test]
fn euclidean_pairs_respect_the_sandwich() {
    let (n, d, eps) = (200, 500, 0.2);
    let points = gaussian(n, d, 41);
    let k = target_dimension(n, eps, 1.0).unwrap();
    let projected = ProjectionMap::generate(7, k, d)
        .unwrap()
        .project(&points)
        .unwrap();
    let census = distortion(&points, &projected, eps);
    assert_eq!(census.pairs, n * (n - 1) / 2);
    assert!(census.violation_rate() <= 0.01, "{census:?}");
}

/// On pairs satisfying the unsquared sandwich the implied inequalities
/// `(1−ε)‖f(v)−f(u)‖ ≤ ‖v−u‖ ≤ (1+2ε)‖f(v)−f(u)‖` hold without exception.
#[test]
fn implied_euclidean_inequalities_hold_on_sandwiched_pairs() {
    for (seed, eps) in [(1u64, 0.1), (2, 0.3), (3, 0.45)] {
        let points = gaussian(60, 120, seed);
        // deliberately small k so that some pairs fall outside the band
        let projected = ProjectionMap::generate(seed, 40, 120)
            .unwrap()
            .project(&points)
            .unwrap();
        let mut checked = 0;
        for i in 0..60 {
            for j in i + 1..60 {
                let exact = points.dist(i, j);
                let proj = projected.sq_dist(i, j).sqrt();
                if euclidean_sandwich(exact, proj, eps) {
                    checked += 1;
                    assert!((1.0 - eps) * proj <= exact * (1.0 + 1e-12));
                    assert!(exact <= (1.0 + 2.0 * eps) * proj * (1.0 + 1e-12));
                }
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn implied_hamming_inequalities_hold_on_sandwiched_pairs() {
    for (seed, eps) in [(4u64, 0.1), (5, 0.3), (6, 0.45)] {
        let points = binary(60, 300, seed);
        let projected = ProjectionMap::generate(seed, 50, 300)
            .unwrap()
            .project(&points)
            .unwrap();
        let mut checked = 0;
        for i in 0..60 {
            for j in i + 1..60 {
                let ham = points.dist(i, j);
                let w = projected.sq_dist(i, j);
                if hamming_sandwich(ham, w, eps) {
                    checked += 1;
                    assert!((1.0 - eps) * w <= ham * (1.0 + 1e-12));
                    assert!(ham <= (1.0 + 2.0 * eps) * w * (1.0 + 1e-12));
                }
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn binary_pair_surrogate_is_within_band_for_most_seeds() {
    // map sized for an n = 200 instance; sized for n = 2 the per-pair
    // failure bound is only 1/2
    let (d, eps) = (256, 0.3);
    let k = target_dimension(200, eps, 1.0).unwrap();
    let pair = binary(2, d, 99);
    let ham = pair.dist(0, 1);
    let within = (0..100u64)
        .filter(|&seed| {
            let proj = ProjectionMap::generate(seed, k, d)
                .unwrap()
                .project(&pair)
                .unwrap();
            let w = projected_sq_distance(proj.image(0), proj.image(1));
            hamming_sandwich(ham, w, eps)
        })
        .count();
    assert!(within >= 99, "{within}/100");
}

#[test]
fn hamming_popcount_projection_matches_widened_reals() {
    let bits = binary(30, 777, 12);
    let rows: Vec<Vec<f64>> = (0..30).map(|i| bits.row_vec(i)).collect();
    let reals = PointSet::from_rows(&rows, Metric::Euclidean).unwrap();
    let map = ProjectionMap::generate(3, 64, 777).unwrap();
    let a = map.project(&bits).unwrap();
    let b = map.project(&reals).unwrap();
    for i in 0..30 {
        // both are exact integer sums times the same scale
        assert_eq!(a.image(i), b.image(i));
        assert_eq!(euclidean(a.image(i), b.image(i)), 0.0);
    }
}
