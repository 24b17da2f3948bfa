//! Approximation guarantees and the conditional inequalities behind them,
//! checked against exhaustive oracles on small random instances.

use dimredkc::center_reduce::{dimred_center, GonzalezSubroutine, ReductionParams};
use dimredkc::oracle::{
    opt_center_conservative, opt_center_outliers_conservative, opt_min_diameter, OracleBudget,
};
use dimredkc::outliers::{greedy_cover, RadiusCandidateSet, SurrogateKind, SurrogateMatrix};
use dimredkc::projection::{hamming_sandwich, pair_within_bounds};
use dimredkc::synth::{binary, binary_blobs, gaussian, gaussian_blobs};
use dimredkc::{
    dimred_cen_out, dimred_ham_center, euclid_min_diameter, euclid_two_plus_eps,
    evaluate_center_solution, ham_min_diameter, target_dimension, three_plus_eps_out,
    two_plus_eps_ham, Metric, PointSet, ProjectionMap,
};

fn all_pairs_within(points: &PointSet, projected: &dimredkc::ProjectedSet, eps: f64) -> bool {
    let n = points.len();
    (0..n).all(|i| (i + 1..n).all(|j| pair_within_bounds(points, projected, i, j, eps)))
}

#[test]
fn reduced_center_meets_its_factor() {
    let budget = OracleBudget::default();
    let eps = 0.25;
    let mut failures = 0;
    for seed in 0..40u64 {
        let n = 5 + (seed as usize % 6);
        let d = if seed % 2 == 0 { 50 } else { 200 };
        let ell = 1 + (seed as usize % 3);
        let points = gaussian(n, d, 1000 + seed);
        let (sol, report) = dimred_center(
            &points,
            ell,
            ReductionParams::new(eps, seed),
            &GonzalezSubroutine::default(),
        )
        .unwrap();
        sol.validate(&points, ell).unwrap();
        assert_eq!(report.original_radius, sol.radius);
        let opt = opt_center_conservative(&points, ell, &budget)
            .unwrap()
            .radius;
        if sol.radius > (1.0 + eps) * (1.0 + 2.0 * eps) * 2.0 * opt {
            failures += 1;
        }
    }
    assert!(failures == 0, "{failures} failures");
}

/// Whenever every pair respected the distortion band, the pulled-back
/// radius is at most (1+2ε) times the reduced radius.
#[test]
fn pullback_radius_is_bounded_by_reduced_radius() {
    let eps = 0.3;
    let mut conditional = 0;
    for seed in 0..30u64 {
        let points = gaussian(12, 80, 50 + seed);
        let params = ReductionParams::new(eps, seed);
        let (sol, report) =
            dimred_center(&points, 3, params, &GonzalezSubroutine::default()).unwrap();
        let k = target_dimension(12, eps, 1.0).unwrap();
        assert_eq!(report.k, k);
        let projected = ProjectionMap::generate(seed, k, 80)
            .unwrap()
            .project(&points)
            .unwrap();
        if all_pairs_within(&points, &projected, eps) {
            conditional += 1;
            assert!(sol.radius <= (1.0 + 2.0 * eps) * report.reduced_radius * (1.0 + 1e-12));
            assert!((1.0 - eps) * report.reduced_radius <= sol.radius * (1.0 + 1e-12));
        }
    }
    assert!(conditional > 20);
}

#[test]
fn padding_keeps_exactly_ell_distinct_centers() {
    let rows = vec![
        vec![1.0, 1.0],
        vec![1.0, 1.0],
        vec![5.0, 5.0],
        vec![5.0, 5.0],
        vec![1.0, 1.0],
    ];
    let points = PointSet::from_rows(&rows, Metric::Euclidean).unwrap();
    let (sol, report) = euclid_two_plus_eps(&points, 4, 0.2, 77).unwrap();
    assert_eq!(report.ell_prime, 2);
    assert_eq!(report.padded_count, 2);
    assert_eq!(sol.centers.len(), 4);
    assert_eq!(sol.centers[..2], [0, 2]);
    assert_eq!(sol.centers[2..], [1, 3]);
    sol.validate(&points, 4).unwrap();
}

#[test]
fn planted_blobs_get_one_center_each() {
    for seed in 0..5u64 {
        let (points, labels) = gaussian_blobs(3, 10, 300, 40.0, 1.0, seed);
        let (sol, _) = euclid_two_plus_eps(&points, 3, 0.3, seed).unwrap();
        let mut seen: Vec<usize> = sol.centers.iter().map(|&c| labels[c]).collect();
        seen.sort_unstable();
        assert_eq!(seen, vec![0, 1, 2]);
    }
}

#[test]
fn euclidean_min_diameter_against_partition_oracle() {
    let budget = OracleBudget::default();
    let eps = 0.25;
    for seed in 0..20u64 {
        let (points, _) = gaussian_blobs(2, 4, 30, 6.0, 1.0, seed);
        let (sol, _) = euclid_min_diameter(&points, 2, eps, seed).unwrap();
        let opt = opt_min_diameter(&points, 2, &budget).unwrap();
        assert!(
            sol.max_diameter <= (2.0 + eps) * opt.max_diameter,
            "seed {seed}"
        );
        assert!(opt.max_diameter <= sol.max_diameter);
    }
}

#[test]
fn hamming_traversal_invariants() {
    let eps = 0.2;
    for seed in 0..20u64 {
        let points = binary(14, 96, 300 + seed);
        let ell = 2 + seed as usize % 4;
        let (sol, state) =
            dimred_ham_center(&points, ell, ReductionParams::new(eps, seed)).unwrap();
        sol.validate(&points, ell).unwrap();
        assert_eq!(state.rows.len(), ell);
        assert!(state.rows.iter().all(|(_, row)| row.len() == 14));
        assert_eq!(sol.centers[0], 0);

        for j in 0..14 {
            let min = state
                .rows
                .iter()
                .map(|(_, row)| row[j])
                .fold(f64::INFINITY, f64::min);
            assert_eq!(state.current_min[j], min);
            assert_eq!(state.w(state.current_nearest[j], j), Some(min));
        }

        // T ∪ {p_q} is pairwise W-separated by r_w.
        let (q, r_w) = state.farthest().unwrap();
        assert_eq!(r_w, state.surrogate_radius());
        let mut witnesses = state.centers();
        witnesses.push(q);
        for (a, &u) in witnesses.iter().enumerate() {
            for &v in &witnesses[a + 1..] {
                let w = state.w(u, v).or_else(|| state.w(v, u)).unwrap();
                assert!(w >= r_w);
            }
        }

        // Surrogate rows satisfy the band on every sandwiched pair, and the
        // exact radius is bounded by r_w / (1−ε) when all of them are.
        let mut all_ok = true;
        for (c, row) in &state.rows {
            for (j, &w) in row.iter().enumerate() {
                let ham = points.dist(*c, j);
                if hamming_sandwich(ham, w, eps) {
                    assert!((1.0 - eps) * ham <= w && w <= (1.0 + eps) * ham);
                } else {
                    all_ok = false;
                }
            }
        }
        if all_ok {
            assert!(sol.radius <= r_w / (1.0 - eps) + 1e-9);
        }
    }
}

#[test]
fn hamming_two_plus_eps_against_oracle() {
    let budget = OracleBudget::default();
    let eps = 0.3;
    for seed in 0..30u64 {
        let n = 6 + seed as usize % 7;
        let ell = 1 + seed as usize % 3;
        let points = binary(n, 64, 900 + seed);
        let (sol, _) = two_plus_eps_ham(&points, ell, eps, seed).unwrap();
        let opt = opt_center_conservative(&points, ell, &budget)
            .unwrap()
            .radius;
        assert!(sol.radius <= (2.0 + eps) * opt, "seed {seed}");
    }
    // ℓ = n − 1 on distinct points
    let points = binary(8, 64, 5);
    let (sol, _) = two_plus_eps_ham(&points, 7, eps, 5).unwrap();
    let wide = OracleBudget {
        max_ell: 7,
        ..OracleBudget::default()
    };
    let opt = opt_center_conservative(&points, 7, &wide).unwrap().radius;
    assert!(sol.radius <= (2.0 + eps) * opt);
}

#[test]
fn hamming_blobs_split_cleanly() {
    for seed in 0..5u64 {
        let (points, labels) = binary_blobs(2, 8, 256, 0.05, seed);
        let (sol, state) = ham_min_diameter(&points, 2, 0.3, seed).unwrap();
        let state = state.unwrap();
        for cluster in &sol.clusters {
            assert!(!cluster.is_empty());
            assert!(cluster.iter().all(|&j| labels[j] == labels[cluster[0]]));
        }
        // diameter ≤ 2·r_w/(1−ε) once every surrogate row is within the band
        let eps = state.epsilon;
        let banded = state.rows.iter().all(|(c, row)| {
            row.iter()
                .enumerate()
                .all(|(j, &w)| hamming_sandwich(points.dist(*c, j), w, eps))
        });
        if banded {
            assert!(sol.max_diameter <= 2.0 * state.surrogate_radius() / (1.0 - eps) + 1e-9);
        }
    }
}

fn surrogate_of(
    points: &PointSet,
    eps: f64,
    seed: u64,
) -> (SurrogateMatrix, dimredkc::ProjectedSet) {
    let k = target_dimension(points.len(), eps, 1.0).unwrap();
    let projected = ProjectionMap::generate(seed, k, points.dim())
        .unwrap()
        .project(points)
        .unwrap();
    let kind = SurrogateKind::for_metric(points.metric());
    (
        SurrogateMatrix::from_projection(&projected, kind),
        projected,
    )
}

#[test]
fn greedy_is_monotone_over_the_candidate_sweep() {
    for seed in 0..25u64 {
        let points = if seed % 2 == 0 {
            gaussian(10, 20, seed)
        } else {
            binary(10, 64, seed)
        };
        let eps = 0.1;
        let (w, _) = surrogate_of(&points, eps, seed);
        let b = RadiusCandidateSet::build(&w, eps);
        for ell in 1..=3 {
            for z in 0..=2 {
                let verdicts: Vec<bool> = b
                    .as_slice()
                    .iter()
                    .map(|&r| greedy_cover(&w, ell, eps, z, r).yes)
                    .collect();
                let first = verdicts.iter().position(|&v| v).unwrap();
                assert!(
                    verdicts[first..].iter().all(|&v| v),
                    "seed {seed} ℓ={ell} z={z}"
                );
            }
        }
    }
}

/// For every exact interdistance r of a sandwiched instance, some candidate
/// lies in [r, (1+2ε)r].
#[test]
fn candidate_set_brackets_every_interdistance() {
    let eps = 0.2;
    for seed in 0..10u64 {
        let points = if seed % 2 == 0 {
            gaussian(9, 40, seed)
        } else {
            binary(9, 80, seed)
        };
        let (w, projected) = surrogate_of(&points, eps, seed);
        if !all_pairs_within(&points, &projected, eps) {
            continue;
        }
        let b = RadiusCandidateSet::build(&w, eps);
        for i in 0..9 {
            for j in i + 1..9 {
                let r = points.dist(i, j);
                let hit = b.first_at_least(r).map(|t| b.as_slice()[t]).unwrap();
                assert!(
                    hit <= (1.0 + 2.0 * eps) * r * (1.0 + 1e-12),
                    "r={r} hit={hit}"
                );
            }
        }
    }
}

#[test]
fn outliers_against_oracle() {
    let budget = OracleBudget::default();
    let eps = 0.3;
    for seed in 0..30u64 {
        let n = 6 + seed as usize % 5;
        let ell = 1 + seed as usize % 2;
        let z = seed as usize % 3;
        let points = if seed % 2 == 0 {
            gaussian(n, 25, seed)
        } else {
            binary(n, 64, seed)
        };
        let (sol, trace) = three_plus_eps_out(&points, ell, eps, z, seed).unwrap();
        sol.validate(&points, ell, z).unwrap();
        assert_eq!(trace.epsilon, eps / 8.0);
        let opt = opt_center_outliers_conservative(&points, ell, z, &budget)
            .unwrap()
            .radius;
        assert!(
            sol.radius <= (3.0 + eps) * opt,
            "seed {seed}: {} vs {opt}",
            sol.radius
        );
        if z == 0 {
            let plain = opt_center_conservative(&points, ell, &budget)
                .unwrap()
                .radius;
            assert_eq!(plain, opt);
        }
    }
}

#[test]
fn planted_strays_are_discarded() {
    let (blobs, _) = gaussian_blobs(2, 6, 100, 30.0, 0.5, 3);
    let mut rows: Vec<Vec<f64>> = (0..blobs.len()).map(|i| blobs.row_vec(i)).collect();
    let mut far = vec![0.0; 100];
    far[50] = 500.0;
    rows.push(far.clone());
    far[60] = -700.0;
    rows.push(far);
    let points = PointSet::from_rows(&rows, Metric::Euclidean).unwrap();
    let (sol, _) = dimred_cen_out(&points, 2, 0.25, 2, 4).unwrap();
    assert_eq!(sol.outliers, vec![12, 13]);
    let r_plant = [
        blobs.select(&(0..6).collect::<Vec<_>>()).unwrap(),
        blobs.select(&(6..12).collect::<Vec<_>>()).unwrap(),
    ]
    .iter()
    .map(|b| {
        evaluate_center_solution(b, &[0]).unwrap().min(
            (0..6)
                .map(|c| evaluate_center_solution(b, &[c]).unwrap())
                .fold(f64::INFINITY, f64::min),
        )
    })
    .fold(0.0, f64::max);
    assert!(sol.radius <= (3.0 + 0.25) * r_plant);
}

#[test]
fn all_but_one_point_discardable() {
    let points = gaussian(7, 10, 8);
    let (sol, trace) = dimred_cen_out(&points, 1, 0.2, 6, 1).unwrap();
    assert_eq!(trace.chosen_radius, 0.0);
    assert!(sol.outliers.len() <= 6);
    sol.validate(&points, 1, 6).unwrap();
}
