//! Randomized dimension reduction for ℓ-center clustering, minimum-diameter
//! clustering and ℓ-center clustering with outliers, in Euclidean space and
//! in the Hamming cube.
//!
//! - [`center_reduce`]: project with a random ±1 map, solve in
//!   `O(log n / ε²)` dimensions with any conservative subroutine, pull the
//!   centers back (`2+ε` with Gonzalez).
//! - [`ham_center`]: farthest-first traversal on squared projected distances
//!   for Hamming inputs (`2+ε`).
//! - [`outliers`]: greedy disk cover on projected interdistances with a
//!   binary search over candidate radii (`3+ε` against conservative optima).
//! - [`oracle`]: exhaustive solvers for checking all of the above on small
//!   instances.

pub mod center_reduce;
pub mod error;
pub mod gonzalez;
pub mod ham_center;
pub mod oracle;
pub mod outliers;
pub mod points;
pub mod projection;
pub mod synth;

pub use center_reduce::{
    dimred_center, euclid_min_diameter, euclid_min_diameter_with, euclid_two_plus_eps,
    ConservativeSubroutine, FnSubroutine, GonzalezSubroutine, PhaseTimings, ReducedRunReport,
    ReductionParams,
};
pub use error::{Error, Result};
pub use gonzalez::{assign_clusters, farthest_first, gonzalez, FarthestFirstState};
pub use ham_center::{
    dimred_ham_center, ham_min_diameter, ham_min_diameter_with, two_plus_eps_ham,
    SurrogateDistanceState,
};
pub use oracle::OracleBudget;
pub use outliers::{
    dimred_cen_out, dimred_cen_out_with_beta, greedy_cover, three_plus_eps_out, GreedyVerdict,
    OutlierTrace, RadiusCandidateSet, SurrogateKind, SurrogateMatrix,
};
pub use points::{
    distance, evaluate_center_solution, evaluate_clustering, CenterSolution, ClusteringSolution,
    Metric, OutlierSolution, PointSet,
};
pub use projection::{target_dimension, ProjectedSet, ProjectionMap};
