//! The metric skeleton of the curve, the tropical Jacobian `Q^2 / Λ`, and
//! the map `μ` from the skeleton into it.

mod lattice;
mod mu;
mod skeleton;
mod twoadd;

pub use lattice::{add, max_norm, reduce_mod_lattice, scale, sub, TorusPoint, TropLattice, Vec2};
pub use mu::{
    base_value, check_mu_cycle_isometry, mu, mu_cycle_lift, mu_lift, unit, IsometryReport,
    IsometryViolation,
};
pub use skeleton::{
    build_skeleton, cycle_gap, cycle_paths, MetricSkeleton, SkeletonKind, SkeletonPoint,
};
pub use twoadd::{grid_decompositions, two_summand_decomposition};
