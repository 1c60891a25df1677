//! Marked points, coordinate functions, slope fields and tropical curves.

mod curve;
mod intersect;
mod linalg;
mod marked;
mod pipeline;
mod slopes;

pub use curve::{
    build_tropical_curve, gcd_of, CurveVertex, Ray, Segment, SegmentKind, TropicalCurve,
    VertexSource,
};
pub use intersect::{check_faithful, crossing, Crossing, FaithfulnessReport, Meet, Piece};
pub use linalg::solve_exact;
pub use marked::{
    build_coordinate_functions, check_assumption, divisor_f, divisor_g, divisor_h,
    divisor_is_tropically_principal, place_marked_points, CoordinateFunctions, Divisor, JoinEdge,
    Label, LabelDivisor, MarkedSkeleton,
};
pub use pipeline::{tropicalize, Tropicalization, TropicalizeOptions};
pub use slopes::{solve_slope_field, BaseEdge, GraphEdge, SlopeSolution, SubdividedGraph};
