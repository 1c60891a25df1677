use crate::error::{Error, Result};
use crate::moebius_schottky::{
    log_q, normalize, verify_good_domain, PeriodMatrix, SchottkyRank2,
};
use crate::skeleton_jacobian::{build_skeleton, SkeletonKind, TropLattice};

use super::curve::{build_tropical_curve, TropicalCurve};
use super::intersect::{check_faithful, FaithfulnessReport};
use super::marked::{
    build_coordinate_functions, check_assumption, place_marked_points, CoordinateFunctions,
    JoinEdge,
};
use super::slopes::{solve_slope_field, SlopeSolution};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TropicalizeOptions {
    pub join_edges: Vec<JoinEdge>,
}

/// Everything computed along the way from Schottky data to the two
/// tropical curves.
#[derive(Debug, Clone)]
pub struct Tropicalization {
    pub normalized: SchottkyRank2,
    pub period_matrix: PeriodMatrix,
    pub lattice: TropLattice,
    pub coordinates: CoordinateFunctions,
    /// Slope fields of `f`, `g`, `h`.
    pub slopes: [SlopeSolution; 3],
    pub curve_2d: TropicalCurve,
    pub curve_3d: TropicalCurve,
    pub report_2d: FaithfulnessReport,
    pub report_3d: FaithfulnessReport,
    pub warnings: Vec<String>,
}

/// Runs the whole pipeline: verification of the fundamental domain,
/// normalization, periods, skeleton, marked points, coordinate divisors,
/// slope fields, curves in dimensions 2 and 3, and their faithfulness
/// checks.
pub fn tropicalize(s: &SchottkyRank2, options: &TropicalizeOptions) -> Result<Tropicalization> {
    let check = verify_good_domain(s);
    if !check.all_passed() {
        return Err(Error::OutsideFundamentalDomain(
            check
                .failures()
                .map(|c| c.name.clone())
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    let normalized = normalize(s)?;
    let q = log_q(&normalized)?;
    if !check_assumption(&q) {
        return Err(Error::Unsupported("shared edge longer than half cycle".into()));
    }
    let skel = build_skeleton(&normalized, &q)?;
    let lattice = TropLattice::from_period_matrix(&q)?;
    let mut coordinates = build_coordinate_functions(&place_marked_points(&skel)?, &lattice)?;
    coordinates.marked.join_edges = options.join_edges.clone();

    let marked = &coordinates.marked;
    let solve = |i: usize| -> Result<SlopeSolution> {
        let div = marked.divisor(&coordinates.divisors[i])?;
        let sol = solve_slope_field(&skel, marked.marks.values(), &div)?;
        if !sol.integral {
            return Err(Error::NonIntegral(format!(
                "coordinate {} has non-integral slopes",
                ["f", "g", "h"][i]
            )));
        }
        Ok(sol)
    };
    let slopes = [solve(0)?, solve(1)?, solve(2)?];
    let curve_2d = build_tropical_curve(marked, &coordinates.divisors[..2], &slopes[..2])?;
    let curve_3d = build_tropical_curve(marked, &coordinates.divisors, &slopes)?;
    let report_2d = check_faithful(&curve_2d);
    let report_3d = check_faithful(&curve_3d);

    let mut warnings = vec![
        "g uses poles P1, P3, P4; the alternative P2, P3, P4 is not tropically principal".to_string(),
    ];
    if skel.kind == SkeletonKind::ConnectingPoint {
        warnings.push(
            "connecting-point skeleton: marked points placed with a bridge of length 0".into(),
        );
    }
    Ok(Tropicalization {
        normalized,
        period_matrix: q,
        lattice,
        coordinates,
        slopes,
        curve_2d,
        curve_3d,
        report_2d,
        report_3d,
        warnings,
    })
}
