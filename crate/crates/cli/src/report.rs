//! Report documents. Every rational is written as an exact string; the
//! document is TOML with a fixed field order, so identical inputs give
//! byte-identical reports.

use mumford_trop::faithful_trop::{
    Crossing, FaithfulnessReport, MarkedSkeleton, Piece, SegmentKind, SlopeSolution,
    TropicalCurve, VertexSource,
};
use mumford_trop::moebius_schottky::{Check, PeriodMatrix};
use mumford_trop::skeleton_jacobian::{mu, MetricSkeleton, SkeletonKind, SkeletonPoint, TropLattice};
use mumford_trop::Rat;
use serde::Serialize;

use crate::instance::InstanceFile;

pub const REPORT_VERSION: i64 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub report_version: i64,
    pub command: String,
    pub verdict: String,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period_matrix: Option<PeriodRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub marked_points: Vec<MarkedRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub slopes: Vec<SlopeTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub faithfulness: Option<FaithfulnessRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckRow>,
    pub instance: InstanceFile,
}

impl Report {
    pub fn new(command: &str, instance: InstanceFile) -> Self {
        Report {
            report_version: REPORT_VERSION,
            command: command.to_string(),
            verdict: "pass".into(),
            warnings: Vec::new(),
            classification: None,
            period_matrix: None,
            marked_points: Vec::new(),
            slopes: Vec::new(),
            curve: None,
            faithfulness: None,
            checks: Vec::new(),
            instance,
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("report serializes")
    }

    pub fn all_checks_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub kind: String,
    pub cycle_lengths: [String; 2],
    pub edge_length: String,
}

impl Classification {
    pub fn new(skel: &MetricSkeleton) -> Self {
        Classification {
            kind: skel.kind.to_string(),
            cycle_lengths: [skel.lengths[0].to_string(), skel.lengths[1].to_string()],
            edge_length: skel.ell.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PeriodRow {
    pub log_abs_q: [[String; 2]; 2],
}

impl PeriodRow {
    pub fn new(q: &PeriodMatrix) -> Self {
        PeriodRow {
            log_abs_q: q.logq.clone().map(|r| r.map(|x| x.to_string())),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MarkedRow {
    pub label: String,
    pub cycle: usize,
    pub arc: String,
    pub mu: [String; 2],
}

pub fn marked_rows(msk: &MarkedSkeleton, lattice: &TropLattice) -> Vec<MarkedRow> {
    msk.marks
        .iter()
        .filter_map(|(l, p)| {
            let SkeletonPoint::Cycle { cycle, arc } = p else {
                return None;
            };
            let m = mu(&msk.skel, lattice, p).ok()?;
            Some(MarkedRow {
                label: l.to_string(),
                cycle: cycle + 1,
                arc: arc.to_string(),
                mu: m.rep.map(|x| x.to_string()),
            })
        })
        .collect()
}

/// Readable name of a skeleton point: its marks, a named vertex, or the
/// position itself.
pub fn point_name(msk: &MarkedSkeleton, p: &SkeletonPoint) -> String {
    let labels: Vec<String> = msk
        .marks
        .iter()
        .filter(|(_, q)| *q == p)
        .map(|(l, _)| l.to_string())
        .collect();
    if !labels.is_empty() {
        return labels.join("=");
    }
    let skel = &msk.skel;
    let zero = Rat::from_integer(0.into());
    match (skel.kind, p) {
        (SkeletonKind::SharedEdge, SkeletonPoint::Shared { offset }) if *offset == skel.ell => {
            "v0".into()
        }
        (SkeletonKind::SharedEdge, SkeletonPoint::Shared { offset }) if *offset == zero => {
            "w0".into()
        }
        (SkeletonKind::ConnectingPoint, SkeletonPoint::Bridge { .. }) => "x".into(),
        (_, SkeletonPoint::Bridge { offset }) if *offset == zero => "x1".into(),
        (_, SkeletonPoint::Bridge { offset }) if *offset == skel.ell => "x2".into(),
        _ => p.to_string(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SlopeRow {
    pub from: String,
    pub to: String,
    pub length: String,
    pub slope: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SlopeTable {
    pub function: String,
    pub divisor: String,
    pub integral: bool,
    pub edges: Vec<SlopeRow>,
}

pub fn slope_table(name: &str, divisor: String, msk: &MarkedSkeleton, sol: &SlopeSolution) -> SlopeTable {
    let g = &sol.graph;
    SlopeTable {
        function: name.to_string(),
        divisor,
        integral: sol.integral,
        edges: g
            .edges
            .iter()
            .zip(&sol.slopes)
            .map(|(e, m)| SlopeRow {
                from: point_name(msk, &g.vertices[e.tail]),
                to: point_name(msk, &g.vertices[e.head]),
                length: e.length.to_string(),
                slope: m.to_string(),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexRow {
    pub name: String,
    pub point: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SegmentRow {
    pub from: String,
    pub to: String,
    pub kind: String,
    pub slope: Vec<i64>,
    pub length: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RayRow {
    pub label: String,
    pub from: String,
    pub direction: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveTable {
    pub dimension: usize,
    pub balanced: bool,
    pub vertices: Vec<VertexRow>,
    pub segments: Vec<SegmentRow>,
    pub rays: Vec<RayRow>,
}

pub fn vertex_name(msk: &MarkedSkeleton, curve: &TropicalCurve, v: usize) -> String {
    match &curve.vertices[v].source {
        VertexSource::Skeleton(p) => point_name(msk, p),
        VertexSource::Branch(a, b) => format!("branch {a}/{b}"),
    }
}

fn points(v: &[Rat]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn curve_table(msk: &MarkedSkeleton, curve: &TropicalCurve) -> CurveTable {
    let name = |v: usize| vertex_name(msk, curve, v);
    CurveTable {
        dimension: curve.dim,
        balanced: curve.is_balanced(),
        vertices: (0..curve.vertices.len())
            .map(|v| VertexRow {
                name: name(v),
                point: points(&curve.vertices[v].point),
            })
            .collect(),
        segments: curve
            .segments
            .iter()
            .map(|s| SegmentRow {
                from: name(s.tail),
                to: name(s.head),
                kind: match s.kind {
                    SegmentKind::Skeleton(_) => "skeleton".into(),
                    SegmentKind::Join => "join".into(),
                },
                slope: s.slope.clone(),
                length: s.length.to_string(),
            })
            .collect(),
        rays: curve
            .rays
            .iter()
            .map(|r| RayRow {
                label: r.label.to_string(),
                from: name(r.base),
                direction: r.direction.clone(),
            })
            .collect(),
    }
}

pub fn piece_name(msk: &MarkedSkeleton, curve: &TropicalCurve, p: Piece) -> String {
    match p {
        Piece::Segment(i) => {
            let s = &curve.segments[i];
            format!(
                "{} {} -> {}",
                if s.kind == SegmentKind::Join { "join edge" } else { "edge" },
                vertex_name(msk, curve, s.tail),
                vertex_name(msk, curve, s.head)
            )
        }
        Piece::Ray(i) => format!("ray {}", curve.rays[i].label),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossingRow {
    pub first: String,
    pub second: String,
    pub at: Vec<String>,
    pub overlap: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FaithfulnessRow {
    pub dimension: usize,
    pub skeleton_faithful: bool,
    pub extended_faithful: bool,
    pub expansion_factors_all_one: bool,
    pub nonprimitive_rays: Vec<String>,
    pub unbalanced_vertices: Vec<String>,
    pub skeleton_crossings: Vec<CrossingRow>,
    pub extended_crossings: Vec<CrossingRow>,
}

pub fn faithfulness_row(
    msk: &MarkedSkeleton,
    curve: &TropicalCurve,
    r: &FaithfulnessReport,
) -> FaithfulnessRow {
    let rows = |cs: &[Crossing]| -> Vec<CrossingRow> {
        cs.iter()
            .map(|c| CrossingRow {
                first: piece_name(msk, curve, c.pieces.0),
                second: piece_name(msk, curve, c.pieces.1),
                at: points(&c.witness),
                overlap: c.overlap,
            })
            .collect()
    };
    FaithfulnessRow {
        dimension: r.dim,
        skeleton_faithful: r.skeleton_faithful,
        extended_faithful: r.extended_faithful,
        expansion_factors_all_one: r.expansion_factors_all_one(),
        nonprimitive_rays: r
            .nonprimitive_rays
            .iter()
            .map(|i| curve.rays[*i].label.to_string())
            .collect(),
        unbalanced_vertices: r
            .unbalanced
            .iter()
            .map(|v| vertex_name(msk, curve, *v))
            .collect(),
        skeleton_crossings: rows(&r.skeleton_crossings),
        extended_crossings: rows(&r.extended_crossings),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl From<&Check> for CheckRow {
    fn from(c: &Check) -> Self {
        CheckRow {
            name: c.name.clone(),
            passed: c.passed,
            detail: c.detail.clone(),
        }
    }
}

impl CheckRow {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckRow {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}
