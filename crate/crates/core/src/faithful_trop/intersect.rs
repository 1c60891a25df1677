use std::fmt;

use num_traits::{Signed, Zero};

use crate::valued_field::Rat;

use super::curve::{gcd_of, SegmentKind, TropicalCurve};

/// A segment or ray of a tropical curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Piece {
    Segment(usize),
    Ray(usize),
}

/// `origin + t · direction` for `t` in `[0, extent]`, or `[0, ∞)` when
/// `extent` is `None`.
#[derive(Debug, Clone)]
struct Parametrized {
    origin: Vec<Rat>,
    direction: Vec<Rat>,
    extent: Option<Rat>,
    ends: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Meet {
    Empty,
    Point(Vec<Rat>),
    /// The pieces overlap along a segment or ray starting at the witness.
    Overlap(Vec<Rat>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub pieces: (Piece, Piece),
    pub witness: Vec<Rat>,
    pub overlap: bool,
}

impl TropicalCurve {
    fn parametrize(&self, p: Piece) -> Parametrized {
        let ints = |v: &[i64]| v.iter().map(|x| Rat::from_integer((*x).into())).collect();
        match p {
            Piece::Segment(i) => {
                let s = &self.segments[i];
                Parametrized {
                    origin: self.vertices[s.tail].point.clone(),
                    direction: ints(&s.slope),
                    extent: Some(s.length.clone()),
                    ends: vec![s.tail, s.head],
                }
            }
            Piece::Ray(i) => {
                let r = &self.rays[i];
                Parametrized {
                    origin: self.vertices[r.base].point.clone(),
                    direction: ints(&r.direction),
                    extent: None,
                    ends: vec![r.base],
                }
            }
        }
    }

    pub fn describe(&self, p: Piece) -> String {
        let pt = |v: usize| {
            let c: Vec<String> = self.vertices[v].point.iter().map(ToString::to_string).collect();
            format!("({})", c.join(", "))
        };
        match p {
            Piece::Segment(i) => {
                let s = &self.segments[i];
                let kind = match s.kind {
                    SegmentKind::Skeleton(_) => "edge",
                    SegmentKind::Join => "join edge",
                };
                format!("{kind} {} -> {}", pt(s.tail), pt(s.head))
            }
            Piece::Ray(i) => format!("ray {} from {}", self.rays[i].label, pt(self.rays[i].base)),
        }
    }
}

fn within(t: &Rat, extent: &Option<Rat>) -> bool {
    !t.is_negative() && extent.as_ref().is_none_or(|e| t <= e)
}

fn at(p: &Parametrized, t: &Rat) -> Vec<Rat> {
    p.origin.iter().zip(&p.direction).map(|(o, d)| o + t * d).collect()
}

fn dot(x: &[Rat], y: &[Rat]) -> Rat {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn sub(x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn is_zero(x: &[Rat]) -> bool {
    x.iter().all(Zero::is_zero)
}

fn parallel(x: &[Rat], y: &[Rat]) -> bool {
    (0..x.len()).all(|i| (i + 1..x.len()).all(|j| (&x[i] * &y[j] - &x[j] * &y[i]).is_zero()))
}

/// Parameter of `x` on the line of `p`, if `x` lies on that line.
fn parameter_of(p: &Parametrized, x: &[Rat]) -> Option<Rat> {
    let d = sub(x, &p.origin);
    if !parallel(&d, &p.direction) {
        return None;
    }
    Some(dot(&d, &p.direction) / dot(&p.direction, &p.direction))
}

fn meet(a: &Parametrized, b: &Parametrized) -> Meet {
    match (is_zero(&a.direction), is_zero(&b.direction)) {
        (true, true) => {
            return if a.origin == b.origin {
                Meet::Point(a.origin.clone())
            } else {
                Meet::Empty
            };
        }
        (true, false) => return point_on(b, &a.origin),
        (false, true) => return point_on(a, &b.origin),
        _ => {}
    }
    if parallel(&a.direction, &b.direction) {
        let Some(t0) = parameter_of(a, &b.origin) else {
            return Meet::Empty;
        };
        // b's parameter range mapped onto a's line
        let scale = dot(&b.direction, &a.direction) / dot(&a.direction, &a.direction);
        let t1 = b.extent.as_ref().map(|e| &t0 + e * &scale);
        let (lo_b, hi_b) = match t1 {
            Some(t1) if t1 < t0 => (Some(t1), Some(t0.clone())),
            Some(t1) => (Some(t0.clone()), Some(t1)),
            None if scale.is_negative() => (None, Some(t0.clone())),
            None => (Some(t0.clone()), None),
        };
        let lo = match lo_b {
            Some(l) if l.is_positive() => l,
            _ => Rat::zero(),
        };
        let hi = match (hi_b, &a.extent) {
            (Some(h), Some(e)) => Some(std::cmp::min(h, e.clone())),
            (Some(h), None) => Some(h),
            (None, e) => e.clone(),
        };
        return match hi {
            Some(h) if h < lo => Meet::Empty,
            Some(h) if h == lo => Meet::Point(at(a, &lo)),
            _ => Meet::Overlap(at(a, &lo)),
        };
    }
    let n = a.direction.len();
    let (i, j) = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| {
            !(&a.direction[i] * &b.direction[j] - &a.direction[j] * &b.direction[i]).is_zero()
        })
        .expect("non-parallel directions have a nonzero minor");
    // a.origin + s a.dir = b.origin + u b.dir, solved on coordinates i, j
    let det = &b.direction[i] * &a.direction[j] - &a.direction[i] * &b.direction[j];
    let r = sub(&b.origin, &a.origin);
    let s = (&b.direction[i] * &r[j] - &b.direction[j] * &r[i]) / &det;
    let u = (&a.direction[i] * &r[j] - &a.direction[j] * &r[i]) / &det;
    if !within(&s, &a.extent) || !within(&u, &b.extent) {
        return Meet::Empty;
    }
    let x = at(a, &s);
    if x != at(b, &u) {
        return Meet::Empty;
    }
    Meet::Point(x)
}

fn point_on(p: &Parametrized, x: &[Rat]) -> Meet {
    match parameter_of(p, x) {
        Some(t) if within(&t, &p.extent) => Meet::Point(x.to_vec()),
        _ => Meet::Empty,
    }
}

/// Intersection of two pieces of a curve, ignoring a single common point
/// that is the image of a vertex both pieces are attached to.
pub fn crossing(curve: &TropicalCurve, x: Piece, y: Piece) -> Option<Crossing> {
    let (a, b) = (curve.parametrize(x), curve.parametrize(y));
    match meet(&a, &b) {
        Meet::Empty => None,
        Meet::Point(w) => {
            let shared = a
                .ends
                .iter()
                .filter(|v| b.ends.contains(v))
                .any(|v| curve.vertices[*v].point == w);
            (!shared).then_some(Crossing {
                pieces: (x, y),
                witness: w,
                overlap: false,
            })
        }
        Meet::Overlap(w) => Some(Crossing {
            pieces: (x, y),
            witness: w,
            overlap: true,
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaithfulnessReport {
    pub dim: usize,
    /// `(segment index, gcd of its slope vector)` for every skeleton edge.
    pub expansion: Vec<(usize, i64)>,
    pub skeleton_crossings: Vec<Crossing>,
    /// Crossings involving a ray or join edge.
    pub extended_crossings: Vec<Crossing>,
    pub nonprimitive_rays: Vec<usize>,
    pub nonprimitive_joins: Vec<usize>,
    pub unbalanced: Vec<usize>,
    pub skeleton_faithful: bool,
    pub extended_faithful: bool,
}

impl FaithfulnessReport {
    pub fn expansion_factors_all_one(&self) -> bool {
        self.expansion.iter().all(|(_, g)| *g == 1)
    }
}

/// Expansion factors, pairwise intersections and ray checks for `curve`.
///
/// The skeleton image is faithful when every skeleton edge has a primitive
/// nonzero slope vector and distinct skeleton edges only meet at common
/// endpoints. The extended image is faithful when in addition all rays and
/// join edges are primitive, no piece meets another outside a common
/// endpoint, and the curve is balanced.
pub fn check_faithful(curve: &TropicalCurve) -> FaithfulnessReport {
    let mut expansion = Vec::new();
    let mut nonprimitive_joins = Vec::new();
    for (i, s) in curve.segments.iter().enumerate() {
        match s.kind {
            SegmentKind::Skeleton(_) => expansion.push((i, gcd_of(&s.slope))),
            SegmentKind::Join if gcd_of(&s.slope) != 1 => nonprimitive_joins.push(i),
            SegmentKind::Join => {}
        }
    }
    let nonprimitive_rays = (0..curve.rays.len())
        .filter(|&i| gcd_of(&curve.rays[i].direction) != 1)
        .collect();

    let pieces: Vec<Piece> = (0..curve.segments.len())
        .map(Piece::Segment)
        .chain((0..curve.rays.len()).map(Piece::Ray))
        .collect();
    let on_skeleton =
        |p: Piece| matches!(p, Piece::Segment(i) if matches!(curve.segments[i].kind, SegmentKind::Skeleton(_)));
    let mut skeleton_crossings = Vec::new();
    let mut extended_crossings = Vec::new();
    for (k, &x) in pieces.iter().enumerate() {
        for &y in &pieces[k + 1..] {
            if let Some(c) = crossing(curve, x, y) {
                if on_skeleton(x) && on_skeleton(y) {
                    skeleton_crossings.push(c);
                } else {
                    extended_crossings.push(c);
                }
            }
        }
    }
    let unbalanced = curve.unbalanced_vertices();
    let mut report = FaithfulnessReport {
        dim: curve.dim,
        expansion,
        skeleton_crossings,
        extended_crossings,
        nonprimitive_rays,
        nonprimitive_joins,
        unbalanced,
        skeleton_faithful: false,
        extended_faithful: false,
    };
    report.skeleton_faithful =
        report.expansion_factors_all_one() && report.skeleton_crossings.is_empty();
    report.extended_faithful = report.skeleton_faithful
        && report.extended_crossings.is_empty()
        && report.nonprimitive_rays.is_empty()
        && report.nonprimitive_joins.is_empty()
        && report.unbalanced.is_empty();
    report
}

impl fmt::Display for FaithfulnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "dimension {}: skeleton {}, extended skeleton {}",
            self.dim,
            if self.skeleton_faithful { "faithful" } else { "not faithful" },
            if self.extended_faithful { "faithful" } else { "not faithful" }
        )?;
        let crossings = self.skeleton_crossings.iter().chain(&self.extended_crossings);
        for c in crossings {
            let w: Vec<String> = c.witness.iter().map(ToString::to_string).collect();
            writeln!(
                f,
                "  {} {:?} and {:?} at ({})",
                if c.overlap { "overlap" } else { "crossing" },
                c.pieces.0,
                c.pieces.1,
                w.join(", ")
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faithful_trop::curve::{CurveVertex, Ray, Segment, VertexSource};
    use crate::faithful_trop::marked::Label;
    use crate::skeleton_jacobian::SkeletonPoint;
    use crate::valued_field::{rat, ratio};

    fn param(o: &[i64], d: &[i64], e: Option<i64>) -> Parametrized {
        Parametrized {
            origin: o.iter().map(|x| rat(*x)).collect(),
            direction: d.iter().map(|x| rat(*x)).collect(),
            extent: e.map(rat),
            ends: vec![],
        }
    }

    #[test]
    fn transversal_rays() {
        let a = param(&[-1, 0], &[-1, 0], None);
        let b = param(&[-2, 1], &[0, -1], None);
        assert_eq!(meet(&a, &b), Meet::Point(vec![rat(-2), rat(0)]));
        let b = param(&[0, 1], &[0, -1], None);
        assert_eq!(meet(&a, &b), Meet::Empty);
    }

    #[test]
    fn parallel_cases() {
        let a = param(&[0, 0], &[1, 1], Some(2));
        assert_eq!(meet(&a, &param(&[2, 2], &[1, 1], None)), Meet::Point(vec![rat(2), rat(2)]));
        assert_eq!(meet(&a, &param(&[3, 3], &[-1, -1], Some(2))), Meet::Overlap(vec![rat(1), rat(1)]));
        assert_eq!(meet(&a, &param(&[3, 3], &[1, 1], None)), Meet::Empty);
        assert_eq!(meet(&a, &param(&[0, 1], &[1, 1], None)), Meet::Empty);
        assert_eq!(meet(&a, &param(&[5, 5], &[-1, -1], None)), Meet::Overlap(vec![rat(0), rat(0)]));
    }

    #[test]
    fn skew_lines_in_three_dimensions() {
        let a = param(&[0, 0, 0], &[1, 0, 0], None);
        let b = param(&[1, -1, 1], &[0, 1, 0], None);
        assert_eq!(meet(&a, &b), Meet::Empty);
        let b = param(&[1, -1, 0], &[0, 1, 0], None);
        assert_eq!(meet(&a, &b), Meet::Point(vec![rat(1), rat(0), rat(0)]));
    }

    #[test]
    fn degenerate_pieces() {
        let p = param(&[1, 1], &[0, 0], Some(1));
        assert_eq!(meet(&p, &param(&[0, 0], &[2, 2], Some(1))), Meet::Point(vec![rat(1), rat(1)]));
        assert_eq!(meet(&p, &param(&[0, 0], &[1, 0], None)), Meet::Empty);
    }

    fn vertex(x: Rat, y: Rat) -> CurveVertex {
        CurveVertex {
            point: vec![x, y],
            source: VertexSource::Skeleton(SkeletonPoint::Bridge { offset: rat(0) }),
        }
    }

    #[test]
    fn shared_endpoints_are_allowed() {
        // a closed triangle with one ray per corner
        let t = TropicalCurve {
            dim: 2,
            vertices: vec![vertex(rat(0), rat(0)), vertex(rat(1), rat(0)), vertex(rat(0), rat(1))],
            segments: vec![
                Segment { tail: 0, head: 1, slope: vec![1, 0], length: rat(1), kind: SegmentKind::Skeleton(0) },
                Segment { tail: 1, head: 2, slope: vec![-1, 1], length: rat(1), kind: SegmentKind::Skeleton(1) },
                Segment { tail: 2, head: 0, slope: vec![0, -1], length: rat(1), kind: SegmentKind::Skeleton(2) },
            ],
            rays: vec![
                Ray { base: 0, direction: vec![-1, -1], label: Label::P1 },
                Ray { base: 1, direction: vec![2, 1], label: Label::P2 },
                Ray { base: 2, direction: vec![1, 1], label: Label::P3 },
            ],
        };
        let r = check_faithful(&t);
        assert!(r.skeleton_faithful);
        assert!(r.extended_crossings.is_empty());
        assert_eq!(r.unbalanced, vec![1, 2]);
        assert!(!r.extended_faithful);

        let mut folded = t.clone();
        folded.segments[1] = Segment { tail: 1, head: 2, slope: vec![-2, 0], length: ratio(1, 2), kind: SegmentKind::Skeleton(1) };
        folded.vertices[2] = vertex(rat(0), rat(0));
        let r = check_faithful(&folded);
        assert!(!r.skeleton_faithful);
        assert!(r.skeleton_crossings.iter().any(|c| c.overlap));
    }
}
