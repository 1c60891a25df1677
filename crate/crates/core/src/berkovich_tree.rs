//! Type-2 points `ζ(a, r)` of the Berkovich projective line, i.e. closed
//! discs up to the choice of center, with joins, paths and the path metric.
//! All radii are in log scale.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::valued_field::{LogAbs, PuiseuxNumber, Rat};

#[derive(Debug, Clone)]
pub struct TypeTwoPoint {
    pub center: PuiseuxNumber,
    pub log_radius: Rat,
}

impl TypeTwoPoint {
    pub fn new(center: PuiseuxNumber, log_radius: Rat) -> Self {
        TypeTwoPoint { center, log_radius }
    }

    /// `ζ(a, r) = ζ(b, s)` iff `r = s` and `log|a - b| <= r`.
    pub fn same_point(&self, other: &Self) -> Result<bool> {
        if self.log_radius != other.log_radius {
            return Ok(false);
        }
        (&self.center - &other.center).log_abs_at_most(&self.log_radius)
    }

    /// The point on the segment from `self` towards infinity at log-radius
    /// `r` (must be at least the current radius).
    pub fn raise_to(&self, r: &Rat) -> Self {
        debug_assert!(*r >= self.log_radius);
        TypeTwoPoint::new(self.center.clone(), r.clone())
    }
}

/// Point equality as discs; centers whose difference is known too coarsely
/// to decide compare unequal.
impl PartialEq for TypeTwoPoint {
    fn eq(&self, other: &Self) -> bool {
        self.same_point(other).unwrap_or(false)
    }
}

impl fmt::Display for TypeTwoPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta({}, {})", self.center, self.log_radius)
    }
}

fn center_distance(x: &TypeTwoPoint, y: &TypeTwoPoint) -> LogAbs {
    (&x.center - &y.center).log_abs()
}

/// `R = max(r, s, log|a - b|)`.
pub fn join_radius(x: &TypeTwoPoint, y: &TypeTwoPoint) -> Rat {
    let r = std::cmp::max(&x.log_radius, &y.log_radius).clone();
    match center_distance(x, y) {
        LogAbs::Finite(d) if d > r => d,
        _ => r,
    }
}

/// Smallest point above both: `ζ(a, R)`.
pub fn join(x: &TypeTwoPoint, y: &TypeTwoPoint) -> TypeTwoPoint {
    x.raise_to(&join_radius(x, y))
}

/// `ρ(x, y) = 2R - r - s`.
pub fn path_distance(x: &TypeTwoPoint, y: &TypeTwoPoint) -> Rat {
    let big = join_radius(x, y);
    &big + &big - &x.log_radius - &y.log_radius
}

/// The geodesic from `start` to `end`: up from `start` to the join, then
/// down to `end`. Either half may be degenerate.
#[derive(Debug, Clone, PartialEq)]
pub struct TreePath {
    pub start: TypeTwoPoint,
    pub end: TypeTwoPoint,
    pub top_radius: Rat,
}

impl TreePath {
    pub fn rising(&self) -> (TypeTwoPoint, TypeTwoPoint) {
        (self.start.clone(), self.start.raise_to(&self.top_radius))
    }

    pub fn falling(&self) -> (TypeTwoPoint, TypeTwoPoint) {
        (self.end.raise_to(&self.top_radius), self.end.clone())
    }

    pub fn top(&self) -> TypeTwoPoint {
        self.start.raise_to(&self.top_radius)
    }

    pub fn length(&self) -> Rat {
        path_distance(&self.start, &self.end)
    }

    /// Distance from `p` to the nearest point of the path.
    pub fn distance_to(&self, p: &TypeTwoPoint) -> Rat {
        (path_distance(p, &self.start) + path_distance(p, &self.end) - self.length())
            / Rat::from_integer(2.into())
    }

    /// Nearest point of the path to `p`.
    pub fn project(&self, p: &TypeTwoPoint) -> TypeTwoPoint {
        median(p, &self.start, &self.end)
    }

    pub fn contains(&self, p: &TypeTwoPoint) -> bool {
        self.distance_to(p).is_zero()
    }
}

pub fn path(x: &TypeTwoPoint, y: &TypeTwoPoint) -> TreePath {
    TreePath {
        start: x.clone(),
        end: y.clone(),
        top_radius: join_radius(x, y),
    }
}

/// The unique point on all three geodesics between `x`, `y`, `z`: the
/// pairwise join of smallest radius.
pub fn median(x: &TypeTwoPoint, y: &TypeTwoPoint, z: &TypeTwoPoint) -> TypeTwoPoint {
    let candidates = [join(x, y), join(y, z), join(x, z)];
    candidates
        .into_iter()
        .min_by(|a, b| a.log_radius.cmp(&b.log_radius))
        .expect("three candidates")
}

/// Relative position of two paths.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentGap {
    /// Minimal distance between a point of the first and a point of the second path.
    pub distance: Rat,
    /// Length of the common subsegment (0 unless the paths overlap).
    pub overlap: Rat,
    /// Nearest point on the first path; for overlapping paths, one end of
    /// the common subsegment.
    pub near: TypeTwoPoint,
    /// Nearest point on the second path; for overlapping paths, the other
    /// end of the common subsegment.
    pub far: TypeTwoPoint,
}

impl SegmentGap {
    pub fn meet_in_point(&self) -> bool {
        self.distance.is_zero() && self.overlap.is_zero()
    }
}

/// Gap between two paths from the pairwise distances of their endpoints.
pub fn segment_gap(p1: &TreePath, p2: &TreePath) -> SegmentGap {
    let twice = p1.distance_to(&p2.start) + p1.distance_to(&p2.end) - p2.length();
    let g = twice / Rat::from_integer(2.into());
    if g.is_positive() {
        SegmentGap {
            distance: g,
            overlap: Rat::zero(),
            near: p1.project(&p2.start),
            far: p2.project(&p1.start),
        }
    } else {
        SegmentGap {
            distance: Rat::zero(),
            overlap: -(g.clone() + g),
            near: p1.project(&p2.start),
            far: p1.project(&p2.end),
        }
    }
}
