use std::fmt;

use num_traits::{Signed, Zero};

use crate::berkovich_tree::{path, segment_gap, SegmentGap, TreePath, TypeTwoPoint};
use crate::error::{Error, Result};
use crate::moebius_schottky::{PeriodMatrix, SchottkyRank2};
use crate::valued_field::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SkeletonKind {
    SharedEdge,
    ConnectingEdge,
    ConnectingPoint,
}

impl fmt::Display for SkeletonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SkeletonKind::SharedEdge => "shared-edge",
            SkeletonKind::ConnectingEdge => "connecting-edge",
            SkeletonKind::ConnectingPoint => "connecting-point",
        })
    }
}

/// Genus-2 metric graph: two cycles of lengths `lengths[0]`, `lengths[1]`
/// that share an edge of length `ell`, are joined by a bridge of length
/// `ell`, or meet in one point (`ell = 0`).
///
/// Reference vertices: in the shared-edge case `w0` and `v0` are the ends of
/// the shared edge; otherwise the bridge runs from `x1` on cycle 1 to `x2` on
/// cycle 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricSkeleton {
    pub kind: SkeletonKind,
    pub lengths: [Rat; 2],
    pub ell: Rat,
}

/// A point of the skeleton in canonical form.
///
/// `Cycle` arcs are measured from the base vertex (`v0`, or the bridge end
/// on that cycle) and lie strictly inside the part of the cycle not shared
/// with the other one. `Shared { offset }` runs from `w0` (offset 0) to `v0`
/// (offset `ell`); `Bridge { offset }` from `x1` (0) to `x2` (`ell`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SkeletonPoint {
    Cycle { cycle: usize, arc: Rat },
    Shared { offset: Rat },
    Bridge { offset: Rat },
}

impl fmt::Display for SkeletonPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkeletonPoint::Cycle { cycle, arc } => write!(f, "cycle {} arc {}", cycle + 1, arc),
            SkeletonPoint::Shared { offset } => write!(f, "shared edge offset {offset}"),
            SkeletonPoint::Bridge { offset } => write!(f, "bridge offset {offset}"),
        }
    }
}

impl MetricSkeleton {
    pub fn new(kind: SkeletonKind, lengths: [Rat; 2], ell: Rat) -> Result<Self> {
        if !lengths[0].is_positive() || !lengths[1].is_positive() {
            return Err(Error::Inconsistent("cycle lengths must be positive".into()));
        }
        match kind {
            SkeletonKind::SharedEdge => {
                if !ell.is_positive() || ell >= lengths[0] || ell >= lengths[1] {
                    return Err(Error::Inconsistent(format!(
                        "shared edge of length {ell} does not fit cycles {} and {}",
                        lengths[0], lengths[1]
                    )));
                }
            }
            SkeletonKind::ConnectingEdge => {
                if !ell.is_positive() {
                    return Err(Error::Inconsistent("bridge length must be positive".into()));
                }
            }
            SkeletonKind::ConnectingPoint => {
                if !ell.is_zero() {
                    return Err(Error::Inconsistent(
                        "connecting point skeleton has no bridge".into(),
                    ));
                }
            }
        }
        Ok(MetricSkeleton { kind, lengths, ell })
    }

    pub fn is_shared(&self) -> bool {
        self.kind == SkeletonKind::SharedEdge
    }

    /// Length of the part of cycle `i` not shared with the other cycle.
    pub fn free_length(&self, i: usize) -> Rat {
        if self.is_shared() {
            &self.lengths[i] - &self.ell
        } else {
            self.lengths[i].clone()
        }
    }

    pub fn total_length(&self) -> Rat {
        self.free_length(0) + self.free_length(1) + &self.ell
    }

    /// The point at arc length `arc` (taken modulo the cycle length) along
    /// cycle `i`, starting at the base vertex and running first through the
    /// free part, then back along the shared edge.
    pub fn cycle_point(&self, i: usize, arc: &Rat) -> SkeletonPoint {
        let len = &self.lengths[i];
        let a = modulo(arc, len);
        let free = self.free_length(i);
        if a.is_zero() {
            return self.base_vertex(i);
        }
        if a < free {
            return SkeletonPoint::Cycle { cycle: i, arc: a };
        }
        // only reachable with a shared edge
        SkeletonPoint::Shared { offset: a - free }
    }

    /// `v0` for a shared edge, otherwise the bridge end on cycle `i`.
    pub fn base_vertex(&self, i: usize) -> SkeletonPoint {
        match self.kind {
            SkeletonKind::SharedEdge => SkeletonPoint::Shared {
                offset: self.ell.clone(),
            },
            _ if i == 0 => SkeletonPoint::Bridge { offset: Rat::zero() },
            _ => SkeletonPoint::Bridge {
                offset: self.ell.clone(),
            },
        }
    }

    /// Validates and canonicalizes a point given in any form.
    pub fn canonical(&self, p: &SkeletonPoint) -> Result<SkeletonPoint> {
        match p {
            SkeletonPoint::Cycle { cycle, arc } => {
                if *cycle > 1 {
                    return Err(Error::Precondition(format!("no cycle {}", cycle + 1)));
                }
                if arc.is_negative() || *arc > self.lengths[*cycle] {
                    return Err(Error::Precondition(format!(
                        "arc {arc} outside [0, {}]",
                        self.lengths[*cycle]
                    )));
                }
                Ok(self.cycle_point(*cycle, arc))
            }
            SkeletonPoint::Shared { offset } => {
                if !self.is_shared() || offset.is_negative() || *offset > self.ell {
                    return Err(Error::Precondition(format!("no shared-edge point {offset}")));
                }
                Ok(p.clone())
            }
            SkeletonPoint::Bridge { offset } => {
                if self.is_shared() || offset.is_negative() || *offset > self.ell {
                    return Err(Error::Precondition(format!("no bridge point {offset}")));
                }
                Ok(p.clone())
            }
        }
    }

    /// Grid of points with the given step on every edge (including vertices).
    pub fn grid(&self, step: &Rat) -> Vec<SkeletonPoint> {
        let mut out = Vec::new();
        for i in 0..2 {
            let free = self.free_length(i);
            let mut a = step.clone();
            while a < free {
                out.push(SkeletonPoint::Cycle { cycle: i, arc: a.clone() });
                a += step;
            }
        }
        let mut s = Rat::zero();
        while s <= self.ell {
            out.push(if self.is_shared() {
                SkeletonPoint::Shared { offset: s.clone() }
            } else {
                SkeletonPoint::Bridge { offset: s.clone() }
            });
            s += step;
        }
        out
    }
}

fn modulo(x: &Rat, m: &Rat) -> Rat {
    let q = (x / m).floor();
    x - q * m
}

/// The two tree paths `[ζ(b_i, r_i+), ζ(c_i, r_i-)]` whose images are the cycles.
pub fn cycle_paths(s: &SchottkyRank2) -> [TreePath; 2] {
    [0, 1].map(|i| {
        path(
            &TypeTwoPoint::new(s.b[i].center.clone(), s.b[i].log_radius.clone()),
            &TypeTwoPoint::new(s.c[i].center.clone(), s.c[i].log_radius.clone()),
        )
    })
}

/// Relative position of the two cycle paths.
pub fn cycle_gap(s: &SchottkyRank2) -> SegmentGap {
    let [p1, p2] = cycle_paths(s);
    segment_gap(&p1, &p2)
}

/// Classifies the skeleton from the period matrix, cross-checked against
/// the tree geometry of the fundamental domain.
pub fn build_skeleton(s: &SchottkyRank2, q: &PeriodMatrix) -> Result<MetricSkeleton> {
    let paths = cycle_paths(s);
    for (i, p) in paths.iter().enumerate() {
        if p.length() != q.cycle_length(i) {
            return Err(Error::Inconsistent(format!(
                "cycle {} has tree length {} but -log|q{}{}| = {}",
                i + 1,
                p.length(),
                i + 1,
                i + 1,
                q.cycle_length(i)
            )));
        }
    }
    let gap = segment_gap(&paths[0], &paths[1]);
    let lengths = [q.cycle_length(0), q.cycle_length(1)];
    let overlap = q.overlap();
    if !overlap.is_zero() {
        if gap.overlap != overlap {
            return Err(Error::Inconsistent(format!(
                "tree overlap {} differs from |log|q12|| = {overlap}",
                gap.overlap
            )));
        }
        return MetricSkeleton::new(SkeletonKind::SharedEdge, lengths, overlap);
    }
    if gap.overlap.is_positive() {
        return Err(Error::Inconsistent(format!(
            "log|q12| = 0 but the cycle paths overlap in length {}",
            gap.overlap
        )));
    }
    if gap.distance.is_positive() {
        MetricSkeleton::new(SkeletonKind::ConnectingEdge, lengths, gap.distance)
    } else {
        MetricSkeleton::new(SkeletonKind::ConnectingPoint, lengths, Rat::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius_schottky::{log_q, reference};
    use crate::valued_field::{rat, ratio};

    fn skel(s: &SchottkyRank2) -> MetricSkeleton {
        build_skeleton(s, &log_q(s).unwrap()).unwrap()
    }

    #[test]
    fn reference_skeletons() {
        let k = skel(&reference::se1());
        assert_eq!(k.kind, SkeletonKind::SharedEdge);
        assert_eq!(k.lengths, [rat(4), rat(6)]);
        assert_eq!(k.ell, rat(1));

        let k = skel(&reference::ce1());
        assert_eq!(k.kind, SkeletonKind::ConnectingEdge);
        assert_eq!(k.lengths, [rat(3), rat(4)]);
        assert_eq!(k.ell, rat(2));

        let k = skel(&reference::cp1());
        assert_eq!(k.kind, SkeletonKind::ConnectingPoint);
        assert_eq!(k.lengths, [rat(5), rat(4)]);
        assert_eq!(k.ell, rat(0));
    }

    #[test]
    fn inconsistent_period_matrix_is_rejected() {
        let s = reference::se1();
        let q = PeriodMatrix::new([[rat(-4), rat(-2)], [rat(-2), rat(-6)]]).unwrap();
        assert!(matches!(build_skeleton(&s, &q), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn cycle_points_are_canonical() {
        let k = skel(&reference::se1());
        assert_eq!(k.cycle_point(0, &rat(0)), SkeletonPoint::Shared { offset: rat(1) });
        assert_eq!(k.cycle_point(0, &rat(3)), SkeletonPoint::Shared { offset: rat(0) });
        assert_eq!(k.cycle_point(1, &rat(5)), SkeletonPoint::Shared { offset: rat(0) });
        assert_eq!(
            k.cycle_point(0, &ratio(7, 2)),
            SkeletonPoint::Shared { offset: ratio(1, 2) }
        );
        assert_eq!(k.cycle_point(0, &rat(4)), k.cycle_point(1, &rat(0)));
        assert_eq!(
            k.cycle_point(1, &rat(2)),
            SkeletonPoint::Cycle { cycle: 1, arc: rat(2) }
        );

        let k = skel(&reference::ce1());
        assert_eq!(k.cycle_point(0, &rat(3)), SkeletonPoint::Bridge { offset: rat(0) });
        assert_eq!(k.cycle_point(1, &rat(0)), SkeletonPoint::Bridge { offset: rat(2) });
    }

    #[test]
    fn grid_counts() {
        let k = skel(&reference::se1());
        // 47 + 79 interior cycle points plus 17 on the shared edge
        assert_eq!(k.grid(&ratio(1, 16)).len(), 47 + 79 + 17);
        assert_eq!(k.total_length(), rat(9));
    }
}
