use std::collections::VecDeque;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::skeleton_jacobian::SkeletonPoint;
use crate::valued_field::Rat;

use super::marked::{Label, LabelDivisor, MarkedSkeleton};
use super::slopes::SlopeSolution;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexSource {
    Skeleton(SkeletonPoint),
    /// Branch point where the rays of two coincident marks split.
    Branch(Label, Label),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveVertex {
    pub point: Vec<Rat>,
    pub source: VertexSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentKind {
    /// Image of the edge with this index in the subdivided graph.
    Skeleton(usize),
    Join,
}

/// A bounded edge; `head = tail + length · slope`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub tail: usize,
    pub head: usize,
    pub slope: Vec<i64>,
    pub length: Rat,
    pub kind: SegmentKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    pub base: usize,
    pub direction: Vec<i64>,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalCurve {
    pub dim: usize,
    pub vertices: Vec<CurveVertex>,
    pub segments: Vec<Segment>,
    pub rays: Vec<Ray>,
}

pub fn gcd_of(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, x| g.gcd(x))
}

impl TropicalCurve {
    /// Sum of outgoing slope vectors (segments and rays) at vertex `v`.
    pub fn outgoing_sum(&self, v: usize) -> Vec<i64> {
        let mut s = vec![0i64; self.dim];
        for seg in &self.segments {
            for k in 0..self.dim {
                if seg.tail == v {
                    s[k] += seg.slope[k];
                }
                if seg.head == v {
                    s[k] -= seg.slope[k];
                }
            }
        }
        for r in self.rays.iter().filter(|r| r.base == v) {
            for k in 0..self.dim {
                s[k] += r.direction[k];
            }
        }
        s
    }

    pub fn unbalanced_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.outgoing_sum(v).iter().any(|x| *x != 0))
            .collect()
    }

    pub fn is_balanced(&self) -> bool {
        self.unbalanced_vertices().is_empty()
    }

    pub fn ray(&self, label: Label) -> Option<&Ray> {
        self.rays.iter().find(|r| r.label == label)
    }

    pub fn vertex_of(&self, p: &SkeletonPoint) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v.source == VertexSource::Skeleton(p.clone()))
    }

    /// Slope vector of the skeleton segment from `tail` to `head`.
    pub fn slope_between(&self, tail: &SkeletonPoint, head: &SkeletonPoint) -> Option<&[i64]> {
        let (t, h) = (self.vertex_of(tail)?, self.vertex_of(head)?);
        self.segments
            .iter()
            .find(|s| s.tail == t && s.head == h && matches!(s.kind, SegmentKind::Skeleton(_)))
            .map(|s| s.slope.as_slice())
    }
}

impl fmt::Display for TropicalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pt = |p: &[Rat]| {
            p.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        };
        writeln!(f, "tropical curve in dimension {}", self.dim)?;
        for s in &self.segments {
            writeln!(
                f,
                "  segment ({}) -> ({}) slope {:?} length {}",
                pt(&self.vertices[s.tail].point),
                pt(&self.vertices[s.head].point),
                s.slope,
                s.length
            )?;
        }
        for r in &self.rays {
            writeln!(
                f,
                "  ray {} from ({}) direction {:?}",
                r.label,
                pt(&self.vertices[r.base].point),
                r.direction
            )?;
        }
        Ok(())
    }
}

fn to_int(x: &Rat) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::NonIntegral(format!("slope {x}")));
    }
    x.to_integer()
        .to_i64()
        .ok_or_else(|| Error::Precision(format!("slope {x} does not fit in i64")))
}

/// Assembles the image of the extended skeleton under the coordinate
/// functions whose divisors are `divisors` and whose slope fields are
/// `solutions` (same order, all on the same subdivided graph).
///
/// Each coordinate is integrated from the base vertex of cycle 1, where it
/// vanishes. Every label with nonzero multiplicities gets a ray in direction
/// minus its multiplicity vector. A join edge of positive length `ε` moves
/// the rays of its two labels to a branch vertex at distance `ε` along the
/// sum of their directions.
pub fn build_tropical_curve(
    msk: &MarkedSkeleton,
    divisors: &[LabelDivisor],
    solutions: &[SlopeSolution],
) -> Result<TropicalCurve> {
    let dim = solutions.len();
    if !(2..=3).contains(&dim) || divisors.len() != dim {
        return Err(Error::Precondition(format!(
            "need 2 or 3 coordinates with matching divisors, got {} and {}",
            dim,
            divisors.len()
        )));
    }
    let graph = &solutions[0].graph;
    if solutions.iter().any(|s| s.graph != *graph) {
        return Err(Error::Precondition(
            "slope fields live on different subdivisions".into(),
        ));
    }
    let slopes: Vec<Vec<i64>> = (0..graph.edges.len())
        .map(|e| solutions.iter().map(|s| to_int(&s.slopes[e])).collect())
        .collect::<Result<_>>()?;

    let n = graph.vertices.len();
    let mut values: Vec<Option<Vec<Rat>>> = vec![None; n];
    values[0] = Some(vec![Rat::zero(); dim]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let here = values[v].clone().expect("visited");
        for (e, edge) in graph.edges.iter().enumerate() {
            let step = |sign: i64| -> Vec<Rat> {
                (0..dim)
                    .map(|k| &here[k] + Rat::from_integer((sign * slopes[e][k]).into()) * &edge.length)
                    .collect()
            };
            let (other, value) = if edge.tail == v {
                (edge.head, step(1))
            } else if edge.head == v {
                (edge.tail, step(-1))
            } else {
                continue;
            };
            match &values[other] {
                None => {
                    values[other] = Some(value);
                    queue.push_back(other);
                }
                Some(existing) if *existing != value => {
                    return Err(Error::Inconsistent(format!(
                        "slope field does not close up at {}",
                        graph.vertices[other]
                    )));
                }
                Some(_) => {}
            }
        }
    }

    let mut curve = TropicalCurve {
        dim,
        vertices: Vec::with_capacity(n),
        segments: Vec::new(),
        rays: Vec::new(),
    };
    for (p, val) in graph.vertices.iter().zip(values) {
        curve.vertices.push(CurveVertex {
            point: val.ok_or_else(|| Error::Inconsistent(format!("{p} is unreachable")))?,
            source: VertexSource::Skeleton(p.clone()),
        });
    }
    for (e, edge) in graph.edges.iter().enumerate() {
        curve.segments.push(Segment {
            tail: edge.tail,
            head: edge.head,
            slope: slopes[e].clone(),
            length: edge.length.clone(),
            kind: SegmentKind::Skeleton(e),
        });
    }

    let direction = |l: Label| -> Vec<i64> { divisors.iter().map(|d| -d.multiplicity(l)).collect() };
    let mut base_of = std::collections::BTreeMap::new();
    for (l, p) in &msk.marks {
        let v = graph
            .vertex_index(p)
            .ok_or_else(|| Error::Precondition(format!("{l} is not a vertex of the subdivision")))?;
        base_of.insert(*l, v);
    }
    for j in msk.join_edges.iter().filter(|j| j.length.is_positive()) {
        let (a, b) = j.labels;
        let (va, vb) = (base_of.get(&a), base_of.get(&b));
        if va.is_none() || va != vb {
            return Err(Error::Precondition(format!(
                "join edge needs coincident marks, {a} and {b} differ"
            )));
        }
        let from = *va.expect("checked");
        let sum: Vec<i64> = direction(a).iter().zip(direction(b)).map(|(x, y)| x + y).collect();
        if sum.iter().all(|x| *x == 0) {
            return Err(Error::Precondition(format!(
                "rays of {a} and {b} cancel, join edge has no direction"
            )));
        }
        let point = (0..dim)
            .map(|k| &curve.vertices[from].point[k] + Rat::from_integer(sum[k].into()) * &j.length)
            .collect();
        curve.vertices.push(CurveVertex {
            point,
            source: VertexSource::Branch(a, b),
        });
        let branch = curve.vertices.len() - 1;
        curve.segments.push(Segment {
            tail: from,
            head: branch,
            slope: sum,
            length: j.length.clone(),
            kind: SegmentKind::Join,
        });
        base_of.insert(a, branch);
        base_of.insert(b, branch);
    }
    for (l, v) in base_of {
        let d = direction(l);
        if d.iter().any(|x| *x != 0) {
            curve.rays.push(Ray {
                base: v,
                direction: d,
                label: l,
            });
        }
    }
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faithful_trop::marked::{
        build_coordinate_functions, place_marked_points, JoinEdge,
    };
    use crate::faithful_trop::slopes::solve_slope_field;
    use crate::moebius_schottky::{log_q, reference, SchottkyRank2};
    use crate::skeleton_jacobian::{build_skeleton, TropLattice};
    use crate::valued_field::{rat, ratio};

    fn curve(s: SchottkyRank2, dim: usize, joins: Vec<JoinEdge>) -> (MarkedSkeleton, TropicalCurve) {
        let q = log_q(&s).unwrap();
        let k = build_skeleton(&s, &q).unwrap();
        let l = TropLattice::from_period_matrix(&q).unwrap();
        let mut c = build_coordinate_functions(&place_marked_points(&k).unwrap(), &l).unwrap();
        c.marked.join_edges = joins;
        let divs = &c.divisors[..dim];
        let sols: Vec<_> = divs
            .iter()
            .map(|d| solve_slope_field(&k, c.marked.marks.values(), &c.marked.divisor(d).unwrap()).unwrap())
            .collect();
        let t = build_tropical_curve(&c.marked, divs, &sols).unwrap();
        (c.marked, t)
    }

    fn coords(t: &TropicalCurve, m: &MarkedSkeleton, l: Label) -> Vec<Rat> {
        t.vertices[t.vertex_of(&m.marks[&l]).unwrap()].point.clone()
    }

    #[test]
    fn shared_edge_images_and_rays() {
        let (m, t) = curve(reference::se1(), 2, vec![]);
        assert!(t.is_balanced());
        assert_eq!(coords(&t, &m, Label::P1), vec![ratio(1, 2), rat(0)]);
        assert_eq!(coords(&t, &m, Label::T2), vec![ratio(-1, 2), ratio(-3, 2)]);
        assert_eq!(coords(&t, &m, Label::S3), vec![rat(-1), ratio(-3, 2)]);
        assert_eq!(coords(&t, &m, Label::S2), vec![rat(-2), rat(0)]);
        assert_eq!(coords(&t, &m, Label::T3), vec![rat(-2), rat(-1)]);
        let w0 = t.vertex_of(&SkeletonPoint::Shared { offset: rat(0) }).unwrap();
        assert_eq!(t.vertices[w0].point, vec![rat(-1), rat(-1)]);
        assert_eq!(t.ray(Label::P1).unwrap().direction, vec![1, 1]);
        assert_eq!(t.ray(Label::S3).unwrap().direction, vec![-1, 0]);
        assert!(t.ray(Label::U).is_none());
        assert_eq!(t.rays.len(), 10);
    }

    #[test]
    fn three_dimensional_curve_is_balanced() {
        let (_, t) = curve(reference::se1(), 3, vec![]);
        assert!(t.is_balanced());
        assert_eq!(t.ray(Label::S3).unwrap().direction, vec![-1, 0, 1]);
        assert_eq!(t.ray(Label::U).unwrap().direction, vec![0, 0, -1]);
    }

    #[test]
    fn join_edge_carries_the_summed_direction() {
        let j = JoinEdge { labels: (Label::S1, Label::T3), length: ratio(1, 2) };
        let (m, t) = curve(reference::se1(), 2, vec![j]);
        assert!(t.is_balanced());
        let seg = t.segments.iter().find(|s| s.kind == SegmentKind::Join).unwrap();
        assert_eq!(seg.slope, vec![-1, -1]);
        let r = t.ray(Label::S1).unwrap();
        assert_eq!(t.vertices[r.base].point, vec![ratio(-5, 2), ratio(-3, 2)]);
        assert_eq!(t.vertices[r.base].source, VertexSource::Branch(Label::S1, Label::T3));
        assert_ne!(coords(&t, &m, Label::S1), t.vertices[r.base].point);
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_of(&[2, -4]), 2);
        assert_eq!(gcd_of(&[0, -1]), 1);
        assert_eq!(gcd_of(&[0, 0]), 0);
    }
}
