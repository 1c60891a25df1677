use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::skeleton_jacobian::{MetricSkeleton, SkeletonKind, SkeletonPoint};
use crate::valued_field::Rat;

use super::linalg::solve_exact;
use super::marked::Divisor;

/// The edges of the unsubdivided skeleton.
///
/// `Free(i)` is the part of cycle `i` not shared with the other cycle, run
/// from the base vertex; `SharedSegment` runs from `w0` to `v0`; `Bridge`
/// from `x1` to `x2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseEdge {
    Free(usize),
    SharedSegment,
    Bridge,
}

impl BaseEdge {
    /// Cycles whose closure equation runs through this edge (with
    /// orientation +1).
    pub fn cycles(self) -> &'static [usize] {
        match self {
            BaseEdge::Free(0) => &[0],
            BaseEdge::Free(_) => &[1],
            BaseEdge::SharedSegment => &[0, 1],
            BaseEdge::Bridge => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub tail: usize,
    pub head: usize,
    pub length: Rat,
    pub base: BaseEdge,
}

/// The skeleton subdivided at a finite set of points. Vertex 0 is the base
/// vertex of cycle 1 (`v0` or `x1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdividedGraph {
    pub skel: MetricSkeleton,
    pub vertices: Vec<SkeletonPoint>,
    pub edges: Vec<GraphEdge>,
}

impl SubdividedGraph {
    pub fn new<'a>(
        skel: &MetricSkeleton,
        points: impl IntoIterator<Item = &'a SkeletonPoint>,
    ) -> Result<Self> {
        let base_edges: Vec<BaseEdge> = match skel.kind {
            SkeletonKind::SharedEdge => {
                vec![BaseEdge::Free(0), BaseEdge::Free(1), BaseEdge::SharedSegment]
            }
            SkeletonKind::ConnectingEdge => {
                vec![BaseEdge::Free(0), BaseEdge::Free(1), BaseEdge::Bridge]
            }
            SkeletonKind::ConnectingPoint => vec![BaseEdge::Free(0), BaseEdge::Free(1)],
        };
        let mut interior: BTreeMap<BaseEdge, BTreeSet<Rat>> =
            base_edges.iter().map(|b| (*b, BTreeSet::new())).collect();
        for p in points {
            if let Some((b, t)) = interior_parameter(skel, &skel.canonical(p)?) {
                interior
                    .get_mut(&b)
                    .ok_or_else(|| Error::Inconsistent(format!("{p} is on no edge")))?
                    .insert(t);
            }
        }

        let mut g = SubdividedGraph {
            skel: skel.clone(),
            vertices: Vec::new(),
            edges: Vec::new(),
        };
        let mut index: BTreeMap<SkeletonPoint, usize> = BTreeMap::new();
        let mut vertex = |g: &mut SubdividedGraph, p: SkeletonPoint| -> usize {
            *index.entry(p.clone()).or_insert_with(|| {
                g.vertices.push(p);
                g.vertices.len() - 1
            })
        };
        vertex(&mut g, skel.base_vertex(0));
        vertex(&mut g, skel.base_vertex(1));
        for b in base_edges {
            let end = edge_length(skel, b);
            let mut params: Vec<Rat> = vec![Rat::zero()];
            params.extend(interior[&b].iter().cloned());
            params.push(end);
            let ids: Vec<usize> = params
                .iter()
                .map(|t| vertex(&mut g, point_at(skel, b, t)))
                .collect();
            for k in 0..params.len() - 1 {
                g.edges.push(GraphEdge {
                    tail: ids[k],
                    head: ids[k + 1],
                    length: &params[k + 1] - &params[k],
                    base: b,
                });
            }
        }
        Ok(g)
    }

    pub fn vertex_index(&self, p: &SkeletonPoint) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }

    /// Index of the edge running from `tail` to `head`, if any.
    pub fn edge_between(&self, tail: &SkeletonPoint, head: &SkeletonPoint) -> Option<usize> {
        let (t, h) = (self.vertex_index(tail)?, self.vertex_index(head)?);
        self.edges.iter().position(|e| e.tail == t && e.head == h)
    }

    /// True for the vertices of the unsubdivided skeleton.
    pub fn is_skeleton_vertex(&self, v: usize) -> bool {
        let p = &self.vertices[v];
        *p == self.skel.base_vertex(0)
            || *p == self.skel.base_vertex(1)
            || (self.skel.is_shared() && *p == SkeletonPoint::Shared { offset: Rat::zero() })
    }
}

fn edge_length(skel: &MetricSkeleton, b: BaseEdge) -> Rat {
    match b {
        BaseEdge::Free(i) => skel.free_length(i),
        BaseEdge::SharedSegment | BaseEdge::Bridge => skel.ell.clone(),
    }
}

fn point_at(skel: &MetricSkeleton, b: BaseEdge, t: &Rat) -> SkeletonPoint {
    match b {
        BaseEdge::Free(i) => {
            if t.is_zero() {
                skel.base_vertex(i)
            } else if *t == skel.free_length(i) {
                if skel.is_shared() {
                    SkeletonPoint::Shared { offset: Rat::zero() }
                } else {
                    skel.base_vertex(i)
                }
            } else {
                SkeletonPoint::Cycle { cycle: i, arc: t.clone() }
            }
        }
        BaseEdge::SharedSegment => SkeletonPoint::Shared { offset: t.clone() },
        BaseEdge::Bridge => SkeletonPoint::Bridge { offset: t.clone() },
    }
}

fn interior_parameter(skel: &MetricSkeleton, p: &SkeletonPoint) -> Option<(BaseEdge, Rat)> {
    match p {
        SkeletonPoint::Cycle { cycle, arc } => Some((BaseEdge::Free(*cycle), arc.clone())),
        SkeletonPoint::Shared { offset } if offset.is_zero() || *offset == skel.ell => None,
        SkeletonPoint::Shared { offset } => Some((BaseEdge::SharedSegment, offset.clone())),
        SkeletonPoint::Bridge { offset } if offset.is_zero() || *offset == skel.ell => None,
        SkeletonPoint::Bridge { offset } => Some((BaseEdge::Bridge, offset.clone())),
    }
}

/// Slopes of one coordinate function along the oriented edges of a
/// subdivided graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeSolution {
    pub graph: SubdividedGraph,
    pub divisor: Divisor,
    pub slopes: Vec<Rat>,
    pub integral: bool,
}

impl SlopeSolution {
    /// Sum of the slopes leaving vertex `v` along the graph edges.
    pub fn outgoing_sum(&self, v: usize) -> Rat {
        let mut s = Rat::zero();
        for (e, m) in self.graph.edges.iter().zip(&self.slopes) {
            if e.tail == v {
                s += m;
            }
            if e.head == v {
                s -= m;
            }
        }
        s
    }

    /// `Σ slope · length` around cycle `i`.
    pub fn cycle_sum(&self, i: usize) -> Rat {
        self.graph
            .edges
            .iter()
            .zip(&self.slopes)
            .filter(|(e, _)| e.base.cycles().contains(&i))
            .map(|(e, m)| m * &e.length)
            .sum()
    }

    /// True iff the outgoing slopes at every vertex add up to the divisor's
    /// multiplicity there and both cycle sums vanish.
    pub fn is_harmonic(&self) -> bool {
        (0..self.graph.vertices.len()).all(|v| {
            self.outgoing_sum(v)
                == Rat::from_integer(self.divisor.multiplicity(&self.graph.vertices[v]).into())
        }) && (0..2).all(|i| self.cycle_sum(i).is_zero())
    }

    pub fn slope(&self, tail: &SkeletonPoint, head: &SkeletonPoint) -> Option<&Rat> {
        self.graph.edge_between(tail, head).map(|e| &self.slopes[e])
    }
}

/// Solves for the slopes of `log|f|` on the skeleton subdivided at
/// `points` and at the support of `div`, where `div` is the divisor of
/// `f`. The outgoing slopes at a vertex add up to the multiplicity there
/// and the function closes up around both cycles.
pub fn solve_slope_field<'a>(
    skel: &MetricSkeleton,
    points: impl IntoIterator<Item = &'a SkeletonPoint>,
    div: &'a Divisor,
) -> Result<SlopeSolution> {
    if div.degree() != 0 {
        return Err(Error::Precondition(format!(
            "divisor has degree {}",
            div.degree()
        )));
    }
    let graph = SubdividedGraph::new(skel, points.into_iter().chain(div.terms.keys()))?;
    let mut canonical = BTreeMap::new();
    for (p, m) in &div.terms {
        *canonical.entry(skel.canonical(p)?).or_insert(0) += *m;
    }
    let div = Divisor::new(canonical);

    let n = graph.edges.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (v, p) in graph.vertices.iter().enumerate() {
        let mut row = vec![Rat::zero(); n];
        for (k, e) in graph.edges.iter().enumerate() {
            if e.tail == v {
                row[k] += Rat::one();
            }
            if e.head == v {
                row[k] -= Rat::one();
            }
        }
        rows.push(row);
        rhs.push(Rat::from_integer(div.multiplicity(p).into()));
    }
    for i in 0..2 {
        let row = graph
            .edges
            .iter()
            .map(|e| {
                if e.base.cycles().contains(&i) {
                    e.length.clone()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        rows.push(row);
        rhs.push(Rat::zero());
    }
    let slopes = solve_exact(rows, rhs)?;
    let integral = slopes.iter().all(Rat::is_integer);
    Ok(SlopeSolution {
        graph,
        divisor: div,
        slopes,
        integral,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faithful_trop::marked::{divisor_f, divisor_g, place_marked_points, Label};
    use crate::moebius_schottky::{log_q, reference};
    use crate::skeleton_jacobian::build_skeleton;
    use crate::valued_field::{rat, ratio};

    fn se1() -> super::super::marked::MarkedSkeleton {
        let s = reference::se1();
        let k = build_skeleton(&s, &log_q(&s).unwrap()).unwrap();
        place_marked_points(&k).unwrap()
    }

    fn chain_slopes(sol: &SlopeSolution, chain: &[SkeletonPoint]) -> Vec<Rat> {
        chain
            .windows(2)
            .map(|w| sol.slope(&w[0], &w[1]).expect("edge").clone())
            .collect()
    }

    #[test]
    fn shared_edge_slopes_for_f_and_g() {
        let m = se1();
        let v0 = m.skel.base_vertex(0);
        let w0 = SkeletonPoint::Shared { offset: rat(0) };
        let at = |l: Label| m.marks[&l].clone();
        let c1 = vec![v0.clone(), at(Label::P1), at(Label::P2), at(Label::T2), at(Label::T1), w0.clone()];
        let c2 = vec![v0.clone(), at(Label::P3), at(Label::P4), at(Label::S2), at(Label::S1), w0.clone()];
        let f = solve_slope_field(&m.skel, m.marks.values(), &m.divisor(&divisor_f()).unwrap()).unwrap();
        assert!(f.integral && f.is_harmonic());
        assert_eq!(chain_slopes(&f, &c1), [1, 0, -1, -1, 0].map(rat));
        assert_eq!(chain_slopes(&f, &c2), [0, -1, -1, 0, 1].map(rat));
        assert_eq!(f.slope(&w0, &v0), Some(&rat(1)));
        let g = solve_slope_field(&m.skel, m.marks.values(), &m.divisor(&divisor_g()).unwrap()).unwrap();
        assert!(g.integral && g.is_harmonic());
        assert_eq!(chain_slopes(&g, &c1), [0, -1, -1, 0, 1].map(rat));
        assert_eq!(chain_slopes(&g, &c2), [1, 0, -1, -1, 0].map(rat));
        assert_eq!(g.slope(&w0, &v0), Some(&rat(1)));
    }

    #[test]
    fn zero_divisor_gives_zero_slopes() {
        let m = se1();
        let sol = solve_slope_field(&m.skel, m.marks.values(), &Divisor::default()).unwrap();
        assert!(sol.slopes.iter().all(Zero::is_zero));
        assert!(sol.integral);
    }

    #[test]
    fn non_principal_divisor_is_flagged() {
        let m = se1();
        let d = m.divisor(&super::super::marked::LabelDivisor::from_pairs(&[(Label::P1, 1), (Label::P2, -1)])).unwrap();
        let sol = solve_slope_field(&m.skel, m.marks.values(), &d).unwrap();
        assert!(!sol.integral);
        assert!(sol.is_harmonic());
    }

    #[test]
    fn degree_must_vanish() {
        let m = se1();
        let d = Divisor::new([(SkeletonPoint::Cycle { cycle: 0, arc: ratio(1, 2) }, 1)].into());
        assert!(matches!(
            solve_slope_field(&m.skel, m.marks.values(), &d),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn connecting_edge_bridge_slope() {
        let s = reference::ce1();
        let k = build_skeleton(&s, &log_q(&s).unwrap()).unwrap();
        let m = place_marked_points(&k).unwrap();
        let x1 = k.base_vertex(0);
        let x2 = k.base_vertex(1);
        let f = solve_slope_field(&k, m.marks.values(), &m.divisor(&divisor_f()).unwrap()).unwrap();
        let g = solve_slope_field(&k, m.marks.values(), &m.divisor(&divisor_g()).unwrap()).unwrap();
        assert!(f.integral && g.integral);
        assert_eq!(f.slope(&x1, &x2), Some(&rat(-1)));
        assert_eq!(g.slope(&x1, &x2), Some(&rat(1)));
    }
}
