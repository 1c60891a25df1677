use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::moebius_schottky::PeriodMatrix;
use crate::skeleton_jacobian::{
    mu_lift, two_summand_decomposition, MetricSkeleton, SkeletonPoint, TropLattice,
};
use crate::valued_field::{ratio, Rat};

/// Names of the marked points on the skeleton. `U` and `V` are the extra
/// zeros of the third coordinate function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    P1,
    P2,
    P3,
    P4,
    S1,
    S2,
    S3,
    T1,
    T2,
    T3,
    U,
    V,
}

impl Label {
    pub const ALL: [Label; 12] = [
        Label::P1,
        Label::P2,
        Label::P3,
        Label::P4,
        Label::S1,
        Label::S2,
        Label::S3,
        Label::T1,
        Label::T2,
        Label::T3,
        Label::U,
        Label::V,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Label::P1 => "P1",
            Label::P2 => "P2",
            Label::P3 => "P3",
            Label::P4 => "P4",
            Label::S1 => "S1",
            Label::S2 => "S2",
            Label::S3 => "S3",
            Label::T1 => "T1",
            Label::T2 => "T2",
            Label::T3 => "T3",
            Label::U => "U",
            Label::V => "V",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Label::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| format!("unknown label '{s}'"))
    }
}

/// `|log|q11|| > 2|log|q12||` and `|log|q22|| > 2|log|q12||`: the shared
/// edge is shorter than half of each cycle.
pub fn check_assumption(q: &PeriodMatrix) -> bool {
    let twice = q.overlap() * Rat::from_integer(2.into());
    q.cycle_length(0) > twice && q.cycle_length(1) > twice
}

/// A bounded edge of length `length` from the common position of two
/// coincident marks to their branch point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinEdge {
    pub labels: (Label, Label),
    pub length: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedSkeleton {
    pub skel: MetricSkeleton,
    pub marks: BTreeMap<Label, SkeletonPoint>,
    pub join_edges: Vec<JoinEdge>,
}

impl MarkedSkeleton {
    pub fn position(&self, label: Label) -> Result<&SkeletonPoint> {
        self.marks
            .get(&label)
            .ok_or_else(|| Error::Precondition(format!("label {label} is not placed")))
    }

    /// Groups of labels sharing a position (only groups of size >= 2).
    pub fn coincidences(&self) -> Vec<Vec<Label>> {
        let mut by_pos: BTreeMap<&SkeletonPoint, Vec<Label>> = BTreeMap::new();
        for (l, p) in &self.marks {
            by_pos.entry(p).or_default().push(*l);
        }
        by_pos.into_values().filter(|g| g.len() > 1).collect()
    }

    pub fn divisor(&self, d: &LabelDivisor) -> Result<Divisor> {
        let mut terms = BTreeMap::new();
        for (l, m) in &d.0 {
            *terms.entry(self.position(*l)?.clone()).or_insert(0) += *m;
        }
        Ok(Divisor::new(terms))
    }
}

/// Shared-edge length entering the placement (0 without a shared edge).
fn shared_length(skel: &MetricSkeleton) -> Rat {
    if skel.is_shared() {
        skel.ell.clone()
    } else {
        Rat::zero()
    }
}

/// Places the ten marked points on the free parts of the cycles, with
/// `A = L1 - 2 ell` and `B = L2 - 2 ell`:
/// cycle 1 gets P1, P2, T2, T1 = S3 at `A/4`, `A/2`, `L1/2`, `3A/4 + ell`;
/// cycle 2 gets P3, P4, S2, S1 = T3 at `B/4`, `B/2`, `L2/2`, `3B/4 + ell`.
pub fn place_marked_points(skel: &MetricSkeleton) -> Result<MarkedSkeleton> {
    let ell = shared_length(skel);
    let two = Rat::from_integer(2.into());
    if !(skel.lengths[0] > &two * &ell && skel.lengths[1] > &two * &ell) {
        return Err(Error::Unsupported(
            "shared edge longer than half cycle".into(),
        ));
    }
    let a = &skel.lengths[0] - &two * &ell;
    let b = &skel.lengths[1] - &two * &ell;
    let quarter = ratio(1, 4);
    let half = ratio(1, 2);
    let three_quarters = ratio(3, 4);
    let on = |i: usize, arc: Rat| skel.cycle_point(i, &arc);
    let mut marks = BTreeMap::new();
    marks.insert(Label::P1, on(0, &quarter * &a));
    marks.insert(Label::P2, on(0, &half * &a));
    marks.insert(Label::T2, on(0, &half * &skel.lengths[0]));
    marks.insert(Label::T1, on(0, &three_quarters * &a + &ell));
    marks.insert(Label::S3, on(0, &three_quarters * &a + &ell));
    marks.insert(Label::P3, on(1, &quarter * &b));
    marks.insert(Label::P4, on(1, &half * &b));
    marks.insert(Label::S2, on(1, &half * &skel.lengths[1]));
    marks.insert(Label::S1, on(1, &three_quarters * &b + &ell));
    marks.insert(Label::T3, on(1, &three_quarters * &b + &ell));
    for (l, p) in &marks {
        if !matches!(p, SkeletonPoint::Cycle { .. }) {
            return Err(Error::Inconsistent(format!("{l} landed on a vertex ({p})")));
        }
    }
    Ok(MarkedSkeleton {
        skel: skel.clone(),
        marks,
        join_edges: Vec::new(),
    })
}

/// Integer multiplicities on labels.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabelDivisor(pub BTreeMap<Label, i64>);

impl LabelDivisor {
    pub fn from_pairs(pairs: &[(Label, i64)]) -> Self {
        let mut m = BTreeMap::new();
        for (l, k) in pairs {
            *m.entry(*l).or_insert(0) += *k;
        }
        m.retain(|_, k| *k != 0);
        LabelDivisor(m)
    }

    pub fn multiplicity(&self, l: Label) -> i64 {
        self.0.get(&l).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.0.values().sum()
    }
}

impl fmt::Display for LabelDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (l, m) in &self.0 {
            let sign = if *m < 0 { "-" } else if first { "" } else { "+" };
            let sep = if first { "" } else { " " };
            let mag = m.unsigned_abs();
            if mag == 1 {
                write!(f, "{sep}{sign}{l}")?;
            } else {
                write!(f, "{sep}{sign}{mag}{l}")?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Integer multiplicities on skeleton points.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Divisor {
    pub terms: BTreeMap<SkeletonPoint, i64>,
}

impl Divisor {
    pub fn new(mut terms: BTreeMap<SkeletonPoint, i64>) -> Self {
        terms.retain(|_, k| *k != 0);
        Divisor { terms }
    }

    pub fn degree(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn multiplicity(&self, p: &SkeletonPoint) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }
}

/// A degree-0 divisor is principal on the skeleton iff the sum of its
/// `μ` values vanishes in `Q^2 / Λ`.
pub fn divisor_is_tropically_principal(
    skel: &MetricSkeleton,
    lattice: &TropLattice,
    div: &Divisor,
) -> Result<bool> {
    if div.degree() != 0 {
        return Err(Error::Precondition(format!(
            "divisor has degree {}",
            div.degree()
        )));
    }
    let mut sum = [Rat::zero(), Rat::zero()];
    for (p, m) in &div.terms {
        let x = mu_lift(skel, p)?;
        let k = Rat::from_integer((*m).into());
        sum = [&sum[0] + &k * &x[0], &sum[1] + &k * &x[1]];
    }
    Ok(lattice.contains(&sum))
}

/// `S1 + S2 + S3 - P1 - P2 - P3`.
pub fn divisor_f() -> LabelDivisor {
    use Label::*;
    LabelDivisor::from_pairs(&[(S1, 1), (S2, 1), (S3, 1), (P1, -1), (P2, -1), (P3, -1)])
}

/// `T1 + T2 + T3 - P1 - P3 - P4`.
pub fn divisor_g() -> LabelDivisor {
    use Label::*;
    LabelDivisor::from_pairs(&[(T1, 1), (T2, 1), (T3, 1), (P1, -1), (P3, -1), (P4, -1)])
}

/// `T2 + U + V - S3 - P1 - P3`.
pub fn divisor_h() -> LabelDivisor {
    use Label::*;
    LabelDivisor::from_pairs(&[(T2, 1), (U, 1), (V, 1), (S3, -1), (P1, -1), (P3, -1)])
}

/// The divisors of the three coordinate functions together with the
/// marked skeleton extended by the extra zeros `U`, `V` of `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateFunctions {
    pub marked: MarkedSkeleton,
    pub divisors: [LabelDivisor; 3],
}

/// Places `U` and `V` so that `T2 + U + V - S3 - P1 - P3` is principal and
/// checks principality of all three divisors.
pub fn build_coordinate_functions(
    msk: &MarkedSkeleton,
    lattice: &TropLattice,
) -> Result<CoordinateFunctions> {
    let lift = |l: Label| -> Result<[Rat; 2]> { mu_lift(&msk.skel, msk.position(l)?) };
    let (s3, p1, p3, t2) = (lift(Label::S3)?, lift(Label::P1)?, lift(Label::P3)?, lift(Label::T2)?);
    let target = lattice.reduce(&[
        &s3[0] + &p1[0] + &p3[0] - &t2[0],
        &s3[1] + &p1[1] + &p3[1] - &t2[1],
    ]);
    let (u, v) = two_summand_decomposition(lattice, &msk.skel, &target)?;
    let mut marked = msk.clone();
    marked.marks.insert(Label::U, u);
    marked.marks.insert(Label::V, v);
    let divisors = [divisor_f(), divisor_g(), divisor_h()];
    for (name, d) in ["f", "g", "h"].iter().zip(&divisors) {
        if !divisor_is_tropically_principal(&marked.skel, lattice, &marked.divisor(d)?)? {
            return Err(Error::Inconsistent(format!(
                "divisor of {name} ({d}) is not principal"
            )));
        }
    }
    Ok(CoordinateFunctions { marked, divisors })
}
