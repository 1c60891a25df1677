use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::moebius_schottky::PeriodMatrix;
use crate::valued_field::Rat;

pub type Vec2 = [Rat; 2];

pub fn add(x: &Vec2, y: &Vec2) -> Vec2 {
    [&x[0] + &y[0], &x[1] + &y[1]]
}

pub fn sub(x: &Vec2, y: &Vec2) -> Vec2 {
    [&x[0] - &y[0], &x[1] - &y[1]]
}

pub fn scale(c: &Rat, x: &Vec2) -> Vec2 {
    [c * &x[0], c * &x[1]]
}

pub fn max_norm(x: &Vec2) -> Rat {
    std::cmp::max(x[0].abs(), x[1].abs())
}

/// The lattice generated by the rows `(log|q_i1|, log|q_i2|)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropLattice {
    pub basis: [Vec2; 2],
}

/// A point of `Q^2 / Λ`, stored by its representative in the half-open
/// parallelepiped spanned by `-λ1` and `-λ2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    pub rep: Vec2,
}

impl TorusPoint {
    pub fn is_zero(&self) -> bool {
        self.rep[0].is_zero() && self.rep[1].is_zero()
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.rep[0], self.rep[1])
    }
}

impl TropLattice {
    pub fn new(basis: [Vec2; 2]) -> Result<Self> {
        let l = TropLattice { basis };
        if l.det().is_zero() {
            return Err(Error::Degenerate("lattice basis is linearly dependent".into()));
        }
        Ok(l)
    }

    pub fn from_period_matrix(q: &PeriodMatrix) -> Result<Self> {
        Self::new([q.logq[0].clone(), q.logq[1].clone()])
    }

    fn det(&self) -> Rat {
        let [a, b] = &self.basis;
        &a[0] * &b[1] - &a[1] * &b[0]
    }

    /// Coordinates `(s, u)` with `x = s·(-λ1) + u·(-λ2)`.
    pub fn coordinates(&self, x: &Vec2) -> Vec2 {
        let [a, b] = &self.basis;
        // columns -a, -b; determinant of [[-a0, -b0], [-a1, -b1]] equals det
        let d = self.det();
        let s = (-(&b[1] * &x[0]) + &b[0] * &x[1]) / &d;
        let u = (&a[1] * &x[0] - &a[0] * &x[1]) / &d;
        [s, u]
    }

    pub fn combine(&self, m: &Rat, n: &Rat) -> Vec2 {
        add(&scale(m, &self.basis[0]), &scale(n, &self.basis[1]))
    }

    pub fn contains(&self, x: &Vec2) -> bool {
        let [s, u] = self.coordinates(x);
        s.is_integer() && u.is_integer()
    }

    pub fn reduce(&self, x: &Vec2) -> TorusPoint {
        let [s, u] = self.coordinates(x);
        let (fs, fu) = (&s - s.floor(), &u - u.floor());
        let minus = |v: &Vec2| [-v[0].clone(), -v[1].clone()];
        TorusPoint {
            rep: add(&scale(&fs, &minus(&self.basis[0])), &scale(&fu, &minus(&self.basis[1]))),
        }
    }

    /// Max-metric distance in the torus, minimized over the translates
    /// `m λ1 + n λ2` with `|m|, |n| <= 2` (enough for representatives in the
    /// fundamental parallelepiped).
    pub fn torus_distance(&self, x: &TorusPoint, y: &TorusPoint) -> Rat {
        let diff = sub(&x.rep, &y.rep);
        let mut best: Option<Rat> = None;
        for m in -2i64..=2 {
            for n in -2i64..=2 {
                let shifted = add(&diff, &self.combine(&Rat::from_integer(m.into()), &Rat::from_integer(n.into())));
                let d = max_norm(&shifted);
                if best.as_ref().is_none_or(|b| d < *b) {
                    best = Some(d);
                }
            }
        }
        best.expect("nonempty search")
    }
}

/// Free-function form of [`TropLattice::reduce`].
pub fn reduce_mod_lattice(x: &Vec2, lattice: &TropLattice) -> TorusPoint {
    lattice.reduce(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valued_field::{rat, ratio};

    fn se1_lattice() -> TropLattice {
        TropLattice::new([[rat(-4), rat(-1)], [rat(-1), rat(-6)]]).unwrap()
    }

    #[test]
    fn reductions() {
        let l = se1_lattice();
        assert!(l.reduce(&[rat(0), rat(0)]).is_zero());
        assert!(l.reduce(&[rat(4), rat(1)]).is_zero());
        assert!(l.reduce(&l.basis[1]).is_zero());
        let x = [ratio(1, 3), ratio(-5, 7)];
        let r = l.reduce(&x);
        assert_eq!(l.reduce(&r.rep), r);
        assert!(l.contains(&sub(&x, &r.rep)));
        let [s, u] = l.coordinates(&r.rep);
        assert!(!s.is_negative() && s < rat(1) && !u.is_negative() && u < rat(1));
    }

    #[test]
    fn torus_distance_examples() {
        let l = se1_lattice();
        let v = l.reduce(&[rat(1), rat(1)]);
        let w = l.reduce(&[rat(3), rat(1)]);
        assert_eq!(l.torus_distance(&v, &w), rat(2));
        assert_eq!(l.torus_distance(&v, &v), rat(0));
    }

    #[test]
    fn dependent_basis_rejected() {
        assert!(TropLattice::new([[rat(-2), rat(-1)], [rat(-4), rat(-2)]]).is_err());
    }
}
