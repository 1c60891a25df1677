use std::fmt;

use crate::error::{Error, Result};
use crate::valued_field::{LogAbs, PuiseuxNumber, Rat};

use super::moebius::{HomPoint, P1Point};

/// Closed disc `{z : log|z - center| <= log_radius}`. Open variants are
/// selected by the operation, never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disc {
    pub center: PuiseuxNumber,
    pub log_radius: Rat,
}

impl Disc {
    pub fn new(center: PuiseuxNumber, log_radius: Rat) -> Self {
        Disc { center, log_radius }
    }

    /// Builds a disc whose center is given homogeneously. Any point of the
    /// open disc is a valid center of both the open and the closed disc, so
    /// the affine center is cut one unit past the radius.
    pub(crate) fn from_hom_center(center: &HomPoint, log_radius: Rat) -> Result<Self> {
        if center.is_infinity() {
            return Err(Error::Degenerate("disc centered at infinity".into()));
        }
        let lx = center.x.checked_log_abs()?;
        let ly = center.y.checked_log_abs()?.expect_finite("center denominator")?;
        let needed = match lx {
            LogAbs::NegInfinity => return Ok(Disc::new(PuiseuxNumber::zero(), log_radius)),
            LogAbs::Finite(lx) => {
                // relative depth so the quotient is known to absolute order -log_radius
                let val = ly - lx;
                -&log_radius - val + Rat::from_integer(1.into())
            }
        };
        let precision = std::cmp::max(needed, Rat::from_integer(1.into()));
        let z = center.x.div_with_precision(&center.y, &precision)?;
        let z = z.exact_part_below(&(-&log_radius + Rat::from_integer(1.into())))?;
        Ok(Disc::new(z, log_radius))
    }

    pub fn log_dist_to_center(&self, z: &PuiseuxNumber) -> Result<LogAbs> {
        (z - &self.center).checked_log_abs()
    }

    /// Membership in the closed disc (`open = false`) or the open disc.
    pub fn contains_with(&self, z: &P1Point, open: bool) -> Result<bool> {
        match z {
            P1Point::Infinity => Ok(false),
            P1Point::Finite(z) => self.contains_hom_with(&HomPoint::from_finite(z), open),
        }
    }

    pub fn contains(&self, z: &PuiseuxNumber) -> Result<bool> {
        self.contains_with(&P1Point::Finite(z.clone()), false)
    }

    pub fn contains_open(&self, z: &PuiseuxNumber) -> Result<bool> {
        self.contains_with(&P1Point::Finite(z.clone()), true)
    }

    pub(crate) fn contains_hom_with(&self, z: &HomPoint, open: bool) -> Result<bool> {
        if z.is_infinity() {
            return Ok(false);
        }
        let d = z.log_dist_to(&self.center)?;
        let r = LogAbs::Finite(self.log_radius.clone());
        Ok(if open { d < r } else { d <= r })
    }

    /// Same point set (same radius, each center inside the other disc).
    pub fn same_disc(&self, other: &Disc) -> Result<bool> {
        if self.log_radius != other.log_radius {
            return Ok(false);
        }
        Ok(self.log_dist_to_center(&other.center)? <= LogAbs::Finite(self.log_radius.clone()))
    }

    /// Closed discs are disjoint iff the centers are farther apart than both radii.
    pub fn disjoint(&self, other: &Disc) -> Result<bool> {
        let d = self.log_dist_to_center(&other.center)?;
        let r = std::cmp::max(&self.log_radius, &other.log_radius).clone();
        Ok(d > LogAbs::Finite(r))
    }
}

impl fmt::Display for Disc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{log|z - ({})| <= {}}}", self.center, self.log_radius)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valued_field::rat;

    fn p(s: &str) -> PuiseuxNumber {
        s.parse().unwrap()
    }

    #[test]
    fn membership() {
        let d = Disc::new(p("t^4"), rat(-5));
        assert!(d.contains(&p("t^4 + t^5")).unwrap());
        assert!(!d.contains_open(&p("t^4 + t^5")).unwrap());
        assert!(d.contains_open(&p("t^4 + t^6")).unwrap());
        assert!(!d.contains(&p("t^3")).unwrap());
        assert!(!d.contains_with(&P1Point::Infinity, false).unwrap());
    }

    #[test]
    fn same_disc_ignores_center_choice() {
        let a = Disc::new(p("t^4"), rat(-5));
        let b = Disc::new(p("t^4 + t^7"), rat(-5));
        assert!(a.same_disc(&b).unwrap());
        assert!(!a.same_disc(&Disc::new(p("t^4"), rat(-6))).unwrap());
    }

    #[test]
    fn disjointness() {
        let a = Disc::new(p("t^4"), rat(-5));
        let b = Disc::new(p("t^3"), rat(-5));
        assert!(a.disjoint(&b).unwrap());
        let big = Disc::new(p("t^4"), rat(-3));
        assert!(!big.disjoint(&b).unwrap());
    }

    #[test]
    fn homogeneous_center_is_made_exact() {
        // 1/(1 - t) = 1 + t + t^2 + ...; kept up to t^3 for radius -3
        let h = HomPoint {
            x: p("1"),
            y: p("1 - t"),
        };
        let d = Disc::from_hom_center(&h, rat(-3)).unwrap();
        assert_eq!(d.center, p("1 + t + t^2 + t^3"));
        assert!(d.center.is_exact());
    }
}
