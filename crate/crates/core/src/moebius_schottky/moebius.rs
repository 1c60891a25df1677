use std::fmt;

use crate::error::{Error, Result};
use crate::valued_field::{default_precision, rat, LogAbs, PuiseuxNumber, Rat};

use super::Disc;

/// A point of `P^1(K)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum P1Point {
    Finite(PuiseuxNumber),
    Infinity,
}

impl P1Point {
    pub fn finite(&self) -> Option<&PuiseuxNumber> {
        match self {
            P1Point::Finite(z) => Some(z),
            P1Point::Infinity => None,
        }
    }
}

impl From<PuiseuxNumber> for P1Point {
    fn from(z: PuiseuxNumber) -> Self {
        P1Point::Finite(z)
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Finite(z) => write!(f, "{z}"),
            P1Point::Infinity => f.write_str("inf"),
        }
    }
}

/// Homogeneous coordinates `[x : y]`; lets Möbius images of exact points
/// stay exact (no series division).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomPoint {
    pub x: PuiseuxNumber,
    pub y: PuiseuxNumber,
}

impl HomPoint {
    pub fn new(x: PuiseuxNumber, y: PuiseuxNumber) -> Result<Self> {
        if x.is_zero() && y.is_zero() {
            return Err(Error::Degenerate("[0 : 0] is not a point".into()));
        }
        Ok(HomPoint { x, y })
    }

    pub fn infinity() -> Self {
        HomPoint {
            x: PuiseuxNumber::one(),
            y: PuiseuxNumber::zero(),
        }
    }

    pub fn from_finite(z: &PuiseuxNumber) -> Self {
        HomPoint {
            x: z.clone(),
            y: PuiseuxNumber::one(),
        }
    }

    pub fn from_p1(p: &P1Point) -> Self {
        match p {
            P1Point::Finite(z) => Self::from_finite(z),
            P1Point::Infinity => Self::infinity(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero() && self.y.is_exact()
    }

    /// Affine value `x / y`, kept `precision` units past its leading term.
    pub fn to_p1(&self, precision: &Rat) -> Result<P1Point> {
        if self.is_infinity() {
            return Ok(P1Point::Infinity);
        }
        Ok(P1Point::Finite(self.x.div_with_precision(&self.y, precision)?))
    }

    /// `log|z - self|` for a finite `z`; `+inf` distances (self = infinity)
    /// are reported as an error since they never enter a formula here.
    pub fn log_dist_to(&self, z: &PuiseuxNumber) -> Result<LogAbs> {
        if self.is_infinity() {
            return Err(Error::Degenerate("distance to infinity".into()));
        }
        let num = (&self.x - &(z * &self.y)).checked_log_abs()?;
        let den = self.y.checked_log_abs()?;
        Ok(match (num, den) {
            (LogAbs::Finite(n), LogAbs::Finite(d)) => LogAbs::Finite(n - d),
            (LogAbs::NegInfinity, _) => LogAbs::NegInfinity,
            (_, LogAbs::NegInfinity) => unreachable!("finite point has y != 0"),
        })
    }
}

/// An element of `PGL(2, K)` given by a matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoebiusMap {
    pub a: PuiseuxNumber,
    pub b: PuiseuxNumber,
    pub c: PuiseuxNumber,
    pub d: PuiseuxNumber,
}

impl MoebiusMap {
    pub fn new(
        a: PuiseuxNumber,
        b: PuiseuxNumber,
        c: PuiseuxNumber,
        d: PuiseuxNumber,
    ) -> Result<Self> {
        let m = MoebiusMap { a, b, c, d };
        if m.det().checked_log_abs()?.is_neg_infinity() {
            return Err(Error::Precondition("singular Möbius matrix (ad - bc = 0)".into()));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        MoebiusMap {
            a: PuiseuxNumber::one(),
            b: PuiseuxNumber::zero(),
            c: PuiseuxNumber::zero(),
            d: PuiseuxNumber::one(),
        }
    }

    /// The hyperbolic map with repelling fixed point `b`, attracting fixed
    /// point `c` and multiplier `k`, i.e. `(m(z) - c)/(m(z) - b) = k (z - c)/(z - b)`.
    ///
    /// Matrix `[[c - k b, -b c (1 - k)], [1 - k, -(b - k c)]]`, determinant
    /// `k (b - c)^2`.
    pub fn hyperbolic(b: &PuiseuxNumber, c: &PuiseuxNumber, k: &PuiseuxNumber) -> Result<Self> {
        let one = PuiseuxNumber::one();
        let one_minus_k = &one - k;
        Self::new(
            c - &(k * b),
            -&(&(b * c) * &one_minus_k),
            one_minus_k,
            -&(b - &(k * c)),
        )
    }

    pub fn det(&self) -> PuiseuxNumber {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn log_abs_det(&self) -> Result<Rat> {
        self.det().checked_log_abs()?.expect_finite("determinant")
    }

    /// `log|k|` for the multiplier `k` (ratio of the smaller to the larger
    /// eigenvalue), i.e. `log|det| - 2 log|trace|`. Fails unless the map is
    /// hyperbolic.
    pub fn multiplier_log_abs(&self) -> Result<Rat> {
        let trace = &self.a + &self.d;
        let log_trace = trace.checked_log_abs()?.finite().cloned();
        let log_det = self.log_abs_det()?;
        match log_trace {
            Some(lt) if rat(2) * &lt > log_det => Ok(log_det - rat(2) * lt),
            _ => Err(Error::Degenerate(format!("{self} is not hyperbolic"))),
        }
    }

    /// Adjugate matrix; equal to the inverse in `PGL(2, K)`.
    pub fn inverse(&self) -> Self {
        MoebiusMap {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        MoebiusMap {
            a: &(&self.a * &other.a) + &(&self.b * &other.c),
            b: &(&self.a * &other.b) + &(&self.b * &other.d),
            c: &(&self.c * &other.a) + &(&self.d * &other.c),
            d: &(&self.c * &other.b) + &(&self.d * &other.d),
        }
    }

    /// Projective equality: the two matrices are proportional.
    pub fn projectively_eq(&self, other: &Self) -> bool {
        let pairs = [
            (&self.a, &other.a),
            (&self.b, &other.b),
            (&self.c, &other.c),
            (&self.d, &other.d),
        ];
        pairs.iter().all(|(x1, y1)| {
            pairs
                .iter()
                .all(|(x2, y2)| (&(*x1 * *y2) - &(*x2 * *y1)).is_zero())
        })
    }

    pub fn apply_hom(&self, p: &HomPoint) -> HomPoint {
        HomPoint {
            x: &(&self.a * &p.x) + &(&self.b * &p.y),
            y: &(&self.c * &p.x) + &(&self.d * &p.y),
        }
    }

    /// `(az + b)/(cz + d)`, with `m(∞) = a/c` and the pole `-d/c` sent to ∞.
    pub fn apply(&self, z: &P1Point) -> Result<P1Point> {
        self.apply_with_precision(z, &default_precision())
    }

    pub fn apply_with_precision(&self, z: &P1Point, precision: &Rat) -> Result<P1Point> {
        let h = self.apply_hom(&HomPoint::from_p1(z));
        if h.y.is_zero() && !h.y.is_exact() {
            return Err(Error::Precision(
                "denominator cz + d cancelled below the truncation order".into(),
            ));
        }
        h.to_p1(precision)
    }

    /// The pole `[-d : c]` (∞ when `c = 0`).
    pub fn pole(&self) -> HomPoint {
        HomPoint {
            x: -&self.d,
            y: self.c.clone(),
        }
    }

    /// `log|center - pole|` relative to the disc, via `log|c·center + d| - log|c|`.
    fn pole_distance(&self, center: &PuiseuxNumber) -> Result<(LogAbs, Option<Rat>)> {
        let w = &(&self.c * center) + &self.d;
        let lw = w.checked_log_abs()?;
        match self.c.checked_log_abs()? {
            LogAbs::NegInfinity => Ok((lw, None)),
            LogAbs::Finite(lc) => Ok((lw, Some(lc))),
        }
    }

    /// Exact image of a closed disc whose closure avoids the pole:
    /// center `m(center)`, `log r' = log|det| + log r - 2 log|c·center + d|`.
    pub fn image_of_disc(&self, disc: &Disc) -> Result<Disc> {
        let (center, r) = self.image_of_disc_hom(disc)?;
        Disc::from_hom_center(&center, r)
    }

    pub(crate) fn image_of_disc_hom(&self, disc: &Disc) -> Result<(HomPoint, Rat)> {
        let (lw, lc) = self.pole_distance(&disc.center)?;
        let lw = match lw {
            LogAbs::NegInfinity => return Err(Error::PoleInDisc),
            LogAbs::Finite(v) => v,
        };
        if let Some(lc) = lc {
            if &lw - &lc <= disc.log_radius {
                return Err(Error::PoleInDisc);
            }
        }
        let radius = self.log_abs_det()? + disc.log_radius.clone() - rat(2) * &lw;
        Ok((self.apply_hom(&HomPoint::from_finite(&disc.center)), radius))
    }

    /// Image of `P^1 \ D°` when the pole lies in the open disc `D°`: the
    /// closed disc around `m(∞) = a/c` with
    /// `log r' = log|det| - 2 log|c| - log r`.
    pub fn image_of_complement(&self, disc: &Disc) -> Result<Disc> {
        let (center, r) = self.image_of_complement_hom(disc, true)?;
        Disc::from_hom_center(&center, r)
    }

    /// Image of `P^1 \ D` (complement of the closed disc) when the pole lies
    /// in the closed disc: the open disc with the returned center and radius.
    pub fn image_of_closed_complement(&self, disc: &Disc) -> Result<Disc> {
        let (center, r) = self.image_of_complement_hom(disc, false)?;
        Disc::from_hom_center(&center, r)
    }

    pub(crate) fn image_of_complement_hom(
        &self,
        disc: &Disc,
        open_disc: bool,
    ) -> Result<(HomPoint, Rat)> {
        let (lw, lc) = self.pole_distance(&disc.center)?;
        let lc = lc.ok_or(Error::PoleOutsideDisc)?;
        if let LogAbs::Finite(lw) = lw {
            let d = &lw - &lc;
            let inside = if open_disc {
                d < disc.log_radius
            } else {
                d <= disc.log_radius
            };
            if !inside {
                return Err(Error::PoleOutsideDisc);
            }
        }
        let radius = self.log_abs_det()? - rat(2) * &lc - disc.log_radius.clone();
        let center = HomPoint {
            x: self.a.clone(),
            y: self.c.clone(),
        };
        Ok((center, radius))
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valued_field::ratio;

    fn p(s: &str) -> PuiseuxNumber {
        s.parse().unwrap()
    }

    fn inversion() -> MoebiusMap {
        MoebiusMap::new(p("0"), p("1"), p("1"), p("0")).unwrap()
    }

    #[test]
    fn multiplier_of_hyperbolic_maps() {
        let m = MoebiusMap::hyperbolic(&p("t^4"), &p("t^2"), &p("t^4")).unwrap();
        assert_eq!(m.multiplier_log_abs().unwrap(), rat(-4));
        let m = MoebiusMap::hyperbolic(&p("t"), &p("1"), &p("3*t^(5/2)")).unwrap();
        assert_eq!(m.multiplier_log_abs().unwrap(), ratio(-5, 2));
        assert!(matches!(inversion().multiplier_log_abs(), Err(Error::Degenerate(_))));
    }

    #[test]
    fn identity_fixes_points() {
        let id = MoebiusMap::identity();
        assert_eq!(id.apply(&p("t").into()).unwrap(), P1Point::Finite(p("t")));
    }

    #[test]
    fn inversion_examples() {
        let m = inversion();
        assert_eq!(m.apply(&p("t^2").into()).unwrap(), P1Point::Finite(p("t^-2")));
        assert_eq!(m.apply(&P1Point::Infinity).unwrap(), P1Point::Finite(p("0")));
        assert_eq!(m.apply(&p("0").into()).unwrap(), P1Point::Infinity);
    }

    #[test]
    fn singular_matrix_rejected() {
        assert!(MoebiusMap::new(p("1"), p("t"), p("1"), p("t")).is_err());
    }

    #[test]
    fn hyperbolic_recipe_fixes_its_centers() {
        let (b, c, k) = (p("t^4"), p("t^2"), p("t^4"));
        let m = MoebiusMap::hyperbolic(&b, &c, &k).unwrap();
        for fixed in [&b, &c] {
            let h = m.apply_hom(&HomPoint::from_finite(fixed));
            assert!((&h.x - &(fixed * &h.y)).is_zero());
        }
        let expect = &k * &(&b - &c).pow(2);
        assert_eq!(m.det(), expect);
    }

    #[test]
    fn image_of_disc_identity() {
        let d = Disc::new(p("t^4"), rat(-5));
        let img = MoebiusMap::identity().image_of_disc(&d).unwrap();
        assert!(img.same_disc(&d).unwrap());
    }

    #[test]
    fn image_of_disc_under_inversion() {
        // D = {log|z - 1| <= -2}; on D |z| = 1, so the image is centered at 1
        // with the same radius.
        let d = Disc::new(p("1"), rat(-2));
        let m = inversion();
        let img = m.image_of_disc(&d).unwrap();
        assert_eq!(img.log_radius, rat(-2));
        assert!(img.same_disc(&Disc::new(p("1"), rat(-2))).unwrap());

        // Oracle: sample points at distance exactly t^2 from the center and
        // measure the distance of their images to m(1) = 1.
        for k in 1..=5 {
            let z = &p("1") + &PuiseuxNumber::monomial(rat(k), rat(2));
            let w = m.apply_hom(&HomPoint::from_finite(&z));
            assert_eq!(w.log_dist_to(&p("1")).unwrap(), LogAbs::Finite(rat(-2)));
        }
    }

    #[test]
    fn image_of_disc_under_scaling() {
        let m = MoebiusMap::new(p("t"), p("0"), p("0"), p("1")).unwrap();
        let d = Disc::new(p("1"), rat(0));
        let img = m.image_of_disc(&d).unwrap();
        assert_eq!(img.log_radius, rat(-1));
        assert!(img.same_disc(&Disc::new(p("t"), rat(-1))).unwrap());
    }

    #[test]
    fn pole_in_disc_is_an_error() {
        let m = inversion();
        let d = Disc::new(p("t"), rat(0));
        assert_eq!(m.image_of_disc(&d), Err(Error::PoleInDisc));
    }

    #[test]
    fn image_of_complement_inverts_radius() {
        let m = inversion();
        let d = Disc::new(p("0"), rat(-1));
        let img = m.image_of_complement(&d).unwrap();
        assert_eq!(img.log_radius, rat(1));
        assert!(img.same_disc(&Disc::new(p("0"), rat(1))).unwrap());
        let far = Disc::new(p("1"), rat(-1));
        assert_eq!(m.image_of_complement(&far), Err(Error::PoleOutsideDisc));
    }

    #[test]
    fn fractional_radius_images() {
        let m = inversion();
        let d = Disc::new(p("t^(1/2)"), ratio(-3, 4));
        let img = m.image_of_disc(&d).unwrap();
        // log|det| = 0, |c·center + d| = |t^(1/2)|
        assert_eq!(img.log_radius, ratio(-3, 4) + rat(1));
    }
}
