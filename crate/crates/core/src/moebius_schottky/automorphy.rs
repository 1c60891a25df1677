use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::valued_field::{rat, ratio, LogAbs, PuiseuxNumber, Rat};

use super::group::{log_dist, Check};
use super::words::reduced_words;
use super::{HomPoint, P1Point, SchottkyRank2};

/// Symmetric matrix of `log|q_ij|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodMatrix {
    pub logq: [[Rat; 2]; 2],
}

impl PeriodMatrix {
    pub fn new(logq: [[Rat; 2]; 2]) -> Result<Self> {
        if logq[0][1] != logq[1][0] {
            return Err(Error::Inconsistent("period matrix is not symmetric".into()));
        }
        if !logq[0][0].is_negative() || !logq[1][1].is_negative() {
            return Err(Error::Inconsistent(
                "diagonal of the period matrix must be negative".into(),
            ));
        }
        if logq[0][1].is_positive() {
            return Err(Error::Inconsistent(
                "off-diagonal log|q12| must be at most 0".into(),
            ));
        }
        Ok(PeriodMatrix { logq })
    }

    /// Cycle length `-log|q_ii|`.
    pub fn cycle_length(&self, i: usize) -> Rat {
        -self.logq[i][i].clone()
    }

    /// `|log|q_12||`, the length of the shared edge (0 if none).
    pub fn overlap(&self) -> Rat {
        self.logq[0][1].abs()
    }
}

impl fmt::Display for PeriodMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = &self.logq;
        write!(f, "[[{}, {}], [{}, {}]]", q[0][0], q[0][1], q[1][0], q[1][1])
    }
}

/// `log|u_i(z)| = log|z - b_i| - log|z - c_i|` for `z` outside the open
/// discs (boundary allowed). `u_i(∞)` has absolute value 1.
pub fn u_log_abs(s: &SchottkyRank2, i: usize, z: &P1Point) -> Result<Rat> {
    s.require_outside_open_discs(z)?;
    u_log_abs_hom(s, i, &HomPoint::from_p1(z))
}

/// Homogeneous version of [`u_log_abs`] without the domain check.
pub(crate) fn u_log_abs_hom(s: &SchottkyRank2, i: usize, z: &HomPoint) -> Result<Rat> {
    if z.is_infinity() {
        return Ok(Rat::zero());
    }
    let to_b = (&z.x - &(s.b_center(i) * &z.y)).checked_log_abs()?;
    let to_c = (&z.x - &(s.c_center(i) * &z.y)).checked_log_abs()?;
    match (to_b, to_c) {
        (LogAbs::Finite(x), LogAbs::Finite(y)) => Ok(x - y),
        _ => Err(Error::Degenerate(format!(
            "point coincides with a center of generator {}",
            i + 1
        ))),
    }
}

/// `log|z - w|` with `w = [x : y]` finite.
fn log_dist_hom(z: &PuiseuxNumber, w: &HomPoint) -> Result<Rat> {
    if w.is_infinity() {
        return Err(Error::Degenerate("orbit point at infinity".into()));
    }
    match w.log_dist_to(z)? {
        LogAbs::Finite(r) => Ok(r),
        LogAbs::NegInfinity => Err(Error::Degenerate(format!("{z} lies on the orbit"))),
    }
}

/// Sum over reduced words `g` of length at most `max_len` of
/// `log|z - g a| - log|z - g g_i a|`: the logarithm of the truncated
/// infinite product defining `u_i`.
pub fn u_log_abs_truncated(
    s: &SchottkyRank2,
    i: usize,
    z: &PuiseuxNumber,
    basepoint: &P1Point,
    max_len: usize,
) -> Result<Rat> {
    TruncatedProduct::new(s, i, basepoint, max_len).log_abs(z, max_len)
}

/// The orbit points `g a` and `g g_i a` of the truncated product for `u_i`,
/// computed once so that many evaluation points and word lengths can share
/// them.
#[derive(Debug, Clone)]
pub struct TruncatedProduct {
    max_len: usize,
    /// `(word length, g a, g g_i a)` in order of increasing length.
    factors: Vec<(usize, HomPoint, HomPoint)>,
}

impl TruncatedProduct {
    pub fn new(s: &SchottkyRank2, i: usize, basepoint: &P1Point, max_len: usize) -> Self {
        let a = HomPoint::from_p1(basepoint);
        let gen = &s.gens[i];
        let factors = reduced_words(max_len)
            .map(|w| {
                let m = w.map(s);
                let far = m.compose(gen).apply_hom(&a);
                (w.len(), m.apply_hom(&a), far)
            })
            .collect();
        TruncatedProduct { max_len, factors }
    }

    /// The truncated product over words of length at most `len`.
    pub fn log_abs(&self, z: &PuiseuxNumber, len: usize) -> Result<Rat> {
        if len > self.max_len {
            return Err(Error::Precondition(format!(
                "word length {len} exceeds the precomputed {}",
                self.max_len
            )));
        }
        let mut total = Rat::zero();
        for (_, near, far) in self.factors.iter().take_while(|f| f.0 <= len) {
            total += log_dist_hom(z, near)? - log_dist_hom(z, far)?;
        }
        Ok(total)
    }
}

/// Up to `n` distinct points of the form `c t^e` lying outside all four
/// closed discs, in a fixed order. On such points every factor of the
/// truncated product for a nonempty word cancels in absolute value.
pub fn sample_exterior_points(s: &SchottkyRank2, n: usize) -> Result<Vec<PuiseuxNumber>> {
    let coefficients = [rat(1), rat(-1), rat(2), rat(3), ratio(1, 2), ratio(-5, 3)];
    let mut exponents: Vec<Rat> = (-4..=16).map(|k| ratio(k, 2)).collect();
    exponents.sort_by_key(|e| e.abs());
    let mut out = Vec::new();
    for e in &exponents {
        for c in &coefficients {
            let z = PuiseuxNumber::monomial(c.clone(), e.clone());
            let mut outside = true;
            for (_, d) in s.discs() {
                if d.contains(&z)? {
                    outside = false;
                    break;
                }
            }
            if outside {
                out.push(z);
                if out.len() == n {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// Points `center + c t^(-log r)` with `c = 1, 2` on the boundary circle of
/// each disc, kept if they avoid the other open discs. Unlike exterior
/// monomials these give nonzero values of `log|u_i|`.
pub fn sample_boundary_points(s: &SchottkyRank2) -> Result<Vec<PuiseuxNumber>> {
    let mut out = Vec::new();
    for (_, d) in s.discs() {
        for c in [1, 2] {
            let z = &d.center + &PuiseuxNumber::monomial(rat(c), -d.log_radius.clone());
            if s.require_outside_open_discs(&P1Point::Finite(z.clone())).is_ok() && !out.contains(&z) {
                out.push(z);
            }
        }
    }
    Ok(out)
}

/// Checks `|b_i| < |c_i|` for both generators.
fn require_b_inside_c(s: &SchottkyRank2) -> Result<()> {
    for i in 0..2 {
        let lb = SchottkyRank2::log_abs_of_disc(&s.b[i])?;
        let lc = SchottkyRank2::log_abs_of_disc(&s.c[i])?;
        if lb >= lc {
            return Err(Error::Precondition(format!(
                "expected |b{n}| < |c{n}| (got log {lb} and {lc})",
                n = i + 1
            )));
        }
    }
    Ok(())
}

/// `log|q_12|` from the four centers (no ordering assumption).
pub(crate) fn off_diagonal_log_q(s: &SchottkyRank2) -> Result<Rat> {
    let (b1, c1, b2, c2) = (s.b_center(0), s.c_center(0), s.b_center(1), s.c_center(1));
    Ok(-(log_dist(b2, c1)? + log_dist(c2, b1)? - log_dist(b2, b1)? - log_dist(c2, c1)?))
}

/// Period matrix of a datum with `|b_i| < |c_i|`.
pub fn log_q(s: &SchottkyRank2) -> Result<PeriodMatrix> {
    require_b_inside_c(s)?;
    let mut diag = Vec::with_capacity(2);
    for i in 0..2 {
        let d = log_dist(s.b_center(i), s.c_center(i))?;
        let len = Rat::from_integer(2.into()) * d - &s.b[i].log_radius - &s.c[i].log_radius;
        diag.push(-len);
    }
    let off = off_diagonal_log_q(s)?;
    PeriodMatrix::new([[diag[0].clone(), off.clone()], [off, diag[1].clone()]])
}

/// A point on the boundary of `B_j`, used as a probe for the automorphy
/// relation.
pub fn boundary_probe(s: &SchottkyRank2, j: usize) -> PuiseuxNumber {
    s.b_center(j) + &PuiseuxNumber::t_pow(-s.b[j].log_radius.clone())
}

/// Checks `log|u_i(g_j z)| - log|u_i(z)| = -log|q_ij|` at the boundary
/// probe of `B_j`, for all `i, j`.
pub fn check_automorphy(s: &SchottkyRank2, q: &PeriodMatrix) -> Vec<Check> {
    let mut out = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let name = format!("|u{}(gamma{} z) / u{}(z)| = 1/|q{}{}|", i + 1, j + 1, i + 1, i + 1, j + 1);
            let outcome = (|| -> Result<(bool, String)> {
                let z = boundary_probe(s, j);
                let before = u_log_abs(s, i, &P1Point::Finite(z.clone()))?;
                let w = s.gens[j].apply_hom(&HomPoint::from_finite(&z));
                for (label, d) in s.discs() {
                    if d.contains_hom_with(&w, true)? {
                        return Err(Error::OutsideFundamentalDomain(format!(
                            "image of the probe lies in the open disc {label}"
                        )));
                    }
                }
                let after = u_log_abs_hom(s, i, &w)?;
                let diff = after - before;
                let expect = -q.logq[i][j].clone();
                Ok((diff == expect, format!("difference {diff}, expected {expect}")))
            })();
            let (passed, detail) = match outcome {
                Ok(x) => x,
                Err(e) => (false, e.to_string()),
            };
            out.push(Check { name, passed, detail });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius_schottky::reference;

    fn p(s: &str) -> PuiseuxNumber {
        s.parse().unwrap()
    }

    fn fin(s: &str) -> P1Point {
        P1Point::Finite(p(s))
    }

    #[test]
    fn closed_form_examples() {
        let s = reference::se1();
        assert_eq!(u_log_abs(&s, 0, &fin("-1")).unwrap(), rat(0));
        // 1 is the center of C2
        assert!(u_log_abs(&s, 0, &fin("1")).is_err());
        assert_eq!(u_log_abs(&s, 0, &fin("t^4 + t^5")).unwrap(), rat(-3));
        assert_eq!(u_log_abs(&s, 1, &fin("t^3 + t^5")).unwrap(), rat(-5));
    }

    #[test]
    fn inside_open_disc_rejected() {
        let s = reference::se1();
        let err = u_log_abs(&s, 0, &fin("t^4 + t^6")).unwrap_err();
        assert!(matches!(err, Error::OutsideFundamentalDomain(_)));
    }

    #[test]
    fn truncated_product_length_zero() {
        let s = reference::se1();
        let a = fin("-1");
        let z = p("1");
        let ga = s.gens[0].apply_hom(&HomPoint::from_finite(&p("-1")));
        let expect = log_dist_hom(&z, &HomPoint::from_finite(&p("-1"))).unwrap()
            - log_dist_hom(&z, &ga).unwrap();
        assert_eq!(u_log_abs_truncated(&s, 0, &z, &a, 0).unwrap(), expect);
    }

    #[test]
    fn truncated_product_matches_closed_form() {
        let s = reference::se1();
        let a = fin("-1");
        let z = p("2");
        for len in 1..=4 {
            assert_eq!(u_log_abs_truncated(&s, 0, &z, &a, len).unwrap(), rat(0));
        }
        let z = p("t^4 + t^5");
        for len in 2..=3 {
            assert_eq!(u_log_abs_truncated(&s, 0, &z, &a, len).unwrap(), rat(-3));
        }
    }

    #[test]
    fn truncated_product_on_exterior_samples() {
        for s in [reference::se1(), reference::ce1()] {
            let pts = sample_exterior_points(&s, 11).unwrap();
            assert_eq!(pts.len(), 11);
            let a = P1Point::Finite(pts[0].clone());
            for z in &pts[1..] {
                for i in 0..2 {
                    let closed = u_log_abs(&s, i, &P1Point::Finite(z.clone())).unwrap();
                    for len in 2..=3 {
                        assert_eq!(u_log_abs_truncated(&s, i, z, &a, len).unwrap(), closed, "{z}");
                    }
                }
            }
        }
    }

    #[test]
    fn period_matrices() {
        let q = log_q(&reference::se1()).unwrap();
        assert_eq!(q.logq, [[rat(-4), rat(-1)], [rat(-1), rat(-6)]]);
        let q = log_q(&reference::ce1()).unwrap();
        assert_eq!(q.logq, [[rat(-3), rat(0)], [rat(0), rat(-4)]]);
        let q = log_q(&reference::cp1()).unwrap();
        assert_eq!(q.logq, [[rat(-5), rat(0)], [rat(0), rat(-4)]]);
    }

    #[test]
    fn log_q_requires_ordering() {
        let s = reference::se1().invert_generator(0);
        assert!(matches!(log_q(&s), Err(Error::Precondition(_))));
    }

    #[test]
    fn automorphy_holds_on_references() {
        for s in [reference::se1(), reference::ce1(), reference::cp1()] {
            let q = log_q(&s).unwrap();
            for c in check_automorphy(&s, &q) {
                assert!(c.passed, "{}: {}", c.name, c.detail);
            }
        }
    }
}
