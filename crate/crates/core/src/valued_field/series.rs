use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::{default_precision, format_puiseux, parse_puiseux, LogAbs, Rat};
use crate::error::{Error, ParseError, Result};

/// An element of the coefficient field, known up to `O(t^trunc_order)`.
///
/// Terms are stored with strictly increasing exponents and nonzero
/// coefficients; every stored exponent is below `trunc_order`. A `None`
/// truncation order means the value is exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PuiseuxNumber {
    terms: Vec<(Rat, Rat)>,
    trunc_order: Option<Rat>,
}

fn min_opt(a: Option<Rat>, b: Option<Rat>) -> Option<Rat> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (Some(a), None) | (None, Some(a)) => Some(a),
        (None, None) => None,
    }
}

impl PuiseuxNumber {
    /// Builds a series from arbitrary `(exponent, coefficient)` pairs,
    /// merging repeated exponents and dropping anything at or past the
    /// truncation order.
    pub fn from_terms<I>(terms: I, trunc_order: Option<Rat>) -> Self
    where
        I: IntoIterator<Item = (Rat, Rat)>,
    {
        let mut acc: BTreeMap<Rat, Rat> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_insert_with(Rat::zero) += c;
        }
        Self::from_map(acc, trunc_order)
    }

    fn from_map(acc: BTreeMap<Rat, Rat>, trunc_order: Option<Rat>) -> Self {
        let terms = acc
            .into_iter()
            .filter(|(e, c)| !c.is_zero() && trunc_order.as_ref().is_none_or(|t| e < t))
            .collect();
        PuiseuxNumber { terms, trunc_order }
    }

    pub fn zero() -> Self {
        PuiseuxNumber {
            terms: Vec::new(),
            trunc_order: None,
        }
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::monomial(c, Rat::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(super::rat(n))
    }

    /// `coeff * t^exponent`.
    pub fn monomial(coeff: Rat, exponent: Rat) -> Self {
        Self::from_terms([(exponent, coeff)], None)
    }

    /// `t^exponent`.
    pub fn t_pow(exponent: Rat) -> Self {
        Self::monomial(Rat::one(), exponent)
    }

    /// `t^n` for an integer exponent.
    pub fn t_pow_int(n: i64) -> Self {
        Self::t_pow(super::rat(n))
    }

    pub fn terms(&self) -> &[(Rat, Rat)] {
        &self.terms
    }

    pub fn trunc_order(&self) -> Option<&Rat> {
        self.trunc_order.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.trunc_order.is_none()
    }

    /// True when no term survives (the value is `0` or `O(t^n)`).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least exponent, i.e. the valuation; `None` for zero.
    pub fn valuation(&self) -> Option<&Rat> {
        self.terms.first().map(|(e, _)| e)
    }

    pub fn leading_coefficient(&self) -> Option<&Rat> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn log_abs(&self) -> LogAbs {
        match self.valuation() {
            Some(v) => LogAbs::Finite(-v.clone()),
            None => LogAbs::NegInfinity,
        }
    }

    /// Like [`log_abs`](Self::log_abs) but refuses to answer for a value
    /// whose every known term cancelled.
    pub fn checked_log_abs(&self) -> Result<LogAbs> {
        match (&self.terms.is_empty(), &self.trunc_order) {
            (true, Some(t)) => Err(Error::Precision(format!(
                "all terms cancelled below truncation order {t}"
            ))),
            _ => Ok(self.log_abs()),
        }
    }

    /// Decides `log|self| <= bound`, which stays decidable for a
    /// truncated zero as long as the truncation is deep enough.
    pub fn log_abs_at_most(&self, bound: &Rat) -> Result<bool> {
        match (self.valuation(), &self.trunc_order) {
            (Some(v), _) => Ok(-v <= *bound),
            (None, None) => Ok(true),
            (None, Some(t)) => {
                if -t <= *bound {
                    Ok(true)
                } else {
                    Err(Error::Precision(format!(
                        "cannot compare a value known only up to O(t^{t}) with log bound {bound}"
                    )))
                }
            }
        }
    }

    /// Drops every term with exponent at or past `order`.
    pub fn truncate(&self, order: &Rat) -> Self {
        let t = min_opt(self.trunc_order.clone(), Some(order.clone()));
        Self::from_terms(self.terms.iter().cloned(), t)
    }

    /// The exact polynomial part below `order`; the caller asserts the
    /// remainder is irrelevant (e.g. any point of a disc is a valid center).
    pub fn exact_part_below(&self, order: &Rat) -> Result<Self> {
        if let Some(t) = &self.trunc_order {
            if t < order {
                return Err(Error::Precision(format!(
                    "value known up to O(t^{t}) but exponents below {order} are required"
                )));
            }
        }
        Ok(Self::from_terms(
            self.terms.iter().filter(|(e, _)| e < order).cloned(),
            None,
        ))
    }

    /// Lower bound on the exponents of the value (used for truncation
    /// bookkeeping in products): the valuation, or the truncation order of a
    /// truncated zero, or `None` (= +inf) for exact zero.
    fn exponent_floor(&self) -> Option<Rat> {
        match self.valuation() {
            Some(v) => Some(v.clone()),
            None => self.trunc_order.clone(),
        }
    }

    fn mul_below(&self, other: &Self, limit: Option<&Rat>) -> Self {
        let lhs_err = match (self.exponent_floor(), other.trunc_order.as_ref()) {
            (Some(v), Some(t)) => Some(v + t),
            _ => None,
        };
        let rhs_err = match (other.exponent_floor(), self.trunc_order.as_ref()) {
            (Some(v), Some(t)) => Some(v + t),
            _ => None,
        };
        let trunc = min_opt(min_opt(lhs_err, rhs_err), limit.cloned());
        let mut acc: BTreeMap<Rat, Rat> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                if trunc.as_ref().is_some_and(|t| e >= *t) {
                    continue;
                }
                *acc.entry(e).or_insert_with(Rat::zero) += c1 * c2;
            }
        }
        Self::from_map(acc, trunc)
    }

    /// Inverse with the default working precision.
    pub fn inv(&self) -> Result<Self> {
        self.inv_with_precision(&default_precision())
    }

    /// Geometric-series inverse, kept to `precision` exponent units past the
    /// leading exponent of the result (or less, if `self` is truncated).
    pub fn inv_with_precision(&self, precision: &Rat) -> Result<Self> {
        let (v, c) = match self.terms.first() {
            Some((v, c)) => (v.clone(), c.clone()),
            None => {
                return Err(match self.trunc_order {
                    None => Error::DivisionByZero,
                    Some(_) => Error::Precision("inverting a value that cancelled".into()),
                })
            }
        };
        let c_inv = c.recip();
        // self = c t^v (1 + y) with every exponent of y positive.
        let y = Self::from_terms(
            self.terms[1..]
                .iter()
                .map(|(e, k)| (e - &v, k * &c_inv)),
            self.trunc_order.as_ref().map(|t| t - &v),
        );
        let scale = Self::monomial(c_inv, -v.clone());
        if y.is_zero() && y.is_exact() {
            return Ok(scale);
        }
        let depth = match y.trunc_order() {
            Some(t) => t.clone().min(precision.clone()),
            None => precision.clone(),
        };
        let minus_y = -&y;
        let mut acc = Self::from_terms([(Rat::zero(), Rat::one())], Some(depth.clone()));
        let mut power = acc.clone();
        loop {
            power = power.mul_below(&minus_y, Some(&depth));
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        let acc = Self::from_terms(acc.terms, Some(depth));
        Ok(&scale * &acc)
    }

    pub fn div_with_precision(&self, other: &Self, precision: &Rat) -> Result<Self> {
        Ok(self * &other.inv_with_precision(precision)?)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.div_with_precision(other, &default_precision())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_terms(
            self.terms.iter().map(|(e, k)| (e.clone(), k * c)),
            self.trunc_order.clone(),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_negative_leading(&self) -> bool {
        self.leading_coefficient().is_some_and(|c| c.is_negative())
    }
}

impl Add for &PuiseuxNumber {
    type Output = PuiseuxNumber;

    fn add(self, rhs: &PuiseuxNumber) -> PuiseuxNumber {
        let trunc = min_opt(self.trunc_order.clone(), rhs.trunc_order.clone());
        PuiseuxNumber::from_terms(
            self.terms.iter().chain(rhs.terms.iter()).cloned(),
            trunc,
        )
    }
}

impl Sub for &PuiseuxNumber {
    type Output = PuiseuxNumber;

    fn sub(self, rhs: &PuiseuxNumber) -> PuiseuxNumber {
        self + &(-rhs)
    }
}

impl Neg for &PuiseuxNumber {
    type Output = PuiseuxNumber;

    fn neg(self) -> PuiseuxNumber {
        PuiseuxNumber {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            trunc_order: self.trunc_order.clone(),
        }
    }
}

impl Mul for &PuiseuxNumber {
    type Output = PuiseuxNumber;

    fn mul(self, rhs: &PuiseuxNumber) -> PuiseuxNumber {
        self.mul_below(rhs, None)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PuiseuxNumber {
            type Output = PuiseuxNumber;
            fn $m(self, rhs: PuiseuxNumber) -> PuiseuxNumber {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PuiseuxNumber {
    type Output = PuiseuxNumber;
    fn neg(self) -> PuiseuxNumber {
        -&self
    }
}

impl fmt::Display for PuiseuxNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_puiseux(self))
    }
}

impl FromStr for PuiseuxNumber {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        parse_puiseux(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valued_field::{rat, ratio};

    fn p(s: &str) -> PuiseuxNumber {
        s.parse().unwrap()
    }

    #[test]
    fn additive_inverse_is_exact_zero() {
        let t = p("t");
        let z = &t + &(-&t);
        assert!(z.is_zero());
        assert!(z.is_exact());
        assert_eq!(z.log_abs(), LogAbs::NegInfinity);
    }

    #[test]
    fn coefficient_arithmetic() {
        assert_eq!(&p("t^2 + t^3") + &p("t^2"), p("2*t^2 + t^3"));
        assert_eq!(&p("t") * &p("t^2"), p("t^3"));
    }

    #[test]
    fn ultrametric_example() {
        let s = &p("t") + &p("t^2");
        assert_eq!(s.log_abs(), LogAbs::Finite(rat(-1)));
    }

    #[test]
    fn log_abs_examples() {
        assert_eq!(p("t^4").log_abs(), LogAbs::Finite(rat(-4)));
        assert_eq!(p("t^2 + t^3").log_abs(), LogAbs::Finite(rat(-2)));
        assert_eq!(p("1 - t").log_abs(), LogAbs::Finite(rat(0)));
        assert_eq!(p("t^(1/2)").log_abs(), LogAbs::Finite(ratio(-1, 2)));
    }

    #[test]
    fn monomial_inverse_is_exact() {
        let inv = p("t^2").inv().unwrap();
        assert_eq!(inv, p("t^-2"));
        assert!(inv.is_exact());
    }

    #[test]
    fn geometric_series_inverse() {
        let inv = p("1 - t").inv_with_precision(&rat(5)).unwrap();
        assert_eq!(inv.trunc_order(), Some(&rat(5)));
        let expect: Vec<(Rat, Rat)> = (0..5).map(|k| (rat(k), rat(1))).collect();
        assert_eq!(inv.terms(), expect.as_slice());
        let prod = &p("1 - t") * &inv;
        assert_eq!(prod.terms(), &[(rat(0), rat(1))]);
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(PuiseuxNumber::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn truncated_cancellation_is_reported() {
        let a = p("1 - t").inv_with_precision(&rat(3)).unwrap();
        let b = PuiseuxNumber::from_terms(a.terms().iter().cloned(), None);
        let d = &a - &b;
        assert!(d.is_zero());
        assert!(matches!(d.checked_log_abs(), Err(Error::Precision(_))));
        assert_eq!(d.log_abs_at_most(&rat(-2)), Ok(true));
        assert!(d.log_abs_at_most(&rat(-4)).is_err());
    }

    #[test]
    fn fractional_exponent_inverse() {
        let x = p("t^(1/2) + t");
        let inv = x.inv_with_precision(&rat(4)).unwrap();
        let prod = &x * &inv;
        assert_eq!(prod.terms(), &[(rat(0), rat(1))]);
        assert_eq!(inv.log_abs(), LogAbs::Finite(ratio(1, 2)));
    }
}
