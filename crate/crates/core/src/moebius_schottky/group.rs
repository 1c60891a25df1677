use std::fmt;

use crate::error::{Error, Result};
use crate::valued_field::{LogAbs, PuiseuxNumber};

use super::{Disc, MoebiusMap};

/// Rank-2 Schottky datum: generators `gens[i]` with discs `b[i]`, `c[i]`
/// such that `gens[i]` maps the complement of the open disc `b[i]` onto the
/// closed disc `c[i]`. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchottkyRank2 {
    pub gens: [MoebiusMap; 2],
    pub b: [Disc; 2],
    pub c: [Disc; 2],
}

/// Outcome of one check in [`verify_good_domain`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: impl Into<String>, outcome: Result<bool>, ok_detail: &str) {
        let (passed, detail) = match outcome {
            Ok(true) => (true, ok_detail.to_string()),
            Ok(false) => (false, "condition does not hold".to_string()),
            Err(e) => (false, e.to_string()),
        };
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "{mark} {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

impl SchottkyRank2 {
    pub fn new(gens: [MoebiusMap; 2], b: [Disc; 2], c: [Disc; 2]) -> Self {
        SchottkyRank2 { gens, b, c }
    }

    /// Discs in the order `B1, C1, B2, C2`.
    pub fn discs(&self) -> [(&'static str, &Disc); 4] {
        [
            ("B1", &self.b[0]),
            ("C1", &self.c[0]),
            ("B2", &self.b[1]),
            ("C2", &self.c[1]),
        ]
    }

    pub fn b_center(&self, i: usize) -> &PuiseuxNumber {
        &self.b[i].center
    }

    pub fn c_center(&self, i: usize) -> &PuiseuxNumber {
        &self.c[i].center
    }

    /// Replaces generator `i` by its inverse, swapping its two discs.
    pub fn invert_generator(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.gens[i] = s.gens[i].inverse();
        std::mem::swap(&mut s.b[i], &mut s.c[i]);
        s
    }

    pub fn swap_generators(&self) -> Self {
        let mut s = self.clone();
        s.gens.swap(0, 1);
        s.b.swap(0, 1);
        s.c.swap(0, 1);
        s
    }

    /// `log|center|` of a disc not containing 0; this is the absolute value
    /// of every point of the disc.
    pub fn log_abs_of_disc(d: &Disc) -> Result<crate::Rat> {
        d.center.checked_log_abs()?.expect_finite("disc center")
    }

    /// Fails with `OutsideFundamentalDomain` if `z` lies in one of the open
    /// discs; boundary points are accepted.
    pub fn require_outside_open_discs(&self, z: &super::P1Point) -> Result<()> {
        for (name, d) in self.discs() {
            if d.contains_with(z, true)? {
                return Err(Error::OutsideFundamentalDomain(format!(
                    "{z} lies in the open disc {name}"
                )));
            }
        }
        Ok(())
    }
}

/// Checks that the four discs form a good fundamental domain for the
/// generators. Failures are reported, not raised.
pub fn verify_good_domain(s: &SchottkyRank2) -> VerificationReport {
    let mut report = VerificationReport::default();
    let discs = s.discs();
    for i in 0..4 {
        for j in i + 1..4 {
            let (ni, di) = discs[i];
            let (nj, dj) = discs[j];
            report.push(
                format!("{ni} and {nj} disjoint"),
                di.disjoint(dj),
                "centers farther apart than both radii",
            );
        }
    }
    let zero = PuiseuxNumber::zero();
    for (name, d) in discs {
        report.push(
            format!("0 outside {name}"),
            d.contains(&zero).map(|inside| !inside),
            "log|center| exceeds the radius",
        );
    }
    for i in 0..2 {
        let g = &s.gens[i];
        let n = i + 1;
        report.push(
            format!("gamma{n} maps P1 minus open B{n} onto C{n}"),
            g.image_of_complement(&s.b[i])
                .and_then(|img| img.same_disc(&s.c[i])),
            "image disc equals C",
        );
        report.push(
            format!("gamma{n}^-1 maps P1 minus C{n} onto open B{n}"),
            g.inverse()
                .image_of_closed_complement(&s.c[i])
                .and_then(|img| img.same_disc(&s.b[i])),
            "image open disc equals open B",
        );
    }
    report
}

/// `log|x - y|` for exact centers, rejecting coincidences.
pub(crate) fn log_dist(x: &PuiseuxNumber, y: &PuiseuxNumber) -> Result<crate::Rat> {
    match (x - y).checked_log_abs()? {
        LogAbs::Finite(r) => Ok(r),
        LogAbs::NegInfinity => Err(Error::Degenerate("coincident centers".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius_schottky::reference;
    use crate::valued_field::rat;

    #[test]
    fn reference_instances_pass() {
        for s in [reference::se1(), reference::ce1(), reference::cp1()] {
            let r = verify_good_domain(&s);
            assert!(r.all_passed(), "{r}");
            assert_eq!(r.checks.len(), 6 + 4 + 4);
        }
    }

    #[test]
    fn enlarged_disc_breaks_disjointness() {
        let mut s = reference::se1();
        s.b[0].log_radius = rat(-3);
        let r = verify_good_domain(&s);
        assert!(!r.all_passed());
        assert!(r
            .failures()
            .any(|c| c.name == "B1 and B2 disjoint"));
    }

    #[test]
    fn identity_generator_breaks_mapping() {
        let mut s = reference::se1();
        s.gens[0] = MoebiusMap::identity();
        let r = verify_good_domain(&s);
        let failed: Vec<_> = r.failures().map(|c| c.name.clone()).collect();
        assert!(failed.iter().any(|n| n.starts_with("gamma1 maps")));
        assert!(r.checks.iter().filter(|c| c.name.starts_with("gamma2")).all(|c| c.passed));
    }

    #[test]
    fn inverted_generator_still_valid() {
        let s = reference::se1().invert_generator(0);
        assert!(verify_good_domain(&s).all_passed());
    }
}
