//! Built-in test instances, constructed from fixed points and multipliers.

use crate::valued_field::{rat, PuiseuxNumber, Rat};

use super::{Disc, MoebiusMap, SchottkyRank2};

/// One generator: repelling center, attracting center, multiplier, and the
/// log-radii of the two discs around the centers.
pub struct GeneratorSpec {
    pub repelling: PuiseuxNumber,
    pub attracting: PuiseuxNumber,
    pub multiplier: PuiseuxNumber,
    pub log_radius_b: Rat,
    pub log_radius_c: Rat,
}

impl GeneratorSpec {
    fn new(b: PuiseuxNumber, c: PuiseuxNumber, k: PuiseuxNumber, rb: i64, rc: i64) -> Self {
        GeneratorSpec {
            repelling: b,
            attracting: c,
            multiplier: k,
            log_radius_b: rat(rb),
            log_radius_c: rat(rc),
        }
    }
}

pub fn build(specs: [GeneratorSpec; 2]) -> SchottkyRank2 {
    let [g1, g2] = specs.map(|g| {
        let m = MoebiusMap::hyperbolic(&g.repelling, &g.attracting, &g.multiplier)
            .expect("reference generator is nonsingular");
        (
            m,
            Disc::new(g.repelling, g.log_radius_b),
            Disc::new(g.attracting, g.log_radius_c),
        )
    });
    SchottkyRank2::new([g1.0, g2.0], [g1.1, g2.1], [g1.2, g2.2])
}

fn t(n: i64) -> PuiseuxNumber {
    PuiseuxNumber::t_pow_int(n)
}

/// Shared-edge instance: cycle lengths 4 and 6, shared edge of length 1.
pub fn se1() -> SchottkyRank2 {
    build([
        GeneratorSpec::new(t(4), t(2), t(4), -5, -3),
        GeneratorSpec::new(t(3), t(0), t(6), -5, -1),
    ])
}

/// Connecting-edge instance: cycle lengths 3 and 4, bridge of length 2.
pub fn ce1() -> SchottkyRank2 {
    build([
        GeneratorSpec::new(t(4), t(3), t(3), -5, -4),
        GeneratorSpec::new(t(1), t(0), t(4), -2, -2),
    ])
}

/// Connecting-point instance: cycle lengths 5 and 4 meeting in one vertex.
pub fn cp1() -> SchottkyRank2 {
    build([
        GeneratorSpec::new(t(4), -&t(1), t(5), -5, -2),
        GeneratorSpec::new(t(1), t(0), t(4), -2, -2),
    ])
}
