use num_traits::Zero;

use crate::error::{Error, Result};
use crate::valued_field::{PuiseuxNumber, Rat};

use super::automorphy::off_diagonal_log_q;
use super::group::{log_dist, verify_good_domain};
use super::{MoebiusMap, SchottkyRank2};

/// Conjugates the datum by `phi`: generators become `phi g phi^-1` and each
/// disc is replaced by its image. The pole of `phi` must avoid all discs.
pub fn conjugate(s: &SchottkyRank2, phi: &MoebiusMap) -> Result<SchottkyRank2> {
    let phi_inv = phi.inverse();
    let gens = [0, 1].map(|i| phi.compose(&s.gens[i]).compose(&phi_inv));
    let b = [phi.image_of_disc(&s.b[0])?, phi.image_of_disc(&s.b[1])?];
    let c = [phi.image_of_disc(&s.c[0])?, phi.image_of_disc(&s.c[1])?];
    Ok(SchottkyRank2::new(gens, b, c))
}

fn abs_log(s: &SchottkyRank2) -> Result<[Rat; 4]> {
    Ok([
        SchottkyRank2::log_abs_of_disc(&s.b[0])?,
        SchottkyRank2::log_abs_of_disc(&s.c[0])?,
        SchottkyRank2::log_abs_of_disc(&s.b[1])?,
        SchottkyRank2::log_abs_of_disc(&s.c[1])?,
    ])
}

/// `|b1| < |c1| < |c2|`, `|b1| < |b2| < |c2|`, and `|b2| < |c1|` when the
/// cycles share an edge.
pub fn is_normalized(s: &SchottkyRank2) -> Result<bool> {
    let [b1, c1, b2, c2] = abs_log(s)?;
    let base = b1 < c1 && c1 < c2 && b1 < b2 && b2 < c2;
    if !base {
        return Ok(false);
    }
    if !off_diagonal_log_q(s)?.is_zero() {
        return Ok(b2 < c1);
    }
    Ok(true)
}

/// A point `center + t^e` at log-distance strictly between `inner` and
/// `outer` from `center` (the midpoint).
fn point_between(center: &PuiseuxNumber, inner: &Rat, outer: &Rat) -> Result<PuiseuxNumber> {
    if inner >= outer {
        return Err(Error::Inconsistent(format!(
            "no room between log-radius {inner} and distance {outer}"
        )));
    }
    let mid = (inner + outer) / Rat::from_integer(2.into());
    Ok(center + &PuiseuxNumber::t_pow(-mid))
}

/// `z -> (z - p) / (z - q)`.
fn separating_map(p: PuiseuxNumber, q: PuiseuxNumber) -> Result<MoebiusMap> {
    MoebiusMap::new(PuiseuxNumber::one(), -&p, PuiseuxNumber::one(), -&q)
}

/// Minimal distance from disc `k` (0..4 in the order B1, C1, B2, C2) to the
/// other centers.
fn nearest_other(s: &SchottkyRank2, k: usize) -> Result<Rat> {
    let discs = s.discs();
    let mut best: Option<Rat> = None;
    for (j, (_, d)) in discs.iter().enumerate() {
        if j == k {
            continue;
        }
        let dist = log_dist(&discs[k].1.center, &d.center)?;
        best = Some(match best {
            Some(b) if b <= dist => b,
            _ => dist,
        });
    }
    Ok(best.expect("three other discs"))
}

/// Conjugation sending a point near disc `near_zero` to 0 and a point near
/// disc `near_infinity` to infinity.
fn push_apart(s: &SchottkyRank2, near_zero: usize, near_infinity: usize) -> Result<SchottkyRank2> {
    let discs = s.discs();
    let p = point_between(
        &discs[near_zero].1.center,
        &discs[near_zero].1.log_radius,
        &nearest_other(s, near_zero)?,
    )?;
    let q = point_between(
        &discs[near_infinity].1.center,
        &discs[near_infinity].1.log_radius,
        &nearest_other(s, near_infinity)?,
    )?;
    conjugate(s, &separating_map(p, q)?)
}

/// Relabels (generator swap and inversions) so that `|c2 - b1|` is the
/// largest pairwise center distance.
fn relabel(s: &SchottkyRank2) -> Result<SchottkyRank2> {
    for swap in [false, true] {
        for inv1 in [false, true] {
            for inv2 in [false, true] {
                let mut cand = if swap { s.swap_generators() } else { s.clone() };
                if inv1 {
                    cand = cand.invert_generator(0);
                }
                if inv2 {
                    cand = cand.invert_generator(1);
                }
                let target = log_dist(cand.c_center(1), cand.b_center(0))?;
                let discs = cand.discs();
                let mut is_max = true;
                for i in 0..4 {
                    for j in i + 1..4 {
                        if log_dist(&discs[i].1.center, &discs[j].1.center)? > target {
                            is_max = false;
                        }
                    }
                }
                if is_max {
                    return Ok(cand);
                }
            }
        }
    }
    Err(Error::Inconsistent("no labelling maximizes |c2 - b1|".into()))
}

/// Conjugates and relabels a good datum into the ordered form
/// `|b1| < |b2|, |c1| < |c2|` (strictly interleaved in the shared-edge case).
/// Already ordered data are returned unchanged.
pub fn normalize(s: &SchottkyRank2) -> Result<SchottkyRank2> {
    let report = verify_good_domain(s);
    if !report.all_passed() {
        return Err(Error::Precondition(format!(
            "not a good fundamental domain:\n{report}"
        )));
    }
    if is_normalized(s)? {
        return Ok(s.clone());
    }
    let labelled = relabel(s)?;
    // B1 = index 0, C1 = 1, B2 = 2, C2 = 3 in `discs()`
    let mut out = push_apart(&labelled, 0, 3)?;
    let [_, c1, b2, _] = abs_log(&out)?;
    if !off_diagonal_log_q(&out)?.is_zero() && c1 == b2 {
        out = push_apart(&out, 1, 3)?.invert_generator(0);
    }
    let report = verify_good_domain(&out);
    if !report.all_passed() {
        return Err(Error::Inconsistent(format!(
            "conjugated datum fails verification:\n{report}"
        )));
    }
    if !is_normalized(&out)? {
        return Err(Error::Inconsistent(
            "conjugated datum is still not ordered".into(),
        ));
    }
    Ok(out)
}
