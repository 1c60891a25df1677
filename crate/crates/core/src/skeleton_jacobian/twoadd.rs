use num_traits::Signed;

use crate::error::{Error, Result};
use crate::valued_field::Rat;

use super::lattice::{add, scale, sub, TorusPoint, TropLattice};
use super::mu::base_value;
use super::{MetricSkeleton, SkeletonPoint};

/// Splits `x = 2v + α e1 + β e2 (mod Λ)` with `0 < α < L1 - ell` and
/// `0 < β < L2 - ell` into the cycle points at arcs `α` and `β`, whose
/// `μ` values are `v + α e1` and `v + β e2`. Fails unless exactly one
/// representative lies in that open box.
pub fn two_summand_decomposition(
    lattice: &TropLattice,
    skel: &MetricSkeleton,
    x: &TorusPoint,
) -> Result<(SkeletonPoint, SkeletonPoint)> {
    let v = base_value(skel);
    let y = sub(&x.rep, &scale(&Rat::from_integer(2.into()), &v));
    let limits = [skel.free_length(0), skel.free_length(1)];
    let mut found = Vec::new();
    for m in -4i64..=4 {
        for n in -4i64..=4 {
            let c = add(
                &y,
                &lattice.combine(&Rat::from_integer(m.into()), &Rat::from_integer(n.into())),
            );
            if (0..2).all(|i| c[i].is_positive() && c[i] < limits[i]) {
                found.push(c);
            }
        }
    }
    match found.as_slice() {
        [c] => Ok((
            SkeletonPoint::Cycle { cycle: 0, arc: c[0].clone() },
            SkeletonPoint::Cycle { cycle: 1, arc: c[1].clone() },
        )),
        [] => Err(Error::OutsideDecomposition(format!(
            "{x} is not 2v + a e1 + b e2 with 0 < a < {} and 0 < b < {}",
            limits[0], limits[1]
        ))),
        _ => Err(Error::OutsideDecomposition(format!(
            "{x} has {} representatives in the open box",
            found.len()
        ))),
    }
}

/// All unordered pairs of grid points whose `μ` values sum to `x`; the
/// brute-force counterpart of [`two_summand_decomposition`].
pub fn grid_decompositions(
    lattice: &TropLattice,
    skel: &MetricSkeleton,
    x: &TorusPoint,
    step: &Rat,
) -> Result<Vec<(SkeletonPoint, SkeletonPoint)>> {
    let points = skel.grid(step);
    let lifts = points
        .iter()
        .map(|p| super::mu::mu_lift(skel, p))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for i in 0..points.len() {
        for j in i..points.len() {
            let s = add(&lifts[i], &lifts[j]);
            if lattice.contains(&sub(&s, &x.rep)) {
                out.push((points[i].clone(), points[j].clone()));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius_schottky::{log_q, reference};
    use crate::skeleton_jacobian::build_skeleton;
    use crate::valued_field::{rat, ratio};

    fn setup() -> (MetricSkeleton, TropLattice) {
        let s = reference::se1();
        let q = log_q(&s).unwrap();
        (build_skeleton(&s, &q).unwrap(), TropLattice::from_period_matrix(&q).unwrap())
    }

    #[test]
    fn shared_edge_example() {
        let (k, l) = setup();
        let x = l.reduce(&[rat(2 + 1), rat(2 + 2)]);
        let (s, t) = two_summand_decomposition(&l, &k, &x).unwrap();
        assert_eq!(s, SkeletonPoint::Cycle { cycle: 0, arc: rat(1) });
        assert_eq!(t, SkeletonPoint::Cycle { cycle: 1, arc: rat(2) });
    }

    #[test]
    fn boundary_is_rejected() {
        let (k, l) = setup();
        // α = L1 - ell = 3
        let x = l.reduce(&[rat(2 + 3), rat(2 + 2)]);
        assert!(matches!(
            two_summand_decomposition(&l, &k, &x),
            Err(Error::OutsideDecomposition(_))
        ));
    }

    #[test]
    fn grid_search_finds_only_the_decomposition() {
        let (k, l) = setup();
        let x = l.reduce(&[rat(3), rat(4)]);
        let pairs = grid_decompositions(&l, &k, &x, &ratio(1, 4)).unwrap();
        assert_eq!(
            pairs,
            vec![(
                SkeletonPoint::Cycle { cycle: 0, arc: rat(1) },
                SkeletonPoint::Cycle { cycle: 1, arc: rat(2) }
            )]
        );
    }
}
