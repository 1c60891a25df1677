use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::valued_field::Rat;

use super::lattice::{add, scale, TorusPoint, TropLattice, Vec2};
use super::{MetricSkeleton, SkeletonPoint};

pub fn unit(i: usize) -> Vec2 {
    let mut e = [Rat::zero(), Rat::zero()];
    e[i] = Rat::one();
    e
}

/// `v = (ell, ell)` for a shared edge, otherwise 0.
pub fn base_value(skel: &MetricSkeleton) -> Vec2 {
    if skel.is_shared() {
        [skel.ell.clone(), skel.ell.clone()]
    } else {
        [Rat::zero(), Rat::zero()]
    }
}

/// A representative of `μ(p)` in `Q^2` (before reduction): `v + a e_i` on
/// the free part of cycle `i`, `s (1, 1)` at shared-edge offset `s`, and 0
/// on the bridge.
pub fn mu_lift(skel: &MetricSkeleton, p: &SkeletonPoint) -> Result<Vec2> {
    let p = skel.canonical(p)?;
    Ok(match p {
        SkeletonPoint::Cycle { cycle, arc } => add(&base_value(skel), &scale(&arc, &unit(cycle))),
        SkeletonPoint::Shared { offset } => [offset.clone(), offset],
        SkeletonPoint::Bridge { .. } => [Rat::zero(), Rat::zero()],
    })
}

pub fn mu(skel: &MetricSkeleton, lattice: &TropLattice, p: &SkeletonPoint) -> Result<TorusPoint> {
    Ok(lattice.reduce(&mu_lift(skel, p)?))
}

/// Continuous lift of `μ` along cycle `i` for `arc` in `[0, L_i]`, starting
/// at the base vertex. Going once around adds `-λ_i`.
pub fn mu_cycle_lift(skel: &MetricSkeleton, i: usize, arc: &Rat) -> Result<Vec2> {
    if *arc < Rat::zero() || *arc > skel.lengths[i] {
        return Err(Error::Precondition(format!(
            "arc {arc} outside [0, {}]",
            skel.lengths[i]
        )));
    }
    let v = base_value(skel);
    let free = skel.free_length(i);
    if *arc <= free {
        return Ok(add(&v, &scale(arc, &unit(i))));
    }
    let past = arc - &free;
    Ok(add(&add(&v, &scale(&free, &unit(i))), &[past.clone(), past]))
}

/// One pair of cycle points whose torus distance differs from arc distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometryViolation {
    pub cycle: usize,
    pub arcs: (Rat, Rat),
    pub arc_distance: Rat,
    pub image_distance: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IsometryReport {
    pub pairs_checked: usize,
    pub violations: Vec<IsometryViolation>,
}

impl IsometryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares, for all pairs of grid points on each cycle, the max-metric
/// torus distance of the `μ` images with the intrinsic cycle distance.
pub fn check_mu_cycle_isometry(
    skel: &MetricSkeleton,
    lattice: &TropLattice,
    step: &Rat,
) -> Result<IsometryReport> {
    let mut report = IsometryReport::default();
    for i in 0..2 {
        let len = &skel.lengths[i];
        let mut arcs = Vec::new();
        let mut a = Rat::zero();
        while a < *len {
            arcs.push(a.clone());
            a += step;
        }
        let images: Vec<TorusPoint> = arcs
            .iter()
            .map(|a| mu(skel, lattice, &skel.cycle_point(i, a)))
            .collect::<Result<_>>()?;
        for x in 0..arcs.len() {
            for y in x + 1..arcs.len() {
                let d = &arcs[y] - &arcs[x];
                let arc_distance = std::cmp::min(d.clone(), len - &d);
                let image_distance = lattice.torus_distance(&images[x], &images[y]);
                report.pairs_checked += 1;
                if arc_distance != image_distance {
                    report.violations.push(IsometryViolation {
                        cycle: i,
                        arcs: (arcs[x].clone(), arcs[y].clone()),
                        arc_distance,
                        image_distance,
                    });
                }
            }
        }
    }
    Ok(report)
}
