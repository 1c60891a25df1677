use std::collections::BTreeMap;

use mumford_trop::berkovich_tree::{join, median, path, path_distance, TypeTwoPoint};
use mumford_trop::faithful_trop::{
    divisor_is_tropically_principal, solve_slope_field, tropicalize, Divisor, JoinEdge,
    TropicalizeOptions,
};
use mumford_trop::moebius_schottky::{log_q, reference, Disc, MoebiusMap, SchottkyRank2};
use mumford_trop::skeleton_jacobian::{
    add, build_skeleton, max_norm, mu, mu_cycle_lift, sub, two_summand_decomposition,
    MetricSkeleton, SkeletonPoint, TropLattice,
};
use mumford_trop::valued_field::{rat, ratio};
use mumford_trop::{LogAbs, PuiseuxNumber, Rat};
use proptest::prelude::*;

fn arb_rat(range: std::ops::Range<i64>) -> impl Strategy<Value = Rat> {
    (range, 1i64..4).prop_map(|(n, d)| ratio(n, d))
}

fn arb_coeff() -> impl Strategy<Value = Rat> {
    (prop_oneof![-5i64..0, 1i64..6], 1i64..4).prop_map(|(n, d)| ratio(n, d))
}

/// Exact series with a handful of terms.
fn arb_series() -> impl Strategy<Value = PuiseuxNumber> {
    proptest::collection::vec((arb_coeff(), arb_rat(-8..16)), 0..5)
        .prop_map(|terms| PuiseuxNumber::from_terms(terms, None))
}

fn nonzero_series() -> impl Strategy<Value = PuiseuxNumber> {
    arb_series().prop_filter("nonzero", |x| !x.is_zero())
}

fn arb_point() -> impl Strategy<Value = TypeTwoPoint> {
    (arb_series(), arb_rat(-12..6)).prop_map(|(c, r)| TypeTwoPoint::new(c, r))
}

fn max_log(a: LogAbs, b: LogAbs) -> LogAbs {
    std::cmp::max(a, b)
}

fn setup(s: &SchottkyRank2) -> (MetricSkeleton, TropLattice) {
    let q = log_q(s).unwrap();
    (build_skeleton(s, &q).unwrap(), TropLattice::from_period_matrix(&q).unwrap())
}

fn instance(k: usize) -> SchottkyRank2 {
    match k {
        0 => reference::se1(),
        1 => reference::ce1(),
        _ => reference::cp1(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ultrametric_inequality(x in arb_series(), y in arb_series()) {
        let s = (&x + &y).log_abs();
        prop_assert!(s <= max_log(x.log_abs(), y.log_abs()));
        if x.log_abs() != y.log_abs() {
            prop_assert_eq!(s, max_log(x.log_abs(), y.log_abs()));
        }
    }

    #[test]
    fn absolute_value_is_multiplicative(x in arb_series(), y in arb_series()) {
        prop_assert_eq!((&x * &y).log_abs(), x.log_abs() + y.log_abs());
    }

    #[test]
    fn ring_laws(x in arb_series(), y in arb_series(), z in arb_series()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn inverse_agrees_to_working_precision(x in nonzero_series()) {
        let inv = x.inv().unwrap();
        let one = &(&x * &inv) - &PuiseuxNumber::one();
        // the product differs from 1 only beyond the truncation order
        match one.checked_log_abs() {
            Err(_) => {}
            Ok(LogAbs::NegInfinity) => {}
            Ok(LogAbs::Finite(v)) => prop_assert!(v < rat(-16), "residual {}", v),
        }
    }

    #[test]
    fn path_distance_is_a_metric(x in arb_point(), y in arb_point(), z in arb_point()) {
        let dxy = path_distance(&x, &y);
        prop_assert_eq!(dxy.clone(), path_distance(&y, &x));
        prop_assert!(dxy >= rat(0));
        prop_assert_eq!(dxy == rat(0), x == y);
        prop_assert!(path_distance(&x, &z) <= dxy + path_distance(&y, &z));
    }

    #[test]
    fn join_is_associative_and_commutative(x in arb_point(), y in arb_point(), z in arb_point()) {
        prop_assert_eq!(join(&x, &y), join(&y, &x));
        prop_assert_eq!(join(&join(&x, &y), &z), join(&x, &join(&y, &z)));
        let j = join(&x, &y);
        prop_assert_eq!(path_distance(&x, &y), path_distance(&x, &j) + path_distance(&j, &y));
    }

    #[test]
    fn median_lies_on_all_three_paths(x in arb_point(), y in arb_point(), z in arb_point()) {
        let m = median(&x, &y, &z);
        for (a, b) in [(&x, &y), (&y, &z), (&x, &z)] {
            prop_assert!(path(a, b).contains(&m));
        }
    }

    #[test]
    fn disc_images_compose(
        entries1 in proptest::array::uniform4(arb_series()),
        entries2 in proptest::array::uniform4(arb_series()),
        center in arb_series(),
        radius in arb_rat(-10..0),
    ) {
        let [a, b, c, d] = entries1;
        let m1 = MoebiusMap::new(a, b, c, d);
        let [a, b, c, d] = entries2;
        let m2 = MoebiusMap::new(a, b, c, d);
        prop_assume!(m1.is_ok() && m2.is_ok());
        let (m1, m2) = (m1.unwrap(), m2.unwrap());
        let disc = Disc::new(center, radius);
        let step = m1.image_of_disc(&disc).and_then(|d1| m2.image_of_disc(&d1));
        let direct = m2.compose(&m1).image_of_disc(&disc);
        prop_assume!(step.is_ok() && direct.is_ok());
        let (step, direct) = (step.unwrap(), direct.unwrap());
        prop_assert!(step.same_disc(&direct).unwrap(), "{} vs {}", step, direct);
    }

    #[test]
    fn reduction_is_lattice_periodic(
        k in 0usize..3,
        x in proptest::array::uniform2(arb_rat(-30..30)),
        m in -3i64..4,
        n in -3i64..4,
    ) {
        let (_, l) = setup(&instance(k));
        let shifted = add(&x, &l.combine(&rat(m), &rat(n)));
        prop_assert_eq!(l.reduce(&shifted), l.reduce(&x));
        prop_assert!(l.contains(&sub(&shifted, &x)));
        prop_assert_eq!(l.torus_distance(&l.reduce(&x), &l.reduce(&shifted)), rat(0));
    }

    #[test]
    fn mu_is_periodic_along_each_cycle(k in 0usize..3, i in 0usize..2, a in arb_rat(0..40)) {
        let (skel, l) = setup(&instance(k));
        let arc = a % skel.lengths[i].clone();
        let p = skel.cycle_point(i, &arc);
        let lifted = mu_cycle_lift(&skel, i, &arc).unwrap();
        prop_assert_eq!(l.reduce(&lifted), mu(&skel, &l, &p).unwrap());
        let wrapped = skel.cycle_point(i, &(&arc + &skel.lengths[i]));
        prop_assert_eq!(mu(&skel, &l, &wrapped).unwrap(), mu(&skel, &l, &p).unwrap());
    }

    #[test]
    fn random_divisors_give_harmonic_fields(
        k in 0usize..3,
        picks in proptest::collection::vec((0usize..1000, 0usize..1000), 1..4),
    ) {
        let (skel, l) = setup(&instance(k));
        let grid = skel.grid(&ratio(1, 8));
        let mut terms = BTreeMap::new();
        for (p, q) in picks {
            *terms.entry(grid[p % grid.len()].clone()).or_insert(0) += 1;
            *terms.entry(grid[q % grid.len()].clone()).or_insert(0) -= 1;
        }
        let div = Divisor::new(terms);
        let sol = solve_slope_field(&skel, div.terms.keys(), &div).unwrap();
        prop_assert!(sol.is_harmonic());
        prop_assert_eq!(sol.integral, divisor_is_tropically_principal(&skel, &l, &div).unwrap());
    }

    #[test]
    fn constructed_principal_divisors_have_integral_slopes(
        p in 0usize..1000,
        q in 0usize..1000,
    ) {
        let (skel, l) = setup(&reference::se1());
        let grid = skel.grid(&ratio(1, 8));
        let (p, q) = (grid[p % grid.len()].clone(), grid[q % grid.len()].clone());
        let x = l.reduce(&add(&mu(&skel, &l, &p).unwrap().rep, &mu(&skel, &l, &q).unwrap().rep));
        let decomposition = two_summand_decomposition(&l, &skel, &x);
        prop_assume!(decomposition.is_ok());
        let (s, t) = decomposition.unwrap();
        let mut terms: BTreeMap<SkeletonPoint, i64> = BTreeMap::new();
        for (point, m) in [(p, 1), (q, 1), (s, -1), (t, -1)] {
            *terms.entry(point).or_insert(0) += m;
        }
        let div = Divisor::new(terms);
        prop_assert!(divisor_is_tropically_principal(&skel, &l, &div).unwrap());
        let sol = solve_slope_field(&skel, div.terms.keys(), &div).unwrap();
        prop_assert!(sol.integral && sol.is_harmonic());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tropical_curves_are_balanced_with_any_join_lengths(
        k in 0usize..3,
        length in arb_rat(1..12),
        which in 0usize..4,
    ) {
        let s = instance(k);
        let plain = tropicalize(&s, &TropicalizeOptions::default()).unwrap();
        let groups = plain.coordinates.marked.coincidences();
        let mut options = TropicalizeOptions::default();
        if let Some([a, b, ..]) = groups.get(which % groups.len().max(1)).map(Vec::as_slice) {
            options.join_edges.push(JoinEdge { labels: (*a, *b), length });
        }
        let r = tropicalize(&s, &options).unwrap();
        for sol in &r.slopes {
            prop_assert!(sol.is_harmonic());
            prop_assert!(sol.integral);
        }
        prop_assert!(r.curve_2d.is_balanced());
        prop_assert!(r.curve_3d.is_balanced());
    }
}

#[test]
fn image_of_each_cycle_has_lattice_length_of_the_cycle() {
    for k in 0..3 {
        let (skel, l) = setup(&instance(k));
        for i in 0..2 {
            let start = mu_cycle_lift(&skel, i, &rat(0)).unwrap();
            let end = mu_cycle_lift(&skel, i, &skel.lengths[i]).unwrap();
            let closing = sub(&end, &start);
            assert!(l.contains(&closing));
            assert_eq!(max_norm(&closing), skel.lengths[i], "instance {k}, cycle {i}");
        }
    }
}
