use hall_core::arith::prime_divisors;
use hall_core::constructions::{sylow, sylow_conjugates};
use hall_core::permgrp::{derived_series, normalizer_scan, Limits, Perm, PermGroup};
use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;

fn perm(degree: usize) -> impl Strategy<Value = Perm> {
    Just((0..degree).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Perm::from_images(&images).unwrap())
}

fn group() -> impl Strategy<Value = PermGroup> {
    (3usize..=7).prop_flat_map(|n| {
        proptest::collection::vec(perm(n), 1..=3)
            .prop_map(move |gens| PermGroup::new(n, gens, &Limits::default()).unwrap())
    })
}

fn divides(a: &BigUint, b: &BigUint) -> bool {
    (b % a).is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn order_ignores_generator_order_and_redundancy(g in group(), extra in 0usize..3) {
        let limits = Limits::default();
        let mut gens: Vec<Perm> = g.generators().to_vec();
        gens.reverse();
        let product = gens.iter().fold(Perm::identity(g.degree()), |acc, x| acc.compose(x));
        gens.push(product.pow(extra as u64 + 1));
        let h = PermGroup::new(g.degree(), gens, &limits).unwrap();
        prop_assert_eq!(h.order(), g.order());
        prop_assert!(h.same_group(&g));
    }

    #[test]
    fn subgroups_satisfy_lagrange(g in group()) {
        let limits = Limits::default();
        for k in 1..=g.generators().len() {
            let h = PermGroup::new(g.degree(), g.generators()[..k].to_vec(), &limits).unwrap();
            prop_assert!(divides(h.order(), g.order()));
            prop_assert!(h.is_subgroup_of(&g));
        }
    }

    #[test]
    fn sylow_normalizer_index_and_congruence(g in group()) {
        let limits = Limits::default();
        let order = g.order_u64().unwrap();
        prop_assume!(order > 1);
        for r in prime_divisors(order).unwrap().iter() {
            let p = sylow(&g, r, &limits).unwrap();
            let rpart = (0..).map(|k| r.pow(k)).take_while(|x| order % x == 0).last().unwrap();
            prop_assert_eq!(p.order_u64(), Some(rpart));
            let n = normalizer_scan(&g, &p, &limits).unwrap();
            let conjugates = sylow_conjugates(&g, &p, &limits).unwrap();
            prop_assert!(divides(n.order(), g.order()));
            prop_assert_eq!(conjugates.len() as u64 * n.order_u64().unwrap(), order);
            prop_assert_eq!(conjugates.len() as u64 % r, 1);
            prop_assert!(conjugates.iter().all(|c| c.order_u64() == Some(rpart)));
        }
    }

    #[test]
    fn derived_series_strictly_decreases(g in group()) {
        let series = derived_series(&g, &Limits::default()).unwrap();
        let orders = series.orders();
        for w in orders.windows(2) {
            prop_assert!(w[1] < w[0]);
            prop_assert!(divides(&w[1], &w[0]));
        }
        for w in series.terms.windows(2) {
            prop_assert!(w[1].is_subgroup_of(&w[0]));
        }
        let last = series.terms.last().unwrap();
        prop_assert_eq!(series.solvable, last.is_trivial());
    }
}
