use hall_core::catalog::{group_order, GroupDescriptor};
use hall_core::constructions::build_group;
use hall_core::permgrp::Limits;
use proptest::prelude::*;

fn grid() -> Vec<String> {
    let mut out: Vec<String> = (3..=10).map(|n| format!("Alt:{n}")).collect();
    out.extend((1..=10).map(|n| format!("Sym:{n}")));
    out.extend(
        (5u64..=61)
            .filter(|&q| hall_core::arith::is_prime(q))
            .map(|q| format!("PSL+:2:{q}")),
    );
    out
}

#[test]
fn every_grid_descriptor_matches_the_catalog() {
    for text in grid() {
        let d = GroupDescriptor::parse(&text).unwrap();
        let g = build_group(&d, &Limits::default()).unwrap();
        assert_eq!(g.order(), group_order(&d).unwrap().value(), "{text}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn kernel_order_equals_catalog_order(text in proptest::sample::select(grid())) {
        let d = GroupDescriptor::parse(&text).unwrap();
        let g = build_group(&d, &Limits::default()).unwrap();
        let expected = group_order(&d).unwrap();
        prop_assert_eq!(g.order(), expected.value());
    }
}
