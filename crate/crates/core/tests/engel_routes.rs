//! Both invariant routes and the coordinate formula for J agree on random
//! polynomial markings.
use contact_engel::engel;
use contact_engel::{Expr, Symbol};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn marking() -> impl Strategy<Value = Expr> {
    let term = (-3i64..=3, 0u32..5, prop::option::of(0u32..5));
    prop::collection::vec(term, 1..5).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(c, i, j)| {
                let x = Expr::sym(Symbol::x(i));
                let m = match j {
                    Some(j) => &x * &Expr::sym(Symbol::x(j)),
                    None => x,
                };
                &m * &Expr::int(c)
            })
            .sum()
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 24,
        rng_seed: RngSeed::Fixed(41),
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn closed_form_matches_structure_equations(t in marking()) {
        let a = engel::invariants_closed_form(&t).unwrap();
        let b = engel::invariants_from_structure_equations(&t).unwrap();
        prop_assert!(a.differences(&b).is_empty(), "t = {}", t);
    }

    #[test]
    fn j_is_minus_xi4_of_t(t in marking()) {
        let j = engel::invariants_closed_form(&t).unwrap().j;
        prop_assert_eq!(&engel::j_coordinate(&t).unwrap(), &j);
        let cf = engel::adapted_coframe(&t).unwrap();
        prop_assert_eq!(-cf.xi(4).apply(&t).unwrap(), j);
    }
}

#[test]
fn frame_derivatives_do_not_commute() {
    // the order convention matters for a generic marking
    let t: Expr = "x4^2 + x1*x3".parse().unwrap();
    assert!(!engel::mixed_order_differences(&t).unwrap().is_empty());
}
