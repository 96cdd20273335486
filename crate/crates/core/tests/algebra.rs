//! Lie-theoretic checks across the matrix model, the prolongation and the models.
use contact_engel::lie::Q;
use contact_engel::tanaka::{self, GradedNilpotent};
use contact_engel::{g2alg, models};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn coeffs() -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec((-3i64..=3).prop_map(|c| Q::from_integer(c.into())), 14)
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 32,
        rng_seed: RngSeed::Fixed(14),
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn adjoint_is_a_homomorphism(u in coeffs(), v in coeffs()) {
        let g = g2alg::commutator_table().unwrap();
        let lhs = g.ad(&g.bracket(&u, &v));
        let (au, av) = (g.ad(&u), g.ad(&v));
        let n = g.dim();
        for i in 0..n {
            for j in 0..n {
                let mut c = Q::from_integer(0.into());
                for k in 0..n {
                    c += &au[i][k] * &av[k][j] - &av[i][k] * &au[k][j];
                }
                prop_assert_eq!(&lhs[i][j], &c);
            }
        }
    }

    #[test]
    fn killing_form_is_invariant(u in coeffs(), v in coeffs(), w in coeffs()) {
        let g = g2alg::commutator_table().unwrap();
        let k = g.killing();
        let form = |a: &[Q], b: &[Q]| {
            let mut s = Q::from_integer(0.into());
            for i in 0..14 {
                for j in 0..14 {
                    s += &a[i] * &k[i][j] * &b[j];
                }
            }
            s
        };
        let a = form(&g.bracket(&u, &v), &w);
        let b = form(&u, &g.bracket(&v, &w));
        prop_assert_eq!(a, b);
    }
}

#[test]
fn prolongation_of_gl2_is_g2() {
    let m = GradedNilpotent::from_g2().unwrap();
    let t = tanaka::tanaka_prolong(&m, &tanaka::g0_gl2().unwrap(), 5).unwrap();
    let l = t.to_lie_algebra().unwrap();
    assert_eq!(l.dim(), 14);
    assert!(l.is_semisimple());
    assert_eq!(l.killing_signature(), g2alg::commutator_table().unwrap().killing_signature());
}

#[test]
fn catalogue_closes() {
    for sys in models::catalogue().unwrap() {
        assert!(models::jacobi_check(&sys), "{}", sys.name);
    }
}
