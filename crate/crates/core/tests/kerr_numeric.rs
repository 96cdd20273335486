//! Newton solutions of Kerr functions against closed forms and a finite
//! difference oracle for J.
use contact_engel::kerr::{self, KerrFunction};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn point() -> impl Strategy<Value = [f64; 5]> {
    prop::array::uniform5(-2.0f64..2.0)
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 32,
        rng_seed: RngSeed::Fixed(9),
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn linear_fractional_root_is_exact(p in point(), s in 1i64..=4) {
        let den = -p[2] + s as f64 * p[4];
        prop_assume!(den.abs() > 0.2);
        let f = KerrFunction::new(format!("y2*t - ({s}*y3 - y1)").parse().unwrap()).unwrap();
        let sol = kerr::solve_kerr_numeric(&f, &p, 0.0, 1e-12).unwrap();
        let closed = (p[1] - s as f64 * p[3]) / den;
        prop_assert!((sol.t - closed).abs() <= 1e-9 * closed.abs().max(1.0));
        prop_assert!(sol.j_residual < 1e-7);
    }

    #[test]
    fn implicit_j_matches_finite_differences(p in point()) {
        // a nonlinear Kerr function: J vanishes identically along its section
        let f = KerrFunction::new("t^3 + t - y0 + 2*y3".parse().unwrap()).unwrap();
        let solver = kerr::KerrSolver::new(&f).unwrap();
        if let Ok(sol) = solver.solve(&p, 0.0, 1e-12) {
            let fd = kerr::j_finite_difference(&f, &p, sol.t, 1e-5).unwrap();
            prop_assert!((fd - solver.implicit_j(&p, sol.t).unwrap()).abs() < 1e-5);
        }
    }
}

#[test]
fn numeric_j_sees_a_nonintegrable_marking() {
    // t = x3^2 has J = 2*x3^3 exactly
    let p = [0.1, 0.2, 0.3, 0.7, 0.5];
    let t = p[3] * p[3];
    let j = kerr::j_numeric(&p, t, &[0.0, 0.0, 0.0, 2.0 * p[3], 0.0]);
    assert!((j - 2.0 * p[3].powi(3)).abs() < 1e-15);
    let exact = contact_engel::engel::j_coordinate(&"x3^2".parse().unwrap()).unwrap();
    assert_eq!(exact.to_string(), "2*x3^3");
}

#[test]
fn any_function_of_y_and_t_is_integrable() {
    let f = KerrFunction::new("t - y1 - y2^2".parse().unwrap()).unwrap();
    let sol = kerr::solve_kerr_numeric(&f, &[0.1, 0.2, 0.3, 0.4, 0.5], 0.0, 1e-12).unwrap();
    assert!(sol.j_residual < 1e-12);
}
