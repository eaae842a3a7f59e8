use depletion_analytics::{Depletion, DepletionOptions};
use levy_core::LevyModel;
use proptest::prelude::*;

fn cl(lambda: f64, mu: f64, theta: f64, a: f64) -> Depletion {
    Depletion::new(&LevyModel::cramer_lundberg(lambda, mu, theta), a, &DepletionOptions::default()).unwrap()
}

fn stable(alpha: f64, a: f64) -> Depletion {
    Depletion::new(&LevyModel::stable(alpha, None), a, &DepletionOptions::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cl_ruin_is_a_probability_and_monotone(
        lambda in 0.2f64..3.0, mu in 0.2f64..3.0, theta in 0.05f64..2.0, a in 0.1f64..4.0,
        x1 in 0.0f64..6.0, dx in 0.0f64..3.0,
    ) {
        let d = cl(lambda, mu, theta, a);
        let (p1, p2) = (d.ruin_probability(x1).unwrap(), d.ruin_probability(x1 + dx).unwrap());
        prop_assert!((0.0..=1.0).contains(&p1));
        prop_assert!(p2 <= p1 + 1e-12);
        prop_assert!((d.no_ruin_probability(x1).unwrap() + p1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cl_factorization(
        lambda in 0.2f64..3.0, mu in 0.2f64..3.0, theta in 0.05f64..2.0, a in 0.1f64..4.0,
        q in 0.0f64..3.0, r in 0.0f64..3.0,
    ) {
        let d = cl(lambda, mu, theta, a);
        let lhs = d.bivariate_laplace(q, r).unwrap();
        let rhs = d.laplace_speed(q).unwrap() * d.laplace_gbar(q + r).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-9);
        prop_assert!(lhs > 0.0 && lhs <= 1.0);
    }

    #[test]
    fn cl_transforms_decrease(
        a in 0.1f64..4.0, q in 0.0f64..3.0, dq in 0.01f64..1.0, r in 0.0f64..2.0,
    ) {
        let d = cl(1.0, 1.0, 0.5, a);
        prop_assert!(d.bivariate_laplace(q + dq, r).unwrap() < d.bivariate_laplace(q, r).unwrap());
        prop_assert!(d.bivariate_laplace(q, r + dq).unwrap() < d.bivariate_laplace(q, r).unwrap());
        prop_assert!(d.joint_laplace_on_no_ruin(0.5 * a, q, r).unwrap() <= d.bivariate_laplace(q, r).unwrap() + 1e-12);
    }

    #[test]
    fn cl_record_law_normalized(lambda in 0.2f64..3.0, mu in 0.2f64..3.0, theta in 0.05f64..2.0, a in 0.1f64..4.0) {
        let mass = cl(lambda, mu, theta, a).predrawdown_record().unwrap().total_mass().unwrap();
        prop_assert!((mass - 1.0).abs() < 1e-6);
    }

    #[test]
    fn stable_factorization_and_range(
        alpha in 1.1f64..1.9, a in 0.3f64..3.0, q in 0.0f64..2.0, r in 0.0f64..2.0,
    ) {
        let d = stable(alpha, a);
        let lhs = d.bivariate_laplace(q, r).unwrap();
        let rhs = d.laplace_speed(q).unwrap() * d.laplace_gbar(q + r).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-9);
        prop_assert!(lhs > 0.0 && lhs <= 1.0);
    }

    #[test]
    fn stable_ruin_monotone(alpha in 1.1f64..1.9, a in 0.3f64..3.0, x1 in 0.0f64..4.0, dx in 0.0f64..2.0) {
        let d = stable(alpha, a);
        let (p1, p2) = (d.ruin_probability(x1).unwrap(), d.ruin_probability(x1 + dx).unwrap());
        prop_assert!((0.0..=1.0).contains(&p1));
        prop_assert!(p2 <= p1 + 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn cl_cdf_is_a_distribution_function(a in 0.2f64..3.0, theta in 0.1f64..1.5) {
        let d = cl(1.0, 1.0, theta, a);
        let times: Vec<f64> = (0..=40).map(|i| 0.25 * i as f64 * a).collect();
        let tau = d.tau_cdf(&times).unwrap();
        let speed = d.speed_cdf(&times).unwrap();
        for w in tau.grid.values().windows(2) {
            prop_assert!(w[1] >= w[0]);
        }
        for (t, s) in tau.grid.values().iter().zip(speed.grid.values()) {
            prop_assert!((0.0..=1.0).contains(t));
            prop_assert!(s + 1e-9 >= *t);
        }
    }
}
