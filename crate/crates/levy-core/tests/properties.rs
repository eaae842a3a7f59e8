use levy_core::LevyModel;
use proptest::prelude::*;

fn model_strategy() -> impl Strategy<Value = LevyModel> {
    prop_oneof![
        (0.2f64..5.0, 0.2f64..5.0, 0.05f64..2.0).prop_map(|(l, m, t)| LevyModel::cramer_lundberg(l, m, t)),
        (0.2f64..5.0, 0.2f64..5.0, 0.05f64..2.0).prop_map(|(a, b, t)| LevyModel::gamma_risk(a, b, t)),
        (1.05f64..1.95, prop::option::of(0.2f64..3.0)).prop_map(|(a, b)| LevyModel::stable(a, b)),
        (0.1f64..3.0, 0.1f64..3.0, 0.5f64..2.0).prop_map(|(l, m, s)| LevyModel::perturbed(l / m + 0.5, s, l, m)),
    ]
}

proptest! {
    #[test]
    fn psi_convex(m in model_strategy(), s1 in 0.0f64..5.0, d1 in 0.01f64..3.0, d2 in 0.01f64..3.0) {
        let (s2, s3) = (s1 + d1, s1 + d1 + d2);
        let p = |s: f64| m.laplace_exponent(s).unwrap();
        let left = (p(s2) - p(s1)) / d1;
        let right = (p(s3) - p(s2)) / d2;
        prop_assert!(left <= right + 1e-9 * (1.0 + right.abs()));
    }

    #[test]
    fn phi_solves_psi(m in model_strategy(), q in 0.0f64..10.0) {
        let phi = m.phi_inverse(q).unwrap();
        let err = (m.laplace_exponent(phi).unwrap() - q).abs();
        prop_assert!(err <= 1e-10 * q.max(1.0), "err {}", err);
        if q > 0.0 {
            prop_assert!(phi > 0.0);
        }
    }

    #[test]
    fn tail_strictly_decreasing(m in model_strategy(), h in 0.01f64..10.0, dh in 0.001f64..1.0) {
        prop_assert!(m.levy_tail(h + dh).unwrap() < m.levy_tail(h).unwrap());
    }
}
