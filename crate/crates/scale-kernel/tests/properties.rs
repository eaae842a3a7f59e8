use levy_core::LevyModel;
use proptest::prelude::*;
use scale_kernel::{ScaleContext, ScaleMethod, ScaleOptions};
use special_functions::{quad_finite, tanh_sinh};

fn auto(m: &LevyModel, q: f64, extent: f64) -> ScaleContext {
    ScaleContext::new(m, q, extent, &ScaleOptions::default()).unwrap()
}

fn inverted(m: &LevyModel, q: f64) -> ScaleContext {
    let opts = ScaleOptions { method: ScaleMethod::Inversion, ..Default::default() };
    ScaleContext::new(m, q, 1.0, &opts).unwrap()
}

fn cl_model() -> impl Strategy<Value = LevyModel> {
    (0.2f64..3.0, 0.2f64..3.0, 0.05f64..1.5).prop_map(|(l, mu, th)| LevyModel::cramer_lundberg(l, mu, th))
}

fn stable_model() -> impl Strategy<Value = LevyModel> {
    (1.1f64..1.95, prop_oneof![Just(None), (0.3f64..3.0).prop_map(Some)])
        .prop_map(|(alpha, scale)| LevyModel::stable(alpha, scale))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scale_nondecreasing(m in prop_oneof![cl_model(), stable_model()], q in 0.0f64..2.0) {
        let c = auto(&m, q, 4.0);
        let mut prev = 0.0;
        for k in 0..=80 {
            let w = c.w(0.05 * k as f64).unwrap();
            prop_assert!(w >= prev - 1e-14);
            prev = w;
        }
    }

    #[test]
    fn closed_form_matches_inversion(m in prop_oneof![cl_model(), stable_model()], q in prop_oneof![Just(0.0), Just(0.5), Just(1.0)], x in 0.05f64..5.0) {
        let a = auto(&m, q, 5.0).w(x).unwrap();
        let b = inverted(&m, q).w(x).unwrap();
        prop_assert!((a / b - 1.0).abs() < 1e-6, "{} q={} x={}: {} vs {}", m.model_id(), q, x, a, b);
    }

    #[test]
    fn log_derivative_increases_in_discount(m in prop_oneof![cl_model(), stable_model()], a in 0.1f64..4.0, q in 0.0f64..2.0, dq in 0.01f64..2.0) {
        let lo = auto(&m, q, a).log_derivative(a).unwrap();
        let hi = auto(&m, q + dq, a).log_derivative(a).unwrap();
        prop_assert!(hi > lo);
    }

    #[test]
    fn laplace_pair(m in prop_oneof![cl_model(), stable_model()], q in 0.0f64..1.5) {
        let c = auto(&m, q, 1.0);
        let s = c.phi() + 1.0;
        let mut upper = 10.0;
        while (-s * upper).exp() * c.w(upper).unwrap() > 1e-12 {
            upper *= 1.5;
        }
        let integral = tanh_sinh(|x| (-s * x).exp() * c.w(x).unwrap(), 0.0, upper, 1e-13).unwrap();
        let expect = 1.0 / (m.laplace_exponent(s).unwrap() - q);
        prop_assert!((integral / expect - 1.0).abs() < 1e-6, "{}: {} vs {}", m.model_id(), integral, expect);
    }
}

#[test]
fn laplace_pair_gamma_and_perturbed() {
    let gamma = LevyModel::gamma_risk(2.0, 1.0, 0.5);
    let c = auto(&gamma, 0.0, 40.0);
    let s = 1.0;
    // piecewise-cubic interpolant: adaptive Simpson rather than tanh-sinh
    let integral = quad_finite(|x| (-s * x).exp() * c.w(x).unwrap(), 0.0, 40.0, 1e-10).unwrap();
    let expect = 1.0 / gamma.laplace_exponent(s).unwrap();
    assert!((integral / expect - 1.0).abs() < 1e-6, "{integral} vs {expect}");

    let demo = LevyModel::perturbed(1.6, 0.4, 1.0, 1.0);
    let c = auto(&demo, 0.3, 1.0);
    let s = c.phi() + 1.0;
    let integral = tanh_sinh(|x| (-s * x).exp() * c.w(x).unwrap(), 0.0, 40.0, 1e-11).unwrap();
    let expect = 1.0 / (demo.laplace_exponent(s).unwrap() - 0.3);
    assert!((integral / expect - 1.0).abs() < 1e-6, "{integral} vs {expect}");
}
