use levy_core::LevyModel;
use proptest::prelude::*;
use simulation_oracle::*;

fn check(r: &DepletionRecord, x: f64, a: f64) {
    assert!(0.0 <= r.gbar && r.gbar <= r.tau_a);
    assert_eq!(r.speed, r.tau_a - r.gbar);
    assert!(r.overshoot >= 0.0);
    assert_eq!(r.overshoot > 0.0, !r.continuous_crossing);
    assert!((0.0..=a).contains(&r.predrawdown_record));
    assert!(r.max_level >= x);
    assert!(r.min_level <= x);
    assert_eq!(r.ruined_before, r.min_level < 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cl_records_are_consistent(
        seed in any::<u64>(), lambda in 0.2..3.0f64, mu in 0.2..3.0f64, theta in 0.05..1.0f64,
        x in 0.0..3.0f64, a in 0.1..3.0f64,
    ) {
        let model = LevyModel::cramer_lundberg(lambda, mu, theta);
        let r = simulate_cl_path(&model, x, a, &mut replication_rng(seed, 0), DEFAULT_BUDGET).unwrap();
        check(&r, x, a);
        prop_assert!(!r.continuous_crossing);
        let crossing_level = r.max_level - a - r.overshoot;
        if x > a {
            // before τ_a the surplus stays above x − a, so ruin can only happen at τ_a
            prop_assert!(!r.ruined_before || (r.min_level - crossing_level).abs() < 1e-9);
        }
    }

    #[test]
    fn grid_records_are_consistent(seed in any::<u64>(), which in 0..3usize, x in 0.0..2.0f64, a in 0.2..2.0f64) {
        let model = [
            LevyModel::gamma_risk(2.0, 1.0, 0.5),
            LevyModel::stable(1.5, None),
            LevyModel::perturbed(2.0, 0.5, 1.0, 1.0),
        ][which].clone();
        let r = simulate_grid_path(&model, x, a, 1e-2, &mut replication_rng(seed, 3), DEFAULT_BUDGET).unwrap();
        check(&r, x, a);
        if which < 2 {
            prop_assert!(!r.continuous_crossing);
        }
    }
}
