use proptest::prelude::*;
use special_functions::{exp_integral_e1, mittag_leffler, GridFunction};

proptest! {
    #[test]
    fn e1_decreasing_and_convex(z in 0.01f64..40.0, dz in 0.001f64..1.0) {
        let a = exp_integral_e1(z).unwrap();
        let b = exp_integral_e1(z + dz).unwrap();
        let c = exp_integral_e1(z + 2.0 * dz).unwrap();
        prop_assert!(b < a);
        // midpoint convexity, with slack for rounding when the values are tiny
        prop_assert!(b <= 0.5 * (a + c) * (1.0 + 1e-12));
    }

    #[test]
    fn mittag_leffler_order_one_is_derivative(z in -3.0f64..3.0) {
        let h = 1e-5;
        let fd = (mittag_leffler(1.5, z + h, 0).unwrap() - mittag_leffler(1.5, z - h, 0).unwrap()) / (2.0 * h);
        let d = mittag_leffler(1.5, z, 1).unwrap();
        prop_assert!((fd - d).abs() < 1e-8 * d.abs().max(1.0));
    }

    #[test]
    fn interpolation_stays_within_neighbours(x in 0.0f64..1.0) {
        let g = GridFunction::sample(0.0, 0.125, 8, |t| t * t).unwrap();
        let v = g.interpolate(x);
        prop_assert!((0.0..=1.0).contains(&v));
        prop_assert!(v >= x * x - 1e-15);
    }
}
