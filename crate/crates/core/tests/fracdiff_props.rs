mod common;

use common::{phi_strategy, seq_strategy};
use orlicz_approx::fracdiff::{difference_norm, frac_difference, modulus};
use orlicz_approx::orlicz::luxemburg_norm;
use proptest::prelude::*;
use std::f64::consts::PI;

fn alphas() -> impl Strategy<Value = f64> {
    prop::sample::select(vec![0.5, 1.0, 1.7, 2.0, 3.2])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn even_in_h(phi in phi_strategy(), f in seq_strategy(30, 15), alpha in 0.1f64..4.0, h in -PI..PI) {
        let a = difference_norm(&phi, &f, alpha, h).unwrap();
        let b = difference_norm(&phi, &f, alpha, -h).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
    }

    #[test]
    fn bounded_by_two_pow_ceil(phi in phi_strategy(), f in seq_strategy(30, 15), alpha in alphas(), h in -PI..PI) {
        let bound = 2f64.powf(alpha.ceil()) * luxemburg_norm(&phi, &f).unwrap();
        prop_assert!(difference_norm(&phi, &f, alpha, h).unwrap() <= bound + 1e-9);
    }

    #[test]
    fn differences_compose(f in seq_strategy(30, 15), a in 0.0f64..3.0, b in 0.0f64..3.0, h in -PI..PI) {
        let composed = frac_difference(&frac_difference(&f, a, h), b, h);
        let direct = frac_difference(&f, a + b, h);
        for (k, c) in direct.iter() {
            prop_assert!((composed.get(k) - c).norm() <= 1e-10, "k={k}");
        }
        prop_assert!(composed.max_distance(&direct) <= 1e-10);
    }

    #[test]
    fn higher_order_bounded_by_lower(phi in phi_strategy(), f in seq_strategy(30, 15), a in alphas(), b in alphas(), h in -PI..PI) {
        let lhs = difference_norm(&phi, &f, a + b, h).unwrap();
        let rhs = 2f64.powf(b.ceil()) * difference_norm(&phi, &f, a, h).unwrap();
        prop_assert!(lhs <= rhs + 1e-9);
    }

    #[test]
    fn vanishes_as_h_shrinks(phi in phi_strategy(), f in seq_strategy(30, 15), alpha in alphas(), h in 0.0f64..0.05) {
        let kmax = f.max_frequency() as f64;
        let bound = (kmax * h).powf(alpha) * luxemburg_norm(&phi, &f).unwrap();
        prop_assert!(difference_norm(&phi, &f, alpha, h).unwrap() <= bound + 1e-10);
    }

    #[test]
    fn modulus_nondecreasing_in_delta(phi in phi_strategy(), f in seq_strategy(20, 10), alpha in alphas(), d1 in 0.01f64..3.0, d2 in 0.01f64..3.0) {
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        let a = modulus(&f, &phi, alpha, lo, 512).unwrap();
        let b = modulus(&f, &phi, alpha, hi, 512).unwrap();
        prop_assert!(a <= b + 1e-7 * b.max(1.0), "{a} > {b}");
    }
}
