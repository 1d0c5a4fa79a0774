mod common;

use common::{lp, phi_strategy, seq_strategy};
use num_complex::Complex;
use orlicz_approx::orlicz::{luxemburg_norm, orlicz_norm};
use orlicz_approx::{ExtendedReal, OrliczFunction};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_gauge_reduces_to_lp(f in seq_strategy(200, 64), p in prop::sample::select(vec![1.0, 1.5, 2.0, 3.0])) {
        let phi = OrliczFunction::power(p).unwrap();
        let expected = lp(&f, p);
        prop_assert!((luxemburg_norm(&phi, &f).unwrap() - expected).abs() <= 1e-10 * expected.max(1.0));
    }

    #[test]
    fn homogeneous(phi in phi_strategy(), f in seq_strategy(50, 20), re in -5.0f64..5.0, im in -5.0f64..5.0) {
        let c = Complex::new(re, im);
        let lhs = luxemburg_norm(&phi, &f.scale(c)).unwrap();
        let rhs = c.norm() * luxemburg_norm(&phi, &f).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1.0), "{lhs} vs {rhs}");
    }

    #[test]
    fn triangle(phi in phi_strategy(), f in seq_strategy(30, 20), g in seq_strategy(30, 20)) {
        let sum = luxemburg_norm(&phi, &(&f + &g)).unwrap();
        prop_assert!(sum <= luxemburg_norm(&phi, &f).unwrap() + luxemburg_norm(&phi, &g).unwrap() + 1e-10);
    }

    #[test]
    fn orlicz_norm_between_one_and_two_luxemburg(phi in phi_strategy(), f in seq_strategy(50, 30)) {
        let lux = luxemburg_norm(&phi, &f).unwrap();
        let orl = orlicz_norm(&phi, &f).unwrap();
        prop_assert!(lux - 1e-9 * lux <= orl && orl <= 2.0 * lux + 1e-9 * lux, "{lux} {orl}");
    }

    #[test]
    fn dual_feasible_weights_lower_bound_orlicz_norm(
        phi in phi_strategy(),
        f in seq_strategy(20, 12),
        raw in prop::collection::vec(0.0f64..3.0, 41),
    ) {
        let moduli: Vec<(i64, f64)> = f.iter().map(|(k, c)| (k, c.norm())).collect();
        let lambda: Vec<f64> = moduli.iter().map(|&(k, _)| raw[(k + 20) as usize]).collect();
        let total = lambda.iter().fold(ExtendedReal::zero(), |acc, &l| acc + phi.conjugate(l));
        let scale = match total {
            ExtendedReal::Finite(s) => 1.0 / s.max(1.0),
            // only power(1) has an infinite conjugate; its feasible set is λ <= 1
            ExtendedReal::Infinite => 1.0 / lambda.iter().cloned().fold(1.0, f64::max),
        };
        let pairing: f64 = lambda.iter().zip(&moduli).map(|(l, (_, u))| scale * l * u).sum();
        let orl = orlicz_norm(&phi, &f).unwrap();
        prop_assert!(pairing <= orl + 1e-9 * orl.max(1.0), "{pairing} > {orl}");
    }

    #[test]
    fn young_inequality(phi in phi_strategy(), u in 0.0f64..6.0, v in 0.0f64..30.0) {
        let conj = phi.conjugate(v);
        if let ExtendedReal::Finite(c) = conj {
            prop_assert!(u * v <= phi.eval(u) + c + 1e-9 * (u * v).max(1.0));
        }
    }
}

#[test]
fn single_harmonic_power2_attains_factor_two() {
    let phi = OrliczFunction::power(2.0).unwrap();
    let f = orlicz_approx::CoeffSeq64::single(3, Complex::new(0.6, 0.8));
    let ratio = orlicz_norm(&phi, &f).unwrap() / luxemburg_norm(&phi, &f).unwrap();
    assert!((ratio - 2.0).abs() < 1e-8, "{ratio}");
}
