#![allow(dead_code)]

use num_complex::Complex;
use orlicz_approx::{CoeffSeq, OrliczFunction};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn phis() -> Vec<OrliczFunction<f64>> {
    vec![
        OrliczFunction::power(1.0).unwrap(),
        OrliczFunction::power(1.5).unwrap(),
        OrliczFunction::power(2.0).unwrap(),
        OrliczFunction::power(3.0).unwrap(),
        OrliczFunction::exp_minus_one(),
        OrliczFunction::power_log(1.0).unwrap(),
        OrliczFunction::power_log(2.0).unwrap(),
    ]
}

pub fn phi_strategy() -> impl Strategy<Value = OrliczFunction<f64>> {
    prop_oneof![
        (1.0f64..4.0).prop_map(|p| OrliczFunction::power(p).unwrap()),
        Just(OrliczFunction::exp_minus_one()),
        (1.0f64..3.0).prop_map(|p| OrliczFunction::power_log(p).unwrap()),
    ]
}

/// Nonempty sequences with frequencies in `[-band, band]`.
pub fn seq_strategy(band: i64, max_len: usize) -> impl Strategy<Value = CoeffSeq<f64>> {
    prop::collection::vec((-band..=band, -2.0f64..2.0, -2.0f64..2.0), 1..=max_len)
        .prop_map(|v| CoeffSeq::from_entries(v.into_iter().map(|(k, re, im)| (k, Complex::new(re, im)))))
        .prop_filter("nonzero", |f| !f.is_empty())
}

/// Deterministic random sequence for loops that need a fixed count.
pub fn random_seq(rng: &mut ChaCha8Rng, band: i64, max_len: usize) -> CoeffSeq<f64> {
    loop {
        let len = rng.gen_range(1..=max_len);
        let f = CoeffSeq::from_entries(
            (0..len).map(|_| (rng.gen_range(-band..=band), Complex::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))),
        );
        if !f.is_empty() {
            return f;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn lp(f: &CoeffSeq<f64>, p: f64) -> f64 {
    f.moduli().iter().map(|u| u.powf(p)).sum::<f64>().powf(1.0 / p)
}
