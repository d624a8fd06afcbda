mod common;

use std::f64::consts::PI;

use common::*;
use proptest::prelude::*;
use qdict::stateprep::{exact_amplitudes, raised_cosine, sin4, sin8};

fn sin_pow(k: usize, big_n: f64, p: i32) -> f64 {
    (k as f64 * PI / big_n).sin().powi(p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_loader_hits_target(v in (1usize..=6).prop_flat_map(arb_real_vec)) {
        let op = exact_amplitudes(&v).unwrap();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!((op.normalization() - 1.0 / norm).abs() < 1e-12);
        let s = op.state().unwrap();
        for (a, t) in s.amplitudes().iter().zip(&v) {
            prop_assert!((a.re - t / norm).abs() < 1e-9 && a.im.abs() < 1e-9);
        }
    }
}

#[test]
fn loaders_match_closed_forms() {
    for n in 2..=5 {
        let big_n = (1u64 << n) as f64;
        let rc = raised_cosine(n).unwrap().state().unwrap().probabilities();
        let s4 = sin4(n).unwrap().state().unwrap().probabilities();
        for k in 0..1usize << n {
            assert!(
                (rc[k] - 2.0 / big_n * sin_pow(k, big_n, 2)).abs() < 1e-10,
                "rcos n={n} k={k}"
            );
            assert!(
                (s4[k] - 8.0 / (3.0 * big_n) * sin_pow(k, big_n, 4)).abs() < 1e-10,
                "sin4 n={n} k={k}"
            );
        }
        if n >= 3 {
            let s8 = sin8(n).unwrap().state().unwrap().probabilities();
            for (k, p) in s8.iter().enumerate() {
                assert!(
                    (p - 128.0 / (35.0 * big_n) * sin_pow(k, big_n, 8)).abs() < 1e-10,
                    "sin8 n={n} k={k}"
                );
            }
        }
        let total: f64 = (0..1usize << n).map(|k| sin_pow(k, big_n, 2)).sum();
        assert!((total - big_n / 2.0).abs() < 1e-10);
    }
}

/// Largest pointwise gap between `p` and a normal density with the same
/// mean and variance.
fn gap_to_normal(p: &[f64]) -> f64 {
    let mean: f64 = p.iter().enumerate().map(|(k, q)| k as f64 * q).sum();
    let var: f64 = p
        .iter()
        .enumerate()
        .map(|(k, q)| (k as f64 - mean).powi(2) * q)
        .sum();
    p.iter()
        .enumerate()
        .map(|(k, q)| {
            let z = (k as f64 - mean) / var.sqrt();
            let phi = (-0.5 * z * z).exp() / (2.0 * PI * var).sqrt();
            (q - phi).abs()
        })
        .fold(0.0, f64::max)
}

#[test]
fn higher_powers_approach_the_normal() {
    let n = 5;
    let rc = gap_to_normal(&raised_cosine(n).unwrap().state().unwrap().probabilities());
    let s4 = gap_to_normal(&sin4(n).unwrap().state().unwrap().probabilities());
    let s8 = gap_to_normal(&sin8(n).unwrap().state().unwrap().probabilities());
    assert!(rc > s4 && s4 > s8, "{rc} {s4} {s8}");
}
