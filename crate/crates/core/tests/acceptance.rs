//! Acceptance run: one PASS/FAIL line per criterion. Run with
//! `cargo test --test acceptance -- --nocapture` to see the report.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use qdict::encoding::{dictionary_program, RegisterLayout};
use qdict::finance::{
    count_preimages, expected_rational, expected_value_discrete, linear_expected_approx,
    linear_expected_exact, WeightLoader,
};
use qdict::innerprod::{
    polynomial_weighted_sum_circuit, weighted_hashed_sum, HashSpec, WeightSpec,
};
use qdict::polynomial::{BinaryPolynomial, BitOrder, FunctionTable};
use qdict::sim::{CircuitProgram, GateOp, StateVector};
use qdict::stateprep::{identity_ramp, raised_cosine, sin4, sin8};
use qdict::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

struct Report {
    lines: Vec<(usize, &'static str, Outcome)>,
}

impl Report {
    fn record(&mut self, id: usize, title: &'static str, outcome: Outcome) {
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {id}: {title}: {}", outcome.detail);
        self.lines.push((id, title, outcome));
    }

    fn info(&self, text: &str) {
        println!("     info: {text}");
    }
}

fn within(value: f64, reference: f64, tol: f64) -> bool {
    (value - reference).abs() <= tol
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn expected_value_regression() -> Outcome {
    let ((e, sum), took) = timed(|| {
        let p: BinaryPolynomial = "7 + 4*k1 - 5*k0*k1 - 2*k0*k2".parse().unwrap();
        let r = expected_value_discrete(&p, 4, &WeightLoader::Sin4, BitOrder::Msb0).unwrap();
        (r.estimate.unwrap().amplitude0.re, r.quantum)
    });
    Outcome {
        pass: within(e, 0.17835, 5e-5)
            && within(sum, 30.76777, 1e-3)
            && took < Duration::from_secs(1),
        detail: format!(
            "amplitude {e:.6} (0.17835 ±5e-5), sum {sum:.6} (30.76777 ±1e-3), {took:?}"
        ),
    }
}

fn value_counting() -> Outcome {
    let ((amp, zeros, minus3), took) = timed(|| {
        let p: BinaryPolynomial = "2*k1 - k0*k1 - 3*k0*k2".parse().unwrap();
        let r0 = count_preimages(&p, 0, 3, BitOrder::Msb0).unwrap();
        let r3 = count_preimages(&p, -3, 3, BitOrder::Msb0).unwrap();
        (r0.amplitude, r0.count, r3.count)
    });
    Outcome {
        pass: within(amp, 0.375, 1e-9)
            && zeros == 3
            && minus3 == 1
            && took < Duration::from_secs(1),
        detail: format!(
            "amplitude {amp:.12} (0.375 ±1e-9), count(0) = {zeros}, count(-3) = {minus3}, {took:?}"
        ),
    }
}

fn linear_exact() -> Outcome {
    let k = linear_expected_exact(0.0, 1.0, 3, &WeightLoader::Sin4)
        .unwrap()
        .value;
    let lin = linear_expected_exact(1.0, 2.0, 3, &WeightLoader::Sin4)
        .unwrap()
        .value;
    Outcome {
        pass: within(k, 16.0, 1e-6) && within(15.98493, k, 0.02) && within(lin, 36.0, 1e-4),
        detail: format!(
            "sum w_k k = {k:.9} (16 ±1e-6; heuristic 15.98493 is {:.5} away, limit 0.02), sum w_k (1+2k) = {lin:.9} (36 ±1e-4)",
            (k - 15.98493).abs()
        ),
    }
}

fn linear_approx() -> Outcome {
    let r = linear_expected_approx(0.0, 1.0, 0.1, 3, &WeightLoader::Sin4).unwrap();
    let e = r.identity_sum.amplitude0.re;
    let bias = |c: f64| {
        (linear_expected_approx(0.0, 1.0, c, 3, &WeightLoader::Sin4)
            .unwrap()
            .value
            - 16.0)
            .abs()
    };
    let (b1, b2, b3) = (bias(0.1), bias(0.05), bias(0.025));
    Outcome {
        pass: within(e, 0.02041, 1e-4) && within(r.value, 15.99768, 1e-2) && b1 / b2 >= 3.5 && b2 / b3 >= 3.5,
        detail: format!(
            "E = {e:.6} (0.02041 ±1e-4), sum {:.6} (15.99768 ±1e-2), bias {b1:.3e} -> {b2:.3e} -> {b3:.3e} (ratios {:.2}, {:.2})",
            r.value,
            b1 / b2,
            b2 / b3
        ),
    }
}

fn rational(report: &Report) -> Outcome {
    let r = expected_rational().unwrap();
    let binding = (r.normalized_quantum - r.normalized_oracle).abs();
    for (label, reference, ours) in [
        ("published classical value", 1.33431, r.normalized_oracle),
        ("published simulated value", 1.34845, r.normalized_quantum),
        ("published amplitude", 0.55050, r.amplitude),
    ] {
        let status = if within(ours, reference, 2e-2) {
            "within"
        } else {
            "outside"
        };
        report.info(&format!(
            "{label} {reference} vs ours {ours:.5}: {status} 2e-2 (|diff| {:.5}), not binding",
            (ours - reference).abs()
        ));
    }
    Outcome {
        pass: binding <= 1e-8 && (r.weighted_sum_quantum - r.weighted_sum_oracle).abs() <= 1e-8,
        detail: format!(
            "quantum {:.10} vs classical inner-product oracle {:.10} (|diff| {binding:.1e} ≤ 1e-8); raw sum {:.6}",
            r.normalized_quantum, r.normalized_oracle, r.weighted_sum_oracle
        ),
    }
}

fn distribution_loaders() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=5usize {
        let big_n = (1u64 << n) as f64;
        let s = |k: usize| (k as f64 * PI / big_n).sin();
        let rc = raised_cosine(n).unwrap().state().unwrap().probabilities();
        let s4 = sin4(n).unwrap().state().unwrap().probabilities();
        for k in 0..1usize << n {
            worst = worst.max((rc[k] - 2.0 / big_n * s(k).powi(2)).abs());
            worst = worst.max((s4[k] - 8.0 / (3.0 * big_n) * s(k).powi(4)).abs());
        }
        if n >= 3 {
            let s8 = sin8(n).unwrap().state().unwrap().probabilities();
            for (k, p) in s8.iter().enumerate() {
                worst = worst.max((p - 128.0 / (35.0 * big_n) * s(k).powi(8)).abs());
            }
        }
        let total: f64 = (0..1usize << n).map(|k| s(k).powi(2)).sum();
        worst = worst.max((total - big_n / 2.0).abs());
    }
    Outcome {
        pass: worst <= 1e-10,
        detail: format!("largest deviation from the closed forms over n = 2..5: {worst:.2e} (≤ 1e-10; sin8 needs n ≥ 3)"),
    }
}

fn random_table(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<i64> {
    let big_m = 1i64 << m;
    let signed = rng.random::<bool>();
    (0..1 << n)
        .map(|_| {
            if signed {
                rng.random_range(-big_m / 2..big_m / 2)
            } else {
                rng.random_range(0..big_m)
            }
        })
        .collect()
}

fn random_real(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..len).map(|_| rng.random_range(-1.0..1.0)).collect();
    v[0] += 1e-3;
    v
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let order = |rng: &mut ChaCha8Rng| {
        if rng.random::<bool>() {
            BitOrder::Msb0
        } else {
            BitOrder::Lsb0
        }
    };
    let mut failures = Vec::new();

    let mut dict_err: f64 = 0.0;
    for _ in 0..500 {
        let (n, m) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let values = random_table(&mut rng, n, m);
        let ord = order(&mut rng);
        let p = BinaryPolynomial::from_table(&FunctionTable::new(values.clone(), ord).unwrap());
        let layout = RegisterLayout::with_bit_order(n, m, ord).unwrap();
        let s = StateVector::prepare(&dictionary_program(&p, &layout).unwrap()).unwrap();
        let amp = 1.0 / ((1u64 << n) as f64).sqrt();
        for (basis, a) in s.amplitudes().iter().enumerate() {
            let (key, reg) = layout.split_index(basis);
            let want = if values[key].rem_euclid(1 << m) == reg as i64 {
                amp
            } else {
                0.0
            };
            dict_err = dict_err.max((a - Complex64::new(want, 0.0)).norm());
        }
    }
    if dict_err > 1e-8 {
        failures.push(format!("dictionary {dict_err:.1e}"));
    }

    let mut p2_err: f64 = 0.0;
    for _ in 0..500 {
        let (n, m) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let values = random_table(&mut rng, n, m);
        let ord = order(&mut rng);
        let w = random_real(&mut rng, 1 << n);
        let h = random_real(&mut rng, 1 << m);
        let p = BinaryPolynomial::from_table(&FunctionTable::new(values.clone(), ord).unwrap());
        let got = weighted_hashed_sum(
            &WeightSpec::new(w.clone()).unwrap(),
            &HashSpec::new(h.clone()).unwrap(),
            &p,
            ord,
        )
        .unwrap()
        .weighted_sum;
        let oracle: f64 = (0..1 << n)
            .map(|k| w[k] * h[values[k].rem_euclid(1 << m) as usize])
            .sum();
        p2_err = p2_err.max((got - oracle).abs());
    }
    if p2_err > 1e-8 {
        failures.push(format!("controlled weighted sum {p2_err:.1e}"));
    }

    let mut round_trips = 0;
    for _ in 0..200 {
        let n = rng.random_range(1..=6);
        let values: Vec<i64> = (0..1 << n).map(|_| rng.random_range(-100..100)).collect();
        let ord = order(&mut rng);
        let p = BinaryPolynomial::from_table(&FunctionTable::new(values.clone(), ord).unwrap());
        let text_ok = BinaryPolynomial::parse_with_vars(&p.to_string(), n).is_ok_and(|q| q == p);
        if p.to_table(ord).values() == &values[..] && text_ok {
            round_trips += 1;
        }
    }
    if round_trips != 200 {
        failures.push(format!("table round trips {round_trips}/200"));
    }

    let mut unitary_err: f64 = 0.0;
    for _ in 0..100 {
        let q = rng.random_range(2..=6);
        let mut prog = CircuitProgram::new(q);
        for _ in 0..30 {
            let t = rng.random_range(0..q);
            let angle = rng.random_range(-PI..PI);
            let op = match rng.random_range(0..5) {
                0 => GateOp::h(t),
                1 => GateOp::ry(t, angle),
                2 => GateOp::p(t, angle).controlled([(t + 1) % q]),
                3 => GateOp::qft(0..q),
                _ => GateOp::iqft(t..q),
            };
            prog.push(op).unwrap();
        }
        let start = StateVector::from_amplitudes({
            let raw: Vec<Complex64> = (0..1 << q)
                .map(|_| Complex64::new(rng.random(), rng.random()))
                .collect();
            let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            raw.into_iter().map(|a| a / norm).collect()
        })
        .unwrap();
        let mut s = start.clone();
        s.run(&prog).unwrap();
        s.run(&prog.inverse()).unwrap();
        for (a, b) in s.amplitudes().iter().zip(start.amplitudes()) {
            unitary_err = unitary_err.max((a - b).norm());
        }
    }
    if unitary_err > 1e-9 {
        failures.push(format!("unitarity {unitary_err:.1e}"));
    }

    let s = StateVector::prepare(&{
        let mut p = CircuitProgram::new(4);
        p.push(GateOp::h(0))
            .unwrap()
            .push(GateOp::ry(2, 0.7))
            .unwrap()
            .push(GateOp::qft(0..4))
            .unwrap();
        p
    })
    .unwrap();
    let deterministic =
        (0..10).all(|seed| s.sample(4096, seed).unwrap() == s.sample(4096, seed).unwrap());
    if !deterministic {
        failures.push("sampling determinism".into());
    }

    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!(
                "500 dictionary instances (max err {dict_err:.1e}), 500 controlled weighted sums (max err {p2_err:.1e}), 200 table round trips, 100 program inversions (max err {unitary_err:.1e}), seeded sampling repeatable"
            )
        } else {
            format!("failed: {}", failures.join(", "))
        },
    }
}

fn excluded_and_sampled(report: &Report) -> Outcome {
    report.info(
        "excluded, not reproducible: hardware amplitudes 0.17747, 0.72996, 0.57378 (device noise)",
    );
    report.info("excluded, not reproducible: heuristic normal-distribution amplitude 0.60131 (circuit parameters unpublished)");
    let p: BinaryPolynomial = "7 + 4*k1 - 5*k0*k1 - 2*k0*k2".parse().unwrap();
    let circuit = polynomial_weighted_sum_circuit(
        &sin4(3).unwrap(),
        &p,
        &identity_ramp(4).unwrap(),
        BitOrder::Msb0,
    )
    .unwrap();
    let exact = circuit.exact().unwrap().amplitude0.norm();
    let shots = 8192u64;
    let sampled = circuit.sampled(shots, 8192).unwrap().amplitude0.re;
    let prob = exact * exact;
    // delta method: σ(√f) ≈ σ(f)/(2√p)
    let sigma = (prob * (1.0 - prob) / shots as f64).sqrt() / (2.0 * exact);
    let dev = (sampled - exact).abs();
    Outcome {
        pass: dev <= 3.0 * sigma,
        detail: format!(
            "noise-free {shots}-shot |E| = {sampled:.5} vs exact {exact:.5}, |diff| {dev:.5} ≤ 3σ = {:.5}",
            3.0 * sigma
        ),
    }
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let mut report = Report { lines: Vec::new() };
    report.record(
        1,
        "expected value of a binary polynomial",
        expected_value_regression(),
    );
    report.record(2, "value counting", value_counting());
    report.record(3, "exact linear expectation", linear_exact());
    report.record(4, "approximate linear expectation", linear_approx());
    let r = rational(&report);
    report.record(5, "rational function expectation", r);
    report.record(6, "distribution loaders", distribution_loaders());
    let r = property_suites();
    report.record(7, "property suites", r);
    let r = excluded_and_sampled(&report);
    report.record(8, "excluded hardware values, sampled substitute", r);
    let total = start.elapsed();
    println!("acceptance run took {total:?} (limit 60 s)");

    let failed: Vec<usize> = report
        .lines
        .iter()
        .filter(|(_, _, o)| !o.pass)
        .map(|(id, _, _)| *id)
        .collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
    assert!(total < Duration::from_secs(60));
}
