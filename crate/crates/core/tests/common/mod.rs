#![allow(dead_code)]

use proptest::prelude::*;
use qdict::polynomial::{BinaryPolynomial, BitOrder, FunctionTable};
use qdict::sim::{CircuitProgram, GateOp, StateVector};
use qdict::Complex64;

pub fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

/// Normalized random state from raw real/imaginary parts.
pub fn state_from_parts(parts: &[(f64, f64)]) -> StateVector {
    let amps: Vec<Complex64> = parts
        .iter()
        .map(|&(re, im)| Complex64::new(re, im))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let amps = if norm < 1e-6 {
        let mut v = vec![Complex64::new(0.0, 0.0); parts.len()];
        v[0] = Complex64::new(1.0, 0.0);
        v
    } else {
        amps.into_iter().map(|a| a / norm).collect()
    };
    StateVector::from_amplitudes(amps).unwrap()
}

pub fn arb_state(q: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << q).prop_map(|p| state_from_parts(&p))
}

/// Raw gate description: kind, target, optional control, angle.
pub type RawOp = (u8, usize, Option<usize>, f64);

pub fn build_program(q: usize, raw: &[RawOp]) -> CircuitProgram {
    let mut prog = CircuitProgram::new(q);
    for &(kind, t, c, angle) in raw {
        let t = t % q;
        let op = match kind % 6 {
            0 => GateOp::h(t),
            1 => GateOp::x(t),
            2 => GateOp::p(t, angle),
            3 => GateOp::ry(t, angle),
            4 => GateOp::qft((0..=t).collect::<Vec<_>>()),
            _ => GateOp::iqft((t..q).collect::<Vec<_>>()),
        };
        let op = match (kind % 6, c.map(|c| c % q)) {
            (k, Some(c)) if k < 4 && c != t => op.controlled([c]),
            _ => op,
        };
        prog.push(op).unwrap();
    }
    prog
}

pub fn arb_ops(max_q: usize, max_len: usize) -> impl Strategy<Value = Vec<RawOp>> {
    prop::collection::vec(
        (0u8..6, 0..max_q, prop::option::of(0..max_q), -7.0f64..7.0),
        0..max_len,
    )
}

/// Random function table whose values fit `m` bits in either window.
pub fn arb_table(max_n: usize, max_m: usize) -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1..=max_n, 1..=max_m, any::<bool>()).prop_flat_map(|(n, m, signed)| {
        let big_m = 1i64 << m;
        let range = if signed {
            -big_m / 2..big_m / 2
        } else {
            0..big_m
        };
        (Just(n), Just(m), prop::collection::vec(range, 1 << n))
    })
}

pub fn arb_order() -> impl Strategy<Value = BitOrder> {
    prop_oneof![Just(BitOrder::Lsb0), Just(BitOrder::Msb0)]
}

pub fn poly_from(values: Vec<i64>, order: BitOrder) -> BinaryPolynomial {
    BinaryPolynomial::from_table(&FunctionTable::new(values, order).unwrap())
}

/// Nonzero real vector of length `2^q`.
pub fn arb_real_vec(q: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 1 << q).prop_map(|mut v| {
        if v.iter().all(|x| x.abs() < 1e-3) {
            v[0] = 1.0;
        }
        v
    })
}
