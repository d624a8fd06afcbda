//! Quantum-dictionary building blocks.
//!
//! A value `v` in an `m`-qubit register is written by preparing the
//! geometric state `M^{-1/2} Σ_k e^{ikθ}|k⟩` with `θ = 2πv/M` and applying the
//! inverse QFT. Phases add, so a polynomial `Σ_J c_J Π x_j` is written by
//! one key-controlled phase per monomial and value qubit, and negative
//! values wrap to their two's-complement index `v + M`.

use std::f64::consts::PI;
use std::ops::Range;

use crate::polynomial::{BinaryPolynomial, BitOrder};
use crate::sim::{CircuitProgram, GateOp};
use crate::{Error, Result};

/// Key register on qubits `0..n`, value register on `n..n+m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterLayout {
    key_qubits: usize,
    value_qubits: usize,
    bit_order: BitOrder,
}

impl RegisterLayout {
    /// Layout with the default [`BitOrder::Msb0`] key reading.
    pub fn new(key_qubits: usize, value_qubits: usize) -> Result<Self> {
        Self::with_bit_order(key_qubits, value_qubits, BitOrder::default())
    }

    pub fn with_bit_order(
        key_qubits: usize,
        value_qubits: usize,
        bit_order: BitOrder,
    ) -> Result<Self> {
        if key_qubits == 0 || value_qubits == 0 {
            return Err(Error::validation(
                "key and value registers need at least one qubit",
            ));
        }
        if key_qubits + value_qubits > crate::sim::MAX_QUBITS {
            return Err(Error::Capacity {
                requested: key_qubits + value_qubits,
                max: crate::sim::MAX_QUBITS,
            });
        }
        Ok(RegisterLayout {
            key_qubits,
            value_qubits,
            bit_order,
        })
    }

    pub fn key_qubits(&self) -> usize {
        self.key_qubits
    }

    pub fn value_qubits(&self) -> usize {
        self.value_qubits
    }

    pub fn bit_order(&self) -> BitOrder {
        self.bit_order
    }

    pub fn total_qubits(&self) -> usize {
        self.key_qubits + self.value_qubits
    }

    pub fn key_range(&self) -> Range<usize> {
        0..self.key_qubits
    }

    pub fn value_range(&self) -> Range<usize> {
        self.key_qubits..self.total_qubits()
    }

    /// Simulator qubit carrying polynomial variable `var`.
    pub fn key_qubit_of(&self, var: usize) -> usize {
        self.bit_order.key_bit(var, self.key_qubits)
    }

    /// Splits a full basis index into `(key, value)`.
    pub fn split_index(&self, basis: usize) -> (usize, usize) {
        (
            basis & ((1 << self.key_qubits) - 1),
            basis >> self.key_qubits,
        )
    }
}

/// How the integers of a function fit an `m`-bit register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueWindow {
    /// All values in `0..M`.
    Unsigned,
    /// Some value negative; all in `−M/2..M/2`.
    TwosComplement,
}

/// Checks that every value of `p` is representable in `m` qubits. A
/// function with no negative values may use the full `0..M`; otherwise the
/// two's-complement window applies. The error names the first offending key.
pub fn value_window(p: &BinaryPolynomial, m: usize, order: BitOrder) -> Result<ValueWindow> {
    let table = p.to_table(order);
    let values = table.values();
    let big_m = 1i64 << m;
    let window = if values.iter().any(|&v| v < 0) {
        ValueWindow::TwosComplement
    } else {
        ValueWindow::Unsigned
    };
    let range = match window {
        ValueWindow::Unsigned => 0..big_m,
        ValueWindow::TwosComplement => -big_m / 2..big_m / 2,
    };
    if let Some((key, &value)) = values.iter().enumerate().find(|(_, v)| !range.contains(v)) {
        return Err(Error::Overflow {
            key,
            value,
            bits: m,
        });
    }
    Ok(window)
}

/// `2π·(c·2^t mod M)/M`, reduced in integers before converting to an angle.
fn register_phase(c: i64, t: usize, m: usize) -> f64 {
    let big_m = 1i128 << m;
    let reduced = ((c as i128) << t).rem_euclid(big_m);
    2.0 * PI * reduced as f64 / big_m as f64
}

/// Phases `P(2^j θ)` on qubit `j` of an `m`-qubit register. Applied after
/// `H^{⊗m}` this yields `M^{-1/2} Σ_k e^{ikθ}|k⟩`.
pub fn geometric_state_program(theta: f64, m: usize) -> Result<CircuitProgram> {
    if m == 0 {
        return Err(Error::validation("register needs at least one qubit"));
    }
    let mut prog = CircuitProgram::new(m);
    for j in 0..m {
        prog.push(GateOp::p(j, theta * (1u64 << j) as f64))?;
    }
    Ok(prog)
}

/// Writes `j` into `m` qubits: `H^{⊗m}`, geometric phases for `2πj/M`,
/// inverse QFT. Negative `j` lands on `j + M`.
pub fn encode_integer(j: i64, m: usize) -> Result<CircuitProgram> {
    if m == 0 || m > crate::sim::MAX_QUBITS {
        return Err(Error::Capacity {
            requested: m,
            max: crate::sim::MAX_QUBITS,
        });
    }
    let half = 1i64 << (m - 1);
    if !(-half..half).contains(&j) {
        return Err(Error::validation(format!(
            "integer {j} outside the {m}-bit two's-complement range {}..{}",
            -half,
            half - 1
        )));
    }
    let mut prog = CircuitProgram::new(m);
    for t in 0..m {
        prog.push(GateOp::h(t))?;
    }
    for t in 0..m {
        let angle = register_phase(j, t, m);
        if angle != 0.0 {
            prog.push(GateOp::p(t, angle))?;
        }
    }
    prog.push(GateOp::iqft(0..m))?;
    Ok(prog)
}

/// The key-controlled phase stage alone: one phase per monomial and value
/// qubit, no Hadamards and no inverse QFT.
pub fn dictionary_phases(p: &BinaryPolynomial, layout: &RegisterLayout) -> Result<CircuitProgram> {
    if p.num_vars() != layout.key_qubits() {
        return Err(Error::validation(format!(
            "polynomial has {} variables but the key register has {} qubits",
            p.num_vars(),
            layout.key_qubits()
        )));
    }
    let m = layout.value_qubits();
    let mut prog = CircuitProgram::new(layout.total_qubits());
    for (mono, c) in p.terms() {
        let controls: Vec<usize> = mono.vars().map(|v| layout.key_qubit_of(v)).collect();
        for (t, target) in layout.value_range().enumerate() {
            let angle = register_phase(c, t, m);
            if angle != 0.0 {
                prog.push(GateOp::p(target, angle).controlled(controls.iter().copied()))?;
            }
        }
    }
    Ok(prog)
}

/// The encoding operator `F`: acts on any key-register state, mapping
/// `|k⟩|0⟩_m` to `|k⟩|p(k) mod M⟩`. Hadamards on the value register, the
/// phase stage, inverse QFT on the value register.
pub fn dictionary_operator(
    p: &BinaryPolynomial,
    layout: &RegisterLayout,
) -> Result<CircuitProgram> {
    value_window(p, layout.value_qubits(), layout.bit_order())?;
    let mut prog = CircuitProgram::new(layout.total_qubits());
    for q in layout.value_range() {
        prog.push(GateOp::h(q))?;
    }
    prog.append(&dictionary_phases(p, layout)?)?;
    prog.push(GateOp::iqft(layout.value_range()))?;
    Ok(prog)
}

/// Program mapping `|0⟩_{n+m}` to `N^{-1/2} Σ_k |k⟩|p(k) mod M⟩`: Hadamards
/// on the key register followed by [`dictionary_operator`].
pub fn dictionary_program(p: &BinaryPolynomial, layout: &RegisterLayout) -> Result<CircuitProgram> {
    let operator = dictionary_operator(p, layout)?;
    let mut prog = CircuitProgram::new(layout.total_qubits());
    for q in layout.key_range() {
        prog.push(GateOp::h(q))?;
    }
    prog.append(&operator)?;
    Ok(prog)
}

/// Removes adjacent QFT/inverse-QFT pairs acting on identical qubit lists.
/// Cancellation cascades, so `[QFT, QFT, IQFT, IQFT]` empties.
pub fn cancel_qft_pairs(prog: &CircuitProgram) -> CircuitProgram {
    let mut out: Vec<GateOp> = Vec::with_capacity(prog.len());
    for op in prog.ops() {
        if let (
            GateOp::Qft { qubits, inverse },
            Some(GateOp::Qft {
                qubits: prev_qubits,
                inverse: prev_inverse,
            }),
        ) = (op, out.last())
        {
            if qubits == prev_qubits && inverse != prev_inverse {
                out.pop();
                continue;
            }
        }
        out.push(op.clone());
    }
    CircuitProgram::from_ops_unchecked(prog.num_qubits(), out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::StateVector;
    use num_complex::Complex64;

    fn run_on_uniform(prog: &CircuitProgram) -> StateVector {
        let mut s = StateVector::zero(prog.num_qubits()).unwrap();
        for q in 0..prog.num_qubits() {
            s.apply(&GateOp::h(q)).unwrap();
        }
        s.run(prog).unwrap();
        s
    }

    #[test]
    fn geometric_state_examples() {
        let s = run_on_uniform(&geometric_state_program(0.0, 3).unwrap());
        for a in s.amplitudes() {
            assert!((a - Complex64::new(8f64.sqrt().recip(), 0.0)).norm() < 1e-12);
        }
        let s = run_on_uniform(&geometric_state_program(PI, 1).unwrap());
        assert!((s.amplitude_of(1).unwrap().re + 0.5f64.sqrt()).abs() < 1e-12);

        let theta = 2.0 * PI / 8.0;
        let s = run_on_uniform(&geometric_state_program(theta, 3).unwrap());
        for k in 0..8 {
            let want = Complex64::cis(k as f64 * PI / 4.0) / 8f64.sqrt();
            assert!((s.amplitude_of(k).unwrap() - want).norm() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn integers_land_on_twos_complement_index() {
        for (j, m, idx) in [(3, 3, 3), (-3, 3, 5), (-1, 4, 15), (0, 2, 0), (-4, 3, 4)] {
            let s = StateVector::prepare(&encode_integer(j, m).unwrap()).unwrap();
            let a = s.amplitude_of(idx).unwrap();
            assert!((a.norm() - 1.0).abs() < 1e-10, "j={j} m={m} amp={a}");
        }
        assert!(encode_integer(4, 3).is_err());
        assert!(encode_integer(-5, 3).is_err());
    }

    #[test]
    fn single_variable_dictionary() {
        let p: BinaryPolynomial = "k0".parse().unwrap();
        let layout = RegisterLayout::new(1, 2).unwrap();
        let s = StateVector::prepare(&dictionary_program(&p, &layout).unwrap()).unwrap();
        for (basis, prob) in s.probabilities().into_iter().enumerate() {
            let (k, v) = layout.split_index(basis);
            let want = if v == k { 0.5 } else { 0.0 };
            assert!((prob - want).abs() < 1e-12);
        }
    }

    #[test]
    fn overflow_names_key() {
        let p: BinaryPolynomial = "7 + 4*k1 - 5*k0*k1 - 2*k0*k2".parse().unwrap();
        let layout = RegisterLayout::new(3, 3).unwrap();
        match dictionary_program(&p, &layout) {
            Err(Error::Overflow { key, value, bits }) => {
                assert_eq!((key, value, bits), (2, 11, 3));
            }
            other => panic!("expected overflow, got {other:?}"),
        }
        let p: BinaryPolynomial = "-5 + 9*k0".parse().unwrap();
        let layout = RegisterLayout::new(1, 4).unwrap();
        assert!(dictionary_program(&p, &layout).is_ok());
        let p: BinaryPolynomial = "-5 + 13*k0".parse().unwrap();
        assert!(matches!(
            dictionary_program(&p, &layout),
            Err(Error::Overflow {
                key: 1,
                value: 8,
                ..
            })
        ));
    }

    #[test]
    fn cancel_pairs() {
        let mut prog = CircuitProgram::new(4);
        prog.push(GateOp::qft(0..3)).unwrap();
        prog.push(GateOp::iqft(0..3)).unwrap();
        assert!(cancel_qft_pairs(&prog).is_empty());

        let mut prog = CircuitProgram::new(4);
        prog.push(GateOp::iqft(0..3)).unwrap();
        prog.push(GateOp::h(3)).unwrap();
        prog.push(GateOp::qft(0..3)).unwrap();
        assert_eq!(cancel_qft_pairs(&prog), prog);

        let mut prog = CircuitProgram::new(3);
        prog.push(GateOp::qft(0..3)).unwrap();
        prog.push(GateOp::iqft(0..2)).unwrap();
        assert_eq!(cancel_qft_pairs(&prog), prog);

        let mut prog = CircuitProgram::new(2);
        for op in [
            GateOp::qft(0..2),
            GateOp::qft(0..2),
            GateOp::iqft(0..2),
            GateOp::iqft(0..2),
        ] {
            prog.push(op).unwrap();
        }
        assert!(cancel_qft_pairs(&prog).is_empty());
    }

    #[test]
    fn layout_helpers() {
        let l = RegisterLayout::new(3, 4).unwrap();
        assert_eq!(l.key_range(), 0..3);
        assert_eq!(l.value_range(), 3..7);
        assert_eq!(l.key_qubit_of(0), 2);
        assert_eq!(l.split_index(5 + 8 * 11), (5, 11));
        assert!(RegisterLayout::new(0, 2).is_err());
        let l = RegisterLayout::with_bit_order(3, 4, BitOrder::Lsb0).unwrap();
        assert_eq!(l.key_qubit_of(0), 0);
    }
}
