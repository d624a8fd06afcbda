use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gate::{CircuitProgram, Gate, GateOp};
use crate::{Error, Result};

/// Largest register the dense engine accepts (16 MiB of amplitudes).
pub const MAX_QUBITS: usize = 24;

/// Measurement outcome counts keyed by basis index.
pub type Histogram = BTreeMap<usize, u64>;

const NORM_TOLERANCE: f64 = 1e-10;

/// Dense vector of `2^num_qubits` complex amplitudes with unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

fn check_capacity(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(Error::Capacity {
            requested: num_qubits,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

impl StateVector {
    /// `|0…0⟩` on `num_qubits` qubits.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        check_capacity(num_qubits)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { num_qubits, amps })
    }

    /// Wraps an explicit amplitude vector; its length must be a power of two
    /// and its norm 1 within 1e-10.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::validation(format!(
                "amplitude vector length {len} is not a power of two >= 2"
            )));
        }
        let num_qubits = len.trailing_zeros() as usize;
        check_capacity(num_qubits)?;
        let state = StateVector { num_qubits, amps };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::validation(format!(
                "amplitudes have squared norm {norm}, expected 1"
            )));
        }
        Ok(state)
    }

    /// Runs `program` on `|0…0⟩`.
    pub fn prepare(program: &CircuitProgram) -> Result<Self> {
        let mut state = StateVector::zero(program.num_qubits())?;
        state.run(program)?;
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(Complex64::norm_sqr).collect()
    }

    /// The stored amplitude of basis state `basis`. Does not collapse.
    pub fn amplitude_of(&self, basis: usize) -> Result<Complex64> {
        self.amps.get(basis).copied().ok_or_else(|| {
            Error::validation(format!(
                "basis index {basis} out of range for {} qubits",
                self.num_qubits
            ))
        })
    }

    /// Total probability of outcomes whose bit `qubit` is 1.
    pub fn probability_of_one(&self, qubit: usize) -> Result<f64> {
        if qubit >= self.num_qubits {
            return Err(Error::validation(format!("qubit {qubit} out of range")));
        }
        let bit = 1 << qubit;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    pub fn run(&mut self, program: &CircuitProgram) -> Result<()> {
        if program.num_qubits() != self.num_qubits {
            return Err(Error::validation(format!(
                "{}-qubit program applied to a {}-qubit state",
                program.num_qubits(),
                self.num_qubits
            )));
        }
        for op in program.ops() {
            self.apply(op)?;
        }
        Ok(())
    }

    pub fn apply(&mut self, op: &GateOp) -> Result<()> {
        op.validate(self.num_qubits)?;
        match op {
            GateOp::Single {
                gate,
                target,
                controls,
            } => {
                let cmask = controls.iter().fold(0usize, |m, &c| m | (1 << c));
                match *gate {
                    Gate::H => {
                        let s = FRAC_1_SQRT_2;
                        self.apply_real_matrix(*target, cmask, [[s, s], [s, -s]]);
                    }
                    Gate::X => self.apply_x(*target, cmask),
                    Gate::P(theta) => self.apply_phase(*target, cmask, Complex64::cis(theta)),
                    Gate::Ry(theta) => {
                        let (s, c) = (theta / 2.0).sin_cos();
                        self.apply_real_matrix(*target, cmask, [[c, -s], [s, c]]);
                    }
                }
            }
            GateOp::Qft { qubits, inverse } => self.qft_kernel(qubits, *inverse),
        }
        Ok(())
    }

    /// Quantum Fourier transform on the sub-register `qubits` (first entry
    /// least significant). Forward maps `|j⟩` to `R^{-1/2} Σ_k e^{2πijk/R} |k⟩`.
    pub fn apply_qft(&mut self, qubits: &[usize], inverse: bool) -> Result<()> {
        self.apply(&GateOp::Qft {
            qubits: qubits.to_vec(),
            inverse,
        })
    }

    fn apply_real_matrix(&mut self, target: usize, cmask: usize, m: [[f64; 2]; 2]) {
        let tbit = 1 << target;
        for i in 0..self.amps.len() {
            if i & tbit != 0 || i & cmask != cmask {
                continue;
            }
            let j = i | tbit;
            let (a0, a1) = (self.amps[i], self.amps[j]);
            self.amps[i] = a0 * m[0][0] + a1 * m[0][1];
            self.amps[j] = a0 * m[1][0] + a1 * m[1][1];
        }
    }

    fn apply_x(&mut self, target: usize, cmask: usize) {
        let tbit = 1 << target;
        for i in 0..self.amps.len() {
            if i & tbit == 0 && i & cmask == cmask {
                self.amps.swap(i, i | tbit);
            }
        }
    }

    fn apply_phase(&mut self, target: usize, cmask: usize, phase: Complex64) {
        let mask = cmask | (1 << target);
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *a *= phase;
            }
        }
    }

    fn swap_qubits(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (abit, bbit) = (1 << a, 1 << b);
        for i in 0..self.amps.len() {
            // visit each pair once, from the side with bit a set and bit b clear
            if i & abit != 0 && i & bbit == 0 {
                self.amps.swap(i, (i & !abit) | bbit);
            }
        }
    }

    // Textbook circuit: Hadamards and controlled phases leave the output
    // bit-reversed, which the final swaps undo.
    fn qft_kernel(&mut self, qubits: &[usize], inverse: bool) {
        let r = qubits.len();
        let s = FRAC_1_SQRT_2;
        let hadamard = [[s, s], [s, -s]];
        if !inverse {
            for i in (0..r).rev() {
                self.apply_real_matrix(qubits[i], 0, hadamard);
                for l in (0..i).rev() {
                    let theta = PI / (1u64 << (i - l)) as f64;
                    self.apply_phase(qubits[i], 1 << qubits[l], Complex64::cis(theta));
                }
            }
            for i in 0..r / 2 {
                self.swap_qubits(qubits[i], qubits[r - 1 - i]);
            }
        } else {
            for i in 0..r / 2 {
                self.swap_qubits(qubits[i], qubits[r - 1 - i]);
            }
            for i in 0..r {
                for l in 0..i {
                    let theta = -PI / (1u64 << (i - l)) as f64;
                    self.apply_phase(qubits[i], 1 << qubits[l], Complex64::cis(theta));
                }
                self.apply_real_matrix(qubits[i], 0, hadamard);
            }
        }
    }

    /// Draws `shots` computational-basis measurements without collapsing the
    /// state. Deterministic for a fixed `seed`.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<Histogram> {
        if shots == 0 {
            return Err(Error::validation("shots must be at least 1"));
        }
        let mut cumulative = Vec::with_capacity(self.amps.len());
        let mut acc = 0.0;
        for a in &self.amps {
            acc += a.norm_sqr();
            cumulative.push(acc);
        }
        let total = acc;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut hist = Histogram::new();
        for _ in 0..shots {
            let u: f64 = rng.random::<f64>() * total;
            let idx = cumulative
                .partition_point(|&c| c <= u)
                .min(self.amps.len() - 1);
            *hist.entry(idx).or_insert(0) += 1;
        }
        Ok(hist)
    }
}
