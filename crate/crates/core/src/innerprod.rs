//! The two inner-product patterns.
//!
//! **Weighted sum.** With `A|0⟩ = Σ a·w_k |k⟩` and `B|0⟩ = Σ b·f_k |k⟩`,
//! the amplitude of `|0⟩` after `B†A` is `ab Σ w_k f_k`.
//!
//! **Controlled weighted sum.** With a dictionary program `F` writing
//! `f(k)` into an `m`-qubit value register, the amplitude of `|0⟩_{n+m}`
//! after `(H^{⊗n} ⊗ B†) F (A ⊗ I)` is `(ab/√N) Σ w_k h_{f(k)}` where
//! `B|0⟩ = Σ b·h_v |v⟩`. Negative `f(k)` address `h` at `f(k) + M`.

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::encoding::{cancel_qft_pairs, dictionary_operator, RegisterLayout};
use crate::polynomial::{BinaryPolynomial, BitOrder};
use crate::sim::{CircuitProgram, GateOp, StateVector};
use crate::stateprep::{exact_amplitudes, identity_ramp, uniform, PreparedOperator};
use crate::{Error, Result};

fn check_vector(values: &[f64], what: &str) -> Result<usize> {
    let len = values.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::validation(format!(
            "{what} length {len} is not a power of two >= 2"
        )));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::validation(format!(
            "{what} contain non-finite entries"
        )));
    }
    Ok(len.trailing_zeros() as usize)
}

fn euclid_norm(values: &[f64]) -> f64 {
    values.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Weights `w_k` and the common factor `a` making `a·w` unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSpec {
    weights: Vec<f64>,
    common_factor: f64,
}

impl WeightSpec {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        check_vector(&weights, "weights")?;
        let norm = euclid_norm(&weights);
        if norm == 0.0 {
            return Err(Error::validation("weights are all zero"));
        }
        Ok(WeightSpec {
            weights,
            common_factor: 1.0 / norm,
        })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0; 1 << n])
    }

    /// `w_k = sin²(kπ/N)`.
    pub fn sin2(n: usize) -> Result<Self> {
        let big_n = (1u64 << n) as f64;
        Self::new(
            (0..1usize << n)
                .map(|k| (k as f64 * std::f64::consts::PI / big_n).sin().powi(2))
                .collect(),
        )
    }

    /// `w_k = 1` at `k = key`, zero elsewhere.
    pub fn point(n: usize, key: usize) -> Result<Self> {
        if key >= 1 << n {
            return Err(Error::validation(format!("key {key} out of range")));
        }
        Self::new(
            (0..1usize << n)
                .map(|k| f64::from(u8::from(k == key)))
                .collect(),
        )
    }

    /// Same weights multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.weights.iter().map(|w| w * factor).collect())
    }

    pub fn num_qubits(&self) -> usize {
        self.weights.len().trailing_zeros() as usize
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn common_factor(&self) -> f64 {
        self.common_factor
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Exact loader for `a·w`; its normalization equals [`Self::common_factor`].
    pub fn loader(&self) -> Result<PreparedOperator> {
        exact_amplitudes(&self.weights)
    }
}

/// Hashes `h_v` indexed by raw value-register content `0..M`.
#[derive(Debug, Clone, PartialEq)]
pub struct HashSpec {
    hashes: Vec<f64>,
}

impl HashSpec {
    pub fn new(hashes: Vec<f64>) -> Result<Self> {
        check_vector(&hashes, "hashes")?;
        Ok(HashSpec { hashes })
    }

    /// `h_v = v`.
    pub fn identity(m: usize) -> Result<Self> {
        Self::new((0..1usize << m).map(|v| v as f64).collect())
    }

    /// `h_v = v − strike` for `v ≥ strike`, else 0.
    pub fn call_payoff(m: usize, strike: i64) -> Result<Self> {
        Self::new(
            (0..1i64 << m)
                .map(|v| {
                    if v >= strike {
                        (v - strike) as f64
                    } else {
                        0.0
                    }
                })
                .collect(),
        )
    }

    /// `h_v = 1` at `v = v0`, zero elsewhere.
    pub fn point(m: usize, v0: usize) -> Result<Self> {
        if v0 >= 1 << m {
            return Err(Error::validation(format!(
                "value {v0} out of range for {m} qubits"
            )));
        }
        Self::new(
            (0..1usize << m)
                .map(|v| f64::from(u8::from(v == v0)))
                .collect(),
        )
    }

    pub fn num_qubits(&self) -> usize {
        self.hashes.len().trailing_zeros() as usize
    }

    pub fn hashes(&self) -> &[f64] {
        &self.hashes
    }

    pub fn is_zero(&self) -> bool {
        self.hashes.iter().all(|&h| h == 0.0)
    }

    /// `b = 1/‖h‖`, or `None` for the zero vector.
    pub fn common_factor(&self) -> Option<f64> {
        let norm = euclid_norm(&self.hashes);
        (norm > 0.0).then(|| 1.0 / norm)
    }

    pub fn loader(&self) -> Result<PreparedOperator> {
        exact_amplitudes(&self.hashes)
    }
}

/// How the `|0⟩` amplitude was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    ExactAmplitude,
    /// Shot-frequency estimate of `|E|`; the sign is not observable.
    Sampled {
        shots: u64,
        seed: u64,
    },
}

/// Outcome of one pattern evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateResult {
    pub amplitude0: Complex64,
    pub weighted_sum: f64,
    pub a_used: f64,
    pub b_used: f64,
    pub rescale_factor: f64,
    pub mode: Mode,
}

impl EstimateResult {
    fn zero(a: f64) -> Self {
        EstimateResult {
            amplitude0: Complex64::new(0.0, 0.0),
            weighted_sum: 0.0,
            a_used: a,
            b_used: 0.0,
            rescale_factor: 0.0,
            mode: Mode::ExactAmplitude,
        }
    }
}

impl Serialize for EstimateResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Record {
            amplitude0_re: f64,
            amplitude0_im: f64,
            weighted_sum: f64,
            a: f64,
            b: f64,
            rescale: f64,
            mode: &'static str,
            shots: Option<u64>,
            seed: Option<u64>,
        }
        let (mode, shots, seed) = match self.mode {
            Mode::ExactAmplitude => ("exact", None, None),
            Mode::Sampled { shots, seed } => ("sampled", Some(shots), Some(seed)),
        };
        Record {
            amplitude0_re: self.amplitude0.re,
            amplitude0_im: self.amplitude0.im,
            weighted_sum: self.weighted_sum,
            a: self.a_used,
            b: self.b_used,
            rescale: self.rescale_factor,
            mode,
            shots,
            seed,
        }
        .serialize(serializer)
    }
}

/// A complete pattern circuit with the constants that turn its `|0⟩`
/// amplitude into a weighted sum.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternCircuit {
    program: CircuitProgram,
    a: f64,
    b: f64,
    rescale: f64,
}

impl PatternCircuit {
    pub fn program(&self) -> &CircuitProgram {
        &self.program
    }

    pub fn rescale(&self) -> f64 {
        self.rescale
    }

    pub fn final_state(&self) -> Result<StateVector> {
        StateVector::prepare(&self.program)
    }

    /// Reads the exact `|0⟩` amplitude; the weighted sum uses its real part.
    pub fn exact(&self) -> Result<EstimateResult> {
        let e = self.final_state()?.amplitude_of(0)?;
        Ok(EstimateResult {
            amplitude0: e,
            weighted_sum: self.rescale * e.re,
            a_used: self.a,
            b_used: self.b,
            rescale_factor: self.rescale,
            mode: Mode::ExactAmplitude,
        })
    }

    /// Estimates `|E|` from `shots` seeded measurements.
    pub fn sampled(&self, shots: u64, seed: u64) -> Result<EstimateResult> {
        let magnitude = estimate_magnitude(&self.program, shots, seed)?;
        Ok(EstimateResult {
            amplitude0: Complex64::new(magnitude, 0.0),
            weighted_sum: self.rescale * magnitude,
            a_used: self.a,
            b_used: self.b,
            rescale_factor: self.rescale,
            mode: Mode::Sampled { shots, seed },
        })
    }
}

/// Builds `B†A` for the weighted-sum pattern; rescale `1/(ab)`.
pub fn weighted_sum_circuit(
    a_op: &PreparedOperator,
    b_op: &PreparedOperator,
) -> Result<PatternCircuit> {
    if a_op.num_qubits() != b_op.num_qubits() {
        return Err(Error::validation(format!(
            "register size mismatch: A on {} qubits, B on {}",
            a_op.num_qubits(),
            b_op.num_qubits()
        )));
    }
    let mut program = a_op.program().clone();
    program.append(&b_op.program().inverse())?;
    let (a, b) = (a_op.normalization(), b_op.normalization());
    Ok(PatternCircuit {
        program: cancel_qft_pairs(&program),
        a,
        b,
        rescale: 1.0 / (a * b),
    })
}

/// `⟨0|B†A|0⟩ = Σ_k conj(b_k) a_k`.
pub fn simple_inner_product(a_op: &PreparedOperator, b_op: &PreparedOperator) -> Result<Complex64> {
    Ok(weighted_sum_circuit(a_op, b_op)?.exact()?.amplitude0)
}

/// `Σ w_k f_k = E/(ab)` with `A` preparing `a·w` and `B` preparing `b·f`.
pub fn weighted_sum_simple(
    a_op: &PreparedOperator,
    b_op: &PreparedOperator,
) -> Result<EstimateResult> {
    weighted_sum_circuit(a_op, b_op)?.exact()
}

/// Builds `(H^{⊗n} ⊗ B†) F (A ⊗ I_m)`, `F` being a dictionary operator
/// (see [`dictionary_operator`]), with keys on qubits `0..n` and values
/// on `n..n+m`; rescale `√N/(ab)`. Adjacent QFT pairs are cancelled.
pub fn controlled_weighted_sum_circuit(
    a_op: &PreparedOperator,
    dictionary: &CircuitProgram,
    b_op: &PreparedOperator,
) -> Result<PatternCircuit> {
    let n = a_op.num_qubits();
    let m = b_op.num_qubits();
    if dictionary.num_qubits() != n + m {
        return Err(Error::validation(format!(
            "dictionary program spans {} qubits, expected {n} key + {m} value",
            dictionary.num_qubits()
        )));
    }
    let keys: Vec<usize> = (0..n).collect();
    let values: Vec<usize> = (n..n + m).collect();
    let mut program = CircuitProgram::new(n + m);
    program.append_on(a_op.program(), &keys)?;
    program.append(dictionary)?;
    program.append_on(&b_op.program().inverse(), &values)?;
    for &q in &keys {
        program.push(GateOp::h(q))?;
    }
    let (a, b) = (a_op.normalization(), b_op.normalization());
    let big_n = (1u64 << n) as f64;
    Ok(PatternCircuit {
        program: cancel_qft_pairs(&program),
        a,
        b,
        rescale: big_n.sqrt() / (a * b),
    })
}

/// `⟨0|(H^{⊗n} ⊗ B†) F (A ⊗ I)|0⟩`.
pub fn generalized_inner_product(
    a_op: &PreparedOperator,
    dictionary: &CircuitProgram,
    b_op: &PreparedOperator,
) -> Result<Complex64> {
    Ok(controlled_weighted_sum_circuit(a_op, dictionary, b_op)?
        .exact()?
        .amplitude0)
}

/// Dictionary-encodes `p` between `A` (keys) and `B` (values).
pub fn polynomial_weighted_sum_circuit(
    a_op: &PreparedOperator,
    p: &BinaryPolynomial,
    b_op: &PreparedOperator,
    order: BitOrder,
) -> Result<PatternCircuit> {
    let layout = RegisterLayout::with_bit_order(a_op.num_qubits(), b_op.num_qubits(), order)?;
    let dictionary = dictionary_operator(p, &layout)?;
    controlled_weighted_sum_circuit(a_op, &dictionary, b_op)
}

/// `Σ_k w_k h_{f(k) mod M}` with exact loaders for `w` and `h`.
pub fn weighted_hashed_sum(
    w: &WeightSpec,
    h: &HashSpec,
    p: &BinaryPolynomial,
    order: BitOrder,
) -> Result<EstimateResult> {
    let a_op = w.loader()?;
    if h.is_zero() {
        // still reject polynomials that do not fit the register
        let layout = RegisterLayout::with_bit_order(w.num_qubits(), h.num_qubits(), order)?;
        dictionary_operator(p, &layout)?;
        return Ok(EstimateResult::zero(a_op.normalization()));
    }
    polynomial_weighted_sum_circuit(&a_op, p, &h.loader()?, order)?.exact()
}

/// Weighted expected value `Σ w_k f(k)` with the identity ramp on `m` qubits as `B`.
pub fn expected_value_canonical(
    a_op: &PreparedOperator,
    p: &BinaryPolynomial,
    m: usize,
    order: BitOrder,
) -> Result<EstimateResult> {
    polynomial_weighted_sum_circuit(a_op, p, &identity_ramp(m)?, order)?.exact()
}

/// `(1/N) Σ f(k)`: the canonical expected value with uniform weights.
pub fn mean_value(p: &BinaryPolynomial, m: usize, order: BitOrder) -> Result<EstimateResult> {
    let n = p.num_vars();
    let mut result = expected_value_canonical(&uniform(n)?, p, m, order)?;
    let big_n = (1u64 << n) as f64;
    result.rescale_factor /= big_n;
    result.weighted_sum /= big_n;
    Ok(result)
}

/// `√(count(0)/shots)`: a magnitude-only estimate of the `|0⟩` amplitude.
pub fn estimate_magnitude(program: &CircuitProgram, shots: u64, seed: u64) -> Result<f64> {
    let hist = StateVector::prepare(program)?.sample(shots, seed)?;
    let zeros = hist.get(&0).copied().unwrap_or(0);
    Ok((zeros as f64 / shots as f64).sqrt())
}
