//! Finance kernels on top of the two weighted-sum patterns: expected
//! values, call payoffs, cumulative mass and value at risk, value counting,
//! and the Woerner–Egger probability-domain baseline.
//!
//! Every operation has a classical counterpart in [`oracle`] and most
//! return a [`Report`] pairing the circuit value with it.

use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::encoding::{dictionary_operator, RegisterLayout};
use crate::innerprod::{
    expected_value_canonical, generalized_inner_product, weighted_hashed_sum, weighted_sum_simple,
    EstimateResult, HashSpec, WeightSpec,
};
use crate::polynomial::{BinaryPolynomial, BitOrder, FunctionTable};
use crate::sim::{CircuitProgram, GateOp, StateVector};
use crate::stateprep::{
    basis_operator, exact_amplitudes, identity_ramp, linear_trig, quantile_state,
    raised_cosine_real, sin4, sin8, uniform, PreparedOperator,
};
use crate::{Error, Result};

/// Tolerance used when comparing cumulative masses against `α`.
pub const ALPHA_TOLERANCE: f64 = 1e-9;

/// Largest distance from an integer accepted by [`count_preimages`].
pub const COUNT_RESIDUE: f64 = 1e-6;

/// Weight distributions with a closed-form loader.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightLoader {
    /// `w_k = sin²(kπ/N)`.
    Sin4,
    /// `w_k = sin(kπ/N)`.
    RaisedCosine,
    /// `w_k = sin⁴(kπ/N)`.
    Sin8,
    /// `w_k = 1`.
    Uniform,
    /// Arbitrary weights through the exact amplitude loader.
    Custom(WeightSpec),
}

impl WeightLoader {
    /// The loader `A` on `n` qubits; `A|0⟩ = Σ a·w_k |k⟩`.
    pub fn operator(&self, n: usize) -> Result<PreparedOperator> {
        match self {
            WeightLoader::Sin4 => sin4(n),
            WeightLoader::RaisedCosine => raised_cosine_real(n),
            WeightLoader::Sin8 => sin8(n),
            WeightLoader::Uniform => uniform(n),
            WeightLoader::Custom(w) => {
                self.check_width(w, n)?;
                w.loader()
            }
        }
    }

    /// The classical weights `w_k` on `n` qubits.
    pub fn weights(&self, n: usize) -> Result<Vec<f64>> {
        let big_n = 1usize << n;
        let s = |k: usize| (k as f64 * PI / big_n as f64).sin();
        Ok(match self {
            WeightLoader::Sin4 => (0..big_n).map(|k| s(k).powi(2)).collect(),
            WeightLoader::RaisedCosine => (0..big_n).map(s).collect(),
            WeightLoader::Sin8 => (0..big_n).map(|k| s(k).powi(4)).collect(),
            WeightLoader::Uniform => vec![1.0; big_n],
            WeightLoader::Custom(w) => {
                self.check_width(w, n)?;
                w.weights().to_vec()
            }
        })
    }

    fn check_width(&self, w: &WeightSpec, n: usize) -> Result<()> {
        if w.num_qubits() != n {
            return Err(Error::validation(format!(
                "custom weights span {} qubits, expected {n}",
                w.num_qubits()
            )));
        }
        Ok(())
    }
}

impl FromStr for WeightLoader {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sin4" => Ok(WeightLoader::Sin4),
            "rcos" => Ok(WeightLoader::RaisedCosine),
            "sin8" => Ok(WeightLoader::Sin8),
            "uniform" => Ok(WeightLoader::Uniform),
            other => Err(Error::Parse(format!(
                "unknown weight loader '{other}' (expected sin4, rcos, sin8, uniform)"
            ))),
        }
    }
}

impl fmt::Display for WeightLoader {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightLoader::Sin4 => "sin4",
            WeightLoader::RaisedCosine => "rcos",
            WeightLoader::Sin8 => "sin8",
            WeightLoader::Uniform => "uniform",
            WeightLoader::Custom(_) => "custom",
        })
    }
}

/// A circuit value next to its classical oracle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub operation: String,
    pub quantum: f64,
    pub oracle: f64,
    pub abs_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<EstimateResult>,
}

impl Report {
    pub fn new(
        operation: impl Into<String>,
        quantum: f64,
        oracle: f64,
        estimate: Option<EstimateResult>,
    ) -> Self {
        Report {
            operation: operation.into(),
            quantum,
            oracle,
            abs_error: (quantum - oracle).abs(),
            estimate,
        }
    }

    fn from_estimate(operation: &str, estimate: EstimateResult, oracle: f64) -> Self {
        Report::new(operation, estimate.weighted_sum, oracle, Some(estimate))
    }
}

/// Classical reference computations.
pub mod oracle {
    use super::*;

    /// `Σ w_k f(k)`.
    pub fn weighted_sum(weights: &[f64], values: impl Fn(usize) -> f64) -> f64 {
        weights.iter().enumerate().map(|(k, w)| w * values(k)).sum()
    }

    /// `Σ_{f(k) ≥ K} w_k (f(k) − K)`.
    pub fn call_payoff(weights: &[f64], p: &BinaryPolynomial, strike: i64, order: BitOrder) -> f64 {
        weighted_sum(weights, |k| {
            (p.evaluate_key(k, order) - strike).max(0) as f64
        })
    }

    /// `Σ_{k ≤ l} w_k`.
    pub fn cumulative(weights: &[f64], l: usize) -> f64 {
        weights[..=l].iter().sum()
    }

    /// Number of keys with `p(k) ≡ v0 (mod 2^m)`.
    pub fn count(p: &BinaryPolynomial, v0: i64, m: usize, order: BitOrder) -> u64 {
        let big_m = 1i64 << m;
        (0..1usize << p.num_vars())
            .filter(|&k| (p.evaluate_key(k, order) - v0).rem_euclid(big_m) == 0)
            .count() as u64
    }
}

/// `Σ w_k f(k)` for a polynomial `f` with named loader weights, via the
/// controlled weighted sum and the identity ramp on `m` value qubits.
pub fn expected_value_discrete(
    p: &BinaryPolynomial,
    m: usize,
    loader: &WeightLoader,
    order: BitOrder,
) -> Result<Report> {
    let n = p.num_vars();
    let a_op = loader.operator(n)?;
    let estimate = expected_value_canonical(&a_op, p, m, order)?;
    let weights = loader.weights(n)?;
    let oracle = oracle::weighted_sum(&weights, |k| p.evaluate_key(k, order) as f64);
    Ok(Report::from_estimate("expect", estimate, oracle))
}

/// A European call payoff over a discrete price function.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffSpec {
    pub strike: i64,
    pub function: BinaryPolynomial,
    pub weights: WeightLoader,
    pub bit_order: BitOrder,
}

impl PayoffSpec {
    pub fn new(
        strike: i64,
        function: BinaryPolynomial,
        weights: WeightLoader,
        bit_order: BitOrder,
    ) -> Self {
        PayoffSpec {
            strike,
            function,
            weights,
            bit_order,
        }
    }

    pub fn from_table(strike: i64, table: &FunctionTable, weights: WeightLoader) -> Self {
        Self::new(
            strike,
            BinaryPolynomial::from_table(table),
            weights,
            table.bit_order(),
        )
    }

    /// The rectified hash `h_v = max(v − K, 0)` over `0..2^m`.
    pub fn hash(&self, m: usize) -> Result<HashSpec> {
        HashSpec::call_payoff(m, self.strike)
    }
}

/// `Σ_{f(k) ≥ K} w_k (f(k) − K)` through the rectified hash.
pub fn payoff_expectation(spec: &PayoffSpec, m: usize) -> Result<Report> {
    let p = &spec.function;
    let n = p.num_vars();
    let big_m = 1i64 << m;
    if !(0..big_m).contains(&spec.strike) {
        return Err(Error::validation(format!(
            "strike {} does not fit a {m}-qubit value register",
            spec.strike
        )));
    }
    if let Some(k) = (0..1usize << n).find(|&k| p.evaluate_key(k, spec.bit_order) < 0) {
        return Err(Error::validation(format!(
            "payoff needs a nonnegative price function, f({k}) = {}",
            p.evaluate_key(k, spec.bit_order)
        )));
    }
    let weights = spec.weights.weights(n)?;
    let w = WeightSpec::new(weights.clone())?;
    let estimate = weighted_hashed_sum(&w, &spec.hash(m)?, p, spec.bit_order)?;
    let oracle = oracle::call_payoff(&weights, p, spec.strike, spec.bit_order);
    Ok(Report::from_estimate("payoff", estimate, oracle))
}

/// `Σ_{k ≤ l} w_k` with `B` the quantile state.
pub fn cumulative_probability(w: &WeightSpec, l: usize) -> Result<Report> {
    if let Some(k) = w.weights().iter().position(|&x| x < 0.0) {
        return Err(Error::validation(format!("weight {k} is negative")));
    }
    let estimate = weighted_sum_simple(&w.loader()?, &quantile_state(l, w.num_qubits())?)?;
    let oracle = oracle::cumulative(w.weights(), l);
    Ok(Report::from_estimate("cumulative", estimate, oracle))
}

/// A value-at-risk request: the smallest cutoff whose mass reaches `alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct VarQuery {
    pub weights: WeightSpec,
    pub alpha: f64,
}

impl VarQuery {
    pub fn new(weights: WeightSpec, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::validation(format!("alpha {alpha} is not in (0, 1)")));
        }
        Ok(VarQuery { weights, alpha })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VarResult {
    pub level: usize,
    pub cumulative: f64,
    pub oracle_level: usize,
    pub queries: usize,
}

/// Binary search over `l` issuing `O(n)` cumulative queries.
pub fn value_at_risk(query: &VarQuery) -> Result<VarResult> {
    let w = &query.weights;
    let big_n = w.weights().len();
    let target = query.alpha - ALPHA_TOLERANCE;
    let mut queries = 0;
    let mut mass = |l: usize| -> Result<f64> {
        queries += 1;
        Ok(cumulative_probability(w, l)?.quantum)
    };

    let total = mass(big_n - 1)?;
    if total < target {
        return Err(Error::UnreachableAlpha {
            alpha: query.alpha,
            total,
        });
    }
    let (mut lo, mut hi, mut at_hi) = (0, big_n - 1, total);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let c = mass(mid)?;
        if c >= target {
            hi = mid;
            at_hi = c;
        } else {
            lo = mid + 1;
        }
    }
    let oracle_level = (0..big_n)
        .find(|&l| oracle::cumulative(w.weights(), l) >= target)
        .unwrap_or(big_n - 1);
    Ok(VarResult {
        level: hi,
        cumulative: at_hi,
        oracle_level,
        queries,
    })
}

/// `r(x, y)` from the derivative-pricing example.
pub fn rational_function(x: f64, y: f64) -> f64 {
    ((4.01 - x) / (1.0 + x) + (4.01 - 2.0 * y + x) / (1.0 + y).powi(2) - 0.344) / 7.856
}

/// `f(k) = r(x, y)` with `k = 4x + y`, `x, y ∈ {0..3}`.
pub fn rational_table() -> Vec<f64> {
    (0..16)
        .map(|k| rational_function((k / 4) as f64, (k % 4) as f64))
        .collect()
}

/// The rational-function expected value on 4 key qubits with sin² weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalReport {
    /// `⟨0|B†A|0⟩` with `A = sin4(4)`, `B` loading `f/‖f‖`.
    pub amplitude: f64,
    /// `√(3N/8)·E`, i.e. `Σ w_k f(k)/‖f‖`.
    pub normalized_quantum: f64,
    pub normalized_oracle: f64,
    /// `E/(ab)` with `b = 1/‖f‖`, i.e. `Σ w_k f(k)`.
    pub weighted_sum_quantum: f64,
    pub weighted_sum_oracle: f64,
    pub abs_error: f64,
}

pub fn expected_rational() -> Result<RationalReport> {
    let n = 4;
    let f = rational_table();
    let norm = f.iter().map(|v| v * v).sum::<f64>().sqrt();
    let a_op = sin4(n)?;
    let estimate = weighted_sum_simple(&a_op, &exact_amplitudes(&f)?)?;
    let weights = WeightLoader::Sin4.weights(n)?;
    let oracle = oracle::weighted_sum(&weights, |k| f[k]);
    let e = estimate.amplitude0.re;
    let normalized_quantum = e / a_op.normalization();
    let normalized_oracle = oracle / norm;
    Ok(RationalReport {
        amplitude: e,
        normalized_quantum,
        normalized_oracle,
        weighted_sum_quantum: estimate.weighted_sum,
        weighted_sum_oracle: oracle,
        abs_error: (normalized_quantum - normalized_oracle).abs(),
    })
}

/// `intercept·Σw_k + slope·Σw_k k` from one identity-sum evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearEstimate {
    pub intercept: f64,
    pub slope: f64,
    pub weight_total: f64,
    /// Circuit estimate of `Σ w_k k`.
    pub identity_sum: EstimateResult,
    pub value: f64,
    pub oracle: f64,
    pub abs_error: f64,
}

impl LinearEstimate {
    fn build(intercept: f64, slope: f64, weights: &[f64], identity_sum: EstimateResult) -> Self {
        let weight_total: f64 = weights.iter().sum();
        let value = intercept * weight_total + slope * identity_sum.weighted_sum;
        let oracle = oracle::weighted_sum(weights, |k| intercept + slope * k as f64);
        LinearEstimate {
            intercept,
            slope,
            weight_total,
            identity_sum,
            value,
            oracle,
            abs_error: (value - oracle).abs(),
        }
    }
}

/// Exact linear expectation: `Σ w_k k` with the identity ramp as `B`.
pub fn linear_expected_exact(
    intercept: f64,
    slope: f64,
    n: usize,
    loader: &WeightLoader,
) -> Result<LinearEstimate> {
    let identity_sum = weighted_sum_simple(&loader.operator(n)?, &identity_ramp(n)?)?;
    Ok(LinearEstimate::build(
        intercept,
        slope,
        &loader.weights(n)?,
        identity_sum,
    ))
}

/// Approximate linear expectation: `B = T_{c/(2N)}` on `n + 1` qubits,
/// `A` acting on the first `n`.
pub fn linear_expected_approx(
    intercept: f64,
    slope: f64,
    c: f64,
    n: usize,
    loader: &WeightLoader,
) -> Result<LinearEstimate> {
    if !(c > 0.0 && c <= 0.5) {
        return Err(Error::validation(format!(
            "scale c = {c} is not in (0, 0.5]"
        )));
    }
    let a_op = loader.operator(n)?;
    let mut program = CircuitProgram::new(n + 1);
    program.append_on(a_op.program(), &(0..n).collect::<Vec<_>>())?;
    let a_ext = PreparedOperator::new(program, a_op.normalization(), a_op.label())?;
    let theta = c / (2.0 * (1u64 << n) as f64);
    let identity_sum = weighted_sum_simple(&a_ext, &linear_trig(theta, n)?)?;
    Ok(LinearEstimate::build(
        intercept,
        slope,
        &loader.weights(n)?,
        identity_sum,
    ))
}

/// Number of keys with `p(k) = v0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountResult {
    pub v0: i64,
    pub amplitude: f64,
    pub raw: f64,
    pub count: u64,
    pub oracle: u64,
}

/// `N · ⟨0|(H ⊗ B†) F (H ⊗ I)|0⟩` with `B|0⟩ = |v0 mod M⟩`.
pub fn count_preimages(
    p: &BinaryPolynomial,
    v0: i64,
    m: usize,
    order: BitOrder,
) -> Result<CountResult> {
    let n = p.num_vars();
    let big_m = 1i64 << m;
    if !(-big_m / 2..big_m).contains(&v0) {
        return Err(Error::validation(format!(
            "v0 = {v0} does not fit {m} qubits"
        )));
    }
    let layout = RegisterLayout::with_bit_order(n, m, order)?;
    let dictionary = dictionary_operator(p, &layout)?;
    let b_op = basis_operator(v0.rem_euclid(big_m) as usize, m)?;
    let e = generalized_inner_product(&uniform(n)?, &dictionary, &b_op)?;
    let raw = (1u64 << n) as f64 * e.re;
    let rounded = raw.round();
    if (raw - rounded).abs() > COUNT_RESIDUE || rounded < 0.0 {
        return Err(Error::validation(format!(
            "count {raw} is not a nonnegative integer"
        )));
    }
    Ok(CountResult {
        v0,
        amplitude: e.re,
        raw,
        count: rounded as u64,
        oracle: oracle::count(p, v0, m, order),
    })
}

/// How the Woerner–Egger ancilla probability is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeMode {
    Classical,
    Quantum,
}

impl FromStr for WeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(WeMode::Classical),
            "quantum" => Ok(WeMode::Quantum),
            other => Err(Error::Parse(format!("unknown mode '{other}'"))),
        }
    }
}

/// Inputs of the Woerner–Egger estimator.
#[derive(Debug, Clone, PartialEq)]
pub struct WoernerEggerParams {
    scale: f64,
    probabilities: Vec<f64>,
}

impl WoernerEggerParams {
    pub fn new(scale: f64, probabilities: Vec<f64>) -> Result<Self> {
        if !(scale > 0.0 && scale <= 0.5) {
            return Err(Error::validation(format!(
                "scale c = {scale} is not in (0, 0.5]"
            )));
        }
        let len = probabilities.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::validation(format!(
                "probability vector length {len} is not a power of two >= 2"
            )));
        }
        if probabilities.iter().any(|&p| !(p >= 0.0 && p.is_finite())) {
            return Err(Error::validation(
                "probabilities must be finite and nonnegative",
            ));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::validation(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(WoernerEggerParams {
            scale,
            probabilities,
        })
    }

    /// Normalizes nonnegative weights into probabilities.
    pub fn from_weights(scale: f64, weights: &[f64]) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if total.is_nan() || total <= 0.0 {
            return Err(Error::validation("weights have no positive mass"));
        }
        Self::new(scale, weights.iter().map(|w| w / total).collect())
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn num_qubits(&self) -> usize {
        self.probabilities.len().trailing_zeros() as usize
    }

    fn state_loader(&self) -> Result<PreparedOperator> {
        let amps: Vec<f64> = self.probabilities.iter().map(|p| p.sqrt()).collect();
        exact_amplitudes(&amps)
    }
}

/// `P₁ = Σ p_k sin²(θ_k)` read classically or from the ancilla of a
/// circuit applying `RY(2θ_k)` under key `k`.
fn ancilla_probability(
    params: &WoernerEggerParams,
    thetas: &[f64],
    mode: WeMode,
    linear: bool,
) -> Result<f64> {
    match mode {
        WeMode::Classical => Ok(params
            .probabilities
            .iter()
            .zip(thetas)
            .map(|(p, t)| p * t.sin().powi(2))
            .sum()),
        WeMode::Quantum => {
            let n = params.num_qubits();
            let mut program = CircuitProgram::new(n + 1);
            program.append_on(
                params.state_loader()?.program(),
                &(0..n).collect::<Vec<_>>(),
            )?;
            if linear {
                // θ_k = θ_0 + k·δ splits into one rotation per key bit
                let delta = thetas[1] - thetas[0];
                program.push(GateOp::ry(n, 2.0 * thetas[0]))?;
                for j in 0..n {
                    let angle = 2.0 * delta * (1u64 << j) as f64;
                    program.push(GateOp::ry(n, angle).controlled([j]))?;
                }
            } else {
                for (k, &theta) in thetas.iter().enumerate() {
                    let zeros: Vec<usize> = (0..n).filter(|&j| k >> j & 1 == 0).collect();
                    for &j in &zeros {
                        program.push(GateOp::x(j))?;
                    }
                    program.push(GateOp::ry(n, 2.0 * theta).controlled(0..n))?;
                    for &j in &zeros {
                        program.push(GateOp::x(j))?;
                    }
                }
            }
            StateVector::prepare(&program)?.probability_of_one(n)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WoernerEggerResult {
    pub mode: WeMode,
    pub scale: f64,
    pub p1: f64,
    pub estimate: f64,
    pub oracle: f64,
    pub abs_error: f64,
}

/// `Σ p_k f(k) ≈ (2P₁ − 1)/(2c)` for `f` with range in `[−1, 1]`.
pub fn woerner_egger_expected(
    params: &WoernerEggerParams,
    values: &[f64],
    mode: WeMode,
) -> Result<WoernerEggerResult> {
    if values.len() != params.probabilities.len() {
        return Err(Error::validation(format!(
            "{} values for {} probabilities",
            values.len(),
            params.probabilities.len()
        )));
    }
    if let Some(k) = values.iter().position(|v| v.is_nan() || v.abs() > 1.0) {
        return Err(Error::validation(format!(
            "f({k}) = {} is outside [-1, 1]",
            values[k]
        )));
    }
    let c = params.scale;
    let thetas: Vec<f64> = values.iter().map(|f| c * f + FRAC_PI_4).collect();
    let p1 = ancilla_probability(params, &thetas, mode, false)?;
    let estimate = (2.0 * p1 - 1.0) / (2.0 * c);
    let oracle = oracle::weighted_sum(&params.probabilities, |k| values[k]);
    Ok(WoernerEggerResult {
        mode,
        scale: c,
        p1,
        estimate,
        oracle,
        abs_error: (estimate - oracle).abs(),
    })
}

/// `Σ p_k g(k)` for the linear `g` running from `lo` at `k = 0` to `hi` at
/// `k = N − 1`; `None` means `g(k) = k`. Uses the canonical
/// `f(k) = −1 + 2k/(N − 1)` and a per-bit rotation circuit.
pub fn woerner_egger_linear(
    params: &WoernerEggerParams,
    bounds: Option<(f64, f64)>,
    mode: WeMode,
) -> Result<WoernerEggerResult> {
    let big_n = params.probabilities.len();
    let last = (big_n - 1) as f64;
    let (lo, hi) = bounds.unwrap_or((0.0, last));
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::validation("bounds must be finite"));
    }
    let c = params.scale;
    let thetas: Vec<f64> = (0..big_n)
        .map(|k| c * (-1.0 + 2.0 * k as f64 / last) + FRAC_PI_4)
        .collect();
    let p1 = ancilla_probability(params, &thetas, mode, true)?;
    let estimate = match bounds {
        None => last / (2.0 * c) * (p1 - 0.5 + c),
        Some(_) => lo + (hi - lo) / (2.0 * c) * (p1 - 0.5 + c),
    };
    let oracle = oracle::weighted_sum(&params.probabilities, |k| lo + (hi - lo) * k as f64 / last);
    Ok(WoernerEggerResult {
        mode,
        scale: c,
        p1,
        estimate,
        oracle,
        abs_error: (estimate - oracle).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> BinaryPolynomial {
        s.parse().unwrap()
    }

    fn expected_poly() -> BinaryPolynomial {
        poly("7 + 4*k1 - 5*k0*k1 - 2*k0*k2")
    }

    fn sin2_probabilities(n: usize) -> Vec<f64> {
        let w = WeightLoader::Sin4.weights(n).unwrap();
        let total: f64 = w.iter().sum();
        w.iter().map(|x| x / total).collect()
    }

    #[test]
    fn expected_value_sin4() {
        let r = expected_value_discrete(&expected_poly(), 4, &WeightLoader::Sin4, BitOrder::Msb0)
            .unwrap();
        assert!((r.quantum - 30.76777).abs() < 1e-3, "{}", r.quantum);
        assert!(r.abs_error < 1e-8);
        let e = r.estimate.unwrap().amplitude0.re;
        assert!((e - 0.17835).abs() < 5e-5, "{e}");
    }

    #[test]
    fn expected_value_uniform_is_plain_sum() {
        let r =
            expected_value_discrete(&expected_poly(), 4, &WeightLoader::Uniform, BitOrder::Msb0)
                .unwrap();
        assert!((r.quantum - 58.0).abs() < 1e-8);
        assert_eq!(r.oracle, 58.0);
    }

    #[test]
    fn expected_value_other_loaders_match_oracle() {
        for loader in [WeightLoader::RaisedCosine, WeightLoader::Sin8] {
            let r = expected_value_discrete(&expected_poly(), 4, &loader, BitOrder::Msb0).unwrap();
            assert!(r.abs_error < 1e-8, "{loader}: {r:?}");
        }
    }

    #[test]
    fn expected_value_zero_polynomial() {
        let p = BinaryPolynomial::zero(3).unwrap();
        let r = expected_value_discrete(&p, 2, &WeightLoader::Sin4, BitOrder::Msb0).unwrap();
        assert!(r.quantum.abs() < 1e-12);
    }

    #[test]
    fn payoff_matches_brute_force() {
        let table = FunctionTable::new(vec![7, 7, 11, 11, 7, 5, 6, 4], BitOrder::Msb0).unwrap();
        let spec = PayoffSpec::from_table(7, &table, WeightLoader::Sin4);
        let r = payoff_expectation(&spec, 4).unwrap();
        let w = WeightLoader::Sin4.weights(3).unwrap();
        let brute: f64 = table
            .values()
            .iter()
            .zip(&w)
            .filter(|(&f, _)| f >= 7)
            .map(|(&f, w)| w * (f - 7) as f64)
            .sum();
        assert!((r.quantum - brute).abs() < 1e-8, "{} vs {brute}", r.quantum);
        assert!((brute - (4.0 + 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn payoff_strike_above_range_is_zero() {
        let spec = PayoffSpec::new(15, expected_poly(), WeightLoader::Sin4, BitOrder::Msb0);
        let r = payoff_expectation(&spec, 4).unwrap();
        assert_eq!(r.quantum, 0.0);
        assert_eq!(r.oracle, 0.0);
    }

    #[test]
    fn payoff_zero_strike_equals_expected_value() {
        let spec = PayoffSpec::new(0, expected_poly(), WeightLoader::Sin4, BitOrder::Msb0);
        let payoff = payoff_expectation(&spec, 4).unwrap();
        let expect =
            expected_value_discrete(&expected_poly(), 4, &WeightLoader::Sin4, BitOrder::Msb0)
                .unwrap();
        assert!((payoff.quantum - expect.quantum).abs() < 1e-8);
    }

    #[test]
    fn payoff_rejects_negative_prices() {
        let spec = PayoffSpec::new(
            0,
            poly("2*k1 - k0*k1 - 3*k0*k2"),
            WeightLoader::Uniform,
            BitOrder::Msb0,
        );
        assert!(matches!(
            payoff_expectation(&spec, 3),
            Err(Error::Validation(_))
        ));
        let spec = PayoffSpec::new(16, expected_poly(), WeightLoader::Uniform, BitOrder::Msb0);
        assert!(payoff_expectation(&spec, 4).is_err());
    }

    #[test]
    fn cumulative_examples() {
        let w = WeightSpec::new(sin2_probabilities(3)).unwrap();
        assert!((cumulative_probability(&w, 3).unwrap().quantum - 0.375).abs() < 1e-8);
        assert!((cumulative_probability(&w, 7).unwrap().quantum - 1.0).abs() < 1e-8);
        assert!(cumulative_probability(&w, 0).unwrap().quantum.abs() < 1e-8);
    }

    #[test]
    fn var_examples() {
        let w = WeightSpec::new(sin2_probabilities(3)).unwrap();
        let r = value_at_risk(&VarQuery::new(w.clone(), 0.375).unwrap()).unwrap();
        assert_eq!((r.level, r.oracle_level), (3, 3));
        assert!((r.cumulative - 0.375).abs() < 1e-8);
        assert!(r.queries <= 3 + 1);

        let u = WeightSpec::new(vec![0.125; 8]).unwrap();
        let r = value_at_risk(&VarQuery::new(u.clone(), 0.5).unwrap()).unwrap();
        assert_eq!(r.level, 3);
        assert!((r.cumulative - 0.5).abs() < 1e-8);
        let r = value_at_risk(&VarQuery::new(u, 1e-6).unwrap()).unwrap();
        assert_eq!(r.level, 0);
    }

    #[test]
    fn var_is_monotone_in_alpha() {
        let w = WeightSpec::new(sin2_probabilities(4)).unwrap();
        let mut last = 0;
        for i in 1..40 {
            let alpha = i as f64 / 40.0;
            let r = value_at_risk(&VarQuery::new(w.clone(), alpha).unwrap()).unwrap();
            assert!(r.level >= last);
            assert_eq!(r.level, r.oracle_level);
            last = r.level;
        }
    }

    #[test]
    fn var_errors() {
        let half = WeightSpec::new(vec![0.1; 4]).unwrap();
        let err = value_at_risk(&VarQuery::new(half, 0.5).unwrap()).unwrap_err();
        assert!(matches!(err, Error::UnreachableAlpha { .. }));
        assert_eq!(err.exit_code(), 4);
        assert!(VarQuery::new(WeightSpec::uniform(2).unwrap(), 1.0).is_err());
        assert!(VarQuery::new(WeightSpec::uniform(2).unwrap(), 0.0).is_err());
    }

    #[test]
    fn rational_quantum_matches_oracle() {
        let r = expected_rational().unwrap();
        assert!(r.abs_error < 1e-8);
        assert!((r.weighted_sum_quantum - r.weighted_sum_oracle).abs() < 1e-8);
        let f = rational_table();
        assert!((f[0] - (4.01 + 4.01 - 0.344) / 7.856).abs() < 1e-12);
    }

    #[test]
    fn linear_exact_examples() {
        let r = linear_expected_exact(1.0, 2.0, 3, &WeightLoader::Sin4).unwrap();
        assert!((r.value - 36.0).abs() < 1e-4);
        assert!((r.identity_sum.weighted_sum - 16.0).abs() < 1e-6);
        let r = linear_expected_exact(3.0, 0.0, 3, &WeightLoader::Sin4).unwrap();
        assert!((r.value - 12.0).abs() < 1e-9);
    }

    #[test]
    fn linear_approx_examples() {
        let r = linear_expected_approx(0.0, 1.0, 0.1, 3, &WeightLoader::Sin4).unwrap();
        assert!((r.identity_sum.amplitude0.re - 0.02041).abs() < 1e-4);
        assert!((r.value - 15.99768).abs() < 1e-2);
        let r = linear_expected_approx(1.0, 2.0, 0.1, 3, &WeightLoader::Sin4).unwrap();
        assert!((r.value - 35.99536).abs() < 2e-2);
        let r = linear_expected_approx(0.0, 1.0, 1e-3, 3, &WeightLoader::Sin4).unwrap();
        assert!((r.value - 16.0).abs() < 1e-4);
        assert!(linear_expected_approx(0.0, 1.0, 0.0, 3, &WeightLoader::Sin4).is_err());
    }

    #[test]
    fn linear_approx_bias_is_quadratic() {
        let bias = |c: f64| {
            (linear_expected_approx(0.0, 1.0, c, 3, &WeightLoader::Sin4)
                .unwrap()
                .value
                - 16.0)
                .abs()
        };
        let (b1, b2, b3) = (bias(0.1), bias(0.05), bias(0.025));
        assert!(b1 / b2 > 3.5 && b2 / b3 > 3.5, "{b1} {b2} {b3}");
    }

    #[test]
    fn counting_examples() {
        let p = poly("2*k1 - k0*k1 - 3*k0*k2");
        let r = count_preimages(&p, 0, 3, BitOrder::Msb0).unwrap();
        assert_eq!((r.count, r.oracle), (3, 3));
        assert!((r.amplitude - 0.375).abs() < 1e-9);
        assert_eq!(count_preimages(&p, -3, 3, BitOrder::Msb0).unwrap().count, 1);
        let c = BinaryPolynomial::constant(3, 2).unwrap();
        assert_eq!(count_preimages(&c, 2, 3, BitOrder::Msb0).unwrap().count, 8);
        assert!(count_preimages(&p, 8, 3, BitOrder::Msb0).is_err());
    }

    #[test]
    fn we_constant_zero() {
        let params = WoernerEggerParams::new(0.1, vec![0.25; 4]).unwrap();
        for mode in [WeMode::Classical, WeMode::Quantum] {
            let r = woerner_egger_expected(&params, &[0.0; 4], mode).unwrap();
            assert!((r.p1 - 0.5).abs() < 1e-12);
            assert!(r.estimate.abs() < 1e-10);
        }
    }

    #[test]
    fn we_symmetric_instance() {
        let params = WoernerEggerParams::new(0.05, vec![0.125; 8]).unwrap();
        let f: Vec<f64> = (0..8).map(|k| (2.0 * k as f64 - 7.0) / 7.0).collect();
        let c = woerner_egger_expected(&params, &f, WeMode::Classical).unwrap();
        let q = woerner_egger_expected(&params, &f, WeMode::Quantum).unwrap();
        assert!(c.estimate.abs() < 0.01);
        assert!((c.p1 - q.p1).abs() < 1e-10);
    }

    #[test]
    fn we_linear_examples() {
        let params = WoernerEggerParams::new(0.01, sin2_probabilities(3)).unwrap();
        let r = woerner_egger_linear(&params, None, WeMode::Quantum).unwrap();
        assert!((r.oracle - 4.0).abs() < 1e-12);
        assert!((r.estimate - 4.0).abs() < 0.01, "{}", r.estimate);
        let c = woerner_egger_linear(&params, None, WeMode::Classical).unwrap();
        assert!((c.p1 - r.p1).abs() < 1e-10);
        let b = woerner_egger_linear(&params, Some((0.0, 7.0)), WeMode::Quantum).unwrap();
        assert!((b.estimate - r.estimate).abs() < 1e-12);

        let mut point = vec![0.0; 8];
        point[5] = 1.0;
        let params = WoernerEggerParams::new(0.01, point).unwrap();
        let r = woerner_egger_linear(&params, None, WeMode::Quantum).unwrap();
        assert!((r.estimate - 5.0).abs() < 0.01);
    }

    #[test]
    fn we_rejects_bad_params() {
        assert!(WoernerEggerParams::new(0.0, vec![0.5, 0.5]).is_err());
        assert!(WoernerEggerParams::new(0.6, vec![0.5, 0.5]).is_err());
        assert!(WoernerEggerParams::new(0.1, vec![0.5, 0.6]).is_err());
        let params = WoernerEggerParams::new(0.1, vec![0.5, 0.5]).unwrap();
        assert!(woerner_egger_expected(&params, &[0.0, 1.5], WeMode::Classical).is_err());
    }
}
