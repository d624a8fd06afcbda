//! State preparation operators used as the `A` and `B` sides of the
//! inner-product patterns.
//!
//! The distribution loaders place a handful of Fourier coefficients and
//! apply the inverse QFT:
//!
//! | loader | coefficients (index: value) | amplitudes |
//! |---|---|---|
//! | [`raised_cosine`] | 0: 1/√2, 1: −1/√2 | `√(2/N) sin(kπ/N) e^{i(π/2 − kπ/N)}` |
//! | [`sin4`] | 0: √(2/3), 1 and N−1: −1/√6 | `√(8/3N) sin²(kπ/N)` |
//! | [`sin8`] | 0: 6, 1 and N−1: −4, 2 and N−2: 1 (all /√70) | `√(128/35N) sin⁴(kπ/N)` |
//!
//! The placement follows from `6 − 8cos φ + 2cos 2φ = 16 sin⁴(φ/2)` under
//! the inverse transform `|j⟩ ↦ N^{-1/2} Σ_k e^{−2πijk/N}|k⟩`.

use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::encoding::encode_integer;
use crate::sim::{CircuitProgram, GateOp, StateVector};
use crate::{Error, Result};

/// A state-preparation program with the common factor relating its target
/// vector to the unit-norm amplitudes it produces: `amplitude_k = normalization · target_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedOperator {
    program: CircuitProgram,
    normalization: f64,
    label: String,
}

impl PreparedOperator {
    pub fn new(
        program: CircuitProgram,
        normalization: f64,
        label: impl Into<String>,
    ) -> Result<Self> {
        if !(normalization.is_finite() && normalization > 0.0) {
            return Err(Error::validation(format!(
                "normalization must be positive and finite, got {normalization}"
            )));
        }
        Ok(PreparedOperator {
            program,
            normalization,
            label: label.into(),
        })
    }

    pub fn program(&self) -> &CircuitProgram {
        &self.program
    }

    pub fn num_qubits(&self) -> usize {
        self.program.num_qubits()
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The state this operator prepares from `|0…0⟩`.
    pub fn state(&self) -> Result<StateVector> {
        StateVector::prepare(&self.program)
    }
}

fn check_min_qubits(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::validation(format!(
            "{what} needs at least {min} qubits, got {n}"
        )));
    }
    if n > crate::sim::MAX_QUBITS {
        return Err(Error::Capacity {
            requested: n,
            max: crate::sim::MAX_QUBITS,
        });
    }
    Ok(())
}

fn fourier_loader(
    n: usize,
    coefficients: &[(usize, f64)],
    normalization: f64,
    label: &str,
) -> Result<PreparedOperator> {
    let mut spectrum = vec![0.0; 1 << n];
    for &(idx, c) in coefficients {
        spectrum[idx] += c;
    }
    let mut prog = amplitude_tree(&spectrum)?;
    prog.push(GateOp::iqft(0..n))?;
    PreparedOperator::new(prog, normalization, label)
}

/// Raised-cosine loader `N_{1,n}`: probabilities `(2/N) sin²(kπ/N)`.
///
/// Amplitudes keep the phase `e^{i(π/2 − kπ/N)}`; see
/// [`raised_cosine_real`] for the phase-corrected variant.
pub fn raised_cosine(n: usize) -> Result<PreparedOperator> {
    check_min_qubits(n, 2, "raised cosine loader")?;
    let mut prog = CircuitProgram::new(n);
    prog.push(GateOp::h(0))?;
    prog.push(GateOp::p(0, PI))?;
    prog.push(GateOp::iqft(0..n))?;
    let big_n = (1u64 << n) as f64;
    PreparedOperator::new(prog, (2.0 / big_n).sqrt(), "N1")
}

/// [`raised_cosine`] followed by the geometric phases `e^{ikπ/N}` and a
/// global `−i`, leaving real amplitudes `√(2/N) sin(kπ/N)`.
pub fn raised_cosine_real(n: usize) -> Result<PreparedOperator> {
    let base = raised_cosine(n)?;
    let mut prog = base.program().clone();
    let big_n = (1u64 << n) as f64;
    for j in 0..n {
        prog.push(GateOp::p(j, PI * (1u64 << j) as f64 / big_n))?;
    }
    // X·P(−π/2)·X·P(−π/2) = −i·I
    prog.push(GateOp::p(0, -PI / 2.0))?;
    prog.push(GateOp::x(0))?;
    prog.push(GateOp::p(0, -PI / 2.0))?;
    prog.push(GateOp::x(0))?;
    PreparedOperator::new(prog, base.normalization(), "N1r")
}

/// Three-coefficient loader `N_{2,n}`: amplitudes `√(8/3N) sin²(kπ/N)`.
pub fn sin4(n: usize) -> Result<PreparedOperator> {
    check_min_qubits(n, 2, "sin⁴ loader")?;
    let big_n = 1usize << n;
    let side = -(1.0 / 6.0f64).sqrt();
    fourier_loader(
        n,
        &[(0, (2.0 / 3.0f64).sqrt()), (1, side), (big_n - 1, side)],
        (8.0 / (3.0 * big_n as f64)).sqrt(),
        "N2",
    )
}

/// Five-coefficient loader `N_{4,n}`: amplitudes `√(128/35N) sin⁴(kπ/N)`.
pub fn sin8(n: usize) -> Result<PreparedOperator> {
    check_min_qubits(n, 3, "sin⁸ loader")?;
    let big_n = 1usize << n;
    let s = 70.0f64.sqrt();
    fourier_loader(
        n,
        &[
            (0, 6.0 / s),
            (1, -4.0 / s),
            (big_n - 1, -4.0 / s),
            (2, 1.0 / s),
            (big_n - 2, 1.0 / s),
        ],
        (128.0 / (35.0 * big_n as f64)).sqrt(),
        "N4",
    )
}

/// Trigonometric linear approximation `T_{θ,n}` on `n + 1` qubits (the
/// ancilla is qubit `n`):
/// `N^{-1/2} Σ_k sin(kθ)|k⟩|0⟩ + N^{-1/2} Σ_k cos(kθ)|k⟩|1⟩`.
///
/// Normalization is `θ/√N`, the small-angle slope of the `|0⟩` branch.
pub fn linear_trig(theta: f64, n: usize) -> Result<PreparedOperator> {
    check_min_qubits(n + 1, 2, "trigonometric loader")?;
    if !theta.is_finite() {
        return Err(Error::validation("angle must be finite"));
    }
    let ancilla = n;
    let mut prog = CircuitProgram::new(n + 1);
    for q in 0..n {
        prog.push(GateOp::h(q))?;
    }
    prog.push(GateOp::x(ancilla))?;
    // RY(−2kθ)|1⟩ = sin(kθ)|0⟩ + cos(kθ)|1⟩
    for j in 0..n {
        let angle = -2.0 * theta * (1u64 << j) as f64;
        prog.push(GateOp::ry(ancilla, angle).controlled([j]))?;
    }
    let big_n = (1u64 << n) as f64;
    let normalization = if theta == 0.0 {
        1.0 / big_n.sqrt()
    } else {
        theta.abs() / big_n.sqrt()
    };
    PreparedOperator::new(prog, normalization, format!("T({theta})"))
}

/// Multiplexed-RY tree preparing `target/‖target‖` with real signed entries.
///
/// Qubits are split from the most significant down. Inner nodes rotate by
/// the ratio of child norms; the last level uses the signed pair directly,
/// so `cos`/`sin` of the leaf angle carry the signs.
fn amplitude_tree(target: &[f64]) -> Result<CircuitProgram> {
    let len = target.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::validation(format!(
            "target length {len} is not a power of two >= 2"
        )));
    }
    if target.iter().any(|v| !v.is_finite()) {
        return Err(Error::validation("target contains non-finite entries"));
    }
    let q = len.trailing_zeros() as usize;
    if q > crate::sim::MAX_QUBITS {
        return Err(Error::Capacity {
            requested: q,
            max: crate::sim::MAX_QUBITS,
        });
    }
    // norms[l][p]: norm of the block of entries whose top l bits equal p
    let mut norms: Vec<Vec<f64>> = vec![Vec::new(); q + 1];
    norms[q] = target.iter().map(|v| v.abs()).collect();
    for l in (0..q).rev() {
        norms[l] = norms[l + 1]
            .chunks_exact(2)
            .map(|c| c[0].hypot(c[1]))
            .collect();
    }
    if norms[0][0] == 0.0 {
        return Err(Error::validation("target vector is all zeros"));
    }

    let mut prog = CircuitProgram::new(q);
    for l in 0..q {
        let qubit = q - 1 - l;
        let controls: Vec<usize> = (q - l..q).collect();
        for prefix in 0..(1usize << l) {
            let (v0, v1) = if l == q - 1 {
                (target[2 * prefix], target[2 * prefix + 1])
            } else {
                (norms[l + 1][2 * prefix], norms[l + 1][2 * prefix + 1])
            };
            if v0 == 0.0 && v1 == 0.0 {
                continue;
            }
            let angle = 2.0 * v1.atan2(v0);
            if angle == 0.0 {
                continue;
            }
            // prefix bit b sits on qubit q − l + b; flip zeros so the
            // all-ones control condition selects this prefix
            let flips: Vec<usize> = (0..l)
                .filter(|b| prefix & (1 << b) == 0)
                .map(|b| q - l + b)
                .collect();
            for &f in &flips {
                prog.push(GateOp::x(f))?;
            }
            prog.push(GateOp::ry(qubit, angle).controlled(controls.iter().copied()))?;
            for &f in &flips {
                prog.push(GateOp::x(f))?;
            }
        }
    }
    Ok(prog)
}

/// Exact loader for a real target vector of length `2^q`: prepares
/// `target/‖target‖`, normalization `1/‖target‖`.
pub fn exact_amplitudes(target: &[f64]) -> Result<PreparedOperator> {
    let prog = amplitude_tree(target)?;
    let norm = target.iter().map(|v| v * v).sum::<f64>().sqrt();
    PreparedOperator::new(prog, 1.0 / norm, "exact")
}

/// Identity ramp `L_q`: amplitudes proportional to `k`, normalization
/// `√(6/((M−1)M(2M−1)))`.
pub fn identity_ramp(q: usize) -> Result<PreparedOperator> {
    check_min_qubits(q, 1, "identity ramp")?;
    let big_m = 1usize << q;
    let target: Vec<f64> = (0..big_m).map(|k| k as f64).collect();
    let prog = amplitude_tree(&target)?;
    let m = big_m as f64;
    PreparedOperator::new(prog, (6.0 / ((m - 1.0) * m * (2.0 * m - 1.0))).sqrt(), "L")
}

/// Uniform amplitudes `1/√(l+1)` on keys `0..=l`.
pub fn quantile_state(l: usize, n: usize) -> Result<PreparedOperator> {
    check_min_qubits(n, 1, "quantile state")?;
    let big_n = 1usize << n;
    if l >= big_n {
        return Err(Error::validation(format!(
            "cutoff {l} out of range for {n} qubits"
        )));
    }
    let target: Vec<f64> = (0..big_n).map(|k| if k <= l { 1.0 } else { 0.0 }).collect();
    let prog = amplitude_tree(&target)?;
    PreparedOperator::new(
        prog,
        1.0 / ((l + 1) as f64).sqrt(),
        format!("quantile({l})"),
    )
}

/// Basis state `|v0⟩_m` through integer encoding.
pub fn basis_operator(v0: usize, m: usize) -> Result<PreparedOperator> {
    check_min_qubits(m, 1, "basis operator")?;
    let big_m = 1usize << m;
    if v0 >= big_m {
        return Err(Error::validation(format!(
            "basis value {v0} out of range for {m} qubits"
        )));
    }
    let signed = if v0 >= big_m / 2 {
        v0 as i64 - big_m as i64
    } else {
        v0 as i64
    };
    PreparedOperator::new(encode_integer(signed, m)?, 1.0, format!("point({v0})"))
}

/// `H^{⊗n}`, normalization `1/√N`.
pub fn uniform(n: usize) -> Result<PreparedOperator> {
    check_min_qubits(n, 1, "uniform loader")?;
    let mut prog = CircuitProgram::new(n);
    for q in 0..n {
        prog.push(GateOp::h(q))?;
    }
    PreparedOperator::new(prog, 1.0 / ((1u64 << n) as f64).sqrt(), "uniform")
}

/// Discretized normal density with mean `mu` and standard deviation
/// `sigma`, loaded into amplitudes (weights `w_k = density(k)`).
pub fn gaussian(mu: f64, sigma: f64, n: usize) -> Result<PreparedOperator> {
    check_min_qubits(n, 1, "gaussian loader")?;
    if !(sigma.is_finite() && sigma > 0.0 && mu.is_finite()) {
        return Err(Error::validation(
            "gaussian needs finite mu and positive sigma",
        ));
    }
    let density: Vec<f64> = (0..1usize << n)
        .map(|k| {
            let z = (k as f64 - mu) / sigma;
            (-0.5 * z * z).exp() / (sigma * (2.0 * PI).sqrt())
        })
        .collect();
    let mut op = exact_amplitudes(&density)?;
    op.label = format!("gauss({mu},{sigma})");
    Ok(op)
}

/// Loader names accepted on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum Loader {
    RaisedCosine,
    Sin4,
    Sin8,
    Ramp,
    Trig,
    Quantile,
    Point,
    Uniform,
    /// Exact amplitudes read from a `k,value` CSV file.
    File(PathBuf),
}

/// Extra parameters some loaders need.
#[derive(Debug, Clone, Default)]
pub struct LoaderParams {
    pub theta: Option<f64>,
    pub cutoff: Option<usize>,
    pub point: Option<usize>,
}

impl Loader {
    pub fn build(&self, n: usize, params: &LoaderParams) -> Result<PreparedOperator> {
        let need = |what: &str| Error::validation(format!("loader `{self}` needs --{what}"));
        match self {
            Loader::RaisedCosine => raised_cosine(n),
            Loader::Sin4 => sin4(n),
            Loader::Sin8 => sin8(n),
            Loader::Ramp => identity_ramp(n),
            Loader::Trig => linear_trig(params.theta.ok_or_else(|| need("theta"))?, n),
            Loader::Quantile => quantile_state(params.cutoff.ok_or_else(|| need("l"))?, n),
            Loader::Point => basis_operator(params.point.ok_or_else(|| need("v0"))?, n),
            Loader::Uniform => uniform(n),
            Loader::File(path) => {
                let values = read_real_csv(path)?;
                if values.len() != 1 << n {
                    return Err(Error::validation(format!(
                        "{} holds {} values, expected {}",
                        path.display(),
                        values.len(),
                        1usize << n
                    )));
                }
                let mut op = exact_amplitudes(&values)?;
                op.label = format!("file:{}", path.display());
                Ok(op)
            }
        }
    }
}

/// Reads `k,value` rows with real values; a header row is allowed.
pub fn read_real_csv(path: &std::path::Path) -> Result<Vec<f64>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)?;
    let mut rows: Vec<(usize, f64)> = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let parsed = (
            rec.get(0).map(str::parse::<usize>),
            rec.get(1).map(str::parse::<f64>),
        );
        match parsed {
            (Some(Ok(k)), Some(Ok(v))) if rec.len() == 2 => rows.push((k, v)),
            _ if i == 0 => continue,
            _ => {
                return Err(Error::Parse(format!(
                    "bad row {} in {}",
                    i + 1,
                    path.display()
                )))
            }
        }
    }
    let mut values = vec![None; rows.len()];
    for (k, v) in rows {
        match values.get_mut(k) {
            Some(slot @ None) => *slot = Some(v),
            _ => return Err(Error::Parse(format!("key {k} duplicated or out of range"))),
        }
    }
    Ok(values.into_iter().map(|v| v.unwrap_or_default()).collect())
}

impl FromStr for Loader {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(Loader::File(PathBuf::from(path)));
        }
        Ok(match s {
            "rcos" => Loader::RaisedCosine,
            "sin4" => Loader::Sin4,
            "sin8" => Loader::Sin8,
            "ramp" => Loader::Ramp,
            "trig" => Loader::Trig,
            "quantile" => Loader::Quantile,
            "point" => Loader::Point,
            "uniform" => Loader::Uniform,
            other => return Err(Error::Parse(format!("unknown loader `{other}`"))),
        })
    }
}

impl fmt::Display for Loader {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Loader::RaisedCosine => f.write_str("rcos"),
            Loader::Sin4 => f.write_str("sin4"),
            Loader::Sin8 => f.write_str("sin8"),
            Loader::Ramp => f.write_str("ramp"),
            Loader::Trig => f.write_str("trig"),
            Loader::Quantile => f.write_str("quantile"),
            Loader::Point => f.write_str("point"),
            Loader::Uniform => f.write_str("uniform"),
            Loader::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}
