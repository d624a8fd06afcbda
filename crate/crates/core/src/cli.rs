//! Command-line front end for the `qdict` binary.
//!
//! Every command prints one JSON record on stdout. `--out` writes the same
//! record to a file and `--csv` dumps the relevant statevector as
//! `basis,re,im,prob` rows. With `--out-dir` (or `QDICT_OUT_DIR`) both land
//! in `<dir>/<command>.{json,csv}` unless given explicitly. Failures print a
//! JSON error record and exit with 2 (validation), 3 (overflow) or
//! 4 (unreachable α).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::encoding::{dictionary_program, value_window, RegisterLayout, ValueWindow};
use crate::finance::{self, PayoffSpec, VarQuery, WeMode, WeightLoader, WoernerEggerParams};
use crate::innerprod::{
    polynomial_weighted_sum_circuit, weighted_sum_circuit, HashSpec, PatternCircuit, WeightSpec,
};
use crate::polynomial::{BinaryPolynomial, BitOrder, FunctionTable};
use crate::sim::{CircuitProgram, StateVector};
use crate::stateprep::{
    basis_operator, exact_amplitudes, identity_ramp, linear_trig, read_real_csv, sin4, uniform,
    Loader, LoaderParams, PreparedOperator,
};
use crate::{Error, Result};

/// Environment variable holding the default output directory.
pub const OUT_DIR_ENV: &str = "QDICT_OUT_DIR";

#[derive(Debug, Clone, Parser)]
#[command(
    name = "qdict",
    version,
    about = "Quantum dictionary and weighted-sum simulator"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Default directory for `<command>.json` and `<command>.csv`.
    #[arg(long, global = true, env = OUT_DIR_ENV)]
    pub out_dir: Option<PathBuf>,

    /// Write the JSON record here as well as to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Write the statevector as `basis,re,im,prob` rows.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Dump a loader's amplitudes and probabilities.
    Prep {
        /// rcos, sin4, sin8, ramp, trig, quantile, point, uniform or file:<path>
        #[arg(long)]
        loader: Loader,
        #[arg(long)]
        n: usize,
        /// Rotation step for `trig`.
        #[arg(long)]
        theta: Option<f64>,
        /// Cutoff for `quantile`.
        #[arg(long)]
        l: Option<usize>,
        /// Basis value for `point`.
        #[arg(long)]
        v0: Option<usize>,
    },
    /// Dump the key/value outcome table of a dictionary-encoded polynomial.
    Dict {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        m: usize,
    },
    /// Weighted expected value of a polynomial.
    Expect {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        weights: WeightArgs,
        #[command(flatten)]
        sample: SampleArgs,
    },
    /// Expected call payoff `Σ_{f(k) ≥ K} w_k (f(k) − K)`.
    Payoff {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        strike: i64,
        #[command(flatten)]
        weights: WeightArgs,
        #[command(flatten)]
        sample: SampleArgs,
    },
    /// Value at risk by binary search over cumulative mass.
    Var {
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
        /// Use the weights as given instead of normalizing them to sum to 1.
        #[arg(long)]
        unnormalized: bool,
    },
    /// Count keys whose polynomial value equals `v0`.
    Count {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        v0: i64,
        #[command(flatten)]
        sample: SampleArgs,
    },
    /// `Σ w_k (intercept + slope·k)` with the identity ramp.
    LinearExact {
        #[command(flatten)]
        linear: LinearArgs,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        weights: WeightArgs,
        #[command(flatten)]
        sample: SampleArgs,
    },
    /// `Σ w_k (intercept + slope·k)` with the small-angle trig loader.
    LinearApprox {
        #[command(flatten)]
        linear: LinearArgs,
        #[arg(long, default_value_t = 0.1)]
        c: f64,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        weights: WeightArgs,
        #[command(flatten)]
        sample: SampleArgs,
    },
    /// Expected value of the rational pricing function on 4 key qubits.
    Rational {
        #[command(flatten)]
        sample: SampleArgs,
    },
    /// Woerner–Egger ancilla-rotation estimate.
    We {
        #[arg(long, default_value_t = 0.01)]
        c: f64,
        #[arg(long)]
        n: usize,
        /// Probabilities `p_k`; the weights are normalized to sum to 1.
        #[command(flatten)]
        weights: WeightArgs,
        /// `k,value` CSV with `f(k)` in [−1, 1]; without it `f` is linear in `k`.
        #[arg(long)]
        values: Option<PathBuf>,
        /// Range `lo hi` of the linear function (default `0 N−1`).
        #[arg(
            long,
            num_args = 2,
            allow_hyphen_values = true,
            conflicts_with = "values"
        )]
        bounds: Option<Vec<f64>>,
        #[arg(long, default_value = "quantum")]
        mode: WeMode,
    },
    /// Run every worked instance and compare against the published values.
    #[command(visible_alias = "paper-suite")]
    ReferenceSuite,
}

#[derive(Debug, Clone, Args)]
pub struct PolyArgs {
    /// Polynomial text, e.g. `7 + 4*k1 - 5*k0*k1 - 2*k0*k2`.
    #[arg(long, required_unless_present = "table", conflicts_with = "table")]
    pub poly: Option<String>,
    /// `k,value` CSV function table.
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Key qubits; defaults to the highest variable index + 1.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value = "msb0")]
    pub bit_order: BitOrder,
}

impl PolyArgs {
    fn load(&self) -> Result<BinaryPolynomial> {
        let p = match (&self.poly, &self.table) {
            (Some(text), _) => match self.n {
                Some(n) => BinaryPolynomial::parse_with_vars(text, n)?,
                None => text.parse()?,
            },
            (None, Some(path)) => {
                let table = FunctionTable::read_csv(fs::File::open(path)?, self.bit_order)?;
                BinaryPolynomial::from_table(&table)
            }
            (None, None) => return Err(Error::validation("need --poly or --table")),
        };
        if let Some(n) = self.n {
            if p.num_vars() != n {
                return Err(Error::validation(format!(
                    "function has {} key bits, --n is {n}",
                    p.num_vars()
                )));
            }
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, Args)]
pub struct WeightArgs {
    /// sin4, rcos, sin8, uniform or file:<path>
    #[arg(long, default_value = "sin4")]
    pub weights: String,
}

impl WeightArgs {
    fn load(&self) -> Result<WeightLoader> {
        match self.weights.strip_prefix("file:") {
            Some(path) => Ok(WeightLoader::Custom(WeightSpec::new(read_real_csv(
                Path::new(path),
            )?)?)),
            None => self.weights.parse(),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct LinearArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub intercept: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub slope: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RunMode {
    Exact,
    Sampled,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    /// `sampled` adds a shot-frequency estimate of `|E|`.
    #[arg(long, value_enum, default_value_t = RunMode::Exact)]
    pub mode: RunMode,
    #[arg(long, default_value_t = 8192)]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Prep { .. } => "prep",
            Command::Dict { .. } => "dict",
            Command::Expect { .. } => "expect",
            Command::Payoff { .. } => "payoff",
            Command::Var { .. } => "var",
            Command::Count { .. } => "count",
            Command::LinearExact { .. } => "linear-exact",
            Command::LinearApprox { .. } => "linear-approx",
            Command::Rational { .. } => "rational",
            Command::We { .. } => "we",
            Command::ReferenceSuite => "reference-suite",
        }
    }
}

/// Result of one command: the JSON record, an optional state for `--csv`,
/// and the text shown on stdout.
#[derive(Debug, Clone)]
pub struct Output {
    pub record: Value,
    pub state: Option<StateVector>,
    pub display: String,
}

impl Output {
    fn record(record: Value, state: Option<StateVector>) -> Result<Self> {
        let display = serde_json::to_string_pretty(&record)?;
        Ok(Output {
            record,
            state,
            display,
        })
    }
}

/// One row of the statevector CSV.
#[derive(Debug, Clone, Serialize)]
pub struct StateRow {
    pub basis: usize,
    pub re: f64,
    pub im: f64,
    pub prob: f64,
}

pub fn state_rows(state: &StateVector) -> Vec<StateRow> {
    state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(basis, a)| StateRow {
            basis,
            re: a.re,
            im: a.im,
            prob: a.norm_sqr(),
        })
        .collect()
}

pub fn write_state_csv(state: &StateVector, writer: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for row in state_rows(state) {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn sampled(circuit: &PatternCircuit, sample: &SampleArgs) -> Result<Value> {
    Ok(match sample.mode {
        RunMode::Exact => Value::Null,
        RunMode::Sampled => serde_json::to_value(circuit.sampled(sample.shots, sample.seed)?)?,
    })
}

fn with_sampling(
    mut record: Value,
    circuit: Option<&PatternCircuit>,
    sample: &SampleArgs,
) -> Result<(Value, Option<StateVector>)> {
    let Some(circuit) = circuit else {
        return Ok((record, None));
    };
    let s = sampled(circuit, sample)?;
    if !s.is_null() {
        record["sampled"] = s;
    }
    Ok((record, Some(circuit.final_state()?)))
}

fn extend_by_ancilla(a_op: &PreparedOperator) -> Result<PreparedOperator> {
    let n = a_op.num_qubits();
    let mut program = CircuitProgram::new(n + 1);
    program.append_on(a_op.program(), &(0..n).collect::<Vec<_>>())?;
    PreparedOperator::new(program, a_op.normalization(), a_op.label())
}

/// Runs one parsed command.
pub fn run(config: &RunConfig) -> Result<Output> {
    match &config.command {
        Command::Prep {
            loader,
            n,
            theta,
            l,
            v0,
        } => {
            let params = LoaderParams {
                theta: *theta,
                cutoff: *l,
                point: *v0,
            };
            let op = loader.build(*n, &params)?;
            let state = op.state()?;
            let record = json!({
                "command": "prep",
                "loader": loader.to_string(),
                "label": op.label(),
                "n": n,
                "qubits": op.num_qubits(),
                "normalization": op.normalization(),
                "probabilities": state.probabilities(),
            });
            Output::record(record, Some(state))
        }
        Command::Dict { poly, m } => {
            let p = poly.load()?;
            let layout = RegisterLayout::with_bit_order(p.num_vars(), *m, poly.bit_order)?;
            let state = StateVector::prepare(&dictionary_program(&p, &layout)?)?;
            let big_m = 1i64 << m;
            let signed = value_window(&p, *m, poly.bit_order)? == ValueWindow::TwosComplement;
            let rows: Vec<Value> = state
                .probabilities()
                .iter()
                .enumerate()
                .filter(|(_, &prob)| prob > 1e-12)
                .map(|(basis, &prob)| {
                    let (key, register) = layout.split_index(basis);
                    let reg = register as i64;
                    let value = if signed && reg >= big_m / 2 {
                        reg - big_m
                    } else {
                        reg
                    };
                    json!({ "key": key, "register": register, "value": value, "probability": prob })
                })
                .collect();
            let record = json!({
                "command": "dict",
                "polynomial": p.to_string(),
                "n": p.num_vars(),
                "m": m,
                "bit_order": poly.bit_order,
                "rows": rows,
            });
            Output::record(record, Some(state))
        }
        Command::Expect {
            poly,
            m,
            weights,
            sample,
        } => {
            let p = poly.load()?;
            let loader = weights.load()?;
            let report = finance::expected_value_discrete(&p, *m, &loader, poly.bit_order)?;
            let circuit = polynomial_weighted_sum_circuit(
                &loader.operator(p.num_vars())?,
                &p,
                &identity_ramp(*m)?,
                poly.bit_order,
            )?;
            let record = json!({
                "command": "expect",
                "polynomial": p.to_string(),
                "n": p.num_vars(),
                "m": m,
                "weights": loader.to_string(),
                "result": report,
            });
            let (record, state) = with_sampling(record, Some(&circuit), sample)?;
            Output::record(record, state)
        }
        Command::Payoff {
            poly,
            m,
            strike,
            weights,
            sample,
        } => {
            let p = poly.load()?;
            let loader = weights.load()?;
            let spec = PayoffSpec::new(*strike, p.clone(), loader.clone(), poly.bit_order);
            let report = finance::payoff_expectation(&spec, *m)?;
            let hash = HashSpec::call_payoff(*m, *strike)?;
            let circuit = if hash.is_zero() {
                None
            } else {
                let w = WeightSpec::new(loader.weights(p.num_vars())?)?;
                Some(polynomial_weighted_sum_circuit(
                    &w.loader()?,
                    &p,
                    &hash.loader()?,
                    poly.bit_order,
                )?)
            };
            let record = json!({
                "command": "payoff",
                "polynomial": p.to_string(),
                "n": p.num_vars(),
                "m": m,
                "strike": strike,
                "weights": loader.to_string(),
                "result": report,
            });
            let (record, state) = with_sampling(record, circuit.as_ref(), sample)?;
            Output::record(record, state)
        }
        Command::Var {
            weights,
            n,
            alpha,
            unnormalized,
        } => {
            let loader = weights.load()?;
            let mut w = loader.weights(*n)?;
            if !unnormalized {
                let total: f64 = w.iter().sum();
                w.iter_mut().for_each(|x| *x /= total);
            }
            let result = finance::value_at_risk(&VarQuery::new(WeightSpec::new(w)?, *alpha)?)?;
            let record = json!({
                "command": "var",
                "n": n,
                "weights": loader.to_string(),
                "normalized": !unnormalized,
                "alpha": alpha,
                "result": result,
            });
            Output::record(record, None)
        }
        Command::Count {
            poly,
            m,
            v0,
            sample,
        } => {
            let p = poly.load()?;
            let result = finance::count_preimages(&p, *v0, *m, poly.bit_order)?;
            let b_op = basis_operator((*v0).rem_euclid(1 << m) as usize, *m)?;
            let circuit = polynomial_weighted_sum_circuit(
                &uniform(p.num_vars())?,
                &p,
                &b_op,
                poly.bit_order,
            )?;
            let record = json!({
                "command": "count",
                "polynomial": p.to_string(),
                "n": p.num_vars(),
                "m": m,
                "result": result,
            });
            let (record, state) = with_sampling(record, Some(&circuit), sample)?;
            Output::record(record, state)
        }
        Command::LinearExact {
            linear,
            n,
            weights,
            sample,
        } => {
            let loader = weights.load()?;
            let result =
                finance::linear_expected_exact(linear.intercept, linear.slope, *n, &loader)?;
            let circuit = weighted_sum_circuit(&loader.operator(*n)?, &identity_ramp(*n)?)?;
            let record = json!({
                "command": "linear-exact",
                "n": n,
                "weights": loader.to_string(),
                "result": result,
            });
            let (record, state) = with_sampling(record, Some(&circuit), sample)?;
            Output::record(record, state)
        }
        Command::LinearApprox {
            linear,
            c,
            n,
            weights,
            sample,
        } => {
            let loader = weights.load()?;
            let result =
                finance::linear_expected_approx(linear.intercept, linear.slope, *c, *n, &loader)?;
            let theta = c / (2.0 * (1u64 << n) as f64);
            let circuit = weighted_sum_circuit(
                &extend_by_ancilla(&loader.operator(*n)?)?,
                &linear_trig(theta, *n)?,
            )?;
            let record = json!({
                "command": "linear-approx",
                "n": n,
                "c": c,
                "weights": loader.to_string(),
                "result": result,
            });
            let (record, state) = with_sampling(record, Some(&circuit), sample)?;
            Output::record(record, state)
        }
        Command::Rational { sample } => {
            let result = finance::expected_rational()?;
            let circuit =
                weighted_sum_circuit(&sin4(4)?, &exact_amplitudes(&finance::rational_table())?)?;
            let record = json!({
                "command": "rational",
                "n": 4,
                "table": finance::rational_table(),
                "result": result,
            });
            let (record, state) = with_sampling(record, Some(&circuit), sample)?;
            Output::record(record, state)
        }
        Command::We {
            c,
            n,
            weights,
            values,
            bounds,
            mode,
        } => {
            let loader = weights.load()?;
            let params = WoernerEggerParams::from_weights(*c, &loader.weights(*n)?)?;
            let (kind, result) = match values {
                Some(path) => {
                    let f = read_real_csv(path)?;
                    (
                        "general",
                        finance::woerner_egger_expected(&params, &f, *mode)?,
                    )
                }
                None => {
                    let b = bounds.as_ref().map(|b| (b[0], b[1]));
                    ("linear", finance::woerner_egger_linear(&params, b, *mode)?)
                }
            };
            let record = json!({
                "command": "we",
                "n": n,
                "weights": loader.to_string(),
                "function": kind,
                "result": result,
            });
            Output::record(record, None)
        }
        Command::ReferenceSuite => {
            let rows = reference_suite()?;
            let record = json!({ "command": "reference-suite", "rows": rows });
            Ok(Output {
                display: format_suite(&rows),
                record,
                state: None,
            })
        }
    }
}

/// One comparison between a computed value and a published reference.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteRow {
    pub instance: &'static str,
    pub quantity: &'static str,
    pub reference: Option<f64>,
    pub computed: f64,
    pub oracle: f64,
    pub tolerance: Option<f64>,
    pub status: &'static str,
}

impl SuiteRow {
    fn new(
        instance: &'static str,
        quantity: &'static str,
        reference: Option<f64>,
        computed: f64,
        oracle: f64,
        tolerance: Option<f64>,
    ) -> Self {
        let status = match (reference, tolerance) {
            (Some(r), Some(t)) if (computed - r).abs() <= t => "ok",
            (Some(_), Some(_)) => "mismatch",
            _ if (computed - oracle).abs() <= 1e-8 => "oracle",
            _ => "mismatch",
        };
        SuiteRow {
            instance,
            quantity,
            reference,
            computed,
            oracle,
            tolerance,
            status,
        }
    }

    /// A published value that is known not to reproduce; shown for reference.
    fn informational(
        instance: &'static str,
        quantity: &'static str,
        reference: f64,
        computed: f64,
        oracle: f64,
    ) -> Self {
        SuiteRow {
            status: "info",
            ..SuiteRow::new(instance, quantity, Some(reference), computed, oracle, None)
        }
    }
}

/// Every worked instance with its published value where one exists.
pub fn reference_suite() -> Result<Vec<SuiteRow>> {
    let msb = BitOrder::Msb0;
    let expected_poly: BinaryPolynomial = "7 + 4*k1 - 5*k0*k1 - 2*k0*k2".parse()?;
    let counting_poly: BinaryPolynomial = "2*k1 - k0*k1 - 3*k0*k2".parse()?;
    let mut rows = Vec::new();

    let r = finance::expected_value_discrete(&expected_poly, 4, &WeightLoader::Sin4, msb)?;
    let e = r.estimate.as_ref().map_or(0.0, |e| e.amplitude0.re);
    let e_oracle = r.oracle / r.estimate.as_ref().map_or(1.0, |e| e.rescale_factor);
    rows.push(SuiteRow::new(
        "expected-value",
        "amplitude",
        Some(0.17835),
        e,
        e_oracle,
        Some(5e-5),
    ));
    rows.push(SuiteRow::new(
        "expected-value",
        "weighted sum",
        Some(30.76777),
        r.quantum,
        r.oracle,
        Some(1e-3),
    ));

    let spec = PayoffSpec::new(7, expected_poly.clone(), WeightLoader::Sin4, msb);
    let r = finance::payoff_expectation(&spec, 4)?;
    rows.push(SuiteRow::new(
        "payoff",
        "K=7 payoff",
        None,
        r.quantum,
        r.oracle,
        None,
    ));

    let sin2 = WeightLoader::Sin4.weights(3)?;
    let w = WeightSpec::new(sin2.iter().map(|x| x / 4.0).collect())?;
    let r = finance::cumulative_probability(&w, 3)?;
    rows.push(SuiteRow::new(
        "value-at-risk",
        "mass up to l=3",
        None,
        r.quantum,
        r.oracle,
        None,
    ));
    let var = finance::value_at_risk(&VarQuery::new(w, 0.375)?)?;
    rows.push(SuiteRow::new(
        "value-at-risk",
        "l* at alpha=0.375",
        None,
        var.level as f64,
        var.oracle_level as f64,
        None,
    ));

    let r = finance::expected_rational()?;
    rows.push(SuiteRow::new(
        "rational",
        "normalized sum",
        None,
        r.normalized_quantum,
        r.normalized_oracle,
        None,
    ));
    rows.push(SuiteRow::informational(
        "rational",
        "amplitude",
        0.55050,
        r.amplitude,
        r.amplitude,
    ));
    rows.push(SuiteRow::informational(
        "rational",
        "simulated sum",
        1.34845,
        r.normalized_quantum,
        r.normalized_oracle,
    ));
    rows.push(SuiteRow::informational(
        "rational",
        "classical sum",
        1.33431,
        r.normalized_oracle,
        r.normalized_oracle,
    ));

    let r = finance::linear_expected_exact(0.0, 1.0, 3, &WeightLoader::Sin4)?;
    rows.push(SuiteRow::new(
        "linear-exact",
        "sum w_k k",
        Some(16.0),
        r.value,
        r.oracle,
        Some(1e-6),
    ));
    rows.push(SuiteRow::new(
        "linear-exact",
        "heuristic sum w_k k",
        Some(15.98493),
        r.value,
        r.oracle,
        Some(0.02),
    ));
    let r = finance::linear_expected_exact(1.0, 2.0, 3, &WeightLoader::Sin4)?;
    rows.push(SuiteRow::new(
        "linear-exact",
        "sum w_k (1+2k)",
        Some(36.0),
        r.value,
        r.oracle,
        Some(1e-4),
    ));

    let r = finance::linear_expected_approx(0.0, 1.0, 0.1, 3, &WeightLoader::Sin4)?;
    let e = r.identity_sum.amplitude0.re;
    rows.push(SuiteRow::new(
        "linear-approx",
        "amplitude",
        Some(0.02041),
        e,
        e,
        Some(1e-4),
    ));
    rows.push(SuiteRow::new(
        "linear-approx",
        "sum w_k k",
        Some(15.99768),
        r.value,
        r.oracle,
        Some(1e-2),
    ));
    let r = finance::linear_expected_approx(1.0, 2.0, 0.1, 3, &WeightLoader::Sin4)?;
    rows.push(SuiteRow::new(
        "linear-approx",
        "sum w_k (1+2k)",
        Some(35.99536),
        r.value,
        r.oracle,
        Some(2e-2),
    ));

    let r = finance::count_preimages(&counting_poly, 0, 3, msb)?;
    rows.push(SuiteRow::new(
        "counting",
        "amplitude v0=0",
        Some(0.375),
        r.amplitude,
        0.375,
        Some(1e-9),
    ));
    rows.push(SuiteRow::new(
        "counting",
        "count v0=0",
        Some(3.0),
        r.count as f64,
        r.oracle as f64,
        Some(0.0),
    ));
    let r = finance::count_preimages(&counting_poly, -3, 3, msb)?;
    rows.push(SuiteRow::new(
        "counting",
        "count v0=-3",
        Some(1.0),
        r.count as f64,
        r.oracle as f64,
        Some(0.0),
    ));

    let params = WoernerEggerParams::from_weights(0.01, &sin2)?;
    let r = finance::woerner_egger_linear(&params, None, WeMode::Quantum)?;
    rows.push(SuiteRow {
        status: if r.abs_error < 0.01 { "ok" } else { "mismatch" },
        ..SuiteRow::new(
            "woerner-egger",
            "sum p_k k, c=0.01",
            None,
            r.estimate,
            r.oracle,
            Some(0.01),
        )
    });
    Ok(rows)
}

pub fn format_suite(rows: &[SuiteRow]) -> String {
    let mut out = format!(
        "{:<16} {:<22} {:>12} {:>14} {:>14} {:>9}  {}\n",
        "instance", "quantity", "reference", "computed", "oracle", "tol", "status"
    );
    for r in rows {
        let reference = r.reference.map_or("-".to_string(), |v| format!("{v:.5}"));
        let tol = r.tolerance.map_or("-".to_string(), |t| format!("{t:.0e}"));
        out.push_str(&format!(
            "{:<16} {:<22} {:>12} {:>14.8} {:>14.8} {:>9}  {}\n",
            r.instance, r.quantity, reference, r.computed, r.oracle, tol, r.status
        ));
    }
    out
}

fn error_record(err: &Error) -> Value {
    let mut record = json!({
        "error": err.kind(),
        "message": err.to_string(),
        "exit_code": err.exit_code(),
    });
    match err {
        Error::Overflow { key, value, bits } => {
            record["key"] = json!(key);
            record["value"] = json!(value);
            record["bits"] = json!(bits);
        }
        Error::UnreachableAlpha { alpha, total } => {
            record["alpha"] = json!(alpha);
            record["total"] = json!(total);
        }
        _ => {}
    }
    record
}

fn write_outputs(config: &RunConfig, output: &Output) -> Result<()> {
    let name = config.command.name();
    let json_path = config.out.clone().or_else(|| {
        config
            .out_dir
            .as_ref()
            .map(|d| d.join(format!("{name}.json")))
    });
    let csv_path = config.csv.clone().or_else(|| {
        output
            .state
            .as_ref()
            .and(config.out_dir.as_ref())
            .map(|d| d.join(format!("{name}.csv")))
    });
    if let Some(path) = json_path {
        create_parent(&path)?;
        let mut text = serde_json::to_string_pretty(&output.record)?;
        text.push('\n');
        fs::write(path, text)?;
    }
    if let Some(path) = csv_path {
        let state = output.state.as_ref().ok_or_else(|| {
            Error::validation(format!("`{name}` has no statevector to write as CSV"))
        })?;
        create_parent(&path)?;
        write_state_csv(state, fs::File::create(path)?)?;
    }
    Ok(())
}

fn create_parent(path: &Path) -> Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => Ok(fs::create_dir_all(dir)?),
        _ => Ok(()),
    }
}

/// Parses `args`, runs the command and writes its output. Returns the
/// process exit status.
pub fn execute<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(stdout, "{e}");
            } else {
                let record = json!({ "error": "usage", "message": e.to_string(), "exit_code": 2 });
                let _ = writeln!(stdout, "{record}");
                let _ = write!(stderr, "{e}");
            }
            return code;
        }
    };
    match run(&config).and_then(|out| write_outputs(&config, &out).map(|_| out)) {
        Ok(out) => {
            let _ = writeln!(stdout, "{}", out.display.trim_end());
            0
        }
        Err(err) => {
            let _ = writeln!(stdout, "{}", error_record(&err));
            let _ = writeln!(stderr, "qdict: {err}");
            err.exit_code()
        }
    }
}
