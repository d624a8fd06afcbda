use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Single-qubit gate kinds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H,
    X,
    /// Phase gate `diag(1, e^{iθ})`.
    P(f64),
    /// `[[cos(θ/2), −sin(θ/2)], [sin(θ/2), cos(θ/2)]]`.
    Ry(f64),
}

impl Gate {
    pub fn inverse(self) -> Gate {
        match self {
            Gate::H => Gate::H,
            Gate::X => Gate::X,
            Gate::P(theta) => Gate::P(-theta),
            Gate::Ry(theta) => Gate::Ry(-theta),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Gate::H => "h",
            Gate::X => "x",
            Gate::P(_) => "p",
            Gate::Ry(_) => "ry",
        }
    }

    fn angle(self) -> Option<f64> {
        match self {
            Gate::P(theta) | Gate::Ry(theta) => Some(theta),
            _ => None,
        }
    }
}

/// One operation of a [`CircuitProgram`].
///
/// A single-qubit gate acts only on basis states where every control qubit
/// is 1. A QFT acts on an ordered list of qubits; the first entry is the
/// least significant bit of the sub-register it transforms.
#[derive(Debug, Clone, PartialEq)]
pub enum GateOp {
    Single {
        gate: Gate,
        target: usize,
        controls: Vec<usize>,
    },
    Qft {
        qubits: Vec<usize>,
        inverse: bool,
    },
}

impl GateOp {
    pub fn h(target: usize) -> Self {
        Self::single(Gate::H, target)
    }

    pub fn x(target: usize) -> Self {
        Self::single(Gate::X, target)
    }

    pub fn p(target: usize, theta: f64) -> Self {
        Self::single(Gate::P(theta), target)
    }

    pub fn ry(target: usize, theta: f64) -> Self {
        Self::single(Gate::Ry(theta), target)
    }

    pub fn single(gate: Gate, target: usize) -> Self {
        GateOp::Single {
            gate,
            target,
            controls: Vec::new(),
        }
    }

    pub fn qft(qubits: impl IntoIterator<Item = usize>) -> Self {
        GateOp::Qft {
            qubits: qubits.into_iter().collect(),
            inverse: false,
        }
    }

    pub fn iqft(qubits: impl IntoIterator<Item = usize>) -> Self {
        GateOp::Qft {
            qubits: qubits.into_iter().collect(),
            inverse: true,
        }
    }

    /// Adds control qubits to a single-qubit gate. Panics on a QFT.
    pub fn controlled(mut self, ctrls: impl IntoIterator<Item = usize>) -> Self {
        match &mut self {
            GateOp::Single { controls, .. } => {
                controls.extend(ctrls);
                controls.sort_unstable();
                controls.dedup();
            }
            GateOp::Qft { .. } => panic!("controlled QFT is not supported"),
        }
        self
    }

    pub fn inverse(&self) -> Self {
        match self {
            GateOp::Single {
                gate,
                target,
                controls,
            } => GateOp::Single {
                gate: gate.inverse(),
                target: *target,
                controls: controls.clone(),
            },
            GateOp::Qft { qubits, inverse } => GateOp::Qft {
                qubits: qubits.clone(),
                inverse: !inverse,
            },
        }
    }

    /// Every qubit index the operation touches.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            GateOp::Single {
                target, controls, ..
            } => {
                let mut all = controls.clone();
                all.push(*target);
                all
            }
            GateOp::Qft { qubits, .. } => qubits.clone(),
        }
    }

    /// Checks index ranges and collisions against a register of `num_qubits`.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        if qubits.is_empty() {
            return Err(Error::validation("QFT over an empty qubit range"));
        }
        if let Some(&q) = qubits.iter().find(|&&q| q >= num_qubits) {
            return Err(Error::validation(format!(
                "qubit {q} out of range for a {num_qubits}-qubit register"
            )));
        }
        let mut sorted = qubits.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::validation(format!(
                "operation uses a qubit more than once: {qubits:?}"
            )));
        }
        if let GateOp::Single {
            gate: Gate::P(t) | Gate::Ry(t),
            ..
        } = self
        {
            if !t.is_finite() {
                return Err(Error::validation("non-finite rotation angle"));
            }
        }
        Ok(())
    }

    /// Same operation with every qubit index passed through `map`.
    pub fn remap(&self, map: impl Fn(usize) -> usize) -> Self {
        match self {
            GateOp::Single {
                gate,
                target,
                controls,
            } => GateOp::Single {
                gate: *gate,
                target: map(*target),
                controls: {
                    let mut c: Vec<usize> = controls.iter().map(|&q| map(q)).collect();
                    c.sort_unstable();
                    c
                },
            },
            GateOp::Qft { qubits, inverse } => GateOp::Qft {
                qubits: qubits.iter().map(|&q| map(q)).collect(),
                inverse: *inverse,
            },
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[usize]) -> fmt::Result {
    f.write_str("[")?;
    for (i, q) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{q}")?;
    }
    f.write_str("]")
}

/// Line format: `gate target [controls] [theta]`, e.g. `p 3 [0 2] 0.25`,
/// and `qft [0 1 2]` / `iqft [0 1 2]` for Fourier transforms.
impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateOp::Single {
                gate,
                target,
                controls,
            } => {
                write!(f, "{} {}", gate.name(), target)?;
                if !controls.is_empty() {
                    f.write_str(" ")?;
                    write_list(f, controls)?;
                }
                if let Some(theta) = gate.angle() {
                    // Debug formatting of f64 round-trips exactly.
                    write!(f, " {theta:?}")?;
                }
                Ok(())
            }
            GateOp::Qft { qubits, inverse } => {
                f.write_str(if *inverse { "iqft " } else { "qft " })?;
                write_list(f, qubits)
            }
        }
    }
}

fn parse_index(tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Parse(format!("expected a qubit index, got `{tok}`")))
}

fn parse_bracket_list(line: &str) -> Result<(Vec<usize>, &str)> {
    let open = line
        .find('[')
        .ok_or_else(|| Error::Parse(format!("missing `[` in `{line}`")))?;
    let close = line
        .find(']')
        .ok_or_else(|| Error::Parse(format!("missing `]` in `{line}`")))?;
    if close < open {
        return Err(Error::Parse(format!("malformed list in `{line}`")));
    }
    let items = line[open + 1..close]
        .split_whitespace()
        .map(parse_index)
        .collect::<Result<Vec<_>>>()?;
    Ok((items, &line[close + 1..]))
}

impl FromStr for GateOp {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let line = line.trim();
        let (name, rest) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse(format!("incomplete operation `{line}`")))?;
        match name {
            "qft" | "iqft" => {
                let (qubits, tail) = parse_bracket_list(rest)?;
                if !tail.trim().is_empty() {
                    return Err(Error::Parse(format!("trailing input in `{line}`")));
                }
                Ok(GateOp::Qft {
                    qubits,
                    inverse: name == "iqft",
                })
            }
            "h" | "x" | "p" | "ry" => {
                let rest = rest.trim_start();
                let (target_tok, mut tail) =
                    rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let target = parse_index(target_tok)?;
                let mut controls = Vec::new();
                if tail.trim_start().starts_with('[') {
                    let (c, t) = parse_bracket_list(tail)?;
                    controls = c;
                    tail = t;
                }
                let tail = tail.trim();
                let gate = match name {
                    "h" | "x" => {
                        if !tail.is_empty() {
                            return Err(Error::Parse(format!("unexpected angle in `{line}`")));
                        }
                        if name == "h" {
                            Gate::H
                        } else {
                            Gate::X
                        }
                    }
                    _ => {
                        let theta: f64 = tail
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad angle in `{line}`")))?;
                        if name == "p" {
                            Gate::P(theta)
                        } else {
                            Gate::Ry(theta)
                        }
                    }
                };
                Ok(GateOp::Single {
                    gate,
                    target,
                    controls,
                })
            }
            other => Err(Error::Parse(format!("unknown gate `{other}`"))),
        }
    }
}

/// An ordered list of operations over a fixed number of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitProgram {
    num_qubits: usize,
    ops: Vec<GateOp>,
}

impl CircuitProgram {
    pub fn new(num_qubits: usize) -> Self {
        CircuitProgram {
            num_qubits,
            ops: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, op: GateOp) -> Result<&mut Self> {
        op.validate(self.num_qubits)?;
        self.ops.push(op);
        Ok(self)
    }

    /// Appends `other`, placing its qubit `i` on `qubits[i]` of this program.
    pub fn append_on(&mut self, other: &CircuitProgram, qubits: &[usize]) -> Result<&mut Self> {
        if qubits.len() != other.num_qubits {
            return Err(Error::validation(format!(
                "cannot place a {}-qubit program on {} qubits",
                other.num_qubits,
                qubits.len()
            )));
        }
        for op in &other.ops {
            self.push(op.remap(|q| qubits[q]))?;
        }
        Ok(self)
    }

    /// Appends a program of the same width.
    pub fn append(&mut self, other: &CircuitProgram) -> Result<&mut Self> {
        if other.num_qubits != self.num_qubits {
            return Err(Error::validation(format!(
                "program width mismatch: {} vs {}",
                self.num_qubits, other.num_qubits
            )));
        }
        self.ops.extend(other.ops.iter().cloned());
        Ok(self)
    }

    /// The formal inverse: reversed order, each gate inverted.
    pub fn inverse(&self) -> Self {
        CircuitProgram {
            num_qubits: self.num_qubits,
            ops: self.ops.iter().rev().map(GateOp::inverse).collect(),
        }
    }

    pub(crate) fn from_ops_unchecked(num_qubits: usize, ops: Vec<GateOp>) -> Self {
        CircuitProgram { num_qubits, ops }
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        text.parse()
    }
}

/// First line `qubits <n>`, then one operation per line. Blank lines and
/// `#` comments are ignored when parsing.
impl fmt::Display for CircuitProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.num_qubits)?;
        for op in &self.ops {
            writeln!(f, "{op}")?;
        }
        Ok(())
    }
}

impl FromStr for CircuitProgram {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty program text".into()))?;
        let num_qubits = header
            .strip_prefix("qubits")
            .map(str::trim)
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected `qubits <n>`, got `{header}`")))?;
        let mut program = CircuitProgram::new(num_qubits);
        for line in lines {
            program.push(line.parse()?)?;
        }
        Ok(program)
    }
}
