//! Multilinear integer polynomials over binary variables.
//!
//! Every function `f: {0..2^n} → ℤ` has a unique representation
//! `p(x_0,…,x_{n−1}) = Σ_J c_J Π_{j∈J} x_j` over subsets `J`. Conversion from
//! a value table is the subset Möbius transform; conversion back is the
//! subset-sum (zeta) transform.
//!
//! How a key `k` maps to the variables is a [`BitOrder`]: `Lsb0` reads
//! `k = Σ x_j 2^j`, `Msb0` reads `k = Σ x_j 2^{n−1−j}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest number of variables a polynomial or table may have.
pub const MAX_VARS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BitOrder {
    /// `k = Σ x_j 2^j`.
    Lsb0,
    /// `k = Σ x_j 2^{n−1−j}`; the layout of the worked finance tables.
    #[default]
    Msb0,
}

impl BitOrder {
    /// Position (weight exponent) of variable `var` inside a key of `n` bits.
    pub fn key_bit(self, var: usize, n: usize) -> usize {
        match self {
            BitOrder::Lsb0 => var,
            BitOrder::Msb0 => n - 1 - var,
        }
    }

    /// Converts a key into the variable mask (bit `j` set iff `x_j = 1`).
    /// The conversion is an involution.
    pub fn key_to_mask(self, key: usize, n: usize) -> usize {
        match self {
            BitOrder::Lsb0 => key,
            BitOrder::Msb0 => reverse_bits(key, n),
        }
    }
}

impl FromStr for BitOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lsb0" | "lsb" => Ok(BitOrder::Lsb0),
            "msb0" | "msb" => Ok(BitOrder::Msb0),
            _ => Err(Error::Parse(format!("unknown bit order `{s}`"))),
        }
    }
}

fn reverse_bits(x: usize, n: usize) -> usize {
    if n == 0 {
        0
    } else {
        x.reverse_bits() >> (usize::BITS as usize - n)
    }
}

/// A set of variable indices, stored as a bit mask. Ordered by size, then
/// lexicographically on the ascending index list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_vars(vars: impl IntoIterator<Item = usize>) -> Self {
        Monomial(vars.into_iter().fold(0, |m, v| m | (1u64 << v)))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn vars(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..64).filter(move |j| mask & (1 << j) != 0)
    }

    fn max_var(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.vars().cmp(other.vars()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Integer-coefficient multilinear polynomial. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryPolynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, i64>,
}

fn check_vars(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VARS {
        return Err(Error::validation(format!(
            "number of variables {n} outside 1..={MAX_VARS}"
        )));
    }
    Ok(())
}

impl BinaryPolynomial {
    pub fn zero(num_vars: usize) -> Result<Self> {
        check_vars(num_vars)?;
        Ok(BinaryPolynomial {
            num_vars,
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(num_vars: usize, c: i64) -> Result<Self> {
        Self::from_terms(num_vars, [(Monomial::ONE, c)])
    }

    /// Collects `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        num_vars: usize,
        terms: impl IntoIterator<Item = (Monomial, i64)>,
    ) -> Result<Self> {
        let mut p = Self::zero(num_vars)?;
        for (mono, c) in terms {
            if mono.max_var().is_some_and(|v| v >= num_vars) {
                return Err(Error::validation(format!(
                    "monomial uses a variable beyond x{}",
                    num_vars - 1
                )));
            }
            p.add_term(mono, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, mono: Monomial, c: i64) {
        let entry = self.terms.entry(mono).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&mono);
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, i64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coefficient(&self, mono: Monomial) -> i64 {
        self.terms.get(&mono).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ_J c_J Π_{j∈J} bits[j]`.
    pub fn evaluate(&self, bits: &[u8]) -> Result<i64> {
        if bits.len() != self.num_vars {
            return Err(Error::validation(format!(
                "expected {} binary values, got {}",
                self.num_vars,
                bits.len()
            )));
        }
        let mut mask = 0u64;
        for (j, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => mask |= 1 << j,
                _ => return Err(Error::validation(format!("bit {j} is {b}, not 0 or 1"))),
            }
        }
        Ok(self.evaluate_mask(mask))
    }

    /// Evaluates at the point whose set variables are the bits of `mask`.
    pub fn evaluate_mask(&self, mask: u64) -> i64 {
        self.terms
            .iter()
            .filter(|(m, _)| m.0 & mask == m.0)
            .map(|(_, &c)| c)
            .sum()
    }

    /// Evaluates at key `k` read with `order`.
    pub fn evaluate_key(&self, key: usize, order: BitOrder) -> i64 {
        self.evaluate_mask(order.key_to_mask(key, self.num_vars) as u64)
    }

    /// The indicator of key `k`: `Π_j ((2k_j − 1) x_j + 1 − k_j)`, expanded.
    /// `k` is read with `order`.
    pub fn indicator(key: usize, num_vars: usize, order: BitOrder) -> Result<Self> {
        check_vars(num_vars)?;
        if key >= 1 << num_vars {
            return Err(Error::validation(format!(
                "key {key} out of range for {num_vars} variables"
            )));
        }
        let mask = order.key_to_mask(key, num_vars) as u64;
        // The product over the set bits S and the clear bits C expands to
        // Σ_{T⊆C} (−1)^{|T|} x_{S∪T}.
        let clear: Vec<usize> = (0..num_vars).filter(|j| mask & (1 << j) == 0).collect();
        let mut p = Self::zero(num_vars)?;
        for sub in 0u64..(1 << clear.len()) {
            let mut mono = mask;
            for (i, &j) in clear.iter().enumerate() {
                if sub & (1 << i) != 0 {
                    mono |= 1 << j;
                }
            }
            let sign = if sub.count_ones() % 2 == 0 { 1 } else { -1 };
            p.add_term(Monomial(mono), sign);
        }
        Ok(p)
    }

    /// Unique polynomial reproducing `table`, by subset Möbius transform.
    pub fn from_table(table: &FunctionTable) -> Self {
        let n = table.num_vars();
        let mut coeffs = vec![0i64; 1 << n];
        for (k, &v) in table.values.iter().enumerate() {
            coeffs[table.bit_order.key_to_mask(k, n)] = v;
        }
        for j in 0..n {
            let bit = 1 << j;
            for mask in 0..coeffs.len() {
                if mask & bit != 0 {
                    coeffs[mask] -= coeffs[mask ^ bit];
                }
            }
        }
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .map(|(m, c)| (Monomial(m as u64), c))
            .collect();
        BinaryPolynomial { num_vars: n, terms }
    }

    /// Value table by subset-sum (zeta) transform.
    pub fn to_table(&self, order: BitOrder) -> FunctionTable {
        let n = self.num_vars;
        let mut sums = vec![0i64; 1 << n];
        for (m, &c) in &self.terms {
            sums[m.0 as usize] = c;
        }
        for j in 0..n {
            let bit = 1 << j;
            for mask in 0..sums.len() {
                if mask & bit != 0 {
                    sums[mask] += sums[mask ^ bit];
                }
            }
        }
        let values = (0..sums.len())
            .map(|k| sums[order.key_to_mask(k, n)])
            .collect();
        FunctionTable {
            values,
            bit_order: order,
        }
    }

    /// Parses the text form with an explicit variable count.
    pub fn parse_with_vars(text: &str, num_vars: usize) -> Result<Self> {
        let terms = parse_terms(text)?;
        Self::from_terms(num_vars, terms)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64) -> i64) -> Result<Self> {
        if self.num_vars != other.num_vars {
            return Err(Error::validation(format!(
                "variable count mismatch: {} vs {}",
                self.num_vars, other.num_vars
            )));
        }
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            out.add_term(m, f(c));
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |c| c)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |c| -c)
    }

    pub fn scale(&self, factor: i64) -> Self {
        let terms = if factor == 0 {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(&m, &c)| (m, c * factor)).collect()
        };
        BinaryPolynomial {
            num_vars: self.num_vars,
            terms,
        }
    }
}

impl Add for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    /// Panics when the variable counts differ; see [`BinaryPolynomial::checked_add`].
    fn add(self, rhs: Self) -> BinaryPolynomial {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn sub(self, rhs: Self) -> BinaryPolynomial {
        self.checked_sub(rhs).expect("variable count mismatch")
    }
}

impl Mul<i64> for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn mul(self, rhs: i64) -> BinaryPolynomial {
        self.scale(rhs)
    }
}

impl Neg for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn neg(self) -> BinaryPolynomial {
        self.scale(-1)
    }
}

/// Canonical text: `7 + 4*k1 - 5*k0*k1 - 2*k0*k2`, terms sorted by degree
/// then variable indices; `0` for the zero polynomial.
impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, &c)) in self.terms.iter().enumerate() {
            let magnitude = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            let vars: Vec<String> = m.vars().map(|v| format!("k{v}")).collect();
            if vars.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude == 1 {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Parses the text form; the variable count is one past the largest index
/// used (at least 1). Variables may be written `k3` or `x3`.
impl FromStr for BinaryPolynomial {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let terms = parse_terms(text)?;
        let n = terms
            .iter()
            .filter_map(|(m, _)| m.max_var())
            .max()
            .map_or(1, |v| v + 1);
        Self::from_terms(n, terms)
    }
}

fn parse_terms(text: &str) -> Result<Vec<(Monomial, i64)>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    // split into signed chunks at top-level + and -
    let mut chunks = Vec::new();
    let mut sign = 1i64;
    let mut current = String::new();
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && !(i > 0 && compact[..i].ends_with('*')) {
            if !current.is_empty() {
                chunks.push((sign, std::mem::take(&mut current)));
                sign = 1;
            } else if i > 0 && !compact[..i].ends_with(['+', '-']) {
                return Err(Error::Parse(format!("misplaced sign in `{text}`")));
            }
            if ch == '-' {
                sign = -sign;
            }
        } else {
            current.push(ch);
        }
    }
    if current.is_empty() {
        return Err(Error::Parse(format!("dangling sign in `{text}`")));
    }
    chunks.push((sign, current));

    let mut terms = Vec::with_capacity(chunks.len());
    for (sign, chunk) in chunks {
        let mut coeff = sign;
        let mut mono = 0u64;
        for factor in chunk.split('*') {
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in `{chunk}`")));
            }
            if let Some(idx) = factor.strip_prefix(['k', 'x']) {
                let v: usize = idx
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad variable `{factor}`")))?;
                if v >= MAX_VARS {
                    return Err(Error::Parse(format!(
                        "variable `{factor}` beyond k{}",
                        MAX_VARS - 1
                    )));
                }
                mono |= 1 << v;
            } else {
                let c: i64 = factor
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient `{factor}`")))?;
                coeff = coeff
                    .checked_mul(c)
                    .ok_or_else(|| Error::Parse(format!("coefficient overflow in `{chunk}`")))?;
            }
        }
        terms.push((Monomial(mono), coeff));
    }
    Ok(terms)
}

/// Integer values of a function on keys `0..2^n`, with the bit order that
/// maps keys to variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    values: Vec<i64>,
    bit_order: BitOrder,
}

impl FunctionTable {
    pub fn new(values: Vec<i64>, bit_order: BitOrder) -> Result<Self> {
        let len = values.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::validation(format!(
                "table length {len} is not a power of two >= 2"
            )));
        }
        check_vars(len.trailing_zeros() as usize)?;
        Ok(FunctionTable { values, bit_order })
    }

    pub fn num_vars(&self) -> usize {
        self.values.len().trailing_zeros() as usize
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn bit_order(&self) -> BitOrder {
        self.bit_order
    }

    /// Reads `k,value` rows; a header row is allowed. Every key in
    /// `0..2^n` must appear exactly once.
    pub fn read_csv(reader: impl Read, bit_order: BitOrder) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(reader);
        let mut rows = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec?;
            if rec.len() != 2 {
                return Err(Error::Parse(format!(
                    "row {} has {} fields, expected 2",
                    i + 1,
                    rec.len()
                )));
            }
            let (k, v) = (rec[0].parse::<usize>(), rec[1].parse::<i64>());
            match (k, v) {
                (Ok(k), Ok(v)) => rows.push((k, v)),
                _ if i == 0 => continue,
                _ => {
                    return Err(Error::Parse(format!(
                        "bad row {}: `{}`",
                        i + 1,
                        rec.iter().collect::<Vec<_>>().join(",")
                    )))
                }
            }
        }
        let len = rows.len();
        let mut values = vec![None; len];
        for (k, v) in rows {
            match values.get_mut(k) {
                Some(slot @ None) => *slot = Some(v),
                Some(Some(_)) => return Err(Error::Parse(format!("key {k} appears twice"))),
                None => return Err(Error::Parse(format!("key {k} out of range for {len} rows"))),
            }
        }
        Self::new(
            values.into_iter().map(|v| v.unwrap_or_default()).collect(),
            bit_order,
        )
    }

    pub fn write_csv(&self, writer: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["k", "value"])?;
        for (k, v) in self.values.iter().enumerate() {
            w.write_record([k.to_string(), v.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}
