//! Dense statevector simulation of quantum-dictionary inner products.
//!
//! The crate computes weighted sums `Σ w_k f(k)` and hashed sums
//! `Σ w_k h_{f(k)}` by reading the amplitude of `|0…0⟩` at the end of a
//! circuit, and applies them to expected values, option payoffs, value at
//! risk and value counting.
//!
//! Layers, bottom-up:
//!
//! - [`sim`]: statevector, gates, QFT, seeded sampling
//! - [`polynomial`]: multilinear integer polynomials over binary variables
//! - [`encoding`]: geometric states, two's-complement values, key/value dictionaries
//! - [`stateprep`]: Fourier-coefficient distribution loaders and exact amplitude loaders
//! - [`innerprod`]: the simple and the generalized (controlled) inner-product patterns
//! - [`finance`]: expected value, payoff, value at risk, value counting, Woerner–Egger
//! - [`cli`]: the `qdict` command-line front end
//!
//! Basis index `k` assigns qubit `j` the bit of weight `2^j`.

pub mod cli;
pub mod encoding;
mod error;
pub mod finance;
pub mod innerprod;
pub mod polynomial;
pub mod sim;
pub mod stateprep;

pub use error::{Error, Result};
pub use num_complex::Complex64;
