//! Builds a small circuit, applies the QFT, reads amplitudes and samples.
//!
//! ```text
//! cargo run --example statevector_qft
//! ```

use qdict::sim::{CircuitProgram, GateOp, StateVector};

fn main() -> qdict::Result<()> {
    // |1⟩ on two qubits, then the forward QFT: amplitudes i^k / 2
    let mut prog = CircuitProgram::new(2);
    prog.push(GateOp::x(0))?.push(GateOp::qft([0, 1]))?;
    let state = StateVector::prepare(&prog)?;
    for (k, a) in state.amplitudes().iter().enumerate() {
        println!("|{k}⟩  {:+.4} {:+.4}i", a.re, a.im);
    }

    // the text form round-trips
    println!("\n{}", prog.to_text());
    assert_eq!(CircuitProgram::from_text(&prog.to_text())?, prog);

    // controlled phase and a seeded measurement histogram
    let mut bell = CircuitProgram::new(2);
    bell.push(GateOp::h(0))?
        .push(GateOp::h(1))?
        .push(GateOp::p(1, std::f64::consts::PI).controlled([0]))?;
    let state = StateVector::prepare(&bell)?;
    println!("P(qubit 1 = 1) = {:.3}", state.probability_of_one(1)?);
    for (basis, count) in state.sample(8192, 42)? {
        println!("{basis:02b}: {count}");
    }

    let mut roundtrip = state.clone();
    roundtrip.run(&bell.inverse())?;
    println!(
        "after inverse: |0⟩ amplitude {:.6}",
        roundtrip.amplitude_of(0)?.re
    );
    Ok(())
}
