//! Encodes integers and a polynomial into key/value registers.

use qdict::encoding::{dictionary_program, encode_integer, RegisterLayout};
use qdict::polynomial::{BinaryPolynomial, BitOrder};
use qdict::sim::StateVector;
use qdict::Error;

fn main() -> qdict::Result<()> {
    for j in [3, -3, -1] {
        let s = StateVector::prepare(&encode_integer(j, 4)?)?;
        let basis = (0..16)
            .find(|&b| s.amplitude_of(b).unwrap().norm() > 0.5)
            .unwrap();
        println!("encode {j:>2} on 4 qubits -> |{basis}⟩");
    }

    let p: BinaryPolynomial = "2*k1 - k0*k1 - 3*k0*k2".parse()?;
    let layout = RegisterLayout::with_bit_order(3, 3, BitOrder::Msb0)?;
    let state = StateVector::prepare(&dictionary_program(&p, &layout)?)?;
    println!("\n{p} on 3 key + 3 value qubits:");
    for (basis, prob) in state.probabilities().iter().enumerate() {
        if *prob > 1e-12 {
            let (key, reg) = layout.split_index(basis);
            let signed = if reg >= 4 { reg as i64 - 8 } else { reg as i64 };
            println!("  key {key}  register {reg:03b}  value {signed:>2}  p = {prob:.4}");
        }
    }

    // 7 + 4k1 - 5k0k1 - 2k0k2 reaches 11, which needs four value qubits
    let wide: BinaryPolynomial = "7 + 4*k1 - 5*k0*k1 - 2*k0*k2".parse()?;
    match dictionary_program(&wide, &RegisterLayout::new(3, 3)?) {
        Err(Error::Overflow { key, value, bits }) => {
            println!("\noverflow: key {key} has value {value}, too wide for {bits} qubits")
        }
        other => println!("\nunexpected: {other:?}"),
    }
    Ok(())
}
