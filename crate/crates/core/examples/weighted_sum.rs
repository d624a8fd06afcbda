//! The two weighted-sum patterns on hand-made vectors.

use qdict::innerprod::{weighted_hashed_sum, weighted_sum_circuit, HashSpec, WeightSpec};
use qdict::polynomial::{BinaryPolynomial, BitOrder};
use qdict::stateprep::exact_amplitudes;

fn main() -> qdict::Result<()> {
    let w = vec![0.5, 1.0, 2.0, 0.25];
    let f = vec![3.0, -1.0, 0.5, 4.0];
    let circuit = weighted_sum_circuit(&exact_amplitudes(&w)?, &exact_amplitudes(&f)?)?;
    let r = circuit.exact()?;
    let direct: f64 = w.iter().zip(&f).map(|(a, b)| a * b).sum();
    println!(
        "B†A on {} qubits, {} ops",
        circuit.program().num_qubits(),
        circuit.program().len()
    );
    println!(
        "E = {:.6}, rescale {:.4}, sum {:.6} (direct {direct})",
        r.amplitude0.re, r.rescale_factor, r.weighted_sum
    );

    // restricted sum: only keys whose value is 1 or 2 contribute
    let p: BinaryPolynomial = "2*k1 - k0*k1 - 3*k0*k2".parse()?;
    let weights = WeightSpec::new((1..=8).map(f64::from).collect())?;
    let mut h = vec![0.0; 8];
    h[1] = 1.0;
    h[2] = 1.0;
    let r = weighted_hashed_sum(&weights, &HashSpec::new(h)?, &p, BitOrder::Msb0)?;
    println!(
        "\nsum of w_k over f(k) in {{1, 2}}: {:.6} (keys 2, 3, 6 -> 3 + 4 + 7)",
        r.weighted_sum
    );
    println!("{}", serde_json::to_string_pretty(&r).unwrap());
    Ok(())
}
