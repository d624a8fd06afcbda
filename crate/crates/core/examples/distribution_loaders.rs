//! Prints the Fourier-series loaders side by side.

use qdict::stateprep::{quantile_state, raised_cosine, sin4, sin8};

fn bar(p: f64) -> String {
    "#".repeat((p * 200.0).round() as usize)
}

fn main() -> qdict::Result<()> {
    let n = 5;
    let rc = raised_cosine(n)?.state()?.probabilities();
    let s4 = sin4(n)?.state()?.probabilities();
    let s8 = sin8(n)?.state()?.probabilities();
    println!("{:>3} {:>8} {:>8} {:>8}", "k", "rcos", "sin4", "sin8");
    for k in 0..1 << n {
        println!(
            "{k:>3} {:>8.5} {:>8.5} {:>8.5}  {}",
            rc[k],
            s4[k],
            s8[k],
            bar(s8[k])
        );
    }

    for op in [sin4(3)?, sin8(3)?] {
        println!(
            "\n{} on 3 qubits, a = {:.6}",
            op.label(),
            op.normalization()
        );
        for (k, a) in op.state()?.amplitudes().iter().enumerate() {
            println!("  {k}: {:.6}", a.re);
        }
    }

    let q = quantile_state(3, 3)?;
    println!("\nquantile l=3: b = {}", q.normalization());
    Ok(())
}
