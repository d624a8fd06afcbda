//! The probability-domain ancilla-rotation estimator and its c² bias.

use qdict::finance::{
    woerner_egger_expected, woerner_egger_linear, WeMode, WeightLoader, WoernerEggerParams,
};

fn main() -> qdict::Result<()> {
    let weights = WeightLoader::Sin4.weights(3)?;
    println!(
        "{:>6} {:>12} {:>12} {:>10}",
        "c", "quantum", "classical", "error"
    );
    for c in [0.4, 0.2, 0.1, 0.05, 0.01] {
        let params = WoernerEggerParams::from_weights(c, &weights)?;
        let q = woerner_egger_linear(&params, None, WeMode::Quantum)?;
        let cl = woerner_egger_linear(&params, None, WeMode::Classical)?;
        println!(
            "{c:>6} {:>12.6} {:>12.6} {:>10.2e}",
            q.estimate, cl.estimate, q.abs_error
        );
    }

    let f: Vec<f64> = (0..8).map(|k| ((k as f64) * 0.7).sin()).collect();
    let params = WoernerEggerParams::from_weights(0.02, &[1.0; 8])?;
    let r = woerner_egger_expected(&params, &f, WeMode::Quantum)?;
    println!(
        "\nmean of sin(0.7k): estimate {:.6}, exact {:.6}, P1 = {:.6}",
        r.estimate, r.oracle, r.p1
    );
    Ok(())
}
