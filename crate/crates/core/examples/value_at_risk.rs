//! Cumulative mass and value at risk by binary search.

use qdict::finance::{cumulative_probability, value_at_risk, VarQuery, WeightLoader};
use qdict::innerprod::WeightSpec;

fn main() -> qdict::Result<()> {
    let raw = WeightLoader::Sin4.weights(4)?;
    let total: f64 = raw.iter().sum();
    let w = WeightSpec::new(raw.iter().map(|x| x / total).collect())?;

    for l in [3, 7, 11, 15] {
        println!(
            "P(k <= {l:>2}) = {:.5}",
            cumulative_probability(&w, l)?.quantum
        );
    }
    println!();
    for alpha in [0.05, 0.25, 0.5, 0.9, 0.99] {
        let r = value_at_risk(&VarQuery::new(w.clone(), alpha)?)?;
        println!(
            "alpha {alpha:<4}  l* = {:>2}  mass {:.5}  ({} circuit evaluations)",
            r.level, r.cumulative, r.queries
        );
    }
    Ok(())
}
