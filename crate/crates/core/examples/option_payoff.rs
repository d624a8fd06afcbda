//! Expected call payoff for a range of strikes.

use qdict::finance::{payoff_expectation, PayoffSpec, WeightLoader};
use qdict::polynomial::{BitOrder, FunctionTable};

fn main() -> qdict::Result<()> {
    let prices = FunctionTable::new(vec![7, 7, 11, 11, 7, 5, 6, 4], BitOrder::Msb0)?;
    println!("prices {:?}, weights sin²(kπ/8)", prices.values());
    println!("{:>6} {:>10} {:>10}", "strike", "circuit", "oracle");
    for strike in 0..=12 {
        let spec = PayoffSpec::from_table(strike, &prices, WeightLoader::Sin4);
        let r = payoff_expectation(&spec, 4)?;
        println!("{strike:>6} {:>10.5} {:>10.5}", r.quantum, r.oracle);
    }
    Ok(())
}
