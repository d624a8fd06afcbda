//! Expected value of a polynomial under the trigonometric loaders.

use qdict::finance::{expected_value_discrete, WeightLoader};
use qdict::innerprod::mean_value;
use qdict::polynomial::{BinaryPolynomial, BitOrder};

fn main() -> qdict::Result<()> {
    let p: BinaryPolynomial = "7 + 4*k1 - 5*k0*k1 - 2*k0*k2".parse()?;
    println!("f = {p}, values {:?}", p.to_table(BitOrder::Msb0).values());
    for loader in [
        WeightLoader::Sin4,
        WeightLoader::RaisedCosine,
        WeightLoader::Sin8,
        WeightLoader::Uniform,
    ] {
        let r = expected_value_discrete(&p, 4, &loader, BitOrder::Msb0)?;
        let e = r.estimate.as_ref().unwrap().amplitude0.re;
        println!(
            "{:<8} amplitude {e:.5}  sum {:>10.5}  oracle {:>10.5}  err {:.1e}",
            loader.to_string(),
            r.quantum,
            r.oracle,
            r.abs_error
        );
    }
    let mean = mean_value(&p, 4, BitOrder::Msb0)?;
    println!("mean value {:.5}", mean.weighted_sum);
    Ok(())
}
