//! Counts how many keys map to each value.

use qdict::finance::count_preimages;
use qdict::polynomial::{BinaryPolynomial, BitOrder};

fn main() -> qdict::Result<()> {
    let p: BinaryPolynomial = "2*k1 - k0*k1 - 3*k0*k2".parse()?;
    println!("f = {p} on 3 key and 3 value qubits");
    let mut total = 0;
    for v0 in -4..4 {
        let r = count_preimages(&p, v0, 3, BitOrder::Msb0)?;
        total += r.count;
        println!(
            "f(k) = {v0:>2}: {} keys (amplitude {:.4})",
            r.count, r.amplitude
        );
    }
    println!("total {total}");
    Ok(())
}
