//! Converts between function tables and binary polynomials.

use qdict::polynomial::{BinaryPolynomial, BitOrder, FunctionTable};

fn main() -> qdict::Result<()> {
    let table = FunctionTable::new(vec![7, 7, 11, 11, 7, 5, 6, 4], BitOrder::Msb0)?;
    let p = BinaryPolynomial::from_table(&table);
    println!("msb0 table -> {p}");

    // the same values read with the least significant bit first
    let lsb = FunctionTable::new(table.values().to_vec(), BitOrder::Lsb0)?;
    println!("lsb0 table -> {}", BinaryPolynomial::from_table(&lsb));

    let q: BinaryPolynomial = "2*k1 - k0*k1 - 3*k0*k2".parse()?;
    println!("\n{q}");
    println!("{:>3} {:>5} {:>5}", "k", "msb0", "lsb0");
    for k in 0..8 {
        println!(
            "{k:>3} {:>5} {:>5}",
            q.evaluate_key(k, BitOrder::Msb0),
            q.evaluate_key(k, BitOrder::Lsb0)
        );
    }

    let sum = &p + &(&q * 2);
    println!("\np + 2q = {sum}");
    println!(
        "indicator of key 5 = {}",
        BinaryPolynomial::indicator(5, 3, BitOrder::Msb0)?
    );

    let mut csv = Vec::new();
    sum.to_table(BitOrder::Msb0).write_csv(&mut csv)?;
    print!("\n{}", String::from_utf8_lossy(&csv));
    Ok(())
}
