//! Expected value of a rational pricing function with exact loaders.

use qdict::finance::{expected_rational, rational_table};

fn main() -> qdict::Result<()> {
    for (k, f) in rational_table().iter().enumerate() {
        println!("k = {k:>2} (x = {}, y = {})  f = {f:.5}", k / 4, k % 4);
    }
    let r = expected_rational()?;
    println!("\namplitude {:.5}", r.amplitude);
    println!(
        "sum w_k f_k/|f|  circuit {:.6}  oracle {:.6}",
        r.normalized_quantum, r.normalized_oracle
    );
    println!(
        "sum w_k f_k      circuit {:.6}  oracle {:.6}",
        r.weighted_sum_quantum, r.weighted_sum_oracle
    );
    Ok(())
}
