//! Exact and approximate expectations of linear functions.

use qdict::finance::{linear_expected_approx, linear_expected_exact, WeightLoader};

fn main() -> qdict::Result<()> {
    let exact = linear_expected_exact(1.0, 2.0, 3, &WeightLoader::Sin4)?;
    println!(
        "identity ramp: sum w_k k = {:.6}, sum w_k (1+2k) = {:.6}",
        exact.identity_sum.weighted_sum, exact.value
    );

    println!(
        "\n{:>7} {:>10} {:>12} {:>10}",
        "c", "E", "sum w_k k", "bias"
    );
    for c in [0.4, 0.2, 0.1, 0.05, 0.025, 0.001] {
        let r = linear_expected_approx(0.0, 1.0, c, 3, &WeightLoader::Sin4)?;
        println!(
            "{c:>7} {:>10.6} {:>12.6} {:>10.2e}",
            r.identity_sum.amplitude0.re,
            r.value,
            r.value - r.oracle
        );
    }
    let r = linear_expected_approx(1.0, 2.0, 0.1, 3, &WeightLoader::Sin4)?;
    println!("\nc = 0.1: sum w_k (1+2k) ~ {:.5}", r.value);
    Ok(())
}
