// Every gap of size at least 2 between odd-denominator neighbours skips
// exactly one even-denominator fraction, and the gap equals that
// fraction's successor index. Also prints how the gap counts track their
// main terms as Q grows.
//
//     cargo run --release --example bridge_identity

use farey_odd::gaps::{bridge_check, error_scan};
use farey_odd::Fraction;

fn main() -> farey_odd::Result<()> {
    for order in [10, 100, 1000] {
        let report = bridge_check(order)?;
        println!(
            "Q = {order}: {} odd pairs, {} bridged by an even fraction, {} violations",
            report.odd_pairs,
            report.wide_gaps,
            report.violations.len()
        );
    }

    println!(
        "\n{:>2} {:>6} {:>9} {:>12} {:>12}",
        "k", "Q", "count", "main term", "err/(Q ln Q)"
    );
    for k in 1..=3 {
        for row in error_scan(k, &[250, 500, 1000, 2000], (Fraction::ZERO, Fraction::ONE))? {
            println!(
                "{k:>2} {:>6} {:>9} {:>12.1} {:>12.2e}",
                row.order, row.count, row.main_term, row.per_q_log_q
            );
        }
    }
    Ok(())
}
