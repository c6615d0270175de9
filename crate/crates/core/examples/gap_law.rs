// Tabulates gap frequencies of odd-denominator Farey fractions against the
// limiting density 4/(k(k+1)(k+2)), on the full interval and on a
// subinterval.
//
//     cargo run --release --example gap_law -- 2000

use farey_odd::gaps::{frequency_table, slice_cardinality, Bucket};
use farey_odd::{FareySlice, Fraction, Parity};

fn main() -> farey_odd::Result<()> {
    let order = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(600);

    for (lo, hi) in [
        (Fraction::ZERO, Fraction::ONE),
        ("1/4".parse()?, "3/4".parse()?),
    ] {
        let slice = FareySlice::new(order, lo, hi, Parity::OddDen)?;
        let table = frequency_table(&slice, 6)?;
        let card = slice_cardinality(order, (lo, hi))?;
        println!(
            "Q = {order}, [{lo}, {hi}]: {} fractions (main term ratio {:.4})",
            card.exact,
            card.ratio()
        );
        println!(
            "{:>4} {:>9} {:>10} {:>10}",
            "k", "count", "empirical", "limit"
        );
        for row in table.rows.iter().chain([&table.overflow]) {
            let k = match row.bucket {
                Bucket::Exact(k) => k.to_string(),
                Bucket::Above(k) => format!(">{k}"),
            };
            let limit = *row.theoretical.numer() as f64 / *row.theoretical.denom() as f64;
            println!(
                "{k:>4} {:>9} {:>10.6} {limit:>10.6}",
                row.count, row.empirical
            );
        }
        println!();
    }
    Ok(())
}
