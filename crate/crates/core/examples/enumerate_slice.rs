// Streams a slice of a Farey sequence and shows how a subinterval walk is
// seeded.
//
//     cargo run --example enumerate_slice

use farey_odd::{delta, start_at, FareySlice, Fraction, Parity};

fn main() -> farey_odd::Result<()> {
    let order = 12;
    let lo: Fraction = "1/3".parse()?;
    let hi: Fraction = "0.5".parse()?;

    let (before, first) = start_at(order, lo);
    println!("F_{order} around {lo}: {before} < {lo} <= {first}");

    let all: Vec<Fraction> = FareySlice::new(order, lo, hi, Parity::All)?
        .iter()
        .collect();
    let odd: Vec<Fraction> = FareySlice::new(order, lo, hi, Parity::OddDen)?
        .iter()
        .collect();
    println!("all denominators: {}", join(&all));
    println!("odd denominators: {}", join(&odd));

    let gaps: Vec<u64> = odd
        .windows(2)
        .map(|w| delta(w[0], w[1]))
        .collect::<Result<_, _>>()?;
    println!("gaps between odd neighbours: {gaps:?}");

    // The cursor never stores the sequence, so large orders are cheap to seed.
    let big = FareySlice::new(1_000_000_000, "1/2".parse()?, Fraction::ONE, Parity::OddDen)?;
    let head: Vec<Fraction> = big.iter().take(3).collect();
    println!("first odd fractions from 1/2 at Q = 1e9: {}", join(&head));
    Ok(())
}

fn join(fs: &[Fraction]) -> String {
    fs.iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
