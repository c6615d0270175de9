// Totient sums over all and over odd moduli, the odd Möbius series, and the
// halving identities that tie the odd sums to the full ones.
//
//     cargo run --release --example totient_sums

use std::f64::consts::PI;

use farey_odd::{SieveTables, TotientSum};

fn main() -> farey_odd::Result<()> {
    let sieve = SieveTables::new(100_000)?;

    for q in [30, 10_000, 100_000] {
        println!("Q = {q}");
        for kind in TotientSum::ALL {
            let sum = sieve.totient_sum(kind, q)?;
            let shown = match sum.exact() {
                Some(r) if r.is_integer() => r.numer().to_string(),
                Some(r) if q <= 30 => r.to_string(),
                Some(_) => "exact".into(),
                None => "approx".into(),
            };
            println!(
                "  {:>3} = {:<14.6} ({shown}), ratio to main term {:.6}",
                kind.name(),
                sum.to_f64(),
                sum.to_f64() / kind.main_term(q)
            );
        }
    }

    // Phi(Q) - F(Q) = F(Q/2) + 2 (Phi(Q/2) - F(Q/2)) with floor division.
    let q = 9_999;
    let (phi, odd) = (sieve.phi_sum(q)?, sieve.odd_phi_sum(q)?);
    let (phi_h, odd_h) = (sieve.phi_sum(q / 2)?, sieve.odd_phi_sum(q / 2)?);
    println!("\nQ = {q}: {} = {}", phi - odd, odd_h + 2 * (phi_h - odd_h));

    let series = sieve.odd_mobius_series(100_000)?;
    println!(
        "sum over odd n <= 1e5 of mu(n)/n^2 = {series:.10} (8/pi^2 = {:.10})",
        8.0 / (PI * PI)
    );
    Ok(())
}
