// Counts solutions of xy = a (mod q) in boxes of consecutive residues and
// compares them with the equidistributed count phi(q)|I||J|/q^2.
//
//     cargo run --release --example residue_boxes

use farey_odd::modular::{count_products, deviation_scan, totient, ResidueBox, ResidueRun};

fn main() -> farey_odd::Result<()> {
    let q = 997;
    let bx = ResidueBox::new(q, ResidueRun::new(100, 400), ResidueRun::new(900, 250), 5)?;
    let c = count_products(&bx, totient(q));
    println!(
        "q = {q}, I = [100, 500), J = [900, 1150) mod q, a = 5: {} solutions, main term {:.2}",
        c.exact, c.main_term
    );

    let moduli: Vec<u64> = (2..=1000).step_by(37).collect();
    let scan = deviation_scan(&moduli, 4, 7)?;
    println!(
        "{} random boxes: max |exact - main| / q^(3/4) = {:.4}, median {:.4}",
        scan.rows.len(),
        scan.max_normalized,
        scan.median_normalized
    );
    for row in scan.rows.iter().filter(|r| r.sample == 0).take(5) {
        println!(
            "  q = {:>4}: exact {:>6}, main {:>10.2}, normalized {:.4}",
            row.modulus, row.exact, row.main_term, row.normalized
        );
    }
    Ok(())
}
