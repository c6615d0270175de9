// Lattice-point counts behind the gap law: the regions T_k that sort
// neighbour denominators by gap index, and the sector whose primitive
// odd-abscissa points are the odd-denominator Farey fractions.
//
//     cargo run --release --example lattice_regions

use farey_odd::gaps::gap_histogram;
use farey_odd::lattice::{area_tkq, count_lattice, halve_y, LatticeRegion};
use farey_odd::{FareySlice, Fraction, Parity};

fn main() -> farey_odd::Result<()> {
    let order = 800;
    let histogram = gap_histogram(&FareySlice::full(order, Parity::OddDen)?)?;

    println!("Q = {order}");
    println!(
        "{:>3} {:>12} {:>10} {:>10}",
        "k", "area/Q^2", "odd-even", "gaps"
    );
    let mut odd_odd = 0;
    let mut t1_odd_even = 0;
    for k in 1..=2 * order {
        let c = count_lattice(&LatticeRegion::tk(k, order)?)?;
        odd_odd += c.n_odd_odd;
        if k == 1 {
            t1_odd_even = c.n_odd_even;
        }
        if (2..=6).contains(&k) {
            let share = area_tkq(k, order)? / ((order * order) as i128);
            println!(
                "{k:>3} {:>12} {:>10} {:>10}",
                share.to_string(),
                c.n_odd_even,
                histogram.count(k)
            );
        }
    }
    // Gap 1 also collects neighbours whose denominators are both odd.
    println!(
        "  1: {} gaps = {} odd-even points of T_1 + {} odd-odd pairs",
        histogram.count(1),
        t1_odd_even,
        odd_odd
    );

    let sector = LatticeRegion::sector(order, Fraction::ZERO, Fraction::ONE)?;
    let c = count_lattice(&sector)?;
    let halved = count_lattice(&halve_y(sector))?;
    println!(
        "\nsector: {} primitive points with odd x (main term {:.1}), Farey count {}",
        c.n_odd, c.main_n_odd, histogram.population
    );
    println!(
        "odd-even points {} = primitive odd points of the halved sector {}",
        c.n_odd_even, halved.n_odd
    );
    Ok(())
}
