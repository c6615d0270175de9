mod common;

use common::*;
use farey_odd::farey::start_at;
use farey_odd::lattice::{self, count_odd_coprime_rect_mobius, LatticeRegion};
use farey_odd::modular::{count_products, totient, ResidueBox, ResidueRun};
use farey_odd::{gap_histogram, slice_cardinality, FareySlice, Fraction, Parity, SieveTables};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn enumeration_matches_sorted_brute_force() {
    for order in 1..=120 {
        let full = FareySlice::full(order, Parity::All).unwrap();
        assert_eq!(to_pairs(full.iter()), brute_farey(order), "Q = {order}");
    }
}

#[test]
fn odd_subintervals_match_filtered_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for order in [1u64, 2, 7, 30, 64, 101, 150] {
        let sorted = brute_farey(order);
        for _ in 0..15 {
            let (lo, hi) = random_interval(&mut rng, 40);
            let slice = FareySlice::new(order, lo, hi, Parity::OddDen).unwrap();
            let expected = odd_slice(&sorted, (lo.num(), lo.den()), (hi.num(), hi.den()));
            assert_eq!(
                to_pairs(slice.iter()),
                expected,
                "Q = {order}, [{lo}, {hi}]"
            );
        }
    }
}

#[test]
fn start_at_brackets_every_target() {
    for order in 1..=25 {
        let sorted = brute_farey(order);
        for den in 1..=30 {
            for num in 0..=den {
                let alpha = Fraction::new(num, den).unwrap();
                if alpha.num() != num {
                    continue;
                }
                let (p, c) = start_at(order, alpha);
                if alpha.is_zero() {
                    assert_eq!((p, c), (Fraction::ZERO, Fraction::new(1, order).unwrap()));
                    continue;
                }
                // c is the first element >= alpha, p the one before it.
                let idx = sorted.iter().position(|s| frac(*s) >= alpha).unwrap();
                assert_eq!(c, frac(sorted[idx]), "Q = {order}, alpha = {alpha}");
                assert_eq!(p, frac(sorted[idx - 1]), "Q = {order}, alpha = {alpha}");
            }
        }
    }
}

#[test]
fn gap_histograms_match_pairing_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for order in [3u64, 10, 57, 128, 200] {
        let sorted = brute_farey(order);
        let mut intervals = vec![(Fraction::ZERO, Fraction::ONE)];
        intervals.extend((0..10).map(|_| random_interval(&mut rng, 60)));
        for (lo, hi) in intervals {
            let slice = FareySlice::new(order, lo, hi, Parity::OddDen).unwrap();
            let h = gap_histogram(&slice).unwrap();
            let seq = odd_slice(&sorted, (lo.num(), lo.den()), (hi.num(), hi.den()));
            assert_eq!(h.counts, brute_gaps(&seq), "Q = {order}, [{lo}, {hi}]");
            assert_eq!(h.population, seq.len() as u64);
        }
    }
}

#[test]
fn gap_one_pairs_split_into_adjacent_and_bridged() {
    for order in 2..=300 {
        let sorted = brute_farey(order);
        let both_odd = sorted
            .windows(2)
            .filter(|w| w[0].1 % 2 == 1 && w[1].1 % 2 == 1)
            .count() as u64;
        let bridged_with_index_one = sorted
            .windows(3)
            .filter(|w| w[0].1 % 2 == 1 && w[1].1 % 2 == 0 && w[2].1 % 2 == 1)
            .filter(|w| (order + w[0].1) / w[1].1 == 1)
            .count() as u64;
        let h = gap_histogram(&FareySlice::full(order, Parity::OddDen).unwrap()).unwrap();
        assert_eq!(h.count(1), both_odd + bridged_with_index_one, "Q = {order}");
    }
}

#[test]
fn sieve_matches_trial_division() {
    let s = SieveTables::new(10_000).unwrap();
    for n in 1..=10_000u64 {
        assert_eq!(s.mobius(n), brute_mobius(n), "mu({n})");
        let by_mobius: i64 = (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| s.mobius(d) as i64 * (n / d) as i64)
            .sum();
        assert_eq!(s.totient(n) as i64, by_mobius, "phi({n})");
        assert_eq!(totient(n), s.totient(n));
    }
    for n in 1..=500 {
        assert_eq!(s.totient(n), brute_totient(n));
    }
}

fn brute_region(region: &LatticeRegion, side: u64) -> (u64, u64, u64, u64) {
    let (mut points, mut n_odd, mut odd_odd, mut odd_even) = (0, 0, 0, 0);
    for x in 0..=side {
        for y in 0..=side {
            if !region.contains(x, y) {
                continue;
            }
            points += 1;
            if x % 2 == 1 && gcd(x, y) == 1 {
                n_odd += 1;
                if y % 2 == 1 {
                    odd_odd += 1;
                } else {
                    odd_even += 1;
                }
            }
        }
    }
    (points, n_odd, odd_odd, odd_even)
}

#[test]
fn lattice_counts_match_double_loop() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut regions = vec![
        LatticeRegion::rect(0, 40, 3, 17).unwrap(),
        LatticeRegion::tk(1, 90).unwrap(),
        LatticeRegion::tk(4, 90).unwrap(),
        LatticeRegion::sector(90, Fraction::ZERO, Fraction::ONE).unwrap(),
    ];
    for _ in 0..6 {
        let (lo, hi) = random_interval(&mut rng, 12);
        regions.push(LatticeRegion::sector(rng.gen_range(1..80), lo, hi).unwrap());
    }
    for region in regions {
        let side = region.order();
        let c = lattice::count_lattice(&region).unwrap();
        let (points, n_odd, odd_odd, odd_even) = brute_region(&region, side);
        assert_eq!(
            (c.points, c.n_odd, c.n_odd_odd, c.n_odd_even),
            (points, n_odd, odd_odd, odd_even),
            "{region:?}"
        );
    }
}

#[test]
fn mobius_rectangle_count_matches_enumeration() {
    let sieve = SieveTables::new(400).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..40 {
        let (x0, y0) = (rng.gen_range(0..200), rng.gen_range(0..200));
        let (x1, y1) = (x0 + rng.gen_range(0..200), y0 + rng.gen_range(0..200));
        let region = LatticeRegion::rect(x0, x1, y0, y1).unwrap();
        let direct = lattice::count_lattice(&region).unwrap().n_odd;
        let mobius = count_odd_coprime_rect_mobius(x0, x1, y0, y1, &sieve).unwrap();
        assert_eq!(mobius, direct as i64, "[{x0}, {x1}] x [{y0}, {y1}]");
    }
}

#[test]
fn sector_counts_equal_odd_slice_cardinality() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for order in [1u64, 2, 9, 100, 777, 2000] {
        let mut intervals = vec![(Fraction::ZERO, Fraction::ONE)];
        intervals.extend((0..10).map(|_| random_interval(&mut rng, 50)));
        for (lo, hi) in intervals {
            let sector = LatticeRegion::sector(order, lo, hi).unwrap();
            let n_odd = lattice::count_lattice(&sector).unwrap().n_odd;
            let card = slice_cardinality(order, (lo, hi)).unwrap().exact;
            assert_eq!(n_odd, card, "Q = {order}, [{lo}, {hi}]");
        }
    }
}

#[test]
fn product_counts_match_double_loop() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..200 {
        let q = rng.gen_range(1..=300u64);
        let i = (rng.gen_range(0..q), rng.gen_range(0..=q));
        let j = (rng.gen_range(0..q), rng.gen_range(0..=q));
        let a = loop {
            let a = rng.gen_range(0..q.max(2));
            if gcd(a, q) == 1 {
                break a;
            }
        };
        let bx =
            ResidueBox::new(q, ResidueRun::new(i.0, i.1), ResidueRun::new(j.0, j.1), a).unwrap();
        let got = count_products(&bx, totient(q)).exact;
        assert_eq!(
            got,
            brute_products(q, i, j, a),
            "q = {q}, I = {i:?}, J = {j:?}, a = {a}"
        );
    }
}

#[test]
fn product_counts_sum_over_units() {
    for q in 1..=50u64 {
        let units: Vec<u64> = (0..q).filter(|&a| gcd(a, q) == 1).collect();
        for (s, l) in [(0, q), (1, q / 2), (q / 3, q - q / 3), (q - 1, 2.min(q))] {
            let run = ResidueRun::new(s, l);
            let other = ResidueRun::new(q / 2, q.div_ceil(2));
            let total: u64 = units
                .iter()
                .map(|&a| {
                    let bx = ResidueBox::new(q, run, other, a).unwrap();
                    count_products(&bx, totient(q)).exact
                })
                .sum();
            let coprime = run
                .residues(q)
                .flat_map(|x| other.residues(q).map(move |y| (x, y)))
                .filter(|&(x, y)| gcd(x * y, q) == 1)
                .count() as u64;
            assert_eq!(total, coprime, "q = {q}, I = ({s}, {l})");
        }
    }
}
