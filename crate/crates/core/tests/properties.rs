mod common;

use common::gcd;
use farey_odd::cli::{self, Caps, Format};
use farey_odd::farey::delta;
use farey_odd::gaps::{frequency_table, rho_tail};
use farey_odd::lattice::{
    area_tkq, classify_tk, count_odd_coprime_rect_mobius, LatticeRegion, Rational,
};
use farey_odd::modular::{count_products, totient, ResidueBox, ResidueRun};
use farey_odd::{gap_histogram, rho_theoretical, FareySlice, Fraction, Parity, SieveTables};
use num_bigint::BigUint;
use proptest::prelude::*;

fn fraction() -> impl Strategy<Value = Fraction> {
    (1u64..=60)
        .prop_flat_map(|q| (0..=q, Just(q)))
        .prop_map(|(a, q)| Fraction::new(a, q).unwrap())
}

fn interval() -> impl Strategy<Value = (Fraction, Fraction)> {
    (fraction(), fraction()).prop_map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
}

#[test]
fn stream_neighbours_are_unimodular_for_small_orders() {
    for order in 1..=200 {
        let seq: Vec<Fraction> = FareySlice::full(order, Parity::All)
            .unwrap()
            .iter()
            .collect();
        for w in seq.windows(2) {
            assert_eq!(
                delta(w[0], w[1]).unwrap(),
                1,
                "Q = {order}: {} {}",
                w[0],
                w[1]
            );
            assert!(w[0].den() + w[1].den() > order);
            assert!(w[0].den() % 2 == 1 || w[1].den() % 2 == 1);
        }
    }
}

#[test]
fn stream_length_is_one_plus_totient_sum() {
    let sieve = SieveTables::new(10_000).unwrap();
    let orders = (1..=300).chain([1000, 2048, 3000, 4321, 10_000]);
    for order in orders {
        let n = FareySlice::full(order, Parity::All).unwrap().iter().count() as u64;
        assert_eq!(n, sieve.phi_sum(order).unwrap() + 1, "Q = {order}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stream_length_for_random_orders(order in 1u64..=3000) {
        let sieve = SieveTables::new(order).unwrap();
        let n = FareySlice::full(order, Parity::All).unwrap().iter().count() as u64;
        prop_assert_eq!(n, sieve.phi_sum(order).unwrap() + 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn histograms_are_reflection_symmetric(order in 1u64..=500, (lo, hi) in interval()) {
        let slice = FareySlice::new(order, lo, hi, Parity::OddDen).unwrap();
        let a = gap_histogram(&slice).unwrap();
        let b = gap_histogram(&slice.reflected()).unwrap();
        prop_assert_eq!(a.counts, b.counts);
        prop_assert_eq!(a.population, b.population);
    }

    #[test]
    fn histogram_mass_is_population_minus_one(
        order in 1u64..=400,
        (lo, hi) in interval(),
        k_max in 1u64..=12,
    ) {
        let slice = FareySlice::new(order, lo, hi, Parity::OddDen).unwrap();
        let table = frequency_table(&slice, k_max).unwrap();
        let h = &table.histogram;
        prop_assert_eq!(h.counts.values().sum::<u64>(), h.population.saturating_sub(1));
        let total: u64 = table.rows.iter().map(|r| r.count).sum::<u64>() + table.overflow.count;
        prop_assert_eq!(total, h.pairs());
        if h.pairs() > 0 {
            let freq: f64 = table.rows.iter().map(|r| r.empirical).sum::<f64>() + table.overflow.empirical;
            prop_assert!((freq - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn mobius_rectangles_agree(x0 in 0u64..150, y0 in 0u64..150, w in 0u64..150, h in 0u64..150) {
        let sieve = SieveTables::new(300).unwrap();
        let region = LatticeRegion::rect(x0, x0 + w, y0, y0 + h).unwrap();
        let direct = farey_odd::count_lattice(&region).unwrap().n_odd;
        prop_assert_eq!(
            count_odd_coprime_rect_mobius(x0, x0 + w, y0, y0 + h, &sieve).unwrap(),
            direct as i64
        );
    }

    #[test]
    fn product_counts_survive_negation(
        q in 2u64..=300,
        seed in any::<(u64, u64, u64, u64, u64)>(),
    ) {
        let (si, li, sj, lj, a) = seed;
        let i = ResidueRun::new(si % q, li % (q + 1));
        let j = ResidueRun::new(sj % q, lj % (q + 1));
        let a = (1..q).cycle().skip((a % q) as usize).take(q as usize).find(|&t| gcd(t, q) == 1).unwrap();
        let bx = ResidueBox::new(q, i, j, a).unwrap();
        let phi = totient(q);
        let neg = bx.with_runs(i.negated(q), j.negated(q));
        prop_assert_eq!(count_products(&bx, phi).exact, count_products(&neg, phi).exact);
    }
}

#[test]
fn parity_recurrence_for_totient_sums() {
    let s = SieveTables::new(10_000).unwrap();
    for q in 1..=10_000u64 {
        let h = q / 2;
        let (big_phi, odd) = (s.phi_sum(q).unwrap(), s.odd_phi_sum(q).unwrap());
        let (big_phi_h, odd_h) = if h == 0 {
            (0, 0)
        } else {
            (s.phi_sum(h).unwrap(), s.odd_phi_sum(h).unwrap())
        };
        assert_eq!(big_phi - odd, odd_h + 2 * (big_phi_h - odd_h), "Q = {q}");
    }
}

#[test]
fn parity_recurrence_for_ratio_sums() {
    let s = SieveTables::new(10_000).unwrap();
    let sums = s.ratio_prefix_sums(10_000).unwrap();
    let zero = BigUint::from(0u32);
    for q in 1..=10_000u64 {
        let h = q / 2;
        let (g2, g1) = (sums.all_numerator(q), sums.odd_numerator(q));
        let (g2h, g1h) = if h == 0 {
            (&zero, &zero)
        } else {
            (sums.all_numerator(h), sums.odd_numerator(h))
        };
        // 2 G1(Q) - G1(Q/2) = 2 G2(Q) - 2 G2(Q/2), cleared of the common denominator.
        assert_eq!(
            BigUint::from(2u32) * g1 + BigUint::from(2u32) * g2h,
            BigUint::from(2u32) * g2 + g1h,
            "Q = {q}"
        );
    }
}

#[test]
fn tk_regions_partition_the_upper_triangle() {
    let order = 500;
    let regions: Vec<LatticeRegion> = (1..=2 * order)
        .map(|k| LatticeRegion::tk(k, order).unwrap())
        .collect();
    for x in 0..=order {
        for y in 1..=order {
            if x + y <= order {
                assert!(regions.iter().all(|r| !r.contains(x, y)));
                continue;
            }
            let hits: Vec<u64> = (1..=2 * order)
                .filter(|&k| regions[k as usize - 1].contains(x, y))
                .collect();
            assert_eq!(hits.len(), 1, "({x}, {y}) in {hits:?}");
            assert_eq!(classify_tk(x, y, order), Some(hits[0]));
        }
    }
}

#[test]
fn gap_densities_telescope() {
    let mut partial = Rational::from_integer(0);
    for k in 1..=10_000u64 {
        partial += rho_theoretical(k).unwrap();
        assert_eq!(partial, Rational::from_integer(1) - rho_tail(k), "K = {k}");
        let closed = Rational::new(1, 1) - Rational::new(2, ((k + 1) * (k + 2)) as i128);
        assert_eq!(partial, closed, "K = {k}");
    }
}

#[test]
fn region_areas_telescope() {
    let q = 7u64;
    let q2 = Rational::from_integer((q * q) as i128);
    assert_eq!(area_tkq(1, q).unwrap() / q2, Rational::new(1, 6));
    let mut partial = Rational::from_integer(0);
    for k in 2..=1_000_000u64 {
        partial += area_tkq(k, q).unwrap() / q2;
        if k % 997 == 0 || k == 1_000_000 {
            let closed = Rational::new(1, 3) - Rational::new(2, ((k + 1) * (k + 2)) as i128);
            assert_eq!(partial, closed, "K = {k}");
        }
    }
}

#[test]
fn json_output_is_deterministic_and_exact() {
    let argv = [
        "farey-odd",
        "lemma1",
        "--Q",
        "40",
        "--kmax",
        "3",
        "--format",
        "json",
    ];
    let config = cli::parse_args(argv).unwrap();
    assert_eq!(config.format, Format::Json);
    let a = cli::execute(&config, Caps::default())
        .unwrap()
        .report
        .to_json();
    let b = cli::execute(&config, Caps::default())
        .unwrap()
        .report
        .to_json();
    assert_eq!(a, b);
    // Counts are integers and areas are quoted rationals.
    assert!(a.contains("\"area\":\"800/1\""), "{a}");
    assert!(!a.contains("\"n_odd\":\""), "{a}");
    assert!(!a.contains(".0,"), "{a}");
}
