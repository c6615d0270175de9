//! Brute-force oracles. Nothing here calls into the crate's algorithms; the
//! only shared type is `Fraction`, used to compare results.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeMap;

use farey_odd::Fraction;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(num, den)` pairs.
pub type Pair = (u64, u64);

pub fn cmp_pairs(l: &Pair, r: &Pair) -> Ordering {
    (l.0 as u128 * r.1 as u128).cmp(&(r.0 as u128 * l.1 as u128))
}

/// Every reduced `a/q` in `[0, 1]` with `q <= order`, sorted by value.
pub fn brute_farey(order: u64) -> Vec<Pair> {
    let mut v = Vec::new();
    for q in 1..=order {
        for a in 0..=q {
            if gcd(a, q) == 1 {
                v.push((a, q));
            }
        }
    }
    v.sort_by(cmp_pairs);
    v
}

pub fn within(p: &Pair, lo: &Pair, hi: &Pair) -> bool {
    cmp_pairs(p, lo) != Ordering::Less && cmp_pairs(p, hi) != Ordering::Greater
}

/// Odd-denominator elements of `sorted` inside the closed interval `[lo, hi]`.
pub fn odd_slice(sorted: &[Pair], lo: Pair, hi: Pair) -> Vec<Pair> {
    sorted
        .iter()
        .copied()
        .filter(|p| p.1 % 2 == 1 && within(p, &lo, &hi))
        .collect()
}

/// Histogram of `q a' - a q'` over adjacent entries of `seq`.
pub fn brute_gaps(seq: &[Pair]) -> BTreeMap<u64, u64> {
    let mut h = BTreeMap::new();
    for w in seq.windows(2) {
        let ((a, q), (b, r)) = (w[0], w[1]);
        let d = q as i128 * b as i128 - a as i128 * r as i128;
        assert!(d > 0, "sequence not increasing");
        *h.entry(d as u64).or_insert(0) += 1;
    }
    h
}

pub fn to_pairs(fs: impl IntoIterator<Item = Fraction>) -> Vec<Pair> {
    fs.into_iter().map(|f| (f.num(), f.den())).collect()
}

pub fn frac(p: Pair) -> Fraction {
    Fraction::new(p.0, p.1).unwrap()
}

pub fn brute_totient(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

/// Möbius by factoring.
pub fn brute_mobius(mut n: u64) -> i8 {
    let mut sign = 1i8;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `#{(x, y) : x in I, y in J, xy = a mod q}` with runs given as start/len.
pub fn brute_products(q: u64, i: (u64, u64), j: (u64, u64), a: u64) -> u64 {
    let mut n = 0;
    for dx in 0..i.1 {
        let x = (i.0 + dx) % q;
        for dy in 0..j.1 {
            let y = (j.0 + dy) % q;
            if (x * y) % q == a % q {
                n += 1;
            }
        }
    }
    n
}

/// A random reduced fraction in `[0, 1]` with denominator at most `max_den`.
pub fn random_fraction(rng: &mut impl rand::Rng, max_den: u64) -> Fraction {
    let q = rng.gen_range(1..=max_den);
    let a = rng.gen_range(0..=q);
    Fraction::new(a, q).unwrap()
}

pub fn random_interval(rng: &mut impl rand::Rng, max_den: u64) -> (Fraction, Fraction) {
    let a = random_fraction(rng, max_den);
    let b = random_fraction(rng, max_den);
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}
