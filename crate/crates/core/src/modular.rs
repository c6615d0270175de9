//! Counting solutions of `xy ≡ a (mod q)` in boxes of consecutive residues,
//! against the uniform-distribution main term `φ(q)|I||J|/q²`.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Exponent of the comparison scale `q^{3/4}` used in deviation reports.
pub const DEVIATION_EXPONENT: f64 = 0.75;

/// Inverse of `u` modulo `q` in `0..q`, by the extended Euclidean algorithm.
pub fn mod_inverse(u: u64, q: u64) -> Result<u64> {
    if q == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if q == 1 {
        return Ok(0);
    }
    let (mut old_r, mut r) = (u as i128 % q as i128, q as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return Err(Error::NotInvertible { u, modulus: q });
    }
    Ok(old_s.rem_euclid(q as i128) as u64)
}

/// A run of `len` consecutive residues starting at `start`, wrapping mod `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueRun {
    pub start: u64,
    pub len: u64,
}

impl ResidueRun {
    pub fn new(start: u64, len: u64) -> Self {
        ResidueRun { start, len }
    }

    /// Whether residue `r` (already reduced mod `q`) lies in the run.
    #[inline]
    pub fn contains(&self, r: u64, q: u64) -> bool {
        let offset = (r + q - self.start % q) % q;
        offset < self.len
    }

    pub fn residues(&self, q: u64) -> impl Iterator<Item = u64> + '_ {
        let start = self.start % q;
        (0..self.len).map(move |i| (start + i) % q)
    }

    /// The run `-I`.
    pub fn negated(&self, q: u64) -> Self {
        if self.len == 0 {
            return *self;
        }
        let last = (self.start % q + self.len - 1) % q;
        ResidueRun {
            start: (q - last) % q,
            len: self.len,
        }
    }
}

/// `I × J` inside `(Z/qZ)²` together with a target residue coprime to `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueBox {
    modulus: u64,
    i: ResidueRun,
    j: ResidueRun,
    target: u64,
}

impl ResidueBox {
    pub fn new(modulus: u64, i: ResidueRun, j: ResidueRun, target: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        if i.len > modulus || j.len > modulus {
            return Err(Error::InvalidArgument(format!(
                "residue runs of length {} and {} exceed modulus {modulus}",
                i.len, j.len
            )));
        }
        if target.gcd(&modulus) != 1 {
            return Err(Error::InvalidArgument(format!(
                "target {target} is not coprime to {modulus}"
            )));
        }
        Ok(ResidueBox {
            modulus,
            i,
            j,
            target: target % modulus,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn i(&self) -> ResidueRun {
        self.i
    }

    pub fn j(&self) -> ResidueRun {
        self.j
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    pub fn with_runs(self, i: ResidueRun, j: ResidueRun) -> Self {
        ResidueBox { i, j, ..self }
    }

    pub fn with_target(self, target: u64) -> Result<Self> {
        ResidueBox::new(self.modulus, self.i, self.j, target)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductCount {
    pub exact: u64,
    pub main_term: f64,
}

impl ProductCount {
    pub fn deviation(&self) -> f64 {
        (self.exact as f64 - self.main_term).abs()
    }
}

/// `#{(x, y) ∈ I × J : xy ≡ a (mod q)}` in `O(|I|)`.
///
/// Each invertible `x` admits exactly one `y = a·x⁻¹`; non-invertible `x`
/// admit none because `a` is a unit.
pub fn count_products(bx: &ResidueBox, phi_q: u64) -> ProductCount {
    let q = bx.modulus;
    let mut exact = 0u64;
    for x in bx.i.residues(q) {
        if x.gcd(&q) != 1 {
            continue;
        }
        let inv = mod_inverse(x, q).expect("x is a unit");
        let y = (bx.target as u128 * inv as u128 % q as u128) as u64;
        if bx.j.contains(y, q) {
            exact += 1;
        }
    }
    let main_term = (phi_q as u128 * bx.i.len as u128 * bx.j.len as u128) as f64
        / (q as u128 * q as u128) as f64;
    ProductCount { exact, main_term }
}

/// Euler's totient by trial division, for moduli outside any sieve.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeviationRow {
    pub modulus: u64,
    pub sample: u64,
    pub i: ResidueRun,
    pub j: ResidueRun,
    pub target: u64,
    pub exact: u64,
    pub main_term: f64,
    pub deviation: f64,
    pub normalized: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeviationScan {
    pub rows: Vec<DeviationRow>,
    pub max_normalized: f64,
    pub median_normalized: f64,
}

/// Draws `samples_per_q` random boxes for each modulus and tabulates how far
/// the exact count strays from the main term, in units of `q^{3/4}`.
///
/// Each modulus gets its own ChaCha stream derived from `seed`, so the table
/// does not depend on how rows are scheduled.
pub fn deviation_scan(moduli: &[u64], samples_per_q: u64, seed: u64) -> Result<DeviationScan> {
    if let Some(&bad) = moduli.iter().find(|&&q| q < 2) {
        return Err(Error::InvalidArgument(format!(
            "moduli must be at least 2, got {bad}"
        )));
    }
    let per_q: Vec<Vec<DeviationRow>> = moduli
        .par_iter()
        .map(|&q| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(q);
            let phi = totient(q);
            (0..samples_per_q)
                .map(|sample| {
                    let i = ResidueRun::new(rng.gen_range(0..q), rng.gen_range(0..=q));
                    let j = ResidueRun::new(rng.gen_range(0..q), rng.gen_range(0..=q));
                    let target = loop {
                        let a = rng.gen_range(1..q);
                        if a.gcd(&q) == 1 {
                            break a;
                        }
                    };
                    let bx = ResidueBox::new(q, i, j, target).expect("sampled box is valid");
                    let count = count_products(&bx, phi);
                    let deviation = count.deviation();
                    DeviationRow {
                        modulus: q,
                        sample,
                        i,
                        j,
                        target,
                        exact: count.exact,
                        main_term: count.main_term,
                        deviation,
                        normalized: deviation / (q as f64).powf(DEVIATION_EXPONENT),
                    }
                })
                .collect()
        })
        .collect();
    let mut rows: Vec<DeviationRow> = per_q.into_iter().flatten().collect();
    rows.sort_by_key(|r| (r.modulus, r.sample));

    let mut norms: Vec<f64> = rows.iter().map(|r| r.normalized).collect();
    norms.sort_by(f64::total_cmp);
    let max_normalized = norms.last().copied().unwrap_or(0.0);
    let median_normalized = match norms.len() {
        0 => 0.0,
        n if n % 2 == 1 => norms[n / 2],
        n => (norms[n / 2 - 1] + norms[n / 2]) / 2.0,
    };
    Ok(DeviationScan {
        rows,
        max_normalized,
        median_normalized,
    })
}
