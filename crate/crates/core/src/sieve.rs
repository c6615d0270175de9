//! Möbius and totient tables, and the totient sums built from them.
//!
//! The four sums tracked here are
//!
//! | name | definition | main term |
//! |------|------------|-----------|
//! | `Φ(Q)`  | `Σ_{q≤Q} φ(q)`            | `3Q²/π²` |
//! | `F(Q)`  | `Σ_{q≤Q, q odd} φ(q)`     | `2Q²/π²` |
//! | `G₂(Q)` | `Σ_{q≤Q} φ(q)/q`          | `6Q/π²`  |
//! | `G₁(Q)` | `Σ_{q≤Q, q odd} φ(q)/q`   | `4Q/π²`  |
//!
//! The ratio sums are exact up to [`EXACT_RATIO_LIMIT`]. Every `φ(q)/q` has
//! a reduced denominator dividing the product of the primes up to `q`, so the
//! sums are accumulated as integer numerators over that primorial and reduced
//! once at the end. Past the limit they fall back to compensated floating
//! summation and say so.

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest table the sieve will allocate.
pub const MAX_SIEVE: u64 = 100_000_000;

/// Ratio sums above this order are returned as floating approximations.
pub const EXACT_RATIO_LIMIT: u64 = 10_000;

/// `μ(n)` and `φ(n)` for `1 <= n <= limit`, built once and read-only after.
#[derive(Debug, Clone)]
pub struct SieveTables {
    limit: u64,
    mobius: Vec<i8>,
    totient: Vec<u32>,
}

impl SieveTables {
    /// Linear (Euler) sieve: every composite is struck exactly once, by its
    /// smallest prime factor.
    pub fn new(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::InvalidArgument(
                "sieve limit must be positive".into(),
            ));
        }
        if limit > MAX_SIEVE {
            return Err(Error::CapExceeded {
                what: "sieve limit",
                requested: limit,
                cap: MAX_SIEVE,
            });
        }
        let n = limit as usize;
        let mut mobius = vec![0i8; n + 1];
        let mut totient = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        mobius[1] = 1;
        totient[1] = 1;
        for i in 2..=n {
            if totient[i] == 0 {
                primes.push(i as u32);
                mobius[i] = -1;
                totient[i] = i as u32 - 1;
            }
            for &p in &primes {
                let p = p as usize;
                let m = i * p;
                if m > n {
                    break;
                }
                if i % p == 0 {
                    mobius[m] = 0;
                    totient[m] = totient[i] * p as u32;
                    break;
                }
                mobius[m] = -mobius[i];
                totient[m] = totient[i] * (p as u32 - 1);
            }
        }
        Ok(SieveTables {
            limit,
            mobius,
            totient,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn check(&self, n: u64) -> Result<()> {
        if n > self.limit {
            Err(Error::BeyondSieve {
                limit: self.limit,
                requested: n,
            })
        } else {
            Ok(())
        }
    }

    /// `μ(n)`; panics outside `1..=limit`.
    #[inline]
    pub fn mobius(&self, n: u64) -> i8 {
        assert!(n >= 1 && n <= self.limit, "mobius({n}) outside sieve");
        self.mobius[n as usize]
    }

    /// `φ(n)`; panics outside `1..=limit`.
    #[inline]
    pub fn totient(&self, n: u64) -> u64 {
        assert!(n >= 1 && n <= self.limit, "totient({n}) outside sieve");
        self.totient[n as usize] as u64
    }

    /// `Σ_{n ≤ N, n odd} μ(n)/n²`, summed in ascending `n`.
    pub fn odd_mobius_series(&self, n: u64) -> Result<f64> {
        self.check(n)?;
        let mut sum = 0.0;
        for k in (1..=n).step_by(2) {
            let mu = self.mobius[k as usize];
            if mu != 0 {
                let kf = k as f64;
                sum += mu as f64 / (kf * kf);
            }
        }
        Ok(sum)
    }

    /// `Φ(Q)`.
    pub fn phi_sum(&self, q: u64) -> Result<u64> {
        self.check(q)?;
        Ok(self.totient[1..=q as usize].iter().map(|&t| t as u64).sum())
    }

    /// `F(Q)`, the totient sum over odd `q`.
    pub fn odd_phi_sum(&self, q: u64) -> Result<u64> {
        self.check(q)?;
        Ok(self.totient[1..=q as usize]
            .iter()
            .step_by(2)
            .map(|&t| t as u64)
            .sum())
    }

    /// `G₂(Q)`.
    pub fn phi_over_q_sum(&self, q: u64) -> Result<RatioSum> {
        self.ratio_sum(q, 1)
    }

    /// `G₁(Q)`, the ratio sum over odd `q`.
    pub fn odd_phi_over_q_sum(&self, q: u64) -> Result<RatioSum> {
        self.ratio_sum(q, 2)
    }

    fn ratio_sum(&self, q: u64, stride: usize) -> Result<RatioSum> {
        self.check(q)?;
        if q > EXACT_RATIO_LIMIT {
            let terms = (1..=q)
                .step_by(stride)
                .map(|n| self.totient(n) as f64 / n as f64);
            return Ok(RatioSum::Approx(neumaier_sum(terms)));
        }
        let denominator = primorial(q);
        let mut numerator = BigUint::zero();
        for n in (1..=q).step_by(stride) {
            numerator += self.scaled_ratio(n, &denominator);
        }
        Ok(RatioSum::Exact(BigRational::new(
            BigInt::from(numerator),
            BigInt::from(denominator),
        )))
    }

    /// `φ(n)/n · D` for a primorial `D` covering `n`.
    fn scaled_ratio(&self, n: u64, denominator: &BigUint) -> BigUint {
        let phi = self.totient(n);
        let g = phi.gcd(&n);
        let (top, bottom) = (phi / g, n / g);
        (denominator / bottom) * top
    }

    /// Prefix ratio sums `G₂(n)` and `G₁(n)` for every `n <= max`, as
    /// integer numerators over one shared primorial denominator.
    ///
    /// Intended for exact identity checks across many orders at once.
    pub fn ratio_prefix_sums(&self, max: u64) -> Result<RatioPrefixSums> {
        self.check(max)?;
        if max > EXACT_RATIO_LIMIT {
            return Err(Error::CapExceeded {
                what: "exact ratio prefix order",
                requested: max,
                cap: EXACT_RATIO_LIMIT,
            });
        }
        let denominator = primorial(max);
        let mut all = Vec::with_capacity(max as usize + 1);
        let mut odd = Vec::with_capacity(max as usize + 1);
        all.push(BigUint::zero());
        odd.push(BigUint::zero());
        for n in 1..=max {
            let term = self.scaled_ratio(n, &denominator);
            let prev_odd = odd[n as usize - 1].clone();
            let next_all = &all[n as usize - 1] + &term;
            odd.push(if n % 2 == 1 {
                prev_odd + term
            } else {
                prev_odd
            });
            all.push(next_all);
        }
        Ok(RatioPrefixSums {
            denominator,
            all,
            odd,
        })
    }

    /// `Σ_{q≤Q} φ(q)/q · q^p` next to `(6/π²)(Q^{p+1} − 1)/(p+1)`.
    ///
    /// Only monomial weights `0 <= p <= 3` are supported; higher powers
    /// overflow the 128-bit accumulator near `Q = 10⁵`.
    pub fn weighted_totient_sum(&self, q: u64, power: u32) -> Result<WeightedSum> {
        if power > 3 {
            return Err(Error::InvalidArgument(format!(
                "monomial power must be at most 3, got {power}"
            )));
        }
        self.check(q)?;
        let exact = if power == 0 {
            self.phi_over_q_sum(q)?
        } else {
            let mut acc: u128 = 0;
            for n in 1..=q {
                let w = (n as u128).pow(power - 1);
                acc = (self.totient(n) as u128)
                    .checked_mul(w)
                    .and_then(|t| acc.checked_add(t))
                    .ok_or(Error::Overflow("weighted totient sum"))?;
            }
            RatioSum::Exact(BigRational::from_integer(BigInt::from(acc)))
        };
        let p1 = (power + 1) as f64;
        let main_term = 6.0 / (PI * PI) * ((q as f64).powf(p1) - 1.0) / p1;
        Ok(WeightedSum { exact, main_term })
    }

    pub fn totient_sum(&self, kind: TotientSum, q: u64) -> Result<RatioSum> {
        let int = |v: u64| RatioSum::Exact(BigRational::from_integer(BigInt::from(v)));
        match kind {
            TotientSum::Phi => self.phi_sum(q).map(int),
            TotientSum::OddPhi => self.odd_phi_sum(q).map(int),
            TotientSum::PhiOverQ => self.phi_over_q_sum(q),
            TotientSum::OddPhiOverQ => self.odd_phi_over_q_sum(q),
        }
    }
}

/// The four named totient sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TotientSum {
    Phi,
    OddPhi,
    PhiOverQ,
    OddPhiOverQ,
}

impl TotientSum {
    pub const ALL: [TotientSum; 4] = [
        TotientSum::Phi,
        TotientSum::OddPhi,
        TotientSum::OddPhiOverQ,
        TotientSum::PhiOverQ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TotientSum::Phi => "Phi",
            TotientSum::OddPhi => "F",
            TotientSum::OddPhiOverQ => "G1",
            TotientSum::PhiOverQ => "G2",
        }
    }

    /// Leading asymptotic term.
    pub fn main_term(self, q: u64) -> f64 {
        let q = q as f64;
        let pi2 = PI * PI;
        match self {
            TotientSum::Phi => 3.0 * q * q / pi2,
            TotientSum::OddPhi => 2.0 * q * q / pi2,
            TotientSum::PhiOverQ => 6.0 * q / pi2,
            TotientSum::OddPhiOverQ => 4.0 * q / pi2,
        }
    }
}

/// A sum that is exact when cheap and a flagged float otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum RatioSum {
    Exact(BigRational),
    Approx(f64),
}

impl RatioSum {
    pub fn is_exact(&self) -> bool {
        matches!(self, RatioSum::Exact(_))
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            RatioSum::Exact(r) => Some(r),
            RatioSum::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RatioSum::Exact(r) => ratio_to_f64(r),
            RatioSum::Approx(v) => *v,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSum {
    pub exact: RatioSum,
    pub main_term: f64,
}

/// See [`SieveTables::ratio_prefix_sums`].
#[derive(Debug, Clone)]
pub struct RatioPrefixSums {
    denominator: BigUint,
    all: Vec<BigUint>,
    odd: Vec<BigUint>,
}

impl RatioPrefixSums {
    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    /// Numerator of `G₂(n)` over [`Self::denominator`].
    pub fn all_numerator(&self, n: u64) -> &BigUint {
        &self.all[n as usize]
    }

    /// Numerator of `G₁(n)` over [`Self::denominator`].
    pub fn odd_numerator(&self, n: u64) -> &BigUint {
        &self.odd[n as usize]
    }

    pub fn phi_over_q_sum(&self, n: u64) -> BigRational {
        self.reduce(self.all_numerator(n))
    }

    pub fn odd_phi_over_q_sum(&self, n: u64) -> BigRational {
        self.reduce(self.odd_numerator(n))
    }

    fn reduce(&self, num: &BigUint) -> BigRational {
        BigRational::new(
            BigInt::from(num.clone()),
            BigInt::from(self.denominator.clone()),
        )
    }
}

/// Product of the primes `<= n`.
fn primorial(n: u64) -> BigUint {
    let mut composite = vec![false; n as usize + 1];
    let mut acc = BigUint::from(1u32);
    for p in 2..=n as usize {
        if !composite[p] {
            acc *= p as u64;
            for m in (p * p..=n as usize).step_by(p) {
                composite[m] = true;
            }
        }
    }
    acc
}

/// Converts a rational that may have thousands of digits.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64().filter(|v| v.is_finite()) {
        return v;
    }
    // Scale both parts down to a common bit budget first.
    let (n, d) = (r.numer(), r.denom());
    let shift = n.bits().max(d.bits()).saturating_sub(900);
    let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Neumaier's variant of Kahan summation.
fn neumaier_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in terms {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
