//! Gap statistics `Δ = q·a' − a·q'` over odd-denominator Farey slices.
//!
//! Consecutive elements of `F_{Q,odd}` are either consecutive in `F_Q` (so
//! `Δ = 1`) or straddle exactly one even-denominator fraction `a'/q'`. In the
//! latter case the gap equals the successor index `floor((Q+q)/q')`, which is
//! why the limiting frequencies are the normalized areas of the `T_{k,Q}`
//! regions:
//!
//! ```text
//! ρ(k) = 4 / (k (k+1) (k+2))
//! ```
//!
//! The same law holds on every subinterval `[α, β]`, with main terms scaled by
//! `β − α`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::farey::{delta, FareyCursor, FareySlice, Parity};
use crate::fraction::Fraction;
use crate::lattice::Rational;

/// Default number of explicit rows in a frequency table.
pub const DEFAULT_K_MAX: u64 = 10;

/// `ε` in the subinterval error scale `Q^{3/2+ε}`.
pub const SUBINTERVAL_EPSILON: f64 = 0.05;

/// Sparse histogram of gaps between consecutive elements of a slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapHistogram {
    pub slice: FareySlice,
    pub counts: BTreeMap<u64, u64>,
    pub population: u64,
}

impl GapHistogram {
    /// Number of consecutive pairs, `population − 1` (or 0).
    pub fn pairs(&self) -> u64 {
        self.population.saturating_sub(1)
    }

    pub fn count(&self, k: u64) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }
}

/// One pass over the slice, recording `Δ` for each consecutive pair.
///
/// With `Parity::All` every gap is 1; the histogram is still well defined.
pub fn gap_histogram(slice: &FareySlice) -> Result<GapHistogram> {
    let mut counts = BTreeMap::new();
    let mut population = 0u64;
    let mut last: Option<Fraction> = None;
    for f in slice.iter() {
        population += 1;
        if let Some(prev) = last {
            *counts.entry(delta(prev, f)?).or_insert(0) += 1;
        }
        last = Some(f);
    }
    Ok(GapHistogram {
        slice: *slice,
        counts,
        population,
    })
}

/// `4 / (k (k+1) (k+2))`.
pub fn rho_theoretical(k: u64) -> Result<Rational> {
    if k == 0 {
        return Err(Error::InvalidArgument("gap index k must be >= 1".into()));
    }
    let k = k as i128;
    Ok(Rational::new(4, k * (k + 1) * (k + 2)))
}

/// Limiting mass of all gaps above `k_max`: `2 / ((k_max+1)(k_max+2))`.
pub fn rho_tail(k_max: u64) -> Rational {
    let k = k_max as i128;
    Rational::new(2, (k + 1) * (k + 2))
}

fn rational_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn width(lo: Fraction, hi: Fraction) -> Rational {
    Rational::new(hi.num() as i128, hi.den() as i128)
        - Rational::new(lo.num() as i128, lo.den() as i128)
}

/// `2(β−α)Q²/π² · 4/(k(k+1)(k+2))`, with `(β−α)·ρ(k)` formed exactly.
pub fn main_term(k: u64, order: u64, interval: (Fraction, Fraction)) -> Result<f64> {
    let exact = width(interval.0, interval.1) * rho_theoretical(k)?;
    Ok(scaled_main(exact, order))
}

fn scaled_main(exact: Rational, order: u64) -> f64 {
    let q = order as f64;
    2.0 * q * q / (PI * PI) * rational_to_f64(exact)
}

fn q_log_q(order: u64) -> f64 {
    let q = order as f64;
    q * q.ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bucket {
    /// Gaps equal to `k`.
    Exact(u64),
    /// Gaps strictly above `k`.
    Above(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyRow {
    pub bucket: Bucket,
    pub count: u64,
    /// `count / (population − 1)`.
    pub empirical: f64,
    pub theoretical: Rational,
    pub main_term: f64,
    /// `|count − main_term|`.
    pub abs_error: f64,
    /// `abs_error / (Q ln Q)`.
    pub normalized_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyTable {
    pub histogram: GapHistogram,
    pub rows: Vec<FrequencyRow>,
    /// Aggregate of every gap above `k_max`.
    pub overflow: FrequencyRow,
}

/// Rows for `k = 1..=k_max` plus an overflow bucket.
///
/// Empirical frequencies are normalized by the number of pairs, not by the
/// population, so they sum to exactly 1 at every finite order.
pub fn frequency_table(slice: &FareySlice, k_max: u64) -> Result<FrequencyTable> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be >= 1".into()));
    }
    let histogram = gap_histogram(slice)?;
    Ok(tabulate(histogram, k_max))
}

/// Builds the table from an existing histogram.
pub fn tabulate(histogram: GapHistogram, k_max: u64) -> FrequencyTable {
    let order = histogram.slice.order();
    let w = width(histogram.slice.lo(), histogram.slice.hi());
    let pairs = histogram.pairs();
    let norm = q_log_q(order);
    let row = |bucket: Bucket, count: u64, theoretical: Rational| {
        let main_term = scaled_main(w * theoretical, order);
        let abs_error = (count as f64 - main_term).abs();
        FrequencyRow {
            bucket,
            count,
            empirical: if pairs == 0 {
                0.0
            } else {
                count as f64 / pairs as f64
            },
            theoretical,
            main_term,
            abs_error,
            normalized_error: abs_error / norm,
        }
    };
    let rows = (1..=k_max)
        .map(|k| {
            row(
                Bucket::Exact(k),
                histogram.count(k),
                rho_theoretical(k).unwrap(),
            )
        })
        .collect();
    let above: u64 = histogram.counts.range(k_max + 1..).map(|(_, c)| c).sum();
    let overflow = row(Bucket::Above(k_max), above, rho_tail(k_max));
    FrequencyTable {
        histogram,
        rows,
        overflow,
    }
}

/// Exact population of a slice and its main term `2(β−α)Q²/π²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cardinality {
    pub exact: u64,
    pub main_term: f64,
}

impl Cardinality {
    pub fn ratio(&self) -> f64 {
        self.exact as f64 / self.main_term
    }
}

pub fn slice_cardinality(order: u64, interval: (Fraction, Fraction)) -> Result<Cardinality> {
    let slice = FareySlice::new(order, interval.0, interval.1, Parity::OddDen)?;
    let exact = slice.iter().count() as u64;
    Ok(Cardinality {
        exact,
        main_term: scaled_main(width(interval.0, interval.1), order),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRow {
    pub order: u64,
    pub count: u64,
    pub main_term: f64,
    pub abs_error: f64,
    /// `abs_error / (Q ln Q)`.
    pub per_q_log_q: f64,
    /// `abs_error / Q^{3/2+ε}`, only for proper subintervals.
    pub per_q_three_halves: Option<f64>,
}

/// Exact `N_{Q,odd,[α,β]}(k)` against its main term for several orders.
///
/// Orders are processed in parallel and returned in input order.
pub fn error_scan(k: u64, orders: &[u64], interval: (Fraction, Fraction)) -> Result<Vec<ErrorRow>> {
    rho_theoretical(k)?;
    if let Some(&bad) = orders.iter().find(|&&q| q < 2) {
        return Err(Error::InvalidArgument(format!(
            "error scan orders must be >= 2, got {bad}"
        )));
    }
    orders
        .par_iter()
        .map(|&order| {
            let slice = FareySlice::new(order, interval.0, interval.1, Parity::OddDen)?;
            let count = gap_histogram(&slice)?.count(k);
            let main = main_term(k, order, interval)?;
            let abs_error = (count as f64 - main).abs();
            let proper = !slice.is_full();
            Ok(ErrorRow {
                order,
                count,
                main_term: main,
                abs_error,
                per_q_log_q: abs_error / q_log_q(order),
                per_q_three_halves: proper
                    .then(|| abs_error / (order as f64).powf(1.5 + SUBINTERVAL_EPSILON)),
            })
        })
        .collect()
}

/// A consecutive triple `a/q < a'/q' < a''/q''` of `F_Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triple {
    pub left: Fraction,
    pub mid: Fraction,
    pub right: Fraction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BridgeViolation {
    /// `Δ(left, right) != floor((Q + q)/q')`.
    GapIndex {
        triple: Triple,
        gap: u64,
        index: u64,
    },
    /// `q + q'' != Δ q'` or `a + a'' != Δ a'`.
    Mediant { triple: Triple, gap: u64 },
    /// Odd neighbors that are also neighbors in `F_Q` but with `Δ != 1`.
    AdjacentGap {
        left: Fraction,
        right: Fraction,
        gap: u64,
    },
    /// Odd neighbors with other than one skipped even-denominator fraction.
    Skipped {
        left: Fraction,
        right: Fraction,
        skipped: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BridgeReport {
    pub order: u64,
    /// Odd–even–odd triples of `F_Q` checked.
    pub triples: u64,
    /// Consecutive pairs of `F_{Q,odd}` checked.
    pub odd_pairs: u64,
    /// Pairs of `F_{Q,odd}` with `Δ >= 2`.
    pub wide_gaps: u64,
    pub violations: Vec<BridgeViolation>,
}

impl BridgeReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Walks `F_Q` and checks, for every pair of consecutive odd-denominator
/// elements, that it either is adjacent in `F_Q` with `Δ = 1` or skips exactly
/// one even-denominator fraction `a'/q'` with
///
/// * `Δ = floor((Q + q)/q')`,
/// * `q + q'' = Δ q'` and `a + a'' = Δ a'`.
///
/// Failures are collected with their witnesses rather than asserted.
pub fn bridge_check(order: u64) -> Result<BridgeReport> {
    if order < 2 {
        return Err(Error::InvalidArgument(format!(
            "bridge check needs Q >= 2, got {order}"
        )));
    }
    let slice = FareySlice::full(order, Parity::All)?;
    let mut report = BridgeReport {
        order,
        ..BridgeReport::default()
    };
    let mut last_odd: Option<Fraction> = None;
    let mut skipped: Vec<Fraction> = Vec::new();
    for f in FareyCursor::new(&slice) {
        if !f.has_odd_den() {
            skipped.push(f);
            continue;
        }
        if let Some(left) = last_odd {
            report.odd_pairs += 1;
            let gap = delta(left, f)?;
            if gap >= 2 {
                report.wide_gaps += 1;
            }
            match skipped.as_slice() {
                [] if gap != 1 => report.violations.push(BridgeViolation::AdjacentGap {
                    left,
                    right: f,
                    gap,
                }),
                [] => {}
                [mid] => {
                    report.triples += 1;
                    let triple = Triple {
                        left,
                        mid: *mid,
                        right: f,
                    };
                    let index = (order + left.den()) / mid.den();
                    if gap != index {
                        report
                            .violations
                            .push(BridgeViolation::GapIndex { triple, gap, index });
                    }
                    let den_ok =
                        left.den() as u128 + f.den() as u128 == gap as u128 * mid.den() as u128;
                    let num_ok =
                        left.num() as u128 + f.num() as u128 == gap as u128 * mid.num() as u128;
                    if !(den_ok && num_ok) {
                        report
                            .violations
                            .push(BridgeViolation::Mediant { triple, gap });
                    }
                }
                many => report.violations.push(BridgeViolation::Skipped {
                    left,
                    right: f,
                    skipped: many.len() as u64,
                }),
            }
        }
        last_odd = Some(f);
        skipped.clear();
    }
    Ok(report)
}
