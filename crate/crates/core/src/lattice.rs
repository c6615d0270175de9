//! Lattice-point counting with parity and coprimality constraints.
//!
//! Three region shapes are supported, all inside the square `[0, Q]²`:
//!
//! * `T_{k,Q}`: `x + y > Q` and `k·y <= Q + x < (k+1)·y`. A consecutive pair
//!   `a/q < a'/q'` of `F_Q` with denominators `(q, q') ∈ T_{k,Q}` has
//!   successor index `floor((Q+q)/q') = k`.
//! * axis-aligned rectangles,
//! * sectors `0 < x <= Q, αx <= y <= βx`, whose primitive points with odd `x`
//!   are exactly the odd-denominator Farey fractions in `[α, β]`.
//!
//! Counting is exact enumeration column by column. Each region reports the
//! integer `y`-range of a column directly, and the `contains` predicate is
//! kept as the independent definition the ranges are tested against.

use std::f64::consts::PI;

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::sieve::SieveTables;

/// Exact small rationals (areas, frequencies).
pub type Rational = Ratio<i128>;

/// Default bounding-box side above which [`count_lattice`] refuses to run.
pub const DEFAULT_LATTICE_CAP: u64 = 5_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeRegion {
    /// `T_{k,Q}`.
    Tk { k: u64, order: u64 },
    /// `[x0, x1] × [y0, y1]` with non-negative corners.
    Rect { x0: u64, x1: u64, y0: u64, y1: u64 },
    /// `{0 < x <= Q, lo·x <= y <= hi·x}`.
    Sector {
        order: u64,
        lo: Fraction,
        hi: Fraction,
    },
    /// `{(x, y/2) : (x, y) ∈ inner}`.
    HalvedY(Box<LatticeRegion>),
}

impl LatticeRegion {
    pub fn tk(k: u64, order: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("T_{k,Q} needs k >= 1".into()));
        }
        Ok(LatticeRegion::Tk { k, order })
    }

    pub fn rect(x0: u64, x1: u64, y0: u64, y1: u64) -> Result<Self> {
        if x0 > x1 || y0 > y1 {
            return Err(Error::InvalidArgument(format!(
                "empty rectangle [{x0}, {x1}] x [{y0}, {y1}]"
            )));
        }
        Ok(LatticeRegion::Rect { x0, x1, y0, y1 })
    }

    pub fn sector(order: u64, lo: Fraction, hi: Fraction) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!(
                "sector slopes out of order: [{lo}, {hi}]"
            )));
        }
        Ok(LatticeRegion::Sector { order, lo, hi })
    }

    /// Side of the bounding square `[0, Q]²`.
    pub fn order(&self) -> u64 {
        match self {
            LatticeRegion::Tk { order, .. } | LatticeRegion::Sector { order, .. } => *order,
            LatticeRegion::Rect { x1, y1, .. } => (*x1).max(*y1),
            LatticeRegion::HalvedY(inner) => inner.order(),
        }
    }

    /// Membership of an integer point, straight from the defining inequalities.
    pub fn contains(&self, x: u64, y: u64) -> bool {
        match *self {
            LatticeRegion::Tk { k, order } => {
                let (x, y, q, k) = (x as u128, y as u128, order as u128, k as u128);
                x <= q && y <= q && x + y > q && k * y <= q + x && q + x < (k + 1) * y
            }
            LatticeRegion::Rect { x0, x1, y0, y1 } => {
                (x0..=x1).contains(&x) && (y0..=y1).contains(&y)
            }
            LatticeRegion::Sector { order, lo, hi } => {
                let (x, y) = (x as u128, y as u128);
                let below = |f: Fraction| f.num() as u128 * x <= y * f.den() as u128;
                let above = |f: Fraction| y * f.den() as u128 <= f.num() as u128 * x;
                x >= 1 && x <= order as u128 && below(lo) && above(hi)
            }
            LatticeRegion::HalvedY(ref inner) => {
                y.checked_mul(2).is_some_and(|y2| inner.contains(x, y2))
            }
        }
    }

    /// Integer `y` values of column `x` inside the region, as a closed range.
    pub fn column(&self, x: u64) -> Option<(u64, u64)> {
        let (lo, hi) = match *self {
            LatticeRegion::Tk { k, order } => {
                if x > order {
                    return None;
                }
                let s = order + x;
                let lo = (order - x + 1).max(s / (k + 1) + 1);
                let hi = order.min(s / k);
                (lo, hi)
            }
            LatticeRegion::Rect { x0, x1, y0, y1 } => {
                if x < x0 || x > x1 {
                    return None;
                }
                (y0, y1)
            }
            LatticeRegion::Sector { order, lo, hi } => {
                if x == 0 || x > order {
                    return None;
                }
                let ceil = (lo.num() as u128 * x as u128).div_ceil(lo.den() as u128);
                let floor = hi.num() as u128 * x as u128 / hi.den() as u128;
                (ceil as u64, floor as u64)
            }
            LatticeRegion::HalvedY(ref inner) => {
                let (lo, hi) = inner.column(x)?;
                (lo.div_ceil(2), hi / 2)
            }
        };
        (lo <= hi).then_some((lo, hi))
    }

    /// Exact continuous area.
    pub fn area(&self) -> Rational {
        match *self {
            LatticeRegion::Tk { k, order } => area_tkq(k, order).expect("k >= 1 by construction"),
            LatticeRegion::Rect { x0, x1, y0, y1 } => {
                Rational::from_integer((x1 - x0) as i128 * (y1 - y0) as i128)
            }
            LatticeRegion::Sector { order, lo, hi } => {
                let width = frac(hi) - frac(lo);
                width * Rational::from_integer(order as i128 * order as i128) / 2
            }
            LatticeRegion::HalvedY(ref inner) => inner.area() / 2,
        }
    }
}

fn frac(f: Fraction) -> Rational {
    Rational::new(f.num() as i128, f.den() as i128)
}

/// `Ω* = {(x, y/2) : (x, y) ∈ Ω}`. Halves the area and turns the odd-`x`,
/// even-`y` primitive points of `Ω` into the odd-`x` primitive points of `Ω*`.
pub fn halve_y(region: LatticeRegion) -> LatticeRegion {
    LatticeRegion::HalvedY(Box::new(region))
}

/// Area of `T_{k,Q}`: `Q²/6` for `k = 1`, `4Q²/(k(k+1)(k+2))` otherwise.
pub fn area_tkq(k: u64, order: u64) -> Result<Rational> {
    if k == 0 {
        return Err(Error::InvalidArgument("T_{k,Q} needs k >= 1".into()));
    }
    let q2 = order as i128 * order as i128;
    Ok(if k == 1 {
        Rational::new(q2, 6)
    } else {
        let k = k as i128;
        Rational::new(4 * q2, k * (k + 1) * (k + 2))
    })
}

/// The `k` with `(x, y) ∈ T_{k,Q}`, or `None` when `x + y <= Q` or `y = 0`.
pub fn classify_tk(x: u64, y: u64, order: u64) -> Option<u64> {
    if y == 0 || x + y <= order {
        return None;
    }
    Some((order + x) / y)
}

/// Exact lattice counts for a region next to their area-based main terms.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeCountReport {
    /// All integer points.
    pub points: u64,
    /// Points with odd `x`.
    pub m_odd: u64,
    /// Points with `gcd(x, y) = 1`.
    pub n_all: u64,
    /// Primitive points with odd `x`.
    pub n_odd: u64,
    pub n_odd_odd: u64,
    pub n_odd_even: u64,
    pub area: Rational,
    pub main_m_odd: f64,
    pub main_n_all: f64,
    pub main_n_odd: f64,
    pub main_n_odd_odd: f64,
    pub main_n_odd_even: f64,
}

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    points: u64,
    m_odd: u64,
    n_all: u64,
    n_odd_odd: u64,
    n_odd_even: u64,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            points: self.points + o.points,
            m_odd: self.m_odd + o.m_odd,
            n_all: self.n_all + o.n_all,
            n_odd_odd: self.n_odd_odd + o.n_odd_odd,
            n_odd_even: self.n_odd_even + o.n_odd_even,
        }
    }
}

/// Counts with the default cap.
pub fn count_lattice(region: &LatticeRegion) -> Result<LatticeCountReport> {
    count_lattice_capped(region, DEFAULT_LATTICE_CAP)
}

/// Exact counts by enumerating every column of the bounding square.
///
/// `gcd(x, 0) = x`, so `(x, 0)` is primitive only for `x = 1`, matching the
/// Farey element `0/1`. Columns are processed in parallel; the result does not
/// depend on how they are split.
pub fn count_lattice_capped(region: &LatticeRegion, cap: u64) -> Result<LatticeCountReport> {
    let order = region.order();
    if order > cap {
        return Err(Error::CapExceeded {
            what: "lattice bounding box side",
            requested: order,
            cap,
        });
    }
    let tally = (0..=order)
        .into_par_iter()
        .map(|x| {
            let mut t = Tally::default();
            let Some((lo, hi)) = region.column(x) else {
                return t;
            };
            let odd_x = x % 2 == 1;
            t.points = hi - lo + 1;
            if odd_x {
                t.m_odd = t.points;
            }
            for y in lo..=hi {
                if x.gcd(&y) == 1 {
                    t.n_all += 1;
                    if odd_x {
                        if y % 2 == 1 {
                            t.n_odd_odd += 1;
                        } else {
                            t.n_odd_even += 1;
                        }
                    }
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge);

    let area = region.area();
    let a = *area.numer() as f64 / *area.denom() as f64;
    let pi2 = PI * PI;
    Ok(LatticeCountReport {
        points: tally.points,
        m_odd: tally.m_odd,
        n_all: tally.n_all,
        n_odd: tally.n_odd_odd + tally.n_odd_even,
        n_odd_odd: tally.n_odd_odd,
        n_odd_even: tally.n_odd_even,
        area,
        main_m_odd: a / 2.0,
        main_n_all: 6.0 / pi2 * a,
        main_n_odd: 4.0 / pi2 * a,
        main_n_odd_odd: 2.0 / pi2 * a,
        main_n_odd_even: 2.0 / pi2 * a,
    })
}

/// `N_odd` of a rectangle by Möbius inversion instead of GCDs:
///
/// ```text
/// N_odd = Σ_{d odd} μ(d) · #{x ∈ [x0,x1] odd, d | x} · #{y ∈ [y0,y1], d | y}
/// ```
///
/// Kept as an independent route for cross-checking [`count_lattice`].
pub fn count_odd_coprime_rect_mobius(
    x0: u64,
    x1: u64,
    y0: u64,
    y1: u64,
    sieve: &SieveTables,
) -> Result<i64> {
    if x0 > x1 || y0 > y1 {
        return Ok(0);
    }
    if x1 > sieve.limit() {
        return Err(Error::BeyondSieve {
            limit: sieve.limit(),
            requested: x1,
        });
    }
    // Multiples of m in [lo, hi].
    let multiples = |m: u64, lo: u64, hi: u64| -> u64 {
        let below = if lo == 0 { 0 } else { (lo - 1) / m + 1 };
        hi / m + 1 - below
    };
    let mut total = 0i64;
    for d in (1..=x1).step_by(2) {
        let mu = sieve.mobius(d);
        if mu == 0 {
            continue;
        }
        // Odd multiples of an odd d are the multiples of d minus those of 2d.
        let xs = multiples(d, x0, x1) - multiples(2 * d, x0, x1);
        if xs == 0 {
            continue;
        }
        let ys = multiples(d, y0, y1);
        total += mu as i64 * (xs * ys) as i64;
    }
    Ok(total)
}
