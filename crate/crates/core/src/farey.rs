//! Streaming enumeration of Farey sequences and their restrictions.
//!
//! `F_Q` is generated with the neighbor recurrence: if `a/q < a'/q'` are
//! consecutive in `F_Q`, the next element is
//!
//! ```text
//! r = floor((Q + q) / q'),   a''/q'' = (r a' - a) / (r q' - q)
//! ```
//!
//! which is already in lowest terms. A cursor holds only the last two
//! elements, so memory use does not depend on `Q`. Subinterval enumeration
//! is seeded by a Stern-Brocot descent in `O(log Q)` steps.

use crate::error::{Error, Result};
use crate::fraction::Fraction;

/// Largest supported order. Beyond this `q * a'` may not fit comfortably in
/// the checked 128-bit path and enumeration is infeasible anyway.
pub const MAX_ORDER: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    All,
    OddDen,
}

impl Parity {
    #[inline]
    pub fn admits(self, f: Fraction) -> bool {
        match self {
            Parity::All => true,
            Parity::OddDen => f.has_odd_den(),
        }
    }
}

/// Enumeration parameters: the order, a closed interval `[lo, hi]`, and a
/// denominator filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FareySlice {
    order: u64,
    lo: Fraction,
    hi: Fraction,
    parity: Parity,
}

impl FareySlice {
    pub fn new(order: u64, lo: Fraction, hi: Fraction, parity: Parity) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::InvalidArgument(format!(
                "order must lie in 1..={MAX_ORDER}, got {order}"
            )));
        }
        if lo > hi {
            return Err(Error::InvalidArgument(format!(
                "interval endpoints out of order: [{lo}, {hi}]"
            )));
        }
        Ok(FareySlice {
            order,
            lo,
            hi,
            parity,
        })
    }

    /// The whole of `[0, 1]`.
    pub fn full(order: u64, parity: Parity) -> Result<Self> {
        Self::new(order, Fraction::ZERO, Fraction::ONE, parity)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn lo(&self) -> Fraction {
        self.lo
    }

    pub fn hi(&self) -> Fraction {
        self.hi
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn with_parity(self, parity: Parity) -> Self {
        FareySlice { parity, ..self }
    }

    /// The mirror image under `x -> 1 - x`.
    pub fn reflected(self) -> Self {
        FareySlice {
            lo: self.hi.complement(),
            hi: self.lo.complement(),
            ..self
        }
    }

    pub fn is_full(&self) -> bool {
        self.lo.is_zero() && self.hi.is_one()
    }

    pub fn iter(&self) -> Enumerate {
        enumerate(self)
    }
}

/// `q * a' - a * q'` for `left = a/q < right = a'/q'`.
pub fn delta(left: Fraction, right: Fraction) -> Result<u64> {
    let cross = (left.den() as u128)
        .checked_mul(right.num() as u128)
        .ok_or(Error::Overflow("delta"))?;
    let back = (left.num() as u128) * (right.den() as u128);
    if cross <= back {
        return Err(Error::NotIncreasing { left, right });
    }
    u64::try_from(cross - back).map_err(|_| Error::Overflow("delta"))
}

/// Successor of `cur` in `F_order`, given its predecessor `prev`.
pub fn next_in_farey(prev: Fraction, cur: Fraction, order: u64) -> Result<Fraction> {
    if cur.is_one() {
        return Err(Error::NoSuccessor);
    }
    // The mediant of a unimodular pair has denominator q + q'; the pair is
    // adjacent in F_order exactly when that mediant is excluded.
    if prev.den() > order
        || cur.den() > order
        || prev.den() + cur.den() <= order
        || delta(prev, cur).ok() != Some(1)
    {
        return Err(Error::NotConsecutive { prev, cur });
    }
    Ok(step(prev, cur, order))
}

#[inline]
fn step(prev: Fraction, cur: Fraction, order: u64) -> Fraction {
    let r = (order + prev.den()) / cur.den();
    Fraction::new_unchecked(r * cur.num() - prev.num(), r * cur.den() - prev.den())
}

/// Consecutive elements `(p, c)` of `F_order` with `p < alpha <= c`.
///
/// For `alpha = 0` there is no predecessor and `(0/1, 1/order)` is returned.
pub fn start_at(order: u64, alpha: Fraction) -> (Fraction, Fraction) {
    assert!(order >= 1, "order must be positive");
    if alpha.is_zero() {
        return (Fraction::ZERO, Fraction::new_unchecked(1, order));
    }
    if alpha.is_one() {
        return (Fraction::new_unchecked(order - 1, order), Fraction::ONE);
    }

    let (a, q) = (alpha.num() as i128, alpha.den() as i128);
    let big_q = order as i128;
    // Stern-Brocot bounds left < alpha < right, kept unimodular.
    let (mut ln, mut ld) = (0i128, 1i128);
    let (mut rn, mut rd) = (1i128, 1i128);
    loop {
        // Both gaps are positive while alpha stays strictly inside.
        let left_gap = a * ld - q * ln;
        let right_gap = q * rn - a * rd;

        let t = ((left_gap - 1) / right_gap).min((big_q - ld) / rd);
        ln += t * rn;
        ld += t * rd;
        let left_gap = a * ld - q * ln;

        let s = ((right_gap - 1) / left_gap).min((big_q - rd) / ld);
        rn += s * ln;
        rd += s * ld;

        if t == 0 && s == 0 {
            break;
        }
    }

    let frac = |n: i128, d: i128| Fraction::new_unchecked(n as u64, d as u64);
    if ld + rd <= big_q {
        // The mediant fits but lies on neither side, so it is alpha itself.
        debug_assert_eq!(frac(ln + rn, ld + rd), alpha);
        let k = (big_q - ld) / q;
        (frac(ln + k * a, ld + k * q), alpha)
    } else {
        (frac(ln, ld), frac(rn, rd))
    }
}

/// Constant-memory walk over `F_order ∩ [lo, hi]`, ignoring parity.
#[derive(Debug, Clone)]
pub struct FareyCursor {
    order: u64,
    hi: Fraction,
    prev: Fraction,
    cur: Fraction,
    done: bool,
}

impl FareyCursor {
    pub fn new(slice: &FareySlice) -> Self {
        let (prev, cur) = if slice.lo.is_zero() {
            (Fraction::ZERO, Fraction::ZERO)
        } else {
            start_at(slice.order, slice.lo)
        };
        FareyCursor {
            order: slice.order,
            hi: slice.hi,
            prev,
            cur,
            done: cur > slice.hi,
        }
    }

    /// The last two elements of `F_order` the cursor has seen.
    pub fn state(&self) -> (Fraction, Fraction) {
        (self.prev, self.cur)
    }
}

impl Iterator for FareyCursor {
    type Item = Fraction;

    #[inline]
    fn next(&mut self) -> Option<Fraction> {
        if self.done {
            return None;
        }
        let out = self.cur;
        if out.is_one() {
            self.done = true;
            return Some(out);
        }
        let succ = if out.is_zero() {
            Fraction::new_unchecked(1, self.order)
        } else {
            step(self.prev, out, self.order)
        };
        self.prev = out;
        self.cur = succ;
        self.done = succ > self.hi;
        Some(out)
    }
}

/// Elements of a slice in increasing order.
#[derive(Debug, Clone)]
pub struct Enumerate {
    cursor: FareyCursor,
    parity: Parity,
}

impl Iterator for Enumerate {
    type Item = Fraction;

    #[inline]
    fn next(&mut self) -> Option<Fraction> {
        let parity = self.parity;
        self.cursor.by_ref().find(|f| parity.admits(*f))
    }
}

/// Streams `F_Q ∩ [lo, hi]` filtered by the slice's parity.
///
/// All of `F_Q` in the interval is walked, so the cost is the same for both
/// parity settings.
pub fn enumerate(slice: &FareySlice) -> Enumerate {
    Enumerate {
        cursor: FareyCursor::new(slice),
        parity: slice.parity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: u64, q: u64) -> Fraction {
        Fraction::new(a, q).unwrap()
    }

    fn render(it: impl Iterator<Item = Fraction>) -> Vec<String> {
        it.map(|x| x.to_string()).collect()
    }

    #[test]
    fn next_term_recurrence() {
        assert_eq!(next_in_farey(f(0, 1), f(1, 5), 5).unwrap(), f(1, 4));
        assert_eq!(next_in_farey(f(1, 3), f(2, 5), 5).unwrap(), f(1, 2));
        assert_eq!(next_in_farey(f(3, 4), f(4, 5), 5).unwrap(), Fraction::ONE);
    }

    #[test]
    fn next_term_rejects_bad_pairs() {
        assert_eq!(
            next_in_farey(f(1, 3), f(1, 2), 5),
            Err(Error::NotConsecutive {
                prev: f(1, 3),
                cur: f(1, 2)
            })
        );
        assert_eq!(
            next_in_farey(f(4, 5), Fraction::ONE, 5),
            Err(Error::NoSuccessor)
        );
        // Consecutive in F_2 but not in F_5.
        assert!(next_in_farey(f(1, 2), Fraction::ONE, 1).is_err());
        assert!(next_in_farey(f(0, 1), f(1, 6), 5).is_err());
    }

    #[test]
    fn seeds_from_stern_brocot() {
        assert_eq!(start_at(5, f(3, 10)), (f(1, 4), f(1, 3)));
        assert_eq!(start_at(5, Fraction::ZERO), (Fraction::ZERO, f(1, 5)));
        assert_eq!(start_at(5, f(1, 3)), (f(1, 4), f(1, 3)));
        assert_eq!(start_at(5, Fraction::ONE), (f(4, 5), Fraction::ONE));
        assert_eq!(start_at(1, f(1, 2)), (Fraction::ZERO, Fraction::ONE));
        assert_eq!(start_at(7, f(1, 2)), (f(3, 7), f(1, 2)));
    }

    #[test]
    fn seeding_handles_large_denominators() {
        // 1/3 is approximated from both sides; 333333/1000000 < 1/3.
        let alpha = f(333_333, 1_000_000);
        let (p, c) = start_at(1000, alpha);
        assert!(p < alpha && alpha <= c);
        assert_eq!(delta(p, c).unwrap(), 1);
        assert!(p.den() + c.den() > 1000);
    }

    #[test]
    fn enumerates_small_slices() {
        let all = FareySlice::full(5, Parity::All).unwrap();
        assert_eq!(
            render(all.iter()),
            ["0/1", "1/5", "1/4", "1/3", "2/5", "1/2", "3/5", "2/3", "3/4", "4/5", "1/1"]
        );
        let odd = all.with_parity(Parity::OddDen);
        assert_eq!(
            render(odd.iter()),
            ["0/1", "1/5", "1/3", "2/5", "3/5", "2/3", "4/5", "1/1"]
        );
        let upper = FareySlice::new(5, f(1, 3), Fraction::ONE, Parity::OddDen).unwrap();
        assert_eq!(
            render(upper.iter()),
            ["1/3", "2/5", "3/5", "2/3", "4/5", "1/1"]
        );
    }

    #[test]
    fn closed_endpoints_and_degenerate_slices() {
        let s = FareySlice::new(5, f(1, 4), f(1, 2), Parity::All).unwrap();
        assert_eq!(render(s.iter()), ["1/4", "1/3", "2/5", "1/2"]);
        let point = FareySlice::new(5, f(2, 5), f(2, 5), Parity::OddDen).unwrap();
        assert_eq!(render(point.iter()), ["2/5"]);
        let empty = FareySlice::new(5, f(3, 7), f(3, 7), Parity::All).unwrap();
        assert_eq!(empty.iter().count(), 0);
        let order_one = FareySlice::full(1, Parity::OddDen).unwrap();
        assert_eq!(render(order_one.iter()), ["0/1", "1/1"]);
    }

    #[test]
    fn slice_validation() {
        assert!(FareySlice::full(0, Parity::All).is_err());
        assert!(FareySlice::new(5, f(1, 2), f(1, 3), Parity::All).is_err());
        assert!(FareySlice::full(MAX_ORDER + 1, Parity::All).is_err());
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta(f(1, 5), f(1, 3)).unwrap(), 2);
        assert_eq!(delta(f(2, 5), f(3, 5)).unwrap(), 5);
        assert_eq!(delta(f(0, 1), f(1, 5)).unwrap(), 1);
        assert!(matches!(
            delta(f(1, 2), f(1, 3)),
            Err(Error::NotIncreasing { .. })
        ));
        let a = Fraction::new(1, u64::MAX).unwrap();
        let b = Fraction::new(u64::MAX - 1, u64::MAX).unwrap();
        assert_eq!(delta(a, b), Err(Error::Overflow("delta")));
    }

    #[test]
    fn cursor_runs_at_large_order() {
        let lo = f(1, 2);
        let hi = Fraction::new(500_000_001, 1_000_000_000).unwrap();
        let s = FareySlice::new(MAX_ORDER, lo, hi, Parity::All).unwrap();
        let got: Vec<_> = s.iter().take(3).collect();
        assert_eq!(got[0], lo);
        assert_eq!(got[1], Fraction::new(500_000_000, 999_999_999).unwrap());
        assert_eq!(delta(got[1], got[2]).unwrap(), 1);
    }
}
