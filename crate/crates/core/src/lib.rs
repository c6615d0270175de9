//! Farey fractions with odd denominators: enumeration, gap statistics and the
//! lattice-point and modular counts behind their limiting distribution.
//!
//! The neighbour gap of consecutive fractions `a/q < a'/q'` is
//! `Δ = q a' − a q'`. Inside the full Farey sequence every gap is 1; once the
//! even denominators are dropped, gaps grow and the proportion of gap `k`
//! tends to `4 / (k(k+1)(k+2))`.
//!
//! ```
//! use farey_odd::{gap_histogram, FareySlice, Parity};
//!
//! let slice = FareySlice::full(5, Parity::OddDen).unwrap();
//! let h = gap_histogram(&slice).unwrap();
//! assert_eq!((h.count(1), h.count(2), h.count(5)), (4, 2, 1));
//! ```

pub mod cli;
pub mod error;
pub mod farey;
pub mod fraction;
pub mod gaps;
pub mod lattice;
pub mod modular;
pub mod sieve;

pub use error::{Error, Result};
pub use farey::{delta, enumerate, next_in_farey, start_at, FareyCursor, FareySlice, Parity};
pub use fraction::Fraction;
pub use gaps::{
    bridge_check, error_scan, frequency_table, gap_histogram, main_term, rho_tail, rho_theoretical,
    slice_cardinality, GapHistogram,
};
pub use lattice::{count_lattice, count_lattice_capped, LatticeCountReport, LatticeRegion};
pub use modular::{count_products, deviation_scan, ResidueBox, ResidueRun};
pub use sieve::{RatioSum, SieveTables, TotientSum};
