//! Homology-class bookkeeping and the truncated Novikov-ring series that
//! carries all GW and BPS data.

mod class;
pub mod json;
mod series;

pub use class::{big_omega, degree, divisor_pairs, divisors, level, HClass, Lattice};
pub use json::{series_from_json, series_to_json, SeriesDoc, TermDoc};
pub use series::{NovikovSeries, TermKey};
