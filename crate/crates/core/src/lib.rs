//! Exact Gopakumar–Vafa toolkit.
//!
//! Computes the elementary-cluster series `Z^elem_g` and `GW^elem_g`, runs
//! the BPS transform and its inverse (plus the Fano and Aspinwall–Morrison
//! variants), and extracts the elementary virtual counts `e_{A,g}` from a
//! Gromov–Witten series by triangular elimination.
//!
//! All algebra is generic over [`Scalar`]; the crate-root aliases pin the
//! exact rational instance used by the CLI and the JSON formats.

pub mod cli;
pub mod elem_series;
pub mod error;
pub mod exact_arith;
pub mod gv_transform;
pub mod novikov;
pub mod partitions;
pub mod scalar;
pub mod structure_solver;

pub use error::{GvError, Result};
pub use exact_arith::Rational;
pub use scalar::Scalar;

pub type ExactQLaurent = exact_arith::QLaurent<Rational>;
pub type ExactTLaurent = exact_arith::TLaurent<Rational>;
pub type ExactSeries = novikov::NovikovSeries<Rational>;

pub type FloatTLaurent = exact_arith::TLaurent<f64>;
pub type ExactBpsTable = gv_transform::BpsTable<Rational>;
pub type ExactElemSeries = elem_series::ElemSeries<Rational>;
pub type ExactLocalBps = elem_series::LocalBps<Rational>;
