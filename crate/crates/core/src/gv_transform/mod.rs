//! The BPS/GV transform and its variants.

mod am;
mod bps;
mod dimension;
mod fano;
mod table;

pub use am::{am_forward, am_invert};
pub use bps::{bps_forward, bps_invert, SinePowerTable};
pub use dimension::expected_dimension;
pub use fano::{
    chern_number, fano_forward, fano_from_json, fano_invert, fano_to_json, split_by_chern, FanoDoc,
    FanoSeries,
};
pub use table::{bps_from_json, bps_to_json, BpsDoc, BpsTable, BpsTermDoc};
