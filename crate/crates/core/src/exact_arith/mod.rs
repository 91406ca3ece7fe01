//! Exact coefficient arithmetic: rationals, Laurent polynomials in `Q`,
//! truncated even Laurent series in `t`, and the bridge between them.

mod qlaurent;
pub mod rational;
mod tlaurent;
pub mod trig;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use qlaurent::QLaurent;
pub use rational::{format_rational, parse_rational, Rational};
pub use tlaurent::{TLaurent, EXACT};
pub use trig::{q_power_bracket, q_to_t, sin_half_power, two_sin_power};

use crate::error::Result;

/// Wire form of a `QLaurent`: `{exponent: "p/q"}`.
pub type QLaurentJson = BTreeMap<i64, String>;

pub fn qlaurent_to_json(p: &QLaurent<Rational>) -> QLaurentJson {
    p.terms().map(|(e, c)| (e, format_rational(c))).collect()
}

pub fn qlaurent_from_json(j: &QLaurentJson) -> Result<QLaurent<Rational>> {
    let mut terms = Vec::with_capacity(j.len());
    for (e, s) in j {
        terms.push((*e, parse_rational(s)?));
    }
    Ok(QLaurent::from_terms(terms))
}

/// Wire form of a `TLaurent`. `trunc` is `null` for an exact series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TLaurentJson {
    pub min_exp: i64,
    pub trunc: Option<i64>,
    pub coeffs: Vec<String>,
}

pub fn tlaurent_to_json(s: &TLaurent<Rational>) -> TLaurentJson {
    TLaurentJson {
        min_exp: s.min_exp(),
        trunc: (!s.is_exact()).then(|| s.trunc()),
        coeffs: s.raw_coeffs().iter().map(format_rational).collect(),
    }
}

pub fn tlaurent_from_json(j: &TLaurentJson) -> Result<TLaurent<Rational>> {
    let coeffs = j
        .coeffs
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>>>()?;
    TLaurent::new(j.min_exp, coeffs, j.trunc.unwrap_or(EXACT))
}
