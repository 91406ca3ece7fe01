//! The JSON series document.
//!
//! ```json
//! {"rank": 1, "area_weights": ["1"], "energy": "4", "genus_max": 2,
//!  "terms": [{"class": [1], "genus": 0, "coeff": "1"}]}
//! ```
//!
//! Terms are written in canonical order, so emitting a parsed canonical
//! document reproduces it byte for byte.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{GvError, Result};
use crate::exact_arith::{format_rational, parse_rational, Rational};
use crate::novikov::{HClass, Lattice, NovikovSeries};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDoc {
    pub rank: usize,
    pub area_weights: Vec<String>,
    pub energy: String,
    pub genus_max: u32,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub class: Vec<i64>,
    pub genus: u32,
    pub coeff: String,
}

pub fn lattice_from_doc(rank: usize, weights: &[String]) -> Result<Lattice> {
    if weights.len() != rank {
        return Err(GvError::Parse(format!(
            "rank is {rank} but {} area weights were given",
            weights.len()
        )));
    }
    let w = weights
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>>>()?;
    Lattice::new(w)
}

pub fn lattice_to_doc(l: &Lattice) -> Vec<String> {
    l.weights().iter().map(format_rational).collect()
}

/// Builds a series from `(class, genus, coeff)` triples, rejecting duplicate
/// keys and anything outside the declared window.
pub fn series_from_triples<'a>(
    lattice: Lattice,
    energy: &str,
    genus_max: u32,
    triples: impl IntoIterator<Item = (&'a [i64], u32, &'a str)>,
) -> Result<NovikovSeries<Rational>> {
    let mut s = NovikovSeries::new(lattice, parse_rational(energy)?, genus_max)?;
    let mut seen = BTreeSet::new();
    for (class, genus, coeff) in triples {
        let class = HClass::new(class.to_vec())?;
        if !seen.insert((class.clone(), genus)) {
            return Err(GvError::Parse(format!("duplicate term ({class}, {genus})")));
        }
        s.add_term(&class, genus, parse_rational(coeff)?)?;
    }
    Ok(s)
}

impl SeriesDoc {
    pub fn from_series(s: &NovikovSeries<Rational>) -> Self {
        SeriesDoc {
            rank: s.lattice().rank(),
            area_weights: lattice_to_doc(s.lattice()),
            energy: format_rational(s.energy()),
            genus_max: s.genus_max(),
            terms: s
                .terms()
                .map(|(k, c)| TermDoc {
                    class: k.class.coords().to_vec(),
                    genus: k.genus,
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn to_series(&self) -> Result<NovikovSeries<Rational>> {
        let lattice = lattice_from_doc(self.rank, &self.area_weights)?;
        series_from_triples(
            lattice,
            &self.energy,
            self.genus_max,
            self.terms
                .iter()
                .map(|t| (t.class.as_slice(), t.genus, t.coeff.as_str())),
        )
    }
}

pub fn series_to_json(s: &NovikovSeries<Rational>) -> String {
    serde_json::to_string_pretty(&SeriesDoc::from_series(s)).expect("series serializes")
}

pub fn series_from_json(text: &str) -> Result<NovikovSeries<Rational>> {
    let doc: SeriesDoc = serde_json::from_str(text).map_err(|e| GvError::Parse(e.to_string()))?;
    doc.to_series()
}
