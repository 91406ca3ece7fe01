use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{GvError, Result};
use crate::exact_arith::{format_rational, Rational};
use crate::novikov::json::{lattice_from_doc, lattice_to_doc, series_from_triples};
use crate::novikov::{HClass, Lattice, NovikovSeries, TermKey};
use crate::scalar::Scalar;

/// BPS numbers `n_{A,h}` inside an energy/genus window. Stored as a
/// [`NovikovSeries`] whose genus slot holds `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct BpsTable<S> {
    inner: NovikovSeries<S>,
}

impl<S: Scalar> BpsTable<S> {
    pub fn new(lattice: Lattice, energy: Rational, h_max: u32) -> Result<Self> {
        Ok(BpsTable {
            inner: NovikovSeries::new(lattice, energy, h_max)?,
        })
    }

    pub fn from_series(inner: NovikovSeries<S>) -> Self {
        BpsTable { inner }
    }

    pub fn as_series(&self) -> &NovikovSeries<S> {
        &self.inner
    }

    pub fn into_series(self) -> NovikovSeries<S> {
        self.inner
    }

    pub fn lattice(&self) -> &Lattice {
        self.inner.lattice()
    }

    pub fn energy(&self) -> &Rational {
        self.inner.energy()
    }

    pub fn h_max(&self) -> u32 {
        self.inner.genus_max()
    }

    pub fn add_entry(&mut self, class: &HClass, h: u32, n: S) -> Result<()> {
        self.inner.add_term(class, h, n)
    }

    pub fn get(&self, class: &HClass, h: u32) -> S {
        self.inner.get(class, h)
    }

    /// Entries as `(key, n)`; `key.genus` is `h`.
    pub fn entries(&self) -> impl Iterator<Item = (&TermKey, &S)> {
        self.inner.terms()
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    /// Entries that are not integers.
    pub fn non_integral(&self) -> Vec<(&TermKey, &S)> {
        self.entries().filter(|(_, c)| !c.is_integral()).collect()
    }
}

/// JSON form: the series document with `"h"` in place of `"genus"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BpsDoc {
    pub rank: usize,
    pub area_weights: Vec<String>,
    pub energy: String,
    pub genus_max: u32,
    pub terms: Vec<BpsTermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BpsTermDoc {
    pub class: Vec<i64>,
    pub h: u32,
    pub coeff: String,
}

impl BpsDoc {
    pub fn from_table(t: &BpsTable<Rational>) -> Self {
        let s = t.as_series();
        BpsDoc {
            rank: s.lattice().rank(),
            area_weights: lattice_to_doc(s.lattice()),
            energy: format_rational(s.energy()),
            genus_max: s.genus_max(),
            terms: s
                .terms()
                .map(|(k, c)| BpsTermDoc {
                    class: k.class.coords().to_vec(),
                    h: k.genus,
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn to_table(&self) -> Result<BpsTable<Rational>> {
        let lattice = lattice_from_doc(self.rank, &self.area_weights)?;
        let s = series_from_triples(
            lattice,
            &self.energy,
            self.genus_max,
            self.terms
                .iter()
                .map(|t| (t.class.as_slice(), t.h, t.coeff.as_str())),
        )?;
        Ok(BpsTable::from_series(s))
    }
}

pub fn bps_to_json(t: &BpsTable<Rational>) -> String {
    serde_json::to_string_pretty(&BpsDoc::from_table(t)).expect("table serializes")
}

pub fn bps_from_json(text: &str) -> Result<BpsTable<Rational>> {
    let doc: BpsDoc = serde_json::from_str(text).map_err(|e| GvError::Parse(e.to_string()))?;
    doc.to_table()
}

/// Per-class coefficient rows indexed by genus, used while eliminating.
pub(crate) type GenusRow<S> = Vec<S>;

pub(crate) fn collect_rows<S: Scalar>(
    s: &NovikovSeries<S>,
) -> BTreeMap<(Rational, HClass), GenusRow<S>> {
    let g_max = s.genus_max() as usize;
    let mut rows: BTreeMap<(Rational, HClass), GenusRow<S>> = BTreeMap::new();
    for (k, c) in s.terms() {
        rows.entry((k.area.clone(), k.class.clone()))
            .or_insert_with(|| vec![S::zero(); g_max + 1])[k.genus as usize] = c.clone();
    }
    rows
}
