//! Fano classes (`c1(A) > 0`): no multiple-cover mixing, each class is
//! expanded in the basis `(2 sin(t/2))^(c1 + 2g - 2) t^(-c1)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{GvError, Result};
use crate::exact_arith::format_rational;
use crate::exact_arith::trig::sinc_power;
use crate::exact_arith::Rational;
use crate::gv_transform::bps::solve_unit_lower;
use crate::gv_transform::dimension::expected_dimension;
use crate::gv_transform::table::{collect_rows, BpsTable};
use crate::novikov::json::{lattice_from_doc, lattice_to_doc, series_from_triples, TermDoc};
use crate::novikov::{HClass, Lattice, NovikovSeries};
use crate::scalar::Scalar;

/// A GW series supported on classes with positive Chern number, for one
/// fixed list of insertions.
#[derive(Debug, Clone, PartialEq)]
pub struct FanoSeries<S> {
    series: NovikovSeries<S>,
    chern: Vec<i64>,
    insertions: Vec<u32>,
}

pub fn chern_number(chern: &[i64], a: &HClass) -> i64 {
    chern.iter().zip(a.coords()).map(|(c, x)| c * x).sum()
}

impl<S: Scalar> FanoSeries<S> {
    pub fn new(series: NovikovSeries<S>, chern: Vec<i64>, insertions: Vec<u32>) -> Result<Self> {
        if chern.len() != series.lattice().rank() {
            return Err(GvError::IncompatibleContext(format!(
                "Chern form has rank {} but the lattice has rank {}",
                chern.len(),
                series.lattice().rank()
            )));
        }
        if let Some(d) = insertions.iter().find(|&&d| d < 2) {
            return Err(GvError::Domain(format!("insertion of dimension {d} < 2")));
        }
        for (k, _) in series.terms() {
            let c1 = chern_number(&chern, &k.class);
            if c1 <= 0 {
                return Err(GvError::Domain(format!(
                    "class {} has c1 = {c1}; the Fano transform needs c1 > 0",
                    k.class
                )));
            }
        }
        Ok(FanoSeries {
            series,
            chern,
            insertions,
        })
    }

    pub fn series(&self) -> &NovikovSeries<S> {
        &self.series
    }

    pub fn chern(&self) -> &[i64] {
        &self.chern
    }

    pub fn insertions(&self) -> &[u32] {
        &self.insertions
    }

    pub fn c1(&self, a: &HClass) -> i64 {
        chern_number(&self.chern, a)
    }

    /// Classes with a nonzero coefficient whose constrained moduli space has
    /// nonzero expected dimension on a 6-manifold (those pairings vanish).
    pub fn dimension_violations(&self) -> Vec<(HClass, i64)> {
        self.series
            .classes()
            .into_iter()
            .filter_map(|(_, a)| {
                let iota = expected_dimension(self.c1(&a), 6, 0, &self.insertions);
                (iota != 0).then_some((a, iota))
            })
            .collect()
    }
}

/// Coefficients of `(2 sin(t/2))^(c1 + 2h - 2) t^(-c1)` at `t^(2g-2)`.
struct FanoBasis<S> {
    g_max: u32,
    cache: HashMap<(i64, u32), Vec<S>>,
}

impl<S: Scalar> FanoBasis<S> {
    fn new(g_max: u32) -> Self {
        FanoBasis {
            g_max,
            cache: HashMap::new(),
        }
    }

    /// `t^(2h-2) u^(c1+2h-2)` with `u = 2 sin(t/2)/t`, so the coefficient at
    /// `t^(2g-2)` is the `(g-h)`-th coefficient of `u^(c1+2h-2)`.
    fn column(&mut self, c1: i64, h: u32) -> &[S] {
        let g_max = self.g_max;
        self.cache
            .entry((c1, h))
            .or_insert_with(|| sinc_power(1, c1 + 2 * h as i64 - 2, (g_max - h) as usize + 1))
    }

    fn coeff(&mut self, c1: i64, h: u32, g: u32) -> S {
        if g < h {
            return S::zero();
        }
        self.column(c1, h)[(g - h) as usize].clone()
    }
}

pub fn fano_invert<S: Scalar>(f: &FanoSeries<S>, trunc: i64) -> Result<BpsTable<S>> {
    let g_max = f.series.genus_max();
    let need = 2 * g_max as i64 + 2;
    if trunc < need {
        return Err(GvError::InvalidTruncation(format!(
            "t-order {trunc} is below 2G + 2 = {need}"
        )));
    }
    let mut basis = FanoBasis::<S>::new(g_max);
    let mut out = BpsTable::new(f.series.lattice().clone(), f.series.energy().clone(), g_max)?;
    for ((_, a), row) in collect_rows(&f.series) {
        let c1 = f.c1(&a);
        // Fill the cache before borrowing it inside the closure.
        let cols: Vec<Vec<S>> = (0..=g_max).map(|h| basis.column(c1, h).to_vec()).collect();
        let n = solve_unit_lower(&row, |h, g| {
            if g < h {
                S::zero()
            } else {
                cols[h as usize][(g - h) as usize].clone()
            }
        });
        for (h, c) in n.into_iter().enumerate() {
            out.add_entry(&a, h as u32, c)?;
        }
    }
    Ok(out)
}

/// `GW_{A,g} = sum_{h <= g} n_{A,h} [t^(2g-2)] (2 sin(t/2))^(c1+2h-2) t^(-c1)`.
pub fn fano_forward<S: Scalar>(
    n: &BpsTable<S>,
    chern: &[i64],
    insertions: &[u32],
) -> Result<FanoSeries<S>> {
    let g_max = n.h_max();
    let mut basis = FanoBasis::<S>::new(g_max);
    let mut series = NovikovSeries::new(n.lattice().clone(), n.energy().clone(), g_max)?;
    for (key, value) in n.entries() {
        let c1 = chern_number(chern, &key.class);
        if c1 <= 0 {
            return Err(GvError::Domain(format!(
                "class {} has c1 = {c1}",
                key.class
            )));
        }
        for g in key.genus..=g_max {
            let c = basis.coeff(c1, key.genus, g);
            series.add_term(&key.class, g, value.clone() * c)?;
        }
    }
    FanoSeries::new(series, chern.to_vec(), insertions.to_vec())
}

/// Splits a series by the sign of `c1(A)` into its Calabi–Yau part and its
/// Fano part. Terms with `c1 < 0` are rejected.
pub fn split_by_chern<S: Scalar>(
    s: &NovikovSeries<S>,
    chern: &[i64],
    insertions: &[u32],
) -> Result<(NovikovSeries<S>, FanoSeries<S>)> {
    if chern.len() != s.lattice().rank() {
        return Err(GvError::IncompatibleContext(
            "Chern form rank mismatch".into(),
        ));
    }
    let mut cy = s.empty_like();
    let mut fano = s.empty_like();
    for (k, c) in s.terms() {
        match chern_number(chern, &k.class) {
            0 => cy.add_term(&k.class, k.genus, c.clone())?,
            x if x > 0 => fano.add_term(&k.class, k.genus, c.clone())?,
            x => {
                return Err(GvError::Domain(format!(
                    "class {} has c1 = {x} < 0; such invariants vanish",
                    k.class
                )))
            }
        }
    }
    Ok((
        cy,
        FanoSeries::new(fano, chern.to_vec(), insertions.to_vec())?,
    ))
}

/// Fano input document: the series document plus the Chern form and the
/// insertion dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanoDoc {
    pub rank: usize,
    pub area_weights: Vec<String>,
    pub energy: String,
    pub genus_max: u32,
    pub chern: Vec<i64>,
    #[serde(default)]
    pub insertions: Vec<u32>,
    pub terms: Vec<TermDoc>,
}

impl FanoDoc {
    pub fn from_fano(f: &FanoSeries<Rational>) -> Self {
        let s = f.series();
        FanoDoc {
            rank: s.lattice().rank(),
            area_weights: lattice_to_doc(s.lattice()),
            energy: format_rational(s.energy()),
            genus_max: s.genus_max(),
            chern: f.chern.clone(),
            insertions: f.insertions.clone(),
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

    pub fn to_fano(&self) -> Result<FanoSeries<Rational>> {
        let lattice: Lattice = lattice_from_doc(self.rank, &self.area_weights)?;
        let s = series_from_triples(
            lattice,
            &self.energy,
            self.genus_max,
            self.terms
                .iter()
                .map(|t| (t.class.as_slice(), t.genus, t.coeff.as_str())),
        )?;
        FanoSeries::new(s, self.chern.clone(), self.insertions.clone())
    }
}

pub fn fano_from_json(text: &str) -> Result<FanoSeries<Rational>> {
    let doc: FanoDoc = serde_json::from_str(text).map_err(|e| GvError::Parse(e.to_string()))?;
    doc.to_fano()
}

pub fn fano_to_json(f: &FanoSeries<Rational>) -> String {
    serde_json::to_string_pretty(&FanoDoc::from_fano(f)).expect("fano series serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn single(c1: i64, terms: &[(u32, Rational)]) -> FanoSeries<Rational> {
        let mut s = NovikovSeries::new(Lattice::rank1(), r(1, 1), 3).unwrap();
        for (g, c) in terms {
            s.add_term(&HClass::rank1(1).unwrap(), *g, c.clone())
                .unwrap();
        }
        FanoSeries::new(s, vec![c1], vec![]).unwrap()
    }

    #[test]
    fn leading_order_identity() {
        let n = fano_invert(&single(1, &[(0, r(7, 3))]), 8).unwrap();
        let a = HClass::rank1(1).unwrap();
        assert_eq!(n.get(&a, 0), r(7, 3));
        // (2 sin(t/2))^-1 t^-1 = t^-2 (1 + t^2/24 + ...), so genus 1 must cancel 7/72.
        assert_eq!(n.get(&a, 1), r(-7, 72));
    }

    #[test]
    fn c1_three_genus_one_correction() {
        // (2 sin(t/2)) t^-3 = t^-2 (1 - t^2/24 + ...): the t^0 coefficient is -1/24,
        // read off from the Taylor series of sin by hand.
        let a = HClass::rank1(1).unwrap();
        let gw0 = r(2, 1);
        let gw1 = r(5, 1);
        let n = fano_invert(&single(3, &[(0, gw0.clone()), (1, gw1.clone())]), 8).unwrap();
        assert_eq!(n.get(&a, 0), gw0.clone());
        assert_eq!(n.get(&a, 1), gw1 + gw0 * r(1, 24));
    }

    #[test]
    fn rejects_non_fano_classes() {
        let mut s = NovikovSeries::new(Lattice::rank1(), r(1, 1), 0).unwrap();
        s.add_term(&HClass::rank1(1).unwrap(), 0, r(1, 1)).unwrap();
        assert!(matches!(
            FanoSeries::new(s.clone(), vec![0], vec![]),
            Err(GvError::Domain(_))
        ));
        assert!(matches!(
            FanoSeries::new(s, vec![-2], vec![]),
            Err(GvError::Domain(_))
        ));
    }

    #[test]
    fn dimension_violations_flag_unbalanced_insertions() {
        let f = single(1, &[(0, r(1, 1))]);
        assert_eq!(f.dimension_violations().len(), 1); // iota = 2
        let mut s = NovikovSeries::new(Lattice::rank1(), r(1, 1), 0).unwrap();
        s.add_term(&HClass::rank1(1).unwrap(), 0, r(1, 1)).unwrap();
        let f = FanoSeries::new(s, vec![1], vec![4]).unwrap();
        assert!(f.dimension_violations().is_empty());
    }

    #[test]
    fn split_separates_cy_and_fano() {
        let l = Lattice::new(vec![r(1, 1), r(1, 1)]).unwrap();
        let mut s = NovikovSeries::new(l, r(4, 1), 1).unwrap();
        s.add_term(&HClass::new(vec![1, 0]).unwrap(), 0, r(1, 1))
            .unwrap();
        s.add_term(&HClass::new(vec![0, 1]).unwrap(), 1, r(2, 1))
            .unwrap();
        let (cy, fano) = split_by_chern(&s, &[0, 2], &[]).unwrap();
        assert_eq!(cy.len(), 1);
        assert_eq!(fano.series().len(), 1);
        assert!(split_by_chern(&s, &[0, -1], &[]).is_err());
    }
}
