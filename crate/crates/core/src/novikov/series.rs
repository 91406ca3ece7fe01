use std::collections::BTreeMap;

use crate::error::{GvError, Result};
use crate::exact_arith::Rational;
use crate::novikov::class::{positive_area, HClass, Lattice};
use crate::scalar::Scalar;

/// Iteration key: ascending area, then lexicographic coordinates, then genus.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub area: Rational,
    pub class: HClass,
    pub genus: u32,
}

/// A finitely supported series `sum c_{A,g} t^(2g-2) q^A` truncated at
/// energy `omega(A) <= energy` and genus `g <= genus_max`. Both bounds are
/// inclusive.
#[derive(Debug, Clone, PartialEq)]
pub struct NovikovSeries<S> {
    lattice: Lattice,
    energy: Rational,
    genus_max: u32,
    terms: BTreeMap<TermKey, S>,
}

impl<S: Scalar> NovikovSeries<S> {
    pub fn new(lattice: Lattice, energy: Rational, genus_max: u32) -> Result<Self> {
        if !positive_area(&energy) {
            return Err(GvError::Domain(format!(
                "energy bound {energy} is not positive"
            )));
        }
        Ok(NovikovSeries {
            lattice,
            energy,
            genus_max,
            terms: BTreeMap::new(),
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn energy(&self) -> &Rational {
        &self.energy
    }

    pub fn genus_max(&self) -> u32 {
        self.genus_max
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Key for `(A, g)` if it lies inside the truncation window.
    pub fn key(&self, class: &HClass, genus: u32) -> Result<Option<TermKey>> {
        let area = self.lattice.area(class)?;
        if !positive_area(&area) {
            return Err(GvError::Domain(format!(
                "class {class} has non-positive area {area}"
            )));
        }
        if area > self.energy || genus > self.genus_max {
            return Ok(None);
        }
        Ok(Some(TermKey {
            area,
            class: class.clone(),
            genus,
        }))
    }

    /// Adds `c` to the coefficient of `(A, g)`; out-of-window terms are an error.
    pub fn add_term(&mut self, class: &HClass, genus: u32, c: S) -> Result<()> {
        let key = self.key(class, genus)?.ok_or_else(|| {
            GvError::TruncationUnsound(format!(
                "term ({class}, g={genus}) lies outside energy {} / genus {}",
                self.energy, self.genus_max
            ))
        })?;
        self.add_keyed(key, c);
        Ok(())
    }

    /// Like [`add_term`](Self::add_term) but silently drops out-of-window terms.
    pub fn add_term_truncating(&mut self, class: &HClass, genus: u32, c: S) -> Result<()> {
        if let Some(key) = self.key(class, genus)? {
            self.add_keyed(key, c);
        }
        Ok(())
    }

    pub(crate) fn add_keyed(&mut self, key: TermKey, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn get(&self, class: &HClass, genus: u32) -> S {
        match self.lattice.area(class) {
            Ok(area) => self
                .terms
                .get(&TermKey {
                    area,
                    class: class.clone(),
                    genus,
                })
                .cloned()
                .unwrap_or_else(S::zero),
            Err(_) => S::zero(),
        }
    }

    pub fn get_keyed(&self, key: &TermKey) -> S {
        self.terms.get(key).cloned().unwrap_or_else(S::zero)
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &S)> {
        self.terms.iter()
    }

    /// Distinct classes carrying a term, ascending in area then coordinates.
    pub fn classes(&self) -> Vec<(Rational, HClass)> {
        let mut out: Vec<(Rational, HClass)> = Vec::new();
        for k in self.terms.keys() {
            if out.last().is_none_or(|(_, c)| *c != k.class) {
                out.push((k.area.clone(), k.class.clone()));
            }
        }
        out.dedup();
        out
    }

    /// Same context and bounds, no terms.
    pub fn empty_like(&self) -> Self {
        NovikovSeries {
            lattice: self.lattice.clone(),
            energy: self.energy.clone(),
            genus_max: self.genus_max,
            terms: BTreeMap::new(),
        }
    }

    pub fn check_compatible<T>(&self, other: &NovikovSeries<T>) -> Result<()> {
        if self.lattice != other.lattice {
            return Err(GvError::IncompatibleContext(
                "series live on different lattices or area weights".into(),
            ));
        }
        Ok(())
    }

    /// Coefficient-wise sum, valid inside the intersection of both windows.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let energy = self.energy.clone().min(other.energy.clone());
        let genus_max = self.genus_max.min(other.genus_max);
        let mut out = self.truncate(energy, genus_max)?;
        let other = other.truncate(out.energy.clone(), out.genus_max)?;
        for (k, c) in other.terms {
            out.add_keyed(k, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = self.empty_like();
        if !s.is_zero() {
            for (k, c) in &self.terms {
                out.add_keyed(k.clone(), c.clone() * s.clone());
            }
        }
        out
    }

    /// Drops terms with `omega(A) > energy` or `g > genus_max`. The new window
    /// never exceeds the old one.
    pub fn truncate(&self, energy: Rational, genus_max: u32) -> Result<Self> {
        if !positive_area(&energy) {
            return Err(GvError::Domain(format!(
                "energy bound {energy} is not positive"
            )));
        }
        let energy = energy.min(self.energy.clone());
        let genus_max = genus_max.min(self.genus_max);
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| k.area <= energy && k.genus <= genus_max)
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        Ok(NovikovSeries {
            lattice: self.lattice.clone(),
            energy,
            genus_max,
            terms,
        })
    }

    /// All multiples `kB` (`k >= 1`) of the given classes with area inside
    /// the window, deduplicated, in canonical order.
    pub fn multiples_within(&self, seeds: &[(Rational, HClass)]) -> Vec<(Rational, HClass)> {
        let mut out: Vec<(Rational, HClass)> = Vec::new();
        for (area, b) in seeds {
            let mut k = 1i64;
            loop {
                let a = area * Rational::from_integer(k.into());
                if a > self.energy {
                    break;
                }
                out.push((a, b.scaled(k)));
                k += 1;
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> NovikovSeries<T> {
        let mut out = NovikovSeries {
            lattice: self.lattice.clone(),
            energy: self.energy.clone(),
            genus_max: self.genus_max,
            terms: BTreeMap::new(),
        };
        for (k, c) in &self.terms {
            out.add_keyed(k.clone(), f(c));
        }
        out
    }
}
