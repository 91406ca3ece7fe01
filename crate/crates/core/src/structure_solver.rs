//! Elementary virtual counts `e_{A,g}`.
//!
//! A GW series is expanded in the basis `GW^elem_g(q^A, t)`; the basis is
//! unit lower triangular for the order (area, genus), so the counts are
//! recovered by elimination. The BPS table then follows from the local
//! numbers `n_{d,h}(g)` and is cross-checked against a direct inversion.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::elem_series::{elem_on_rank1, gw_elem_genus0_closed, gw_elem_in_t, ElemSeries};
use crate::error::{GvError, Result};
use crate::exact_arith::{format_rational, Rational};
use crate::gv_transform::{bps_invert, BpsTable};
use crate::novikov::{degree, divisor_pairs, HClass, NovikovSeries};
use crate::scalar::Scalar;

/// `e_{A,g}` on a truncation window.
#[derive(Debug, Clone, PartialEq)]
pub struct ElemCounts {
    inner: NovikovSeries<Rational>,
}

impl ElemCounts {
    pub fn from_series(inner: NovikovSeries<Rational>) -> Self {
        ElemCounts { inner }
    }

    pub fn as_series(&self) -> &NovikovSeries<Rational> {
        &self.inner
    }

    pub fn get(&self, a: &HClass, g: u32) -> Rational {
        self.inner.get(a, g)
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    /// `(class, genus, value, integral)` in elimination order.
    pub fn verdicts(&self) -> impl Iterator<Item = (&HClass, u32, &Rational, bool)> {
        self.inner
            .terms()
            .map(|(k, v)| (&k.class, k.genus, v, v.is_integer()))
    }

    pub fn is_integral(&self) -> bool {
        self.verdicts().all(|v| v.3)
    }
}

/// `GW^elem_g` in `t` for the solver. Genus 0 uses the closed form, whose
/// agreement with the partition-sum logarithm is tested separately; the
/// partition sum is far more expensive at high degree.
fn elem_series(genus: u32, q_degree: u32, order: i64) -> Result<ElemSeries<Rational>> {
    if genus == 0 {
        gw_elem_genus0_closed(q_degree, order)
    } else {
        gw_elem_in_t(genus, q_degree, order)
    }
}

#[derive(Default)]
struct ElemCache {
    filled: HashMap<u32, (u32, u32)>,
    values: HashMap<(u32, u32, u32), Rational>,
}

fn elem_cache() -> &'static Mutex<ElemCache> {
    static CACHE: OnceLock<Mutex<ElemCache>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn fill(cache: &mut ElemCache, g_elem: u32, d: u32, g: u32) -> Result<()> {
    let (old_d, old_g) = cache.filled.get(&g_elem).copied().unwrap_or((0, 0));
    if d <= old_d && g <= old_g && old_d > 0 {
        return Ok(());
    }
    let (d, g) = (d.max(old_d), g.max(old_g));
    let order = 2 * g.max(g_elem) as i64 + 2;
    let gw = elem_series(g_elem, d, order)?;
    for dd in 1..=d {
        for gg in 0..=g {
            let c = gw.t_coeff_at(dd, 2 * gg as i64 - 2)?;
            if !c.is_zero() {
                cache.values.insert((g_elem, dd, gg), c);
            }
        }
    }
    cache.filled.insert(g_elem, (d, g));
    Ok(())
}

/// Coefficient of `q^d t^(2g-2)` in `GW^elem_{g_elem}`, memoized across calls.
pub fn elem_coefficient(g_elem: u32, d: u32, g: u32) -> Result<Rational> {
    if d == 0 || (g_elem >= 1 && g < g_elem) {
        return Ok(Rational::from_int(0));
    }
    let mut cache = elem_cache().lock().expect("coefficient cache poisoned");
    fill(&mut cache, g_elem, d, g)?;
    Ok(cache
        .values
        .get(&(g_elem, d, g))
        .cloned()
        .unwrap_or_else(|| Rational::from_int(0)))
}

fn warm(g_elem: u32, d: u32, g: u32) -> Result<()> {
    if g_elem >= 1 && g < g_elem {
        return Ok(());
    }
    let mut cache = elem_cache().lock().expect("coefficient cache poisoned");
    fill(&mut cache, g_elem, d.max(1), g)
}

fn check_order(genus_max: u32, trunc: i64) -> Result<()> {
    let need = 2 * genus_max as i64 + 2;
    if trunc < need {
        return Err(GvError::InvalidTruncation(format!(
            "t-order {trunc} is below 2G + 2 = {need}"
        )));
    }
    Ok(())
}

fn max_degree(classes: &[(Rational, HClass)]) -> u32 {
    classes
        .iter()
        .map(|(_, a)| degree(a) as u32)
        .max()
        .unwrap_or(1)
        .max(1)
}

/// Expands `gw` in the elementary basis.
pub fn solve_elem_counts(gw: &NovikovSeries<Rational>, trunc: i64) -> Result<ElemCounts> {
    let g_max = gw.genus_max();
    check_order(g_max, trunc)?;
    let closure = gw.multiples_within(&gw.classes());
    let d_max = max_degree(&closure);
    for ge in 0..=g_max {
        warm(ge, d_max, g_max)?;
    }

    let mut e = gw.empty_like();
    let mut solved: BTreeMap<HClass, Vec<Rational>> = BTreeMap::new();
    for (_, a) in &closure {
        let mut row: Vec<Rational> = (0..=g_max).map(|g| gw.get(a, g)).collect();
        for (d, b) in divisor_pairs(a).into_iter().skip(1) {
            let Some(eb) = solved.get(&b) else { continue };
            for (ge, v) in eb.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                for (g, slot) in row.iter_mut().enumerate() {
                    let c = elem_coefficient(ge as u32, d as u32, g as u32)?;
                    if !c.is_zero() {
                        *slot -= v * c;
                    }
                }
            }
        }
        for g in 0..=g_max as usize {
            let v = row[g].clone();
            if v.is_zero() {
                continue;
            }
            for (gg, slot) in row.iter_mut().enumerate().skip(g + 1) {
                let c = elem_coefficient(g as u32, 1, gg as u32)?;
                if !c.is_zero() {
                    *slot -= &v * c;
                }
            }
        }
        if row.iter().any(|v| !v.is_zero()) {
            for (g, v) in row.iter().enumerate() {
                e.add_term(a, g as u32, v.clone())?;
            }
            solved.insert(a.clone(), row);
        }
    }
    Ok(ElemCounts { inner: e })
}

/// `sum e_{A,g} GW^elem_g(q^A, t)` truncated at `(energy, genus_max)`.
pub fn synthesize_gw(
    e: &ElemCounts,
    energy: Rational,
    genus_max: u32,
    trunc: i64,
) -> Result<NovikovSeries<Rational>> {
    check_order(genus_max, trunc)?;
    let mut out = NovikovSeries::new(e.inner.lattice().clone(), energy, genus_max)?;
    let d_max = max_degree(&out.multiples_within(&e.inner.classes()));
    for (key, v) in e.inner.terms() {
        warm(key.genus, d_max, genus_max)?;
        for k in 1i64.. {
            let area = &key.area * Rational::from_integer(k.into());
            if &area > out.energy() {
                break;
            }
            let class = key.class.scaled(k);
            for g in 0..=genus_max {
                let c = elem_coefficient(key.genus, k as u32, g)?;
                if !c.is_zero() {
                    out.add_term(&class, g, v * c)?;
                }
            }
        }
    }
    Ok(out)
}

type LocalTable = BpsTable<Rational>;

type LocalCache = Mutex<HashMap<(u32, u32, u32), Arc<LocalTable>>>;

fn local_cache() -> &'static LocalCache {
    static CACHE: OnceLock<LocalCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `n_{d,h}(g)` for `d <= d_local`, `h <= h_max`, on the rank-1 lattice.
fn local_table(g: u32, d_local: u32, h_max: u32) -> Result<Arc<LocalTable>> {
    let key = (g, d_local, h_max);
    if let Some(t) = local_cache()
        .lock()
        .expect("local cache poisoned")
        .get(&key)
    {
        return Ok(t.clone());
    }
    let order = 2 * h_max.max(g) as i64 + 2;
    let series = elem_on_rank1(&elem_series(g, d_local, order)?, h_max)?;
    let t = Arc::new(bps_invert(&series, order)?);
    local_cache()
        .lock()
        .expect("local cache poisoned")
        .insert(key, t.clone());
    Ok(t)
}

/// Largest `d` with `dB` inside the window for some class `B` of `e`: the
/// local-table degree [`assemble_bps`] needs.
pub fn required_local_degree(e: &ElemCounts) -> u32 {
    max_degree(&e.inner.multiples_within(&e.inner.classes()))
}

/// `n_{A,h} = sum_{dB = A} sum_g e_{B,g} n_{d,h}(g)` using local tables up to
/// degree `d_local`.
pub fn assemble_bps(e: &ElemCounts, d_local: u32, trunc: i64) -> Result<BpsTable<Rational>> {
    let g_max = e.inner.genus_max();
    check_order(g_max, trunc)?;
    let mut out = BpsTable::new(e.inner.lattice().clone(), e.inner.energy().clone(), g_max)?;
    let mut tables: BTreeMap<u32, Arc<LocalTable>> = BTreeMap::new();
    for (key, _) in e.inner.terms() {
        if !tables.contains_key(&key.genus) && d_local >= 1 {
            tables.insert(key.genus, local_table(key.genus, d_local, g_max)?);
        }
    }
    for (_, a) in e.inner.multiples_within(&e.inner.classes()) {
        let mut row = vec![Rational::from_int(0); g_max as usize + 1];
        for (d, b) in divisor_pairs(&a) {
            for g in 0..=g_max {
                let v = e.get(&b, g);
                if v.is_zero() {
                    continue;
                }
                if d as u32 > d_local {
                    return Err(GvError::IncompleteLocalData(format!(
                        "n_{{{d},h}}({g}) is needed for {a} = {d}·{b} but local tables stop at degree {d_local}"
                    )));
                }
                let table = &tables[&g];
                for (h, slot) in row.iter_mut().enumerate().skip(g as usize) {
                    let n = table.get(&HClass::rank1(d as i64)?, h as u32);
                    if !n.is_zero() {
                        *slot += &v * n;
                    }
                }
            }
        }
        for (h, v) in row.into_iter().enumerate() {
            if !v.is_zero() {
                out.add_entry(&a, h as u32, v)?;
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossCheck {
    Agree,
    Disagree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountEntry {
    pub class: Vec<i64>,
    pub genus: u32,
    pub coeff: String,
    pub integral: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpsEntry {
    pub class: Vec<i64>,
    pub h: u32,
    pub coeff: String,
    pub integral: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineViolation {
    pub table: String,
    pub class: Vec<i64>,
    pub genus: u32,
    pub coeff: String,
    pub rule: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub elem_counts: Vec<CountEntry>,
    pub bps: Vec<BpsEntry>,
    pub integral: bool,
    pub violations: Vec<PipelineViolation>,
    pub cross_check: CrossCheck,
}

/// Solves for `e`, assembles the BPS table from it and compares with a
/// direct inversion of `gw`. A disagreement is an internal error.
pub fn full_pipeline(gw: &NovikovSeries<Rational>, trunc: i64) -> Result<PipelineReport> {
    let e = solve_elem_counts(gw, trunc)?;
    let d_local = required_local_degree(&e);
    let assembled = assemble_bps(&e, d_local, trunc)?;
    let direct = bps_invert(gw, trunc)?;
    if assembled != direct {
        return Err(GvError::InternalConsistency(
            "assembled and directly inverted BPS tables disagree".into(),
        ));
    }
    let mut violations = Vec::new();
    let elem_counts = e
        .verdicts()
        .map(|(a, g, v, integral)| {
            if !integral {
                violations.push(PipelineViolation {
                    table: "elem_counts".into(),
                    class: a.coords().to_vec(),
                    genus: g,
                    coeff: format_rational(v),
                    rule: "integrality".into(),
                });
            }
            CountEntry {
                class: a.coords().to_vec(),
                genus: g,
                coeff: format_rational(v),
                integral,
            }
        })
        .collect();
    let bps = direct
        .entries()
        .map(|(k, v)| {
            let integral = v.is_integral();
            if !integral {
                violations.push(PipelineViolation {
                    table: "bps".into(),
                    class: k.class.coords().to_vec(),
                    genus: k.genus,
                    coeff: format_rational(v),
                    rule: "integrality".into(),
                });
            }
            BpsEntry {
                class: k.class.coords().to_vec(),
                h: k.genus,
                coeff: format_rational(v),
                integral,
            }
        })
        .collect();
    Ok(PipelineReport {
        elem_counts,
        bps,
        integral: violations.is_empty(),
        violations,
        cross_check: CrossCheck::Agree,
    })
}
