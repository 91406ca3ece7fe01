//! The elementary-cluster series
//!
//! `Z^elem_g = 1 + sum_d sum_{mu |- d} prod_{box} (2 sin(h(box) t/2))^(2g-2) q^d`,
//! its logarithm `GW^elem_g`, the integer `Q`-coefficients `A_{n,d}`, and the
//! local BPS numbers `n_{d,h}(g)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GvError, Result};
use crate::exact_arith::trig::{neg_bracket, two_sin_power};
use crate::exact_arith::{
    format_rational, q_to_t, qlaurent_to_json, tlaurent_to_json, QLaurent, QLaurentJson, Rational,
    TLaurent, TLaurentJson,
};
use crate::gv_transform::bps_invert;
use crate::novikov::{HClass, Lattice, NovikovSeries};
use crate::partitions::hook_multisets;
use crate::scalar::Scalar;

/// Where the `t`-dependence lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Exact Laurent polynomials in `Q = e^{it}`; genus `>= 1` only.
    Q,
    /// Even Laurent series in `t`, known below `t^order`.
    T(i64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ElemCoeff<S> {
    Q(QLaurent<S>),
    T(TLaurent<S>),
}

/// Coefficients of `q^0, ..., q^D` of `Z^elem_g` or `GW^elem_g`.
#[derive(Debug, Clone, PartialEq)]
pub struct ElemSeries<S> {
    genus: u32,
    backend: Backend,
    coeffs: Vec<ElemCoeff<S>>,
}

impl<S: Scalar> ElemSeries<S> {
    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn q_degree(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn coeff(&self, d: u32) -> &ElemCoeff<S> {
        &self.coeffs[d as usize]
    }

    pub fn q_coeff(&self, d: u32) -> Option<&QLaurent<S>> {
        match self.coeffs.get(d as usize)? {
            ElemCoeff::Q(p) => Some(p),
            ElemCoeff::T(_) => None,
        }
    }

    pub fn t_coeff(&self, d: u32) -> Option<&TLaurent<S>> {
        match self.coeffs.get(d as usize)? {
            ElemCoeff::T(s) => Some(s),
            ElemCoeff::Q(_) => None,
        }
    }

    /// Coefficient of `q^d t^exp` (t backend only).
    pub fn t_coeff_at(&self, d: u32, exp: i64) -> Result<S> {
        self.t_coeff(d)
            .ok_or_else(|| GvError::UnsupportedBackend("series is in the Q backend".into()))?
            .coeff(exp)
    }

    /// Re-expresses a `Q`-backend series in `t` up to `t^order`.
    pub fn to_t_backend(&self, order: i64) -> Result<ElemSeries<S>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| match c {
                ElemCoeff::Q(p) => q_to_t(p, order).map(ElemCoeff::T),
                ElemCoeff::T(s) => Ok(ElemCoeff::T(s.truncate(order))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ElemSeries {
            genus: self.genus,
            backend: Backend::T(order),
            coeffs,
        })
    }
}

/// Ring operations shared by the two coefficient backends.
pub trait SeriesCoeff<S>: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn scaled(&self, s: &S) -> Self;
}

impl<S: Scalar> SeriesCoeff<S> for QLaurent<S> {
    fn zero() -> Self {
        QLaurent::zero()
    }
    fn one() -> Self {
        QLaurent::one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scaled(&self, s: &S) -> Self {
        self.scale(s)
    }
}

impl<S: Scalar> SeriesCoeff<S> for TLaurent<S> {
    fn zero() -> Self {
        TLaurent::zero()
    }
    fn one() -> Self {
        TLaurent::one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scaled(&self, s: &S) -> Self {
        self.scale(s)
    }
}

/// `log z` for `z = 1 + O(q)`, from `q z' = (q g') z`:
/// `g_d = z_d - (1/d) sum_{j<d} j g_j z_{d-j}`.
pub fn log_series<S: Scalar, C: SeriesCoeff<S>>(z: &[C]) -> Vec<C> {
    let mut g: Vec<C> = Vec::with_capacity(z.len());
    if z.is_empty() {
        return g;
    }
    g.push(C::zero());
    for d in 1..z.len() {
        let mut acc = C::zero();
        for j in 1..d {
            acc = acc.plus(&g[j].times(&z[d - j]).scaled(&S::from_int(j as i64)));
        }
        g.push(z[d].minus(&acc.scaled(&S::from_ratio(1, d as i64))));
    }
    g
}

/// `exp g` for `g = O(q)`: `z_d = (1/d) sum_{j<=d} j g_j z_{d-j}`.
pub fn exp_series<S: Scalar, C: SeriesCoeff<S>>(g: &[C]) -> Vec<C> {
    let mut z: Vec<C> = Vec::with_capacity(g.len());
    if g.is_empty() {
        return z;
    }
    z.push(C::one());
    for d in 1..g.len() {
        let mut acc = C::zero();
        for j in 1..=d {
            acc = acc.plus(&g[j].times(&z[d - j]).scaled(&S::from_int(j as i64)));
        }
        z.push(acc.scaled(&S::from_ratio(1, d as i64)));
    }
    z
}

/// `log(1 + s) = sum_k (-1)^(k+1) s^k / k` truncated at `q^D`. Quadratic in
/// the number of powers; kept as a reference for [`log_series`].
pub fn log_one_plus_powersum<S: Scalar, C: SeriesCoeff<S>>(z: &[C]) -> Vec<C> {
    let n = z.len();
    let mut s: Vec<C> = z.to_vec();
    if let Some(first) = s.first_mut() {
        *first = C::zero();
    }
    let mut out = vec![C::zero(); n];
    let mut power = s.clone();
    for k in 1..n {
        let w = S::from_ratio(if k % 2 == 1 { 1 } else { -1 }, k as i64);
        for d in 0..n {
            out[d] = out[d].plus(&power[d].scaled(&w));
        }
        let mut next = vec![C::zero(); n];
        for a in 1..n {
            for b in 1..n - a {
                next[a + b] = next[a + b].plus(&power[a].times(&s[b]));
            }
        }
        power = next;
    }
    out
}

fn check_t_order(genus: u32, order: i64) -> Result<()> {
    if order < 2 * genus as i64 {
        return Err(GvError::InvalidTruncation(format!(
            "t-order {order} does not reach the leading term t^{} of genus {genus}",
            2 * genus as i64 - 2
        )));
    }
    Ok(())
}

/// Sparse factor `(2 - Q^h - Q^-h)^p` in both integer widths.
struct Factor {
    small: Option<Vec<(i64, i128)>>,
    big: Vec<(i64, BigInt)>,
}

impl Factor {
    fn new(h: u32, p: u64) -> Self {
        let poly = neg_bracket::<Rational>(h as i64).pow(p);
        let big: Vec<(i64, BigInt)> = poly.terms().map(|(e, c)| (e, c.to_integer())).collect();
        let small = big
            .iter()
            .map(|(e, c)| i128::try_from(c).ok().map(|c| (*e, c)))
            .collect();
        Factor { small, big }
    }

    fn span(&self) -> (i64, i64) {
        (
            self.big.first().map_or(0, |t| t.0),
            self.big.last().map_or(0, |t| t.0),
        )
    }
}

/// Dense hook product starting at `Q^offset`, in checked `i128`.
fn product_small(factors: &[&Factor]) -> Option<(i64, Vec<i128>)> {
    let mut offset = 0i64;
    let mut acc: Vec<i128> = vec![1];
    for f in factors {
        let (lo, hi) = f.span();
        let mut out = vec![0i128; acc.len() + (hi - lo) as usize];
        for (i, a) in acc.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (e, c) in f.small.as_ref()? {
                let slot = &mut out[i + (e - lo) as usize];
                *slot = slot.checked_add(a.checked_mul(*c)?)?;
            }
        }
        offset += lo;
        acc = out;
    }
    Some((offset, acc))
}

fn product_big(factors: &[&Factor]) -> (i64, Vec<BigInt>) {
    let mut offset = 0i64;
    let mut acc: Vec<BigInt> = vec![BigInt::from(1)];
    for f in factors {
        let (lo, hi) = f.span();
        let mut out = vec![BigInt::from(0); acc.len() + (hi - lo) as usize];
        for (i, a) in acc.iter().enumerate() {
            if a.sign() == num_bigint::Sign::NoSign {
                continue;
            }
            for (e, c) in &f.big {
                out[i + (e - lo) as usize] += a * c;
            }
        }
        offset += lo;
        acc = out;
    }
    (offset, acc)
}

fn q_coefficient<S: Scalar>(genus: u32, d: u32) -> QLaurent<S> {
    if d == 0 {
        return QLaurent::one();
    }
    let multisets = hook_multisets(d);
    let reach = multisets.iter().map(|m| m.sum()).max().unwrap_or(0) as i64 * (genus as i64 - 1);
    let mut acc = vec![BigInt::from(0); 2 * reach as usize + 1];
    let mut cache: HashMap<(u32, u32), Factor> = HashMap::new();
    for hooks in multisets.iter() {
        let groups = hooks.grouped();
        for &(h, mult) in &groups {
            cache
                .entry((h, mult))
                .or_insert_with(|| Factor::new(h, ((genus - 1) * mult) as u64));
        }
        let factors: Vec<&Factor> = groups.iter().map(|k| &cache[k]).collect();
        match product_small(&factors) {
            Some((offset, coeffs)) => {
                for (i, c) in coeffs.into_iter().enumerate() {
                    if c != 0 {
                        acc[(offset + reach) as usize + i] += c;
                    }
                }
            }
            None => {
                let (offset, coeffs) = product_big(&factors);
                for (i, c) in coeffs.into_iter().enumerate() {
                    acc[(offset + reach) as usize + i] += c;
                }
            }
        }
    }
    QLaurent::from_terms(
        acc.iter()
            .enumerate()
            .filter(|(_, c)| c.sign() != num_bigint::Sign::NoSign)
            .map(|(i, c)| (i as i64 - reach, S::from_bigint(c))),
    )
}

/// Coefficient of `q^d` known below `t^trunc`.
fn t_coefficient<S: Scalar>(genus: u32, d: u32, trunc: i64) -> Result<TLaurent<S>> {
    if d == 0 {
        return Ok(TLaurent::one().truncate(trunc));
    }
    let total = (2 * genus as i64 - 2) * d as i64;
    if trunc <= total {
        return Ok(TLaurent::unknown_above(trunc));
    }
    let mut cache: HashMap<(u32, u32), TLaurent<S>> = HashMap::new();
    let mut acc = TLaurent::zero();
    for hooks in hook_multisets(d).iter() {
        let mut prod = TLaurent::one();
        for (h, mult) in hooks.grouped() {
            let p = (2 * genus as i64 - 2) * mult as i64;
            let factor = match cache.get(&(h, mult)) {
                Some(f) => f.clone(),
                None => {
                    // factor truncation chosen so the product is known below `trunc`
                    let f = two_sin_power::<S>(h as i64, p, trunc + p - total)?;
                    cache.insert((h, mult), f.clone());
                    f
                }
            };
            prod = &prod * &factor;
        }
        acc = &acc + &prod;
    }
    Ok(acc)
}

fn per_degree<T: Send>(
    q_degree: u32,
    threads: usize,
    f: impl Fn(u32) -> Result<T> + Sync + Send,
) -> Result<Vec<T>> {
    if threads == 0 {
        return (0..=q_degree).map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| GvError::InternalConsistency(format!("thread pool: {e}")))?;
    pool.install(|| (0..=q_degree).into_par_iter().map(f).collect())
}

/// `Z^elem_g` up to `q^D`, single-threaded.
pub fn z_elem<S: Scalar>(genus: u32, q_degree: u32, backend: Backend) -> Result<ElemSeries<S>> {
    z_elem_threads(genus, q_degree, backend, 0)
}

/// `Z^elem_g` with per-degree coefficients computed on `threads` workers
/// (0 = sequential). Results are identical for every thread count.
///
/// In the `t` backend with genus 0 the coefficient of `q^d` starts at
/// `t^(-2d)`; it is computed to `t^(T + 2(D - d))` so that the logarithm is
/// known below `t^T` in every degree.
pub fn z_elem_threads<S: Scalar>(
    genus: u32,
    q_degree: u32,
    backend: Backend,
    threads: usize,
) -> Result<ElemSeries<S>> {
    let coeffs = match backend {
        Backend::Q => {
            if genus == 0 {
                return Err(GvError::UnsupportedBackend(
                    "genus 0 has negative powers of 2 sin; use the t backend".into(),
                ));
            }
            per_degree(q_degree, threads, |d| {
                Ok(ElemCoeff::Q(q_coefficient::<S>(genus, d)))
            })?
        }
        Backend::T(order) => {
            check_t_order(genus, order)?;
            per_degree(q_degree, threads, |d| {
                let trunc = if genus == 0 {
                    order + 2 * (q_degree - d) as i64
                } else {
                    order
                };
                t_coefficient::<S>(genus, d, trunc).map(ElemCoeff::T)
            })?
        }
    };
    Ok(ElemSeries {
        genus,
        backend,
        coeffs,
    })
}

/// `GW^elem_g = log Z^elem_g` up to `q^D`.
pub fn gw_elem<S: Scalar>(genus: u32, q_degree: u32, backend: Backend) -> Result<ElemSeries<S>> {
    gw_elem_threads(genus, q_degree, backend, 0)
}

pub fn gw_elem_threads<S: Scalar>(
    genus: u32,
    q_degree: u32,
    backend: Backend,
    threads: usize,
) -> Result<ElemSeries<S>> {
    let z = z_elem_threads::<S>(genus, q_degree, backend, threads)?;
    let coeffs = match backend {
        Backend::Q => {
            let polys: Vec<QLaurent<S>> = z
                .coeffs
                .iter()
                .map(|c| match c {
                    ElemCoeff::Q(p) => p.clone(),
                    ElemCoeff::T(_) => unreachable!("Q backend"),
                })
                .collect();
            log_series(&polys).into_iter().map(ElemCoeff::Q).collect()
        }
        Backend::T(order) => {
            let series: Vec<TLaurent<S>> = z
                .coeffs
                .iter()
                .map(|c| match c {
                    ElemCoeff::T(s) => s.clone(),
                    ElemCoeff::Q(_) => unreachable!("t backend"),
                })
                .collect();
            log_series(&series)
                .into_iter()
                .map(|s| ElemCoeff::T(s.truncate(order)))
                .collect()
        }
    };
    Ok(ElemSeries {
        genus,
        backend,
        coeffs,
    })
}

/// `GW^elem_g` as `t`-series known below `t^order`. For `g >= 1` this goes
/// through the exact `Q` polynomials, which is much cheaper than multiplying
/// truncated sine series.
pub fn gw_elem_in_t<S: Scalar>(genus: u32, q_degree: u32, order: i64) -> Result<ElemSeries<S>> {
    if genus >= 1 {
        check_t_order(genus, order)?;
        gw_elem::<S>(genus, q_degree, Backend::Q)?.to_t_backend(order)
    } else {
        gw_elem::<S>(genus, q_degree, Backend::T(order))
    }
}

/// `sum_k (1/k) (2 sin(kt/2))^-2 q^k` up to `q^D`, known below `t^order`:
/// the closed form of `GW^elem_0`.
pub fn gw_elem_genus0_closed<S: Scalar>(q_degree: u32, order: i64) -> Result<ElemSeries<S>> {
    check_t_order(0, order)?;
    let mut coeffs = vec![ElemCoeff::T(TLaurent::zero().truncate(order))];
    for k in 1..=q_degree as i64 {
        let s = two_sin_power::<S>(k, -2, order)?.scale(&S::from_ratio(1, k));
        coeffs.push(ElemCoeff::T(s));
    }
    Ok(ElemSeries {
        genus: 0,
        backend: Backend::T(order),
        coeffs,
    })
}

/// Local BPS numbers `n_{d,h}(g)` for `1 <= d <= D`, `0 <= h <= h_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalBps<S> {
    pub genus: u32,
    pub q_degree: u32,
    pub h_max: u32,
    table: BTreeMap<(u32, u32), S>,
}

impl<S: Scalar> LocalBps<S> {
    pub fn get(&self, d: u32, h: u32) -> S {
        self.table.get(&(d, h)).cloned().unwrap_or_else(S::zero)
    }

    /// Nonzero entries keyed by `(d, h)`.
    pub fn support(&self) -> impl Iterator<Item = (&(u32, u32), &S)> {
        self.table.iter()
    }

    pub fn covers(&self, d: u32, h: u32) -> bool {
        d >= 1 && d <= self.q_degree && h <= self.h_max
    }
}

/// Default genus range for the local inversion: past the proved vanishing
/// bound `h - 1 <= D^2 (g - 1)`, and at least two genera past `g`.
pub fn default_h_max(genus: u32, q_degree: u32) -> u32 {
    let bound = (q_degree as i64).pow(2) * (genus as i64 - 1) + 1;
    bound.max(genus as i64 + 2) as u32
}

/// Inverts the BPS transform on `GW^elem_g` placed on the rank-1 lattice.
pub fn local_bps<S: Scalar>(genus: u32, q_degree: u32, h_max: Option<u32>) -> Result<LocalBps<S>> {
    if q_degree == 0 {
        return Err(GvError::Domain(
            "local BPS numbers need q-degree >= 1".into(),
        ));
    }
    let h_max = h_max.unwrap_or_else(|| default_h_max(genus, q_degree));
    let order = 2 * h_max as i64 + 2;
    let gw = gw_elem_in_t::<S>(genus, q_degree, order)?;
    let series = elem_on_rank1(&gw, h_max)?;
    let bps = bps_invert(&series, order)?;
    let table = bps
        .entries()
        .map(|(k, c)| ((k.class.coords()[0] as u32, k.genus), c.clone()))
        .collect();
    Ok(LocalBps {
        genus,
        q_degree,
        h_max,
        table,
    })
}

/// `GW^elem_g(q^C)` as a series on `Z` with `C = (1)`, genera `0..=h_max`.
pub fn elem_on_rank1<S: Scalar>(gw: &ElemSeries<S>, h_max: u32) -> Result<NovikovSeries<S>> {
    let d_max = gw.q_degree();
    let mut s = NovikovSeries::new(
        Lattice::rank1(),
        Rational::from_integer(d_max.max(1).into()),
        h_max,
    )?;
    for d in 1..=d_max {
        for h in 0..=h_max {
            let c = gw.t_coeff_at(d, 2 * h as i64 - 2)?;
            s.add_term(&HClass::rank1(d as i64)?, h, c)?;
        }
    }
    Ok(s)
}

/// The integer matrix `A_{n,d}` of `Z^elem_g = sum A_{n,d} Q^n q^d`, `g >= 1`.
pub fn q_coefficients(genus: u32, q_degree: u32) -> Result<BTreeMap<(i64, u32), BigInt>> {
    let z = z_elem::<Rational>(genus, q_degree, Backend::Q)?;
    let mut out = BTreeMap::new();
    for d in 0..=q_degree {
        for (n, c) in z.q_coeff(d).expect("Q backend").terms() {
            if !c.is_integer() {
                return Err(GvError::InternalConsistency(format!(
                    "A_{{{n},{d}}} = {} is not an integer",
                    format_rational(c)
                )));
            }
            out.insert((n, d), c.to_integer());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalEntry {
    pub d: u32,
    pub h: u32,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub d: u32,
    pub h: i64,
    pub value: String,
    pub rule: String,
}

/// Outcome of verifying integrality, vanishing and the closed forms of the
/// local BPS numbers for one genus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalReport {
    pub genus: u32,
    pub q_degree: u32,
    pub h_max: u32,
    pub passed: bool,
    pub support: Vec<LocalEntry>,
    pub violations: Vec<Violation>,
}

pub fn check_local_bps(genus: u32, q_degree: u32) -> Result<LocalReport> {
    check_local_bps_with(genus, q_degree, None)
}

/// [`check_local_bps`] with an explicit genus range.
pub fn check_local_bps_with(genus: u32, q_degree: u32, h_max: Option<u32>) -> Result<LocalReport> {
    let bps = local_bps::<Rational>(genus, q_degree, h_max)?;
    let mut violations = Vec::new();
    let mut flag = |d: u32, h: i64, value: &Rational, rule: &str| {
        violations.push(Violation {
            d,
            h,
            value: format_rational(value),
            rule: rule.into(),
        });
    };
    let g = genus as i64;
    for (&(d, h), v) in bps.support() {
        if !v.is_integer() {
            flag(d, h as i64, v, "integrality");
        }
        if (h as i64) < g {
            flag(d, h as i64, v, "vanishing_below_genus");
        }
        if g >= 1 && h as i64 - 1 > (d as i64).pow(2) * (g - 1) {
            flag(d, h as i64, v, "vanishing_above_bound");
        }
    }
    let one = Rational::from_int(1);
    let expected = |d: u32, h: u32| -> Option<Rational> {
        match genus {
            0 => Some(if d == 1 && h == 0 {
                one.clone()
            } else {
                Rational::from_int(0)
            }),
            1 => Some(if h == 1 {
                one.clone()
            } else {
                Rational::from_int(0)
            }),
            _ => None,
        }
    };
    for d in 1..=q_degree {
        for h in 0..=bps.h_max {
            if let Some(e) = expected(d, h) {
                let v = bps.get(d, h);
                if v != e {
                    flag(d, h as i64, &v, "closed_form");
                }
            }
        }
    }
    if genus >= 1 {
        let z = z_elem::<Rational>(genus, q_degree, Backend::Q)?;
        for d in 1..=q_degree {
            let p = z.q_coeff(d).expect("Q backend");
            if !p.is_symmetric() {
                flag(d, -1, &Rational::from_int(0), "a_nd_symmetry");
            }
            let bound = (d as i64).pow(2) * (g - 1);
            for (n, c) in p.terms() {
                if !c.is_integer() {
                    flag(d, n, c, "a_nd_integrality");
                }
                if n.abs() > bound {
                    flag(d, n, c, "a_nd_degree_bound");
                }
            }
        }
    }
    let support = bps
        .support()
        .map(|(&(d, h), v)| LocalEntry {
            d,
            h,
            value: format_rational(v),
        })
        .collect();
    Ok(LocalReport {
        genus,
        q_degree,
        h_max: bps.h_max,
        passed: violations.is_empty(),
        support,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElemCoeffJson {
    Q(QLaurentJson),
    T(TLaurentJson),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElemTermJson {
    pub d: u32,
    #[serde(flatten)]
    pub coeff: ElemCoeffJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElemSeriesJson {
    pub genus: u32,
    pub q_degree: u32,
    pub backend: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_order: Option<i64>,
    pub terms: Vec<ElemTermJson>,
}

impl ElemSeriesJson {
    pub fn from_series(s: &ElemSeries<Rational>) -> Self {
        let (backend, t_order) = match s.backend {
            Backend::Q => ("q".to_string(), None),
            Backend::T(o) => ("t".to_string(), Some(o)),
        };
        let terms = s
            .coeffs
            .iter()
            .enumerate()
            .map(|(d, c)| ElemTermJson {
                d: d as u32,
                coeff: match c {
                    ElemCoeff::Q(p) => ElemCoeffJson::Q(qlaurent_to_json(p)),
                    ElemCoeff::T(t) => ElemCoeffJson::T(tlaurent_to_json(t)),
                },
            })
            .collect();
        ElemSeriesJson {
            genus: s.genus,
            q_degree: s.q_degree(),
            backend,
            t_order,
            terms,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalBpsJson {
    pub genus: u32,
    pub q_degree: u32,
    pub h_max: u32,
    pub terms: Vec<LocalEntry>,
}

impl LocalBpsJson {
    pub fn from_local(b: &LocalBps<Rational>) -> Self {
        LocalBpsJson {
            genus: b.genus,
            q_degree: b.q_degree,
            h_max: b.h_max,
            terms: b
                .support()
                .map(|(&(d, h), v)| LocalEntry {
                    d,
                    h,
                    value: format_rational(v),
                })
                .collect(),
        }
    }
}
