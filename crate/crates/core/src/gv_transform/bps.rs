//! The BPS transform
//!
//! `sum GW_{A,g} t^(2g-2) q^A = sum n_{A,h} sum_k (1/k) (2 sin(kt/2))^(2h-2) q^(kA)`
//!
//! and its inverse. Rescaling `t -> kt` gives
//! `[t^(2g-2)] (2 sin(kt/2))^(2h-2) = k^(2g-2) [t^(2g-2)] (2 sin(t/2))^(2h-2)`,
//! so a single `k = 1` table serves every multiple cover.

use std::collections::BTreeMap;

use crate::error::{GvError, Result};
use crate::exact_arith::trig::sinc_power;
use crate::exact_arith::Rational;
use crate::gv_transform::table::{collect_rows, BpsTable};
use crate::novikov::{divisor_pairs, HClass, NovikovSeries};
use crate::scalar::Scalar;

/// `c_h(g) = [t^(2g-2)] (2 sin(t/2))^(2h-2)` for `0 <= h, g <= g_max`.
///
/// Lower triangular in `(g, h)` with unit diagonal: the lowest term of
/// `(2 sin(t/2))^(2h-2)` is `t^(2h-2)`.
#[derive(Debug, Clone)]
pub struct SinePowerTable<S> {
    g_max: u32,
    // rows[h][j] = c_h(h + j)
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> SinePowerTable<S> {
    pub fn new(g_max: u32) -> Self {
        let rows = (0..=g_max)
            .map(|h| sinc_power::<S>(1, 2 * h as i64 - 2, (g_max - h) as usize + 1))
            .collect();
        SinePowerTable { g_max, rows }
    }

    pub fn g_max(&self) -> u32 {
        self.g_max
    }

    pub fn coeff(&self, h: u32, g: u32) -> S {
        if g < h || g > self.g_max {
            return S::zero();
        }
        self.rows[h as usize][(g - h) as usize].clone()
    }

    /// `[t^(2g-2)] (2 sin(kt/2))^(2h-2)`.
    pub fn coeff_k(&self, k: u64, h: u32, g: u32) -> S {
        let c = self.coeff(h, g);
        if c.is_zero() {
            return c;
        }
        c * S::int_pow(k as i64, 2 * g as i64 - 2)
    }

    /// The change-of-basis matrix `M[g][h] = c_h(g)`.
    pub fn matrix(&self) -> Vec<Vec<S>> {
        (0..=self.g_max)
            .map(|g| (0..=self.g_max).map(|h| self.coeff(h, g)).collect())
            .collect()
    }
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

/// Every class of `s` must have all of its divisor classes inside the window.
pub(crate) fn ensure_divisor_closed<S: Scalar>(s: &NovikovSeries<S>) -> Result<()> {
    for (_, a) in s.classes() {
        for (d, b) in divisor_pairs(&a) {
            if s.key(&b, 0)?.is_none() {
                return Err(GvError::TruncationUnsound(format!(
                    "divisor class {b} = {a}/{d} is outside the truncation window"
                )));
            }
        }
    }
    Ok(())
}

/// GW series produced by the BPS numbers `n`, truncated at `(energy, genus_max)`.
pub fn bps_forward<S: Scalar>(
    n: &BpsTable<S>,
    energy: Rational,
    genus_max: u32,
    trunc: i64,
) -> Result<NovikovSeries<S>> {
    check_order(genus_max, trunc)?;
    let sines = SinePowerTable::<S>::new(genus_max);
    let mut out = NovikovSeries::new(n.lattice().clone(), energy, genus_max)?;
    for (key, value) in n.entries() {
        let h = key.genus;
        if h > genus_max {
            continue;
        }
        // ω(kB) <= E caps the covers.
        for k in 1u64.. {
            let area = &key.area * Rational::from_integer(k.into());
            if &area > out.energy() {
                break;
            }
            let class = key.class.scaled(k as i64);
            let weight = value.clone() / S::from_int(k as i64);
            for g in h..=genus_max {
                let c = sines.coeff_k(k, h, g);
                if !c.is_zero() {
                    out.add_term(&class, g, weight.clone() * c)?;
                }
            }
        }
    }
    Ok(out)
}

/// The unique BPS table reproducing `gw` under [`bps_forward`] inside its window.
pub fn bps_invert<S: Scalar>(gw: &NovikovSeries<S>, trunc: i64) -> Result<BpsTable<S>> {
    let g_max = gw.genus_max();
    check_order(g_max, trunc)?;
    ensure_divisor_closed(gw)?;
    let sines = SinePowerTable::<S>::new(g_max);
    let rows = collect_rows(gw);
    let zero_row = vec![S::zero(); g_max as usize + 1];

    let mut solved: BTreeMap<HClass, Vec<S>> = BTreeMap::new();
    let mut out = BpsTable::new(gw.lattice().clone(), gw.energy().clone(), g_max)?;

    for (area, a) in gw.multiples_within(&gw.classes()) {
        let mut residual = rows.get(&(area, a.clone())).unwrap_or(&zero_row).clone();
        for (k, b) in divisor_pairs(&a).into_iter().skip(1) {
            let Some(nb) = solved.get(&b) else { continue };
            let inv_k = S::one() / S::from_int(k as i64);
            for (h, n) in nb.iter().enumerate() {
                if n.is_zero() {
                    continue;
                }
                let w = n.clone() * inv_k.clone();
                for (g, slot) in residual.iter_mut().enumerate().skip(h) {
                    let c = sines.coeff_k(k, h as u32, g as u32);
                    if !c.is_zero() {
                        *slot = slot.clone() - w.clone() * c;
                    }
                }
            }
        }
        let n_row = solve_unit_lower(&residual, |h, g| sines.coeff(h, g));
        if n_row.iter().any(|c| !c.is_zero()) {
            for (h, c) in n_row.iter().enumerate() {
                out.add_entry(&a, h as u32, c.clone())?;
            }
            solved.insert(a, n_row);
        }
    }
    Ok(out)
}

/// Solves `sum_{h <= g} basis(h, g) x_h = rhs_g` for a unit-diagonal lower
/// triangular basis, ascending in `h`.
pub(crate) fn solve_unit_lower<S: Scalar>(rhs: &[S], basis: impl Fn(u32, u32) -> S) -> Vec<S> {
    let mut x: Vec<S> = Vec::with_capacity(rhs.len());
    for (g, r) in rhs.iter().enumerate() {
        let mut v = r.clone();
        for (h, xh) in x.iter().enumerate() {
            if xh.is_zero() {
                continue;
            }
            let c = basis(h as u32, g as u32);
            if !c.is_zero() {
                v = v - xh.clone() * c;
            }
        }
        x.push(v);
    }
    x
}
