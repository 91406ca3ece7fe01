//! Genus-zero Aspinwall–Morrison transform with `k` insertions:
//! `sum GW_{A,0} q^A = sum n_{A,0} sum_{d >= 1} d^(k-3) q^(dA)`.

use std::collections::BTreeMap;

use crate::error::{GvError, Result};
use crate::exact_arith::Rational;
use crate::gv_transform::bps::ensure_divisor_closed;
use crate::gv_transform::table::BpsTable;
use crate::novikov::{divisor_pairs, HClass, NovikovSeries};
use crate::scalar::Scalar;

fn cover_weight<S: Scalar>(d: u64, insertions: u32) -> S {
    S::int_pow(d as i64, insertions as i64 - 3)
}

fn genus_zero_only<S: Scalar>(s: &NovikovSeries<S>) -> Result<()> {
    if let Some((k, _)) = s.terms().find(|(k, _)| k.genus != 0) {
        return Err(GvError::Domain(format!(
            "term ({}, g={}) is not genus zero",
            k.class, k.genus
        )));
    }
    Ok(())
}

/// Recovers `n_{A,0}` by recursion over ascending area.
pub fn am_invert<S: Scalar>(gw0: &NovikovSeries<S>, insertions: u32) -> Result<BpsTable<S>> {
    genus_zero_only(gw0)?;
    ensure_divisor_closed(gw0)?;
    let mut out = BpsTable::new(gw0.lattice().clone(), gw0.energy().clone(), 0)?;
    let mut solved: BTreeMap<HClass, S> = BTreeMap::new();
    for (_, a) in gw0.multiples_within(&gw0.classes()) {
        let mut n = gw0.get(&a, 0);
        for (d, b) in divisor_pairs(&a).into_iter().skip(1) {
            if let Some(nb) = solved.get(&b) {
                n = n - nb.clone() * cover_weight::<S>(d, insertions);
            }
        }
        if !n.is_zero() {
            out.add_entry(&a, 0, n.clone())?;
            solved.insert(a, n);
        }
    }
    Ok(out)
}

/// Genus-zero GW series generated by `n` up to `energy`.
pub fn am_forward<S: Scalar>(
    n: &BpsTable<S>,
    insertions: u32,
    energy: Rational,
) -> Result<NovikovSeries<S>> {
    let mut out = NovikovSeries::new(n.lattice().clone(), energy, 0)?;
    for (key, value) in n.entries() {
        if key.genus != 0 {
            return Err(GvError::Domain(format!(
                "BPS entry at h = {} is not genus zero",
                key.genus
            )));
        }
        for d in 1u64.. {
            if &key.area * Rational::from_integer(d.into()) > *out.energy() {
                break;
            }
            out.add_term(
                &key.class.scaled(d as i64),
                0,
                value.clone() * cover_weight::<S>(d, insertions),
            )?;
        }
    }
    Ok(out)
}
