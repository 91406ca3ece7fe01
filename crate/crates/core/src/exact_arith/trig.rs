//! The handful of trigonometric expansions the transforms need:
//! powers of `2 sin(kt/2)` in the `t` backend, the matching brackets
//! `(-1)^(h-1) (Q^k + Q^-k - 2)^(h-1)` in the `Q` backend, and the
//! substitution `Q = e^{it}` that bridges them.

use crate::error::{GvError, Result};
use crate::exact_arith::{QLaurent, TLaurent};
use crate::scalar::Scalar;

/// Coefficients (in powers of `t^2`) of `u(t) = 2 sin(t/2) / t`.
fn sinc_series<S: Scalar>(n_terms: usize) -> Vec<S> {
    let mut out = Vec::with_capacity(n_terms);
    let mut a = S::one();
    for j in 0..n_terms {
        if j > 0 {
            let j = j as i64;
            a = a * S::from_ratio(-1, 4 * (2 * j) * (2 * j + 1));
        }
        out.push(a.clone());
    }
    out
}

/// `f^m` for a power series with `f[0] = 1` and any integer `m`, by the
/// J. C. P. Miller recurrence. Returns `n_terms` coefficients.
pub fn unit_series_pow<S: Scalar>(f: &[S], m: i64, n_terms: usize) -> Vec<S> {
    debug_assert!(f.first().is_some_and(|c| *c == S::one()));
    let mut w: Vec<S> = Vec::with_capacity(n_terms);
    if n_terms == 0 {
        return w;
    }
    w.push(S::one());
    for n in 1..n_terms {
        let mut acc = S::zero();
        for j in 1..=n.min(f.len() - 1) {
            if f[j].is_zero() {
                continue;
            }
            let weight = (m + 1) * j as i64 - n as i64;
            if weight == 0 {
                continue;
            }
            acc = acc + S::from_int(weight) * f[j].clone() * w[n - j].clone();
        }
        w.push(acc / S::from_int(n as i64));
    }
    w
}

/// Coefficients in `t^2` of `(2 sin(kt/2) / t)^m`.
pub fn sinc_power<S: Scalar>(k: i64, m: i64, n_terms: usize) -> Vec<S> {
    let base = unit_series_pow(&sinc_series::<S>(n_terms), m, n_terms);
    // u_k(t) = k u_1(kt)
    let k2 = S::from_int(k * k);
    let mut scale = S::int_pow(k, m);
    base.into_iter()
        .map(|c| {
            let v = c * scale.clone();
            scale = scale.clone() * k2.clone();
            v
        })
        .collect()
}

fn terms_below(start: i64, trunc: i64) -> usize {
    if trunc <= start {
        0
    } else {
        ((trunc - start + 1) / 2) as usize
    }
}

/// `(2 sin(kt/2))^p` for even `p`, known below `t^trunc`.
pub fn two_sin_power<S: Scalar>(k: i64, p: i64, trunc: i64) -> Result<TLaurent<S>> {
    if k < 1 {
        return Err(GvError::Domain(format!(
            "frequency k = {k} must be positive"
        )));
    }
    if p % 2 != 0 {
        return Err(GvError::Domain(format!(
            "odd power {p} of 2 sin(kt/2) is not even in t"
        )));
    }
    if trunc <= p {
        return Err(GvError::InvalidTruncation(format!(
            "truncation t^{trunc} does not reach the leading term t^{p}"
        )));
    }
    TLaurent::new(p, sinc_power(k, p, terms_below(p, trunc)), trunc)
}

/// The `t` expansion of `(2 sin(kt/2))^(2h-2)`, known below `t^trunc`.
pub fn sin_half_power<S: Scalar>(k: i64, h: u32, trunc: i64) -> Result<TLaurent<S>> {
    if trunc < 2 * h as i64 {
        return Err(GvError::InvalidTruncation(format!(
            "order {trunc} is below 2h = {} for h = {h}",
            2 * h
        )));
    }
    two_sin_power(k, 2 * h as i64 - 2, trunc)
}

/// `(-1)^(h-1) (Q^k + Q^-k - 2)^(h-1)`, the `Q = e^{it}` form of
/// `(2 sin(kt/2))^(2h-2)`. Genus zero has no polynomial form.
pub fn q_power_bracket<S: Scalar>(k: i64, h: u32) -> Result<QLaurent<S>> {
    if h == 0 {
        return Err(GvError::UnsupportedBackend(
            "exponent 2h-2 < 0 has no Laurent polynomial form; use the t backend".into(),
        ));
    }
    if k < 1 {
        return Err(GvError::Domain(format!(
            "frequency k = {k} must be positive"
        )));
    }
    Ok(neg_bracket(k).pow(h as u64 - 1))
}

/// `2 - Q^k - Q^-k`.
pub(crate) fn neg_bracket<S: Scalar>(k: i64) -> QLaurent<S> {
    QLaurent::from_terms([(-k, -S::one()), (0, S::from_int(2)), (k, -S::one())])
}

/// Substitutes `Q = e^{it}` into a symmetric Laurent polynomial.
pub fn q_to_t<S: Scalar>(p: &QLaurent<S>, trunc: i64) -> Result<TLaurent<S>> {
    if !p.is_symmetric() {
        return Err(GvError::SymmetryViolation(
            "Q-polynomial is not invariant under Q -> 1/Q; odd powers of t would appear".into(),
        ));
    }
    let n_terms = terms_below(0, trunc);
    let mut coeffs = vec![S::zero(); n_terms];
    for (n, c) in p.terms() {
        // c * (-1)^j n^(2j) / (2j)!
        let n2 = S::from_int(n * n);
        let mut term = c.clone();
        for (j, slot) in coeffs.iter_mut().enumerate() {
            if j > 0 {
                let j = j as i64;
                term = term * (-n2.clone()) / S::from_int((2 * j - 1) * (2 * j));
                if term.is_zero() {
                    break;
                }
            }
            *slot = slot.clone() + term.clone();
        }
    }
    TLaurent::new(0, coeffs, trunc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    /// Taylor coefficients (in t) of 2 sin(kt/2) by the textbook formula,
    /// multiplied out by schoolbook convolution; independent of Miller.
    #[allow(clippy::needless_range_loop)]
    fn brute_two_sin(k: i64, n: usize) -> Vec<Rational> {
        let mut c = vec![Rational::from_int(0); n];
        let mut fact = Rational::from_int(1);
        for e in 1..n {
            fact *= Rational::from_int(e as i64);
            if e % 2 == 1 {
                let sign = if (e / 2) % 2 == 0 { 1 } else { -1 };
                // 2 (k/2)^e / e!
                c[e] = Rational::from_int(2 * sign) * Rational::int_pow(k, e as i64)
                    / Rational::int_pow(2, e as i64)
                    / fact.clone();
            }
        }
        c
    }

    fn conv(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().min(b.len());
        (0..n)
            .map(|i| (0..=i).map(|j| a[j].clone() * b[i - j].clone()).sum())
            .collect()
    }

    #[test]
    fn sin_half_power_genus_one_is_one() {
        let s = sin_half_power::<Rational>(1, 1, 10).unwrap();
        assert_eq!(s.coeff(0).unwrap(), r(1, 1));
        for e in (2..10).step_by(2) {
            assert_eq!(s.coeff(e).unwrap(), r(0, 1));
        }
    }

    #[test]
    fn sin_half_power_k1_h0_by_long_division() {
        let s = sin_half_power::<Rational>(1, 0, 4).unwrap();
        // (2 sin(t/2))^2 = t^2 (1 - t^2/12 + t^4/360 - ...); invert by long division.
        let sq = conv(&brute_two_sin(1, 12), &brute_two_sin(1, 12));
        let base: Vec<Rational> = sq[2..].to_vec(); // divide by t^2
        let mut inv = vec![Rational::from_int(0); 6];
        inv[0] = Rational::from_int(1) / base[0].clone();
        for n in 1..6 {
            let acc: Rational = (1..=n).map(|j| base[j].clone() * inv[n - j].clone()).sum();
            inv[n] = -acc / base[0].clone();
        }
        assert_eq!(inv[0], r(1, 1));
        assert_eq!(inv[2], r(1, 12));
        assert_eq!(inv[4], r(1, 240));
        assert_eq!(s.coeff(-2).unwrap(), inv[0]);
        assert_eq!(s.coeff(0).unwrap(), inv[2]);
        assert_eq!(s.coeff(2).unwrap(), inv[4]);
        assert!(s.coeff(4).is_err());

        let t = 0.1f64;
        let direct = (2.0 * (t / 2.0).sin()).powi(-2);
        let sf = sin_half_power::<f64>(1, 0, 12).unwrap();
        assert!((sf.eval_f64(t) - direct).abs() < 1e-12 * direct);
    }

    #[test]
    fn sin_half_power_k2_h2_by_taylor_multiplication() {
        let s = sin_half_power::<Rational>(2, 2, 6).unwrap();
        let sq = conv(&brute_two_sin(2, 8), &brute_two_sin(2, 8));
        assert_eq!(sq[2], r(4, 1));
        assert_eq!(sq[4], r(-4, 3));
        // (2 sin t)^2 for h = 2 is exponent 2h-2 = 2.
        assert_eq!(s.coeff(2).unwrap(), sq[2]);
        assert_eq!(s.coeff(4).unwrap(), sq[4]);
    }

    #[test]
    fn k2_h3_is_fourth_power_of_two_sin_t() {
        // (2 sin t)^4 = 16 t^4 - (32/3) t^6 + ...
        let s = sin_half_power::<Rational>(2, 3, 8).unwrap();
        assert_eq!(s.coeff(4).unwrap(), r(16, 1));
        assert_eq!(s.coeff(6).unwrap(), r(-32, 3));
    }

    #[test]
    fn truncation_below_leading_term_errors() {
        assert!(matches!(
            sin_half_power::<Rational>(1, 3, 5),
            Err(GvError::InvalidTruncation(_))
        ));
        assert!(sin_half_power::<Rational>(1, 3, 6).is_ok());
    }

    #[test]
    fn brackets() {
        assert_eq!(q_power_bracket::<Rational>(1, 1).unwrap(), QLaurent::one());
        let b = q_power_bracket::<Rational>(1, 2).unwrap();
        assert_eq!(
            b,
            QLaurent::from_terms([(-1, r(-1, 1)), (0, r(2, 1)), (1, r(-1, 1))])
        );
        let b3 = q_power_bracket::<Rational>(2, 3).unwrap();
        let base = QLaurent::from_terms([(-2, r(1, 1)), (0, r(-2, 1)), (2, r(1, 1))]);
        assert_eq!(b3, &base * &base);
        assert!(matches!(
            q_power_bracket::<Rational>(1, 0),
            Err(GvError::UnsupportedBackend(_))
        ));
    }

    #[test]
    fn q_to_t_examples() {
        let two = q_to_t(&QLaurent::constant(r(2, 1)), 8).unwrap();
        assert_eq!(two, TLaurent::new(0, vec![r(2, 1)], 8).unwrap());

        let b = q_power_bracket::<Rational>(1, 2).unwrap();
        let t = q_to_t(&b, 6).unwrap();
        assert_eq!(t.coeff(0).unwrap(), r(0, 1));
        assert_eq!(t.coeff(2).unwrap(), r(1, 1));
        assert_eq!(t.coeff(4).unwrap(), r(-1, 12));

        let t2 = q_to_t(&b.pow(2), 8).unwrap();
        assert_eq!(t2.coeff(4).unwrap(), r(1, 1));
        assert_eq!(t2.coeff(6).unwrap(), r(-1, 6));
        assert_eq!(t2, (&t.truncate(8) * &t).truncate(8));
    }

    #[test]
    fn q_to_t_rejects_asymmetric() {
        let p = QLaurent::from_terms([(1, r(1, 1))]);
        assert!(matches!(q_to_t(&p, 4), Err(GvError::SymmetryViolation(_))));
    }

    #[test]
    fn numeric_cross_check_of_general_powers() {
        let t = 0.3f64;
        for k in 1..4 {
            for p in [-4i64, -2, 2, 6] {
                let s = two_sin_power::<f64>(k, p, p + 40).unwrap();
                let direct = (2.0 * (k as f64 * t / 2.0).sin()).powi(p as i32);
                assert!(
                    (s.eval_f64(t) - direct).abs() < 1e-9 * direct.abs(),
                    "k={k} p={p}"
                );
            }
        }
    }
}
