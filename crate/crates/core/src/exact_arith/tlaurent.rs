//! Truncated even Laurent series in `t`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{GvError, Result};
use crate::scalar::Scalar;

/// Sentinel truncation order of a series that is known exactly.
pub const EXACT: i64 = i64::MAX;

fn offset_trunc(trunc: i64, by: i64) -> i64 {
    if trunc == EXACT || by == EXACT {
        EXACT
    } else {
        trunc.saturating_add(by)
    }
}

/// `sum_i coeffs[i] t^(min_exp + 2i)`, known for every exponent `< trunc`.
///
/// Only even exponents carry data. Leading and trailing zeros are stripped,
/// so `min_exp` is the true valuation of a nonzero series. Exponents at or
/// beyond `trunc` are unknown and asking for them is an error.
#[derive(Debug, Clone, PartialEq)]
pub struct TLaurent<S> {
    min_exp: i64,
    coeffs: Vec<S>,
    trunc: i64,
}

impl<S: Scalar> TLaurent<S> {
    pub fn zero() -> Self {
        TLaurent {
            min_exp: 0,
            coeffs: Vec::new(),
            trunc: EXACT,
        }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::new(0, vec![c], EXACT).expect("constant series")
    }

    /// Builds a series, dropping coefficients at exponents `>= trunc`.
    pub fn new(min_exp: i64, coeffs: Vec<S>, trunc: i64) -> Result<Self> {
        if min_exp % 2 != 0 {
            return Err(GvError::Domain(format!("odd minimum exponent {min_exp}")));
        }
        let mut s = TLaurent {
            min_exp,
            coeffs,
            trunc,
        };
        s.normalize();
        Ok(s)
    }

    /// The zero series known only below `trunc`.
    pub fn unknown_above(trunc: i64) -> Self {
        TLaurent {
            min_exp: 0,
            coeffs: Vec::new(),
            trunc,
        }
    }

    /// Narrows the valid range to exponents `< trunc`.
    pub fn truncate(&self, trunc: i64) -> Self {
        let mut s = self.clone();
        s.trunc = s.trunc.min(trunc);
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.trunc != EXACT {
            let keep = if self.trunc <= self.min_exp {
                0
            } else {
                // exponents min_exp + 2i < trunc
                ((self.trunc - self.min_exp + 1) / 2) as usize
            };
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_exp += 2 * lead as i64;
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc == EXACT
    }

    pub fn raw_coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Valuation of the known part: the lowest nonzero exponent, or `trunc`
    /// when every known coefficient vanishes.
    pub fn valuation(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.trunc
        } else {
            self.min_exp
        }
    }

    pub fn is_known_zero(&self) -> bool {
        self.coeffs.is_empty() && self.trunc == EXACT
    }

    /// Coefficient of `t^exp`.
    pub fn coeff(&self, exp: i64) -> Result<S> {
        if exp >= self.trunc {
            return Err(GvError::InvalidTruncation(format!(
                "coefficient of t^{exp} requested but series is only known below t^{}",
                self.trunc
            )));
        }
        if exp % 2 != 0 || exp < self.min_exp {
            return Ok(S::zero());
        }
        let idx = ((exp - self.min_exp) / 2) as usize;
        Ok(self.coeffs.get(idx).cloned().unwrap_or_else(S::zero))
    }

    /// Nonzero known terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &S)> {
        let m = self.min_exp;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (m + 2 * i as i64, c))
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = TLaurent {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
            trunc: self.trunc,
        };
        out.normalize();
        out
    }

    /// Multiplies by the monomial `t^shift` (`shift` even).
    pub fn shift(&self, shift: i64) -> Self {
        debug_assert!(shift % 2 == 0);
        TLaurent {
            min_exp: if self.coeffs.is_empty() {
                0
            } else {
                self.min_exp + shift
            },
            coeffs: self.coeffs.clone(),
            trunc: offset_trunc(self.trunc, shift),
        }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TLaurent<T> {
        let mut out = TLaurent {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(f).collect(),
            trunc: self.trunc,
        };
        out.normalize();
        out
    }

    /// Numerical evaluation of the known part at `t`.
    pub fn eval_f64(&self, t: f64) -> f64 {
        self.terms()
            .map(|(e, c)| c.approx_f64() * t.powi(e as i32))
            .sum()
    }
}

impl<S: Scalar> Add for &TLaurent<S> {
    type Output = TLaurent<S>;
    fn add(self, rhs: Self) -> TLaurent<S> {
        if self.coeffs.is_empty() && rhs.coeffs.is_empty() {
            return TLaurent::unknown_above(self.trunc.min(rhs.trunc));
        }
        let lo = match (self.coeffs.is_empty(), rhs.coeffs.is_empty()) {
            (true, _) => rhs.min_exp,
            (_, true) => self.min_exp,
            _ => self.min_exp.min(rhs.min_exp),
        };
        let end = |s: &TLaurent<S>| s.min_exp + 2 * s.coeffs.len() as i64;
        let hi = end(self).max(end(rhs));
        let n = ((hi - lo) / 2).max(0) as usize;
        let mut coeffs = vec![S::zero(); n];
        for s in [self, rhs] {
            let off = ((s.min_exp - lo) / 2) as usize;
            for (i, c) in s.coeffs.iter().enumerate() {
                coeffs[off + i] = coeffs[off + i].clone() + c.clone();
            }
        }
        let mut out = TLaurent {
            min_exp: lo,
            coeffs,
            trunc: self.trunc.min(rhs.trunc),
        };
        out.normalize();
        out
    }
}

impl<S: Scalar> Neg for &TLaurent<S> {
    type Output = TLaurent<S>;
    fn neg(self) -> TLaurent<S> {
        TLaurent {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            trunc: self.trunc,
        }
    }
}

impl<S: Scalar> Sub for &TLaurent<S> {
    type Output = TLaurent<S>;
    fn sub(self, rhs: Self) -> TLaurent<S> {
        self + &(-rhs)
    }
}

impl<S: Scalar> Mul for &TLaurent<S> {
    type Output = TLaurent<S>;
    fn mul(self, rhs: Self) -> TLaurent<S> {
        // A product is known wherever neither factor's unknown tail can reach.
        let trunc = offset_trunc(self.trunc, rhs.valuation())
            .min(offset_trunc(rhs.trunc, self.valuation()));
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return TLaurent::unknown_above(trunc);
        }
        let min_exp = self.min_exp + rhs.min_exp;
        let mut len = self.coeffs.len() + rhs.coeffs.len() - 1;
        if trunc != EXACT {
            len = len.min(((trunc - min_exp + 1) / 2).max(0) as usize);
        }
        let mut coeffs = vec![S::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        let mut out = TLaurent {
            min_exp,
            coeffs,
            trunc,
        };
        out.normalize();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn truncation_is_tracked_through_products() {
        // (t^-2 + 1 + O(t^4)) * (t^2 + O(t^6)) is known below t^4.
        let a = TLaurent::new(-2, vec![r(1, 1), r(1, 1), r(0, 1)], 4).unwrap();
        let b = TLaurent::new(2, vec![r(1, 1), r(0, 1)], 6).unwrap();
        let p = &a * &b;
        assert_eq!(p.trunc(), 4);
        assert_eq!(p.coeff(0).unwrap(), r(1, 1));
        assert_eq!(p.coeff(2).unwrap(), r(1, 1));
        assert!(p.coeff(4).is_err());
    }

    #[test]
    fn reading_past_trunc_is_an_error() {
        let a = TLaurent::new(0, vec![r(1, 1)], 4).unwrap();
        assert_eq!(a.coeff(2).unwrap(), r(0, 1));
        assert!(matches!(a.coeff(4), Err(GvError::InvalidTruncation(_))));
        assert_eq!(a.coeff(1).unwrap(), r(0, 1));
    }

    #[test]
    fn addition_takes_tighter_bound() {
        let a = TLaurent::new(0, vec![r(1, 1), r(2, 1)], 10).unwrap();
        let b = TLaurent::new(-2, vec![r(3, 1)], 4).unwrap();
        let s = &a + &b;
        assert_eq!(s.trunc(), 4);
        assert_eq!(s.min_exp(), -2);
        assert_eq!(s.coeff(2).unwrap(), r(2, 1));
    }

    #[test]
    fn exact_times_exact_stays_exact() {
        let a = TLaurent::new(-2, vec![r(1, 1), r(-1, 2)], EXACT).unwrap();
        let sq = &a * &a;
        assert!(sq.is_exact());
        assert_eq!(sq.min_exp(), -4);
        assert_eq!(sq.coeff(-2).unwrap(), r(-1, 1));
        assert_eq!(sq.coeff(0).unwrap(), r(1, 4));
    }

    #[test]
    fn leading_zeros_shift_min_exp() {
        let a = TLaurent::new(-2, vec![r(0, 1), r(0, 1), r(5, 1)], EXACT).unwrap();
        assert_eq!(a.min_exp(), 2);
        assert_eq!(a.valuation(), 2);
    }
}
