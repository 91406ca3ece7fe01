//! Laurent polynomials in `Q = e^{it}`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Finitely supported Laurent polynomial `sum_n c_n Q^n`. Zero coefficients
/// are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct QLaurent<S> {
    coeffs: BTreeMap<i64, S>,
}

impl<S: Scalar> Default for QLaurent<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> QLaurent<S> {
    pub fn zero() -> Self {
        QLaurent {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: S) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        QLaurent { coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, S)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: S) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&exp) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.coeffs.insert(exp, s);
                }
            }
            None => {
                self.coeffs.insert(exp, c);
            }
        }
    }

    pub fn coeff(&self, exp: i64) -> S {
        self.coeffs.get(&exp).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &S)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest `|n|` with a nonzero coefficient; 0 for the zero polynomial.
    pub fn max_abs_exponent(&self) -> i64 {
        let lo = self.coeffs.keys().next().copied().unwrap_or(0);
        let hi = self.coeffs.keys().next_back().copied().unwrap_or(0);
        lo.abs().max(hi.abs())
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(e, c)| self.coeffs.get(&-e).is_some_and(|d| d == c))
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        QLaurent {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (*e, c.clone() * s.clone()))
                .collect(),
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

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> QLaurent<T> {
        QLaurent::from_terms(self.coeffs.iter().map(|(e, c)| (*e, f(c))))
    }
}

impl<S: Scalar> Add for &QLaurent<S> {
    type Output = QLaurent<S>;
    fn add(self, rhs: Self) -> QLaurent<S> {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &QLaurent<S> {
    type Output = QLaurent<S>;
    fn sub(self, rhs: Self) -> QLaurent<S> {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<S: Scalar> Neg for &QLaurent<S> {
    type Output = QLaurent<S>;
    fn neg(self) -> QLaurent<S> {
        QLaurent {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl<S: Scalar> Mul for &QLaurent<S> {
    type Output = QLaurent<S>;
    fn mul(self, rhs: Self) -> QLaurent<S> {
        let mut acc: BTreeMap<i64, S> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                let prod = ca.clone() * cb.clone();
                acc.entry(ea + eb)
                    .and_modify(|v| *v = v.clone() + prod.clone())
                    .or_insert(prod);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        QLaurent { coeffs: acc }
    }
}
