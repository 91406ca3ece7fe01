//! Coefficient scalars.
//!
//! Everything in the crate is generic over [`Scalar`]. The exact instance is
//! [`BigRational`]; `f64`/`f32` exist so that tests can evaluate the same code
//! path numerically and compare against closed-form trigonometry.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

pub trait Scalar: Num + Neg<Output = Self> + Clone + Debug + Send + Sync + 'static {
    fn from_int(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// `base^exp` for a possibly negative exponent. `base` must be nonzero
    /// when `exp < 0`.
    fn int_pow(base: i64, exp: i64) -> Self {
        let b = Self::from_int(base);
        let mut acc = Self::one();
        let mut sq = b;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * sq;
            }
        }
        if exp < 0 {
            Self::one() / acc
        } else {
            acc
        }
    }

    fn from_bigint(n: &BigInt) -> Self;

    fn is_integral(&self) -> bool;

    fn approx_f64(&self) -> f64;
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn approx_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }

    fn is_integral(&self) -> bool {
        self.fract() == 0.0
    }

    fn approx_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_int(n: i64) -> Self {
        n as f32
    }

    fn from_bigint(n: &BigInt) -> Self {
        n.to_f32().unwrap_or(f32::NAN)
    }

    fn is_integral(&self) -> bool {
        self.fract() == 0.0
    }

    fn approx_f64(&self) -> f64 {
        *self as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn int_pow_handles_negative_exponents() {
        assert_eq!(BigRational::int_pow(2, -3), BigRational::from_ratio(1, 8));
        assert_eq!(BigRational::int_pow(3, 4), BigRational::from_int(81));
        assert_eq!(BigRational::int_pow(7, 0), BigRational::one());
        assert_eq!(f64::int_pow(2, -2), 0.25);
    }

    #[test]
    fn integrality() {
        assert!(BigRational::from_ratio(6, 3).is_integral());
        assert!(!BigRational::from_ratio(1, 2).is_integral());
        assert!(2.0f64.is_integral());
    }
}
