use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{GvError, Result};
use crate::exact_arith::Rational;

/// A homology class as an integer lattice vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HClass {
    coords: Vec<i64>,
}

impl HClass {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(GvError::Domain("class of rank 0".into()));
        }
        if coords.iter().all(|&c| c == 0) {
            return Err(GvError::Domain("zero class".into()));
        }
        Ok(HClass { coords })
    }

    pub fn rank1(c: i64) -> Result<Self> {
        Self::new(vec![c])
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn scaled(&self, k: i64) -> HClass {
        HClass {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    /// `A / k` when it is integral.
    pub fn divided(&self, k: i64) -> Option<HClass> {
        (k != 0 && self.coords.iter().all(|c| c % k == 0)).then(|| HClass {
            coords: self.coords.iter().map(|c| c / k).collect(),
        })
    }
}

impl fmt::Display for HClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Rank and area weights shared by every class of a series.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    weights: Vec<Rational>,
}

impl Lattice {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(GvError::Domain("lattice of rank 0".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(GvError::Domain(format!("area weight {w} is not positive")));
        }
        Ok(Lattice { weights })
    }

    /// `Z` with unit area: the class `(d)` has area `d`.
    pub fn rank1() -> Self {
        Lattice {
            weights: vec![Rational::from_integer(1.into())],
        }
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn area(&self, a: &HClass) -> Result<Rational> {
        self.check(a)?;
        Ok(self
            .weights
            .iter()
            .zip(a.coords())
            .map(|(w, &c)| w * Rational::from_integer(c.into()))
            .sum())
    }

    pub fn check(&self, a: &HClass) -> Result<()> {
        if a.rank() != self.rank() {
            return Err(GvError::IncompatibleContext(format!(
                "class {a} has rank {} but the lattice has rank {}",
                a.rank(),
                self.rank()
            )));
        }
        Ok(())
    }
}

/// `d(A)`: the lcm of all `k` with `A = kB`, `B` integral, which is the gcd
/// of the coordinates.
pub fn degree(a: &HClass) -> u64 {
    a.coords()
        .iter()
        .fold(0i64, |g, &c| g.gcd(&c))
        .unsigned_abs()
}

/// Number of prime factors counted with multiplicity.
pub fn big_omega(mut d: u64) -> u32 {
    assert!(d >= 1, "big_omega of zero");
    let mut count = 0;
    let mut p = 2u64;
    while p * p <= d {
        while d.is_multiple_of(p) {
            d /= p;
            count += 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if d > 1 {
        count += 1;
    }
    count
}

/// `Omega(d(A)) + g`.
pub fn level(a: &HClass, genus: u32) -> u32 {
    big_omega(degree(a)) + genus
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Every `(d, B)` with `dB = A`, ascending in `d`; starts with `(1, A)`.
pub fn divisor_pairs(a: &HClass) -> Vec<(u64, HClass)> {
    divisors(degree(a))
        .into_iter()
        .map(|d| (d, a.divided(d as i64).expect("d divides the degree")))
        .collect()
}

/// `true` when `area > 0`; series terms must satisfy this.
pub(crate) fn positive_area(area: &Rational) -> bool {
    !area.is_zero() && area.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(v: &[i64]) -> HClass {
        HClass::new(v.to_vec()).unwrap()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree(&c(&[1, 0, 3])), 1);
        assert_eq!(degree(&c(&[4, 6])), 2);
        assert_eq!(degree(&c(&[12])), 12);
        assert!(HClass::new(vec![0, 0]).is_err());
    }

    #[test]
    fn omega_and_level() {
        assert_eq!(big_omega(1), 0);
        assert_eq!(big_omega(12), 3);
        assert_eq!(big_omega(64), 6);
        assert_eq!(big_omega(97), 1);
        assert_eq!(level(&c(&[1, 2]), 0), 0);
        assert_eq!(level(&c(&[12]), 2), 5);
        assert_eq!(level(&c(&[2, 4]), 1), 2);
    }

    #[test]
    fn divisor_pair_examples() {
        assert_eq!(divisor_pairs(&c(&[1, 5])), vec![(1, c(&[1, 5]))]);
        assert_eq!(
            divisor_pairs(&c(&[6])),
            vec![(1, c(&[6])), (2, c(&[3])), (3, c(&[2])), (6, c(&[1]))]
        );
        assert_eq!(
            divisor_pairs(&c(&[4, 6])),
            vec![(1, c(&[4, 6])), (2, c(&[2, 3]))]
        );
    }

    #[test]
    fn area_requires_matching_rank() {
        let l = Lattice::new(vec![
            Rational::new(1.into(), 2.into()),
            Rational::from_integer(3.into()),
        ])
        .unwrap();
        assert_eq!(
            l.area(&c(&[2, 1])).unwrap(),
            Rational::from_integer(4.into())
        );
        assert!(matches!(
            l.area(&c(&[1])),
            Err(GvError::IncompatibleContext(_))
        ));
        assert!(Lattice::new(vec![Rational::from_integer(0.into())]).is_err());
    }

    fn arb_class() -> impl Strategy<Value = HClass> {
        prop::collection::vec(-30i64..30, 1..4)
            .prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
            .prop_map(|v| HClass::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn degree_is_homogeneous(a in arb_class(), k in 1i64..40) {
            prop_assert_eq!(degree(&a.scaled(k)), k as u64 * degree(&a));
        }

        #[test]
        fn level_is_additive(a in arb_class(), k in 1i64..60, g in 0u32..5) {
            prop_assert_eq!(level(&a.scaled(k), g), big_omega(k as u64) + level(&a, g));
        }

        #[test]
        fn divisor_pairs_count_is_tau(a in arb_class()) {
            let d = degree(&a);
            let tau = (1..=d).filter(|k| d.is_multiple_of(*k)).count();
            let pairs = divisor_pairs(&a);
            prop_assert_eq!(pairs.len(), tau);
            for (k, b) in pairs {
                prop_assert_eq!(b.scaled(k as i64), a.clone());
            }
        }
    }
}
