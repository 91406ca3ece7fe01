//! Seeded generators shared by the integration and acceptance tests.

#![allow(dead_code)]

use gvkit::gv_transform::BpsTable;
use gvkit::novikov::{HClass, Lattice, NovikovSeries};
use gvkit::structure_solver::ElemCounts;
use gvkit::{Rational, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn rank1() -> Lattice {
    Lattice::rank1()
}

pub fn rank2() -> Lattice {
    Lattice::new(vec![int(1), Rational::from_ratio(3, 2)]).unwrap()
}

/// A random class of the lattice with area in `(0, energy]`.
pub fn random_class(rng: &mut ChaCha8Rng, lattice: &Lattice, energy: &Rational) -> HClass {
    loop {
        let coords: Vec<i64> = if lattice.rank() == 1 {
            vec![rng.gen_range(1..=12)]
        } else {
            vec![rng.gen_range(-2..=6), rng.gen_range(-1..=4)]
        };
        let Ok(c) = HClass::new(coords) else { continue };
        let a = lattice.area(&c).unwrap();
        if a > int(0) && &a <= energy {
            return c;
        }
    }
}

/// A random class with every coordinate positive, so that a positive Chern
/// form is positive on it.
pub fn random_positive_class(rng: &mut ChaCha8Rng, lattice: &Lattice, energy: &Rational) -> HClass {
    loop {
        let c = random_class(rng, lattice, energy);
        if c.coords().iter().all(|&x| x >= 0) {
            return c;
        }
    }
}

pub fn random_bps(
    rng: &mut ChaCha8Rng,
    lattice: Lattice,
    energy: i64,
    h_max: u32,
    terms: usize,
    positive: bool,
) -> BpsTable<Rational> {
    let e = int(energy);
    let mut t = BpsTable::new(lattice.clone(), e.clone(), h_max).unwrap();
    for _ in 0..terms {
        let c = if positive {
            random_positive_class(rng, &lattice, &e)
        } else {
            random_class(rng, &lattice, &e)
        };
        let h = rng.gen_range(0..=h_max);
        let v = rng.gen_range(-9..=9);
        if t.get(&c, h) == int(0) && v != 0 {
            t.add_entry(&c, h, int(v)).unwrap();
        }
    }
    t
}

pub fn random_counts(
    rng: &mut ChaCha8Rng,
    lattice: Lattice,
    energy: i64,
    genus_max: u32,
    terms: usize,
) -> ElemCounts {
    let e = int(energy);
    let mut s = NovikovSeries::new(lattice.clone(), e.clone(), genus_max).unwrap();
    for _ in 0..terms {
        let c = random_class(rng, &lattice, &e);
        let g = rng.gen_range(0..=genus_max);
        let v = rng.gen_range(-5..=5);
        if s.get(&c, g) == int(0) && v != 0 {
            s.add_term(&c, g, int(v)).unwrap();
        }
    }
    ElemCounts::from_series(s)
}
