//! Integer partitions and hooklengths of their Ferrers diagrams.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// A partition of `size()` as a non-increasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts into canonical order; `None` if any part is zero.
    pub fn new(mut parts: Vec<u32>) -> Option<Self> {
        if parts.contains(&0) {
            return None;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    pub fn hooklengths(&self) -> HookMultiset {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row as usize - j - 1;
                let leg = conj.parts[j] as usize - i - 1;
                hooks.push((arm + leg + 1) as u32);
            }
        }
        HookMultiset::from_hooks(hooks)
    }
}

/// Hooklengths of a diagram, kept sorted in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HookMultiset {
    hooks: Vec<u32>,
}

impl HookMultiset {
    fn from_hooks(mut hooks: Vec<u32>) -> Self {
        hooks.sort_unstable_by(|a, b| b.cmp(a));
        HookMultiset { hooks }
    }

    pub fn hooks(&self) -> &[u32] {
        &self.hooks
    }

    pub fn len(&self) -> usize {
        self.hooks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hooks.is_empty()
    }

    pub fn max(&self) -> u32 {
        self.hooks.first().copied().unwrap_or(0)
    }

    pub fn sum(&self) -> u64 {
        self.hooks.iter().map(|&h| h as u64).sum()
    }

    /// `(hooklength, multiplicity)` pairs in descending hooklength.
    pub fn grouped(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &h in &self.hooks {
            match out.last_mut() {
                Some((v, n)) if *v == h => *n += 1,
                _ => out.push((h, 1)),
            }
        }
        out
    }

    pub fn product(&self) -> BigUint {
        self.hooks.iter().fold(BigUint::one(), |acc, &h| acc * h)
    }
}

/// All partitions of `d` in reverse-lexicographic order, starting with `(d)`.
pub fn enumerate(d: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(d, d, &mut current, &mut out);
    out
}

fn fill(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

/// Hook multisets of every partition of `d`, in [`enumerate`] order.
/// Memoized per `d`.
pub fn hook_multisets(d: u32) -> Arc<Vec<HookMultiset>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<HookMultiset>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("hook cache poisoned").get(&d) {
        return Arc::clone(v);
    }
    let computed = Arc::new(
        enumerate(d)
            .iter()
            .map(Partition::hooklengths)
            .collect::<Vec<_>>(),
    );
    let mut guard = cache.lock().expect("hook cache poisoned");
    Arc::clone(guard.entry(d).or_insert(computed))
}

/// `p(d)` by Euler's pentagonal-number recurrence.
pub fn partition_count(d: u32) -> BigUint {
    partition_counts(d).pop().unwrap_or_else(BigUint::one)
}

/// `[p(0), ..., p(d)]`.
pub fn partition_counts(d: u32) -> Vec<BigUint> {
    let n = d as usize;
    let mut p: Vec<BigUint> = Vec::with_capacity(n + 1);
    p.push(BigUint::one());
    for i in 1..=n {
        // Signed accumulation: terms come in (+, +, -, -, ...) pairs.
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        for k in 1usize.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let bucket = if k % 2 == 1 { &mut plus } else { &mut minus };
            *bucket += &p[i - g1];
            if g2 <= i {
                *bucket += &p[i - g2];
            }
        }
        p.push(plus - minus);
    }
    p
}
