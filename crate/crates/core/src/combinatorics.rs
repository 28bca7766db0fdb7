//! Factorials, binomial and multinomial coefficients, and enumeration of
//! compositions (ordered tuples of non-negative integers with a fixed sum).

use crate::rational::{int, Integer};
use num_traits::{One, Zero};

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> Integer {
    let mut acc = Integer::one();
    for i in 2..=n as u64 {
        acc *= i;
    }
    acc
}

/// Binomial coefficient `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binomial(n: u32, k: i64) -> Integer {
    if k < 0 || k > n as i64 {
        return Integer::zero();
    }
    let k = k as u32;
    // multiplicative form keeps intermediates integral: C(n, i) divides the
    // running product at every step
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for i in 0..k {
        acc = acc * int((n - i) as i64) / int((i + 1) as i64);
    }
    acc
}

/// Multinomial coefficient `n! / (parts[0]! parts[1]! ...)`.
///
/// Panics unless the parts sum to `n`.
pub fn multinomial(n: u32, parts: &[u32]) -> Integer {
    let total: u32 = parts.iter().sum();
    assert_eq!(total, n, "multinomial parts {parts:?} must sum to {n}");
    let mut acc = Integer::one();
    let mut rest = n;
    for &p in parts {
        acc *= binomial(rest, p as i64);
        rest -= p;
    }
    acc
}

/// An ordered tuple of non-negative integers; its total is the sum of parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl std::ops::Deref for Composition {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.parts
    }
}

/// Lexicographically ordered stream of all compositions of `total` into
/// `parts` non-negative integers. Yields exactly
/// `C(total + parts - 1, parts - 1)` tuples.
pub fn compositions(total: u32, parts: usize) -> Compositions {
    assert!(parts >= 1, "compositions requires at least one part");
    Compositions {
        next: Some({
            let mut v = vec![0; parts];
            v[parts - 1] = total;
            v
        }),
    }
}

/// Iterator produced by [`compositions`].
pub struct Compositions {
    next: Option<Vec<u32>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let k = succ.len();
        // lexicographic successor: bump the rightmost position that still has
        // mass to its right, then push the remainder to the end
        let mut suffix: u32 = 0;
        let mut found = None;
        for i in (0..k - 1).rev() {
            suffix += succ[i + 1];
            if suffix > 0 {
                found = Some((i, suffix));
                break;
            }
        }
        if let Some((i, suffix)) = found {
            succ[i] += 1;
            for p in succ[i + 1..].iter_mut() {
                *p = 0;
            }
            succ[k - 1] = suffix - 1;
            self.next = Some(succ);
        }
        Some(Composition::new(current))
    }
}
