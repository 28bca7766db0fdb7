//! Stirling numbers of the second kind, computed from the recurrence
//! `S(n+1, l) = S(n, l-1) + l * S(n, l)` into a lazily grown triangle.
//!
//! The triangle is integer-only; the inclusion-exclusion closed form
//! [`stirling2_closed`] is kept as an independent cross-check because it
//! routes through intermediate divisions.

use std::sync::{OnceLock, RwLock};

use crate::combinatorics::{binomial, factorial};
use crate::rational::Integer;
use num_traits::{One, Zero};

/// Memoized triangle of Stirling numbers of the second kind.
///
/// Row `n` holds `S(n, 0) ..= S(n, n)`. Growth is monotone: `grow_to`
/// extends the triangle, lookups never mutate it, so a grown table can be
/// shared read-only across threads.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<Integer>>,
    zero: Integer,
}

impl StirlingTable {
    pub fn new() -> Self {
        StirlingTable {
            rows: vec![vec![Integer::one()]],
            zero: Integer::zero(),
        }
    }

    /// Largest `n` the triangle currently covers.
    pub fn max_n(&self) -> u32 {
        self.rows.len() as u32 - 1
    }

    /// Extend the triangle so every `S(n, l)` with `n <= target` is stored.
    pub fn grow_to(&mut self, target: u32) {
        while self.max_n() < target {
            let prev = self.rows.last().expect("table never empty");
            let n = prev.len(); // building row n from row n - 1
            let mut row = Vec::with_capacity(n + 1);
            row.push(Integer::zero()); // S(n, 0) = 0 for n >= 1
            for l in 1..n {
                row.push(&prev[l - 1] + &prev[l] * Integer::from(l));
            }
            row.push(Integer::one()); // S(n, n) = 1
            self.rows.push(row);
        }
    }

    /// `S(n, l)` by reference. Never touches the rows when `l > n`.
    ///
    /// Panics if `n` is beyond the grown range.
    pub fn get(&self, n: u32, l: u32) -> &Integer {
        if l > n {
            return &self.zero;
        }
        assert!(
            n <= self.max_n(),
            "StirlingTable grown to {} but S({n}, {l}) requested",
            self.max_n()
        );
        &self.rows[n as usize][l as usize]
    }
}

impl Default for StirlingTable {
    fn default() -> Self {
        Self::new()
    }
}

fn shared_table() -> &'static RwLock<StirlingTable> {
    static TABLE: OnceLock<RwLock<StirlingTable>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(StirlingTable::new()))
}

/// Run `f` against the shared table, grown to at least `min_n`.
pub fn with_stirling_table<R>(min_n: u32, f: impl FnOnce(&StirlingTable) -> R) -> R {
    {
        let guard = shared_table().read().unwrap();
        if guard.max_n() >= min_n {
            return f(&guard);
        }
    }
    {
        let mut guard = shared_table().write().unwrap();
        guard.grow_to(min_n);
    }
    let guard = shared_table().read().unwrap();
    f(&guard)
}

/// Stirling number of the second kind `S(n, l)`, growing the shared
/// triangle on demand. `l > n` returns zero without touching the table.
pub fn stirling2(n: u32, l: u32) -> Integer {
    if l > n {
        return Integer::zero();
    }
    with_stirling_table(n, |t| t.get(n, l).clone())
}

/// Inclusion-exclusion closed form
/// `S(n, l) = (1/l!) * sum_{i=0}^{l} (-1)^(l-i) C(l, i) i^n`.
///
/// Exists solely to cross-check [`stirling2`]; the division by `l!` is exact.
pub fn stirling2_closed(n: u32, l: u32) -> Integer {
    let mut sum = Integer::zero();
    for i in 0..=l {
        let mut term = binomial(l, i as i64) * Integer::from(i).pow(n);
        if (l - i) % 2 == 1 {
            term = -term;
        }
        sum += term;
    }
    let fact = factorial(l);
    let (q, r) = num_integer::Integer::div_rem(&sum, &fact);
    assert!(r.is_zero(), "closed form must divide exactly");
    q
}
