//! Summation-interchange identities over randomized finite-support
//! functions: reordering a triangular nested sum into free sums with a
//! shifted first argument, and flattening a split composition sum.

use std::collections::HashMap;

use polybernoulli::combinatorics::compositions;
use polybernoulli::rational::{rat, Rational};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SUPPORT_BOUND: u32 = 6;

struct FiniteSupport {
    values: HashMap<Vec<u32>, Rational>,
}

impl FiniteSupport {
    fn random(rng: &mut StdRng, arity: usize) -> Self {
        let mut values = HashMap::new();
        let points = rng.gen_range(1..=10);
        for _ in 0..points {
            let point: Vec<u32> = (0..arity).map(|_| rng.gen_range(0..=SUPPORT_BOUND)).collect();
            let value = rat(rng.gen_range(-20..=20), rng.gen_range(1..=9));
            values.insert(point, value);
        }
        FiniteSupport { values }
    }

    fn eval(&self, point: &[u32]) -> Rational {
        self.values
            .get(point)
            .cloned()
            .unwrap_or_else(|| rat(0, 1))
    }
}

/// Nested triangular sum: `n_0` free, then each `n_j` bounded by what is
/// left of `n_0`.
fn triangular_sum(f: &FiniteSupport, r: usize) -> Rational {
    fn rec(f: &FiniteSupport, point: &mut Vec<u32>, remaining: u32, levels: usize) -> Rational {
        if levels == 0 {
            return f.eval(point);
        }
        let mut acc = rat(0, 1);
        for n in 0..=remaining {
            point.push(n);
            acc += rec(f, point, remaining - n, levels - 1);
            point.pop();
        }
        acc
    }
    let mut acc = rat(0, 1);
    for n0 in 0..=SUPPORT_BOUND {
        let mut point = vec![n0];
        acc += rec(f, &mut point, n0, r);
    }
    acc
}

/// Free sums over `n_1..n_r` and `n_0`, evaluating at the shifted first
/// argument `n_0 + n_1 + ... + n_r`.
fn shifted_free_sum(f: &FiniteSupport, r: usize) -> Rational {
    fn rec(f: &FiniteSupport, tail: &mut Vec<u32>, levels: usize) -> Rational {
        if levels == 0 {
            let mut acc = rat(0, 1);
            let shift: u32 = tail.iter().sum();
            for n0 in 0..=SUPPORT_BOUND {
                let mut point = vec![n0 + shift];
                point.extend_from_slice(tail);
                acc += f.eval(&point);
            }
            return acc;
        }
        let mut acc = rat(0, 1);
        for n in 0..=SUPPORT_BOUND {
            tail.push(n);
            acc += rec(f, tail, levels - 1);
            tail.pop();
        }
        acc
    }
    rec(f, &mut Vec::new(), r)
}

#[test]
fn triangular_reordering_identity() {
    let mut rng = StdRng::seed_from_u64(0xC0FFEE);
    for case in 0..40 {
        let r = case % 3 + 1;
        let f = FiniteSupport::random(&mut rng, r + 1);
        assert_eq!(
            triangular_sum(&f, r),
            shifted_free_sum(&f, r),
            "case {case}, r = {r}"
        );
    }
}

#[test]
fn split_composition_identity() {
    let mut rng = StdRng::seed_from_u64(0xB0BA);
    for case in 0..40 {
        let r = case % 3 + 1;
        let f = FiniteSupport::random(&mut rng, r + 1);
        for total in 0..=2 * SUPPORT_BOUND {
            // split: choose n_0, then compose the rest
            let mut split = rat(0, 1);
            for n0 in 0..=total {
                for rest in compositions(total - n0, r) {
                    let mut point = vec![n0];
                    point.extend_from_slice(rest.parts());
                    split += f.eval(&point);
                }
            }
            // flat: one composition sum over all r + 1 coordinates
            let mut flat = rat(0, 1);
            for c in compositions(total, r + 1) {
                flat += f.eval(c.parts());
            }
            assert_eq!(split, flat, "case {case}, r = {r}, total = {total}");
        }
    }
}
