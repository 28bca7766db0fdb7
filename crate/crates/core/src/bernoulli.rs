//! Poly-Bernoulli numbers, from the classical case up to the general
//! multi-indexed explicit formula, together with the duality verifier and a
//! method-dispatch facade.
//!
//! All evaluators share the same shape: an alternating sum over tuples of
//! Stirling numbers of the second kind weighted by integer powers of the
//! partial sums `l_1 + ... + l_j + j`. They differ in how the inner
//! summation indices combine the entries of the index tuple.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::combinatorics::{binomial, compositions, factorial, multinomial, Composition};
use crate::rational::{upow, Integer, Rational};
use crate::stirling::{with_stirling_table, StirlingTable};
use num_traits::Zero;

/// The index tuple `(m_1, ..., m_r)` of non-negative integers, `r >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexTuple(Vec<u32>);

impl IndexTuple {
    pub fn new(entries: Vec<u32>) -> Self {
        assert!(!entries.is_empty(), "index tuple needs at least one entry");
        IndexTuple(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Sum of the entries.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl std::ops::Deref for IndexTuple {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

/// The weight tuple `(k_1, ..., k_r)` of signed integers, `r >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightTuple(Vec<i64>);

impl WeightTuple {
    pub fn new(entries: Vec<i64>) -> Self {
        assert!(!entries.is_empty(), "weight tuple needs at least one entry");
        WeightTuple(entries)
    }

    /// The weight tuple `(-m_1, ..., -m_r)`, as used by the duality identity.
    pub fn negated_from(index: &IndexTuple) -> Self {
        WeightTuple(index.as_slice().iter().map(|&m| -(m as i64)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl std::ops::Deref for WeightTuple {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

/// Evaluation strategy for [`compute`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Explicit,
    Double,
    TripleA,
    TripleB,
    OracleEll,
    OracleLi,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Explicit,
        Method::Double,
        Method::TripleA,
        Method::TripleB,
        Method::OracleEll,
        Method::OracleLi,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Method::Explicit => "explicit",
            Method::Double => "double",
            Method::TripleA => "triple-a",
            Method::TripleB => "triple-b",
            Method::OracleEll => "oracle-ell",
            Method::OracleLi => "oracle-li",
        }
    }

    /// The rank the method is specialized to, if any.
    pub fn required_rank(self) -> Option<usize> {
        match self {
            Method::Double => Some(2),
            Method::TripleA | Method::TripleB => Some(3),
            _ => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "explicit" | "auto" => Ok(Method::Explicit),
            "double" => Ok(Method::Double),
            "triple-a" => Ok(Method::TripleA),
            "triple-b" => Ok(Method::TripleB),
            "oracle-ell" => Ok(Method::OracleEll),
            "oracle-li" => Ok(Method::OracleLi),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

/// One computed value with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyBernoulliRecord {
    pub r: usize,
    pub m: IndexTuple,
    pub k: WeightTuple,
    pub value: Rational,
    pub method: Method,
}

/// Dispatch failure: a specialized formula was asked for the wrong rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankMismatch {
    pub method: Method,
    pub expected: usize,
    pub got: usize,
}

impl fmt::Display for RankMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "method `{}` requires r = {}, got r = {}",
            self.method, self.expected, self.got
        )
    }
}

impl std::error::Error for RankMismatch {}

/// Classical Bernoulli number `B_m` under the `t e^t / (e^t - 1)` convention
/// (so `B_1 = +1/2`), from the Stirling-number formula.
pub fn classical_bernoulli(m: u32) -> Rational {
    with_stirling_table(m, |table| {
        let mut acc = Rational::zero();
        for l in 0..=m {
            let s = table.get(m, l);
            if s.is_zero() {
                continue;
            }
            let mut term = Rational::new(factorial(l) * s, (l as i64 + 1).into());
            if l % 2 == 1 {
                term = -term;
            }
            acc += term;
        }
        if m % 2 == 1 {
            -acc
        } else {
            acc
        }
    })
}

/// Poly-Bernoulli number `B_m^(k)` from its explicit formula.
pub fn poly_bernoulli(m: u32, k: i64) -> Rational {
    with_stirling_table(m, |table| {
        let mut acc = Rational::zero();
        for l in 0..=m {
            let s = table.get(m, l);
            if s.is_zero() {
                continue;
            }
            let mut term = upow(l as u64 + 1, -k) * (factorial(l) * s);
            if l % 2 == 1 {
                term = -term;
            }
            acc += term;
        }
        if m % 2 == 1 {
            -acc
        } else {
            acc
        }
    })
}

/// The alternating Stirling sum shared by every explicit formula:
/// sum over `0 <= l_j <= args[j]` of
/// `prod_j (-1)^{l_j} l_j! S(args[j], l_j) (l_1+...+l_j+j)^{-k_j}`.
///
/// Terms with `l_j > args[j]` vanish because `S(n, l) = 0` for `l > n`, so
/// bounding each `l_j` by `args[j]` instead of the full index total drops
/// only zero terms.
fn weighted_stirling_sum(
    args: &[u32],
    k: &[i64],
    facts: &[Integer],
    table: &StirlingTable,
) -> Rational {
    struct Ctx<'a> {
        args: &'a [u32],
        k: &'a [i64],
        facts: &'a [Integer],
        table: &'a StirlingTable,
    }

    fn rec(ctx: &Ctx, j: usize, prefix: u64, partial: Rational, acc: &mut Rational) {
        if j == ctx.args.len() {
            *acc += partial;
            return;
        }
        for l in 0..=ctx.args[j] {
            let s = ctx.table.get(ctx.args[j], l);
            if s.is_zero() {
                continue;
            }
            let base = prefix + l as u64 + j as u64 + 1;
            let mut term = &partial * &(&ctx.facts[l as usize] * s);
            term *= upow(base, -ctx.k[j]);
            if l % 2 == 1 {
                term = -term;
            }
            rec(ctx, j + 1, prefix + l as u64, term, acc);
        }
    }

    let ctx = Ctx { args, k, facts, table };
    let mut acc = Rational::zero();
    rec(&ctx, 0, 0, Rational::from_integer(1.into()), &mut acc);
    acc
}

/// Stirling arguments `a_j` determined by the inner index matrix `rows`
/// (row `i`, zero-based, is a composition of `m[i+1]` into `i+2` parts):
/// `a_j = m_j - (first j-1 entries of row j-1) + (j-th entries of rows j..)`.
fn stirling_args(m: &[u32], rows: &[&Composition]) -> Vec<u32> {
    let r = m.len();
    let mut args = Vec::with_capacity(r);
    let a0 = m[0] as i64 + rows.iter().map(|c| c[0] as i64).sum::<i64>();
    args.push(a0);
    for j in 1..r {
        let taken: i64 = rows[j - 1][..j].iter().map(|&x| x as i64).sum();
        let added: i64 = (j..r - 1).map(|i| rows[i][j] as i64).sum();
        let a = m[j] as i64 - taken + added;
        // same value via the last part of row j-1; also shows a >= 0
        debug_assert_eq!(a, rows[j - 1][j] as i64 + added);
        args.push(a);
    }
    debug_assert_eq!(
        args.iter().sum::<i64>(),
        m.iter().map(|&x| x as i64).sum::<i64>(),
        "Stirling arguments always redistribute the index total"
    );
    args.into_iter()
        .map(|a| {
            assert!(a >= 0, "Stirling argument must be non-negative");
            a as u32
        })
        .collect()
}

type MemoKey = (Vec<u32>, Vec<i64>);

fn explicit_memo() -> &'static Mutex<HashMap<MemoKey, Rational>> {
    static MEMO: OnceLock<Mutex<HashMap<MemoKey, Rational>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// General multi-indexed poly-Bernoulli number `B_{m_1..m_r}^{(k_1..k_r)}`
/// from the explicit formula: an alternating Stirling sum over all inner
/// index matrices (one composition row per index entry past the first).
///
/// Results are memoized per process run, keyed by `(m, k)`.
pub fn explicit_multi(m: &IndexTuple, k: &WeightTuple) -> Rational {
    assert_eq!(m.len(), k.len(), "index and weight tuples must share length");
    let key = (m.as_slice().to_vec(), k.as_slice().to_vec());
    if let Some(hit) = explicit_memo().lock().unwrap().get(&key) {
        return hit.clone();
    }

    let r = m.len();
    let total = m.total();
    let unsigned = with_stirling_table(total, |table| {
        let facts: Vec<Integer> = (0..=total).map(factorial).collect();
        if r == 1 {
            // the inner sum is empty: single term with a_1 = m_1
            return weighted_stirling_sum(m.as_slice(), k.as_slice(), &facts, table);
        }
        // row i composes m[i+1] into i+2 parts; precompute each row's choices
        let row_choices: Vec<Vec<(Composition, Integer)>> = (0..r - 1)
            .map(|i| {
                compositions(m.as_slice()[i + 1], i + 2)
                    .map(|c| {
                        let mult = multinomial(m.as_slice()[i + 1], &c);
                        (c, mult)
                    })
                    .collect()
            })
            .collect();

        let mut acc = Rational::zero();
        let mut cursor = vec![0usize; r - 1];
        loop {
            let chosen: Vec<&Composition> = cursor
                .iter()
                .enumerate()
                .map(|(i, &c)| &row_choices[i][c].0)
                .collect();
            let mut mult = Integer::from(1);
            for (i, &c) in cursor.iter().enumerate() {
                mult *= &row_choices[i][c].1;
            }
            let args = stirling_args(m.as_slice(), &chosen);
            acc += weighted_stirling_sum(&args, k.as_slice(), &facts, table) * mult;

            // advance the odometer over matrix rows
            let mut pos = 0;
            loop {
                if pos == cursor.len() {
                    return acc;
                }
                cursor[pos] += 1;
                if cursor[pos] < row_choices[pos].len() {
                    break;
                }
                cursor[pos] = 0;
                pos += 1;
            }
        }
    });

    let value = if total % 2 == 1 { -unsigned } else { unsigned };
    explicit_memo().lock().unwrap().insert(key, value.clone());
    value
}

/// Double-indexed formula: inner sum `sum_{n=0}^{m_2} S(m_1+n, l_1)
/// S(m_2-n, l_2) C(m_2, n)`. Agrees with [`explicit_multi`] at `r = 2`.
pub fn double_index_formula(m1: u32, m2: u32, k1: i64, k2: i64) -> Rational {
    let total = m1 + m2;
    let unsigned = with_stirling_table(total, |table| {
        let facts: Vec<Integer> = (0..=total).map(factorial).collect();
        let mut acc = Rational::zero();
        for n in 0..=m2 {
            let mult = binomial(m2, n as i64);
            let args = [m1 + n, m2 - n];
            acc += weighted_stirling_sum(&args, &[k1, k2], &facts, table) * mult;
        }
        acc
    });
    if total % 2 == 1 {
        -unsigned
    } else {
        unsigned
    }
}

/// First triple-indexed formula, with inner sums over `n_1 <= m_2`,
/// `n_2 <= m_3`, `n_3 <= m_3 - n_2` and Stirling arguments
/// `(m_1+n_1+n_2, m_2-n_1+n_3, m_3-n_2-n_3)`.
pub fn triple_index_formula_a(
    m1: u32,
    m2: u32,
    m3: u32,
    k1: i64,
    k2: i64,
    k3: i64,
) -> Rational {
    let total = m1 + m2 + m3;
    let unsigned = with_stirling_table(total, |table| {
        let facts: Vec<Integer> = (0..=total).map(factorial).collect();
        let mut acc = Rational::zero();
        for n1 in 0..=m2 {
            let b1 = binomial(m2, n1 as i64);
            for n2 in 0..=m3 {
                for n3 in 0..=m3 - n2 {
                    let mult = &b1 * multinomial(m3, &[n2, n3, m3 - n2 - n3]);
                    let args = [m1 + n1 + n2, m2 - n1 + n3, m3 - n2 - n3];
                    acc += weighted_stirling_sum(&args, &[k1, k2, k3], &facts, table) * mult;
                }
            }
        }
        acc
    });
    if total % 2 == 1 {
        -unsigned
    } else {
        unsigned
    }
}

/// Second triple-indexed formula: the `r = 3` instance of the general
/// explicit formula, with composition rows `n_11+n_12 = m_2` and
/// `n_21+n_22+n_23 = m_3`.
pub fn triple_index_formula_b(
    m1: u32,
    m2: u32,
    m3: u32,
    k1: i64,
    k2: i64,
    k3: i64,
) -> Rational {
    let total = m1 + m2 + m3;
    let unsigned = with_stirling_table(total, |table| {
        let facts: Vec<Integer> = (0..=total).map(factorial).collect();
        let mut acc = Rational::zero();
        for c1 in compositions(m2, 2) {
            let mult1 = multinomial(m2, &c1);
            for c2 in compositions(m3, 3) {
                let mult = &mult1 * multinomial(m3, &c2);
                let args = [m1 + c1[0] + c2[0], m2 - c1[0] + c2[1], m3 - c2[0] - c2[1]];
                acc += weighted_stirling_sum(&args, &[k1, k2, k3], &facts, table) * mult;
            }
        }
        acc
    });
    if total % 2 == 1 {
        -unsigned
    } else {
        unsigned
    }
}

/// Outcome of a duality comparison, with both witness values.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityCheck {
    pub holds: bool,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Check `B_m^{(-k)} = B_k^{(-m)}` for non-negative tuples `m`, `k` of equal
/// length, returning the verdict together with both sides.
pub fn duality_check(m: &IndexTuple, k: &IndexTuple) -> DualityCheck {
    assert_eq!(m.len(), k.len(), "duality tuples must share length");
    let lhs = explicit_multi(m, &WeightTuple::negated_from(k));
    let rhs = explicit_multi(k, &WeightTuple::negated_from(m));
    DualityCheck {
        holds: lhs == rhs,
        lhs,
        rhs,
    }
}

/// Route one evaluation through the chosen method.
pub fn compute(m: &IndexTuple, k: &WeightTuple, method: Method) -> Result<Rational, RankMismatch> {
    assert_eq!(m.len(), k.len(), "index and weight tuples must share length");
    if let Some(expected) = method.required_rank() {
        if m.len() != expected {
            return Err(RankMismatch {
                method,
                expected,
                got: m.len(),
            });
        }
    }
    Ok(match method {
        Method::Explicit => explicit_multi(m, k),
        Method::Double => double_index_formula(m[0], m[1], k[0], k[1]),
        Method::TripleA => triple_index_formula_a(m[0], m[1], m[2], k[0], k[1], k[2]),
        Method::TripleB => triple_index_formula_b(m[0], m[1], m[2], k[0], k[1], k[2]),
        Method::OracleEll => crate::oracles::oracle_ell_sum(m, k),
        Method::OracleLi => crate::oracles::oracle_li_sha(m, k),
    })
}

/// [`compute`] wrapped into a result row.
pub fn compute_record(
    m: &IndexTuple,
    k: &WeightTuple,
    method: Method,
) -> Result<PolyBernoulliRecord, RankMismatch> {
    let value = compute(m, k, method)?;
    Ok(PolyBernoulliRecord {
        r: m.len(),
        m: m.clone(),
        k: k.clone(),
        value,
        method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn idx(v: &[u32]) -> IndexTuple {
        IndexTuple::new(v.to_vec())
    }

    fn wt(v: &[i64]) -> WeightTuple {
        WeightTuple::new(v.to_vec())
    }

    #[test]
    fn classical_first_values() {
        assert_eq!(classical_bernoulli(0), rat(1, 1));
        assert_eq!(classical_bernoulli(1), rat(1, 2));
        assert_eq!(classical_bernoulli(2), rat(1, 6));
        assert_eq!(classical_bernoulli(3), rat(0, 1));
    }

    #[test]
    fn poly_bernoulli_values() {
        for k in [-3, -1, 0, 1, 4] {
            assert_eq!(poly_bernoulli(0, k), rat(1, 1), "m = 0, k = {k}");
        }
        assert_eq!(poly_bernoulli(1, 2), rat(1, 4));
        assert_eq!(poly_bernoulli(1, -1), rat(2, 1));
        assert_eq!(poly_bernoulli(1, 1), classical_bernoulli(1));
    }

    #[test]
    fn explicit_at_zero_tuple_is_product_of_powers() {
        // only l = 0 survives: prod_j j^{-k_j}
        assert_eq!(explicit_multi(&idx(&[0, 0]), &wt(&[3, 3])), rat(1, 8));
        assert_eq!(explicit_multi(&idx(&[0, 0, 0]), &wt(&[5, -1, 2])), rat(2, 9));
        assert_eq!(explicit_multi(&idx(&[0]), &wt(&[7])), rat(1, 1));
    }

    #[test]
    fn explicit_reduces_to_poly_at_rank_one() {
        assert_eq!(explicit_multi(&idx(&[1]), &wt(&[2])), rat(1, 4));
        for m in 0..=8u32 {
            for k in -4..=4i64 {
                assert_eq!(
                    explicit_multi(&idx(&[m]), &wt(&[k])),
                    poly_bernoulli(m, k),
                    "m = {m}, k = {k}"
                );
            }
        }
    }

    #[test]
    fn golden_double_negative_weight() {
        // the three surviving terms contribute 8 - 6 + 24
        assert_eq!(explicit_multi(&idx(&[1, 1]), &wt(&[-1, -1])), rat(26, 1));
        assert_eq!(double_index_formula(1, 1, -1, -1), rat(26, 1));
    }

    #[test]
    fn double_formula_examples() {
        assert_eq!(double_index_formula(0, 0, 5, 3), rat(1, 8));
        assert_eq!(double_index_formula(1, 0, 0, -1), rat(3, 1));
    }

    #[test]
    fn double_agrees_with_explicit() {
        for m1 in 0..=4u32 {
            for m2 in 0..=4u32 {
                for k1 in -2..=2i64 {
                    for k2 in -2..=2i64 {
                        assert_eq!(
                            double_index_formula(m1, m2, k1, k2),
                            explicit_multi(&idx(&[m1, m2]), &wt(&[k1, k2])),
                            "at ({m1},{m2}),({k1},{k2})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn triple_formulas_examples() {
        assert_eq!(triple_index_formula_a(0, 0, 0, 4, 2, 1), rat(1, 12));
        assert_eq!(triple_index_formula_b(0, 0, 0, 4, 2, 1), rat(1, 12));
        let a = triple_index_formula_a(1, 0, 0, 0, 0, 0);
        let b = triple_index_formula_b(1, 0, 0, 0, 0, 0);
        assert_eq!(a, b);
        assert_eq!(a, explicit_multi(&idx(&[1, 0, 0]), &wt(&[0, 0, 0])));
    }

    #[test]
    fn triple_formulas_agree_with_explicit() {
        for m1 in 0..=3u32 {
            for m2 in 0..=3u32 {
                for m3 in 0..=3u32 {
                    for k1 in -1..=1i64 {
                        for k2 in -1..=1i64 {
                            for k3 in -1..=1i64 {
                                let e = explicit_multi(&idx(&[m1, m2, m3]), &wt(&[k1, k2, k3]));
                                assert_eq!(
                                    triple_index_formula_a(m1, m2, m3, k1, k2, k3),
                                    e,
                                    "A at ({m1},{m2},{m3}),({k1},{k2},{k3})"
                                );
                                assert_eq!(
                                    triple_index_formula_b(m1, m2, m3, k1, k2, k3),
                                    e,
                                    "B at ({m1},{m2},{m3}),({k1},{k2},{k3})"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn duality_examples() {
        let sym = duality_check(&idx(&[1, 1]), &idx(&[1, 1]));
        assert!(sym.holds);
        assert_eq!(sym.lhs, rat(26, 1));
        assert_eq!(sym.rhs, rat(26, 1));

        let asym = duality_check(&idx(&[1, 0]), &idx(&[0, 1]));
        assert!(asym.holds);
        assert_eq!(asym.lhs, rat(3, 1));

        let trivial = duality_check(&idx(&[0]), &idx(&[0]));
        assert!(trivial.holds);
        assert_eq!(trivial.lhs, rat(1, 1));
    }

    #[test]
    fn duality_small_grid() {
        for m1 in 0..=2u32 {
            for m2 in 0..=2u32 {
                for k1 in 0..=2u32 {
                    for k2 in 0..=2u32 {
                        let check = duality_check(&idx(&[m1, m2]), &idx(&[k1, k2]));
                        assert!(check.holds, "duality at m=({m1},{m2}), k=({k1},{k2})");
                    }
                }
            }
        }
    }

    #[test]
    fn compute_rank_validation() {
        let err = compute(&idx(&[1]), &wt(&[1]), Method::Double).unwrap_err();
        assert_eq!(err.expected, 2);
        assert_eq!(err.got, 1);
        let ok = compute(&idx(&[1, 1]), &wt(&[-1, -1]), Method::Double).unwrap();
        assert_eq!(ok, rat(26, 1));
    }

    #[test]
    fn method_tags_round_trip() {
        for method in Method::ALL {
            assert_eq!(method.tag().parse::<Method>().unwrap(), method);
        }
        assert_eq!("auto".parse::<Method>().unwrap(), Method::Explicit);
        assert!("bogus".parse::<Method>().is_err());
    }

    #[test]
    fn concurrent_evaluations() {
        let handles: Vec<_> = (0..8u32)
            .map(|i| {
                std::thread::spawn(move || {
                    let m = idx(&[i % 3, 1]);
                    let k = wt(&[-1, 1]);
                    explicit_multi(&m, &k)
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    }
}
