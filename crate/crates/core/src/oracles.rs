//! Series oracles for multi-indexed poly-Bernoulli numbers, built directly
//! from the defining generating function rather than from any explicit
//! formula.
//!
//! Two independent routes are provided. `oracle_ell_sum` expands the
//! quotient as a sum over weight tuples `l` of products
//! `(1 - e^{-t_j - ... - t_r})^{l_j}`; each such term has total-degree
//! valuation at least `l_1 + ... + l_r`, so tuples beyond the truncation
//! bound cannot touch any retained coefficient. `oracle_li_sha` expands the
//! nested polylogarithm sum itself and divides by the product of
//! `1 - e^{-t_j - ... - t_r}` factors; each summand there has valuation at
//! least `m'_r`, so the cutoff `m'_r <= N + r` covers every coefficient of
//! the quotient up to total degree `N`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::bernoulli::{IndexTuple, WeightTuple};
use crate::combinatorics::{compositions, factorial};
use crate::rational::{upow, Rational};
use crate::series::{LinearForm, MultiSeries};
use num_traits::One;

/// The linear form `t_from + t_{from+1} + ... + t_{r-1}` over `r` variables.
fn suffix_form(num_vars: usize, from: usize, sign: i64) -> LinearForm {
    let mut coeffs = vec![0i64; num_vars];
    for c in coeffs.iter_mut().skip(from) {
        *c = sign;
    }
    LinearForm::from_ints(&coeffs)
}

/// `z_j = 1 - e^{-(t_j + ... + t_r)}` (zero-based `j`) truncated at `trunc`.
fn one_minus_exp_neg_suffix(num_vars: usize, trunc: u32, from: usize) -> MultiSeries {
    MultiSeries::one(num_vars, trunc).sub(&MultiSeries::exp_linear(
        num_vars,
        trunc,
        &suffix_form(num_vars, from, -1),
    ))
}

/// Powers `z^0 ..= z^max_pow` of one series.
fn power_table(z: &MultiSeries, max_pow: u32) -> Vec<MultiSeries> {
    let mut powers = Vec::with_capacity(max_pow as usize + 1);
    powers.push(MultiSeries::one(z.num_vars(), z.truncation()));
    for p in 1..=max_pow as usize {
        let next = powers[p - 1].mul(z);
        powers.push(next);
    }
    powers
}

type ProductTable = Vec<(Vec<u32>, MultiSeries)>;
type ProductCache = Mutex<HashMap<(usize, u32), Arc<ProductTable>>>;
type SeriesCache = Mutex<HashMap<(usize, u32), Arc<MultiSeries>>>;

fn ell_product_cache() -> &'static ProductCache {
    static CACHE: OnceLock<ProductCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Products `prod_j z_j^{l_j}` for every tuple `l` with `sum l_j <= trunc`,
/// truncated at `trunc`. Weight-independent, so shared across evaluations.
fn ell_products(r: usize, trunc: u32) -> Arc<ProductTable> {
    if let Some(hit) = ell_product_cache().lock().unwrap().get(&(r, trunc)) {
        return Arc::clone(hit);
    }
    let z: Vec<MultiSeries> = (0..r)
        .map(|j| one_minus_exp_neg_suffix(r, trunc, j))
        .collect();
    let powers: Vec<Vec<MultiSeries>> = z.iter().map(|zj| power_table(zj, trunc)).collect();
    let mut table = Vec::new();
    for s in 0..=trunc {
        for l in compositions(s, r) {
            let mut prod = powers[0][l[0] as usize].clone();
            for j in 1..r {
                prod = prod.mul(&powers[j][l[j] as usize]);
            }
            table.push((l.parts().to_vec(), prod));
        }
    }
    let table = Arc::new(table);
    ell_product_cache()
        .lock()
        .unwrap()
        .insert((r, trunc), Arc::clone(&table));
    table
}

/// The l-expansion of the defining quotient, truncated at total degree
/// `trunc`: `sum_l prod_j z_j^{l_j} / ((l_1+1)^{k_1} ... (l_1+...+l_r+r)^{k_r})`.
pub fn ell_sum_series(k: &WeightTuple, trunc: u32) -> MultiSeries {
    let r = k.len();
    let products = ell_products(r, trunc);
    let mut acc = MultiSeries::zero(r, trunc);
    for (l, prod) in products.iter() {
        let mut weight = Rational::one();
        let mut prefix = 0u64;
        for (j, &lj) in l.iter().enumerate() {
            prefix += lj as u64;
            weight *= upow(prefix + j as u64 + 1, -k.as_slice()[j]);
        }
        acc = acc.add(&prod.scale(&weight));
    }
    acc
}

/// Oracle from the l-expansion of the defining generating function:
/// `m_1! ... m_r!` times the coefficient of `t_1^{m_1} ... t_r^{m_r}`.
pub fn oracle_ell_sum(m: &IndexTuple, k: &WeightTuple) -> Rational {
    assert_eq!(m.len(), k.len(), "index and weight tuples must share length");
    let series = ell_sum_series(k, m.total());
    let coeff = series
        .coefficient(m.as_slice())
        .expect("series was truncated at the index total");
    let scale: Rational = m
        .as_slice()
        .iter()
        .map(|&mi| Rational::from_integer(factorial(mi)))
        .product();
    coeff * scale
}

/// Strictly increasing tuples `0 < m_1 < ... < m_len <= max`.
fn increasing_tuples(len: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn rec(len: usize, max: u32, from: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        let remaining = (len - current.len()) as u32;
        for v in from..=max.saturating_sub(remaining - 1) {
            current.push(v);
            rec(len, max, v + 1, current, out);
            current.pop();
        }
    }
    rec(len, max, 1, &mut current, &mut out);
    out
}

fn li_numerator_cache() -> &'static ProductCache {
    static CACHE: OnceLock<ProductCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Numerator summands `prod_j z_j^{e_j}` of the sha-type polylogarithm,
/// keyed by the increasing tuple `m'`, with `e_1 = m'_1` and
/// `e_j = m'_j - m'_{j-1}`. Truncated at `trunc + r`, cutoff `m'_r <= trunc + r`.
fn li_numerator_products(r: usize, trunc: u32) -> Arc<ProductTable> {
    if let Some(hit) = li_numerator_cache().lock().unwrap().get(&(r, trunc)) {
        return Arc::clone(hit);
    }
    let working = trunc + r as u32;
    let z: Vec<MultiSeries> = (0..r)
        .map(|j| one_minus_exp_neg_suffix(r, working, j))
        .collect();
    let powers: Vec<Vec<MultiSeries>> = z.iter().map(|zj| power_table(zj, working)).collect();
    let mut table = Vec::new();
    for mp in increasing_tuples(r, working) {
        let mut prod = powers[0][mp[0] as usize].clone();
        for j in 1..r {
            prod = prod.mul(&powers[j][(mp[j] - mp[j - 1]) as usize]);
        }
        table.push((mp, prod));
    }
    let table = Arc::new(table);
    li_numerator_cache()
        .lock()
        .unwrap()
        .insert((r, trunc), Arc::clone(&table));
    table
}

fn unit_cofactor_cache() -> &'static SeriesCache {
    static CACHE: OnceLock<SeriesCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Inverse of the unit cofactors: each factor `z_j` splits as
/// `u_j * g_j` with `u_j = t_j + ... + t_r` its valuation-one content and
/// `g_j` of constant term one; this returns `prod_j g_j^{-1}`.
fn unit_cofactor_inverse(r: usize, trunc: u32) -> Arc<MultiSeries> {
    if let Some(hit) = unit_cofactor_cache().lock().unwrap().get(&(r, trunc)) {
        return Arc::clone(hit);
    }
    let mut acc = MultiSeries::one(r, trunc);
    for j in 0..r {
        let z = one_minus_exp_neg_suffix(r, trunc + 1, j);
        let g = z
            .div_linear_exact(&suffix_form(r, j, 1))
            .expect("1 - e^{-u} is divisible by u");
        let g_inv = g.inverse().expect("g has constant term 1");
        acc = acc.mul(&g_inv);
    }
    let acc = Arc::new(acc);
    unit_cofactor_cache()
        .lock()
        .unwrap()
        .insert((r, trunc), Arc::clone(&acc));
    acc
}

/// The defining quotient expanded from the sha-type polylogarithm itself,
/// truncated at total degree `trunc`.
///
/// The numerator (cutoff `m'_r <= trunc + r`, see the module notes) is
/// multiplied by the inverted unit cofactors and then divided exactly by
/// each valuation-one content `u_j`; every summand carries every `z_j` with
/// exponent at least one, so the divisions cannot leave a remainder.
pub fn li_sha_series(k: &WeightTuple, trunc: u32) -> MultiSeries {
    let r = k.len();
    let working = trunc + r as u32;
    let products = li_numerator_products(r, trunc);
    let mut numerator = MultiSeries::zero(r, working);
    for (mp, prod) in products.iter() {
        let mut weight = Rational::one();
        for (j, &mpj) in mp.iter().enumerate() {
            weight *= upow(mpj as u64, -k.as_slice()[j]);
        }
        numerator = numerator.add(&prod.scale(&weight));
    }
    let mut quotient = numerator.mul(&unit_cofactor_inverse(r, working));
    for j in 0..r {
        quotient = quotient
            .div_linear_exact(&suffix_form(r, j, 1))
            .expect("numerator divisible by every valuation-one content");
    }
    quotient
}

/// Oracle from the defining equation itself: `m_1! ... m_r!` times the
/// coefficient of `t_1^{m_1} ... t_r^{m_r}` in the expanded quotient.
pub fn oracle_li_sha(m: &IndexTuple, k: &WeightTuple) -> Rational {
    assert_eq!(m.len(), k.len(), "index and weight tuples must share length");
    let series = li_sha_series(k, m.total());
    let coeff = series
        .coefficient(m.as_slice())
        .expect("quotient known up to the index total");
    let scale: Rational = m
        .as_slice()
        .iter()
        .map(|&mi| Rational::from_integer(factorial(mi)))
        .product();
    coeff * scale
}

/// Single-index multiple poly-Bernoulli number `B_n^{(k_1,...,k_r)}` from
/// the univariate quotient `Li_{k_1..k_r}(1 - e^{-t}) / (1 - e^{-t})^r`.
///
/// Every summand has `z`-exponent `m'_r >= r`, so dividing by `z^r` is an
/// exact exponent shift; the cutoff `m'_r <= n + r` then covers the
/// coefficient of `t^n`.
pub fn single_index_multiple(n: u32, k: &WeightTuple) -> Rational {
    let r = k.len();
    let cutoff = n + r as u32;
    let z = MultiSeries::one(1, n).sub(&MultiSeries::exp_linear(
        1,
        n,
        &LinearForm::from_ints(&[-1]),
    ));
    let zpow = power_table(&z, n);
    let mut quotient = MultiSeries::zero(1, n);
    for mp in increasing_tuples(r, cutoff) {
        let mut weight = Rational::one();
        for (j, &mpj) in mp.iter().enumerate() {
            weight *= upow(mpj as u64, -k.as_slice()[j]);
        }
        quotient = quotient.add(&zpow[(mp[r - 1] - r as u32) as usize].scale(&weight));
    }
    let coeff = quotient
        .coefficient(&[n])
        .expect("quotient truncated at n");
    coeff * Rational::from_integer(factorial(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::{classical_bernoulli, explicit_multi, poly_bernoulli};
    use crate::rational::rat;

    fn idx(v: &[u32]) -> IndexTuple {
        IndexTuple::new(v.to_vec())
    }

    fn wt(v: &[i64]) -> WeightTuple {
        WeightTuple::new(v.to_vec())
    }

    #[test]
    fn ell_sum_constant_case() {
        assert_eq!(oracle_ell_sum(&idx(&[0]), &wt(&[5])), rat(1, 1));
    }

    #[test]
    fn ell_sum_recovers_classical_bernoulli() {
        assert_eq!(oracle_ell_sum(&idx(&[1]), &wt(&[1])), rat(1, 2));
        for m in 0..=6u32 {
            assert_eq!(
                oracle_ell_sum(&idx(&[m]), &wt(&[1])),
                classical_bernoulli(m),
                "m = {m}"
            );
        }
    }

    #[test]
    fn ell_sum_confirms_golden_double_value() {
        assert_eq!(oracle_ell_sum(&idx(&[1, 1]), &wt(&[-1, -1])), rat(26, 1));
    }

    #[test]
    fn li_sha_trivial_cases() {
        assert_eq!(oracle_li_sha(&idx(&[0, 0]), &wt(&[0, 0])), rat(1, 1));
        assert_eq!(oracle_li_sha(&idx(&[1]), &wt(&[-1])), rat(2, 1));
        assert_eq!(oracle_li_sha(&idx(&[1]), &wt(&[-1])), poly_bernoulli(1, -1));
    }

    #[test]
    fn li_sha_confirms_golden_double_value() {
        assert_eq!(oracle_li_sha(&idx(&[1, 1]), &wt(&[-1, -1])), rat(26, 1));
    }

    #[test]
    fn oracles_agree_with_explicit_small_sweep() {
        // r <= 2, small indices; the full grid is covered by the acceptance suite
        for m1 in 0..=2u32 {
            for m2 in 0..=2u32 {
                for k1 in -1..=1i64 {
                    for k2 in -1..=1i64 {
                        let m = idx(&[m1, m2]);
                        let k = wt(&[k1, k2]);
                        let reference = explicit_multi(&m, &k);
                        assert_eq!(oracle_ell_sum(&m, &k), reference, "ell at {m:?} {k:?}");
                        assert_eq!(oracle_li_sha(&m, &k), reference, "li at {m:?} {k:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn oracles_agree_rank_three_spot_checks() {
        for (m, k) in [
            (idx(&[0, 0, 1]), wt(&[-1, -1, -1])),
            (idx(&[1, 1, 1]), wt(&[-1, -1, -1])),
            (idx(&[1, 0, 2]), wt(&[2, -1, 0])),
        ] {
            let reference = explicit_multi(&m, &k);
            assert_eq!(oracle_ell_sum(&m, &k), reference, "ell at {m:?} {k:?}");
            assert_eq!(oracle_li_sha(&m, &k), reference, "li at {m:?} {k:?}");
        }
    }

    #[test]
    fn single_index_reduces_to_poly_bernoulli() {
        assert_eq!(single_index_multiple(1, &wt(&[-1])), rat(2, 1));
        for n in 0..=5u32 {
            for k in -2..=2i64 {
                assert_eq!(
                    single_index_multiple(n, &wt(&[k])),
                    poly_bernoulli(n, k),
                    "n = {n}, k = {k}"
                );
            }
        }
    }

    #[test]
    fn single_index_matches_degenerate_tuple() {
        assert_eq!(single_index_multiple(0, &wt(&[0, 0])), rat(1, 1));
        for n in 0..=3u32 {
            for k1 in -1..=1i64 {
                for k2 in -1..=1i64 {
                    assert_eq!(
                        single_index_multiple(n, &wt(&[k1, k2])),
                        explicit_multi(&idx(&[0, n]), &wt(&[k1, k2])),
                        "n = {n}, k = ({k1},{k2})"
                    );
                }
            }
        }
    }

    #[test]
    fn increasing_tuple_enumeration() {
        assert_eq!(increasing_tuples(1, 3), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(
            increasing_tuples(2, 3),
            vec![vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(increasing_tuples(3, 2), Vec::<Vec<u32>>::new());
    }
}
