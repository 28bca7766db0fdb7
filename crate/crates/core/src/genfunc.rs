//! Closed-form generating function of the numbers with negated weights, and
//! its coefficient-level verifier.
//!
//! In `2r` variables `x_1..x_r, y_1..y_r`, the generating function
//! `sum B_{m}^{(-k)} x^m y^k / (m! k!)` equals the product over `j` of
//! `e^{X_j + Y_j} / (e^{X_j} - e^{X_j + Y_j} + e^{Y_j})` where
//! `X_j = x_j + ... + x_r` and `Y_j = y_j + ... + y_r`. Each denominator has
//! constant term `1 - 1 + 1 = 1`, so it inverts as a series.

use crate::bernoulli::{explicit_multi, IndexTuple, WeightTuple};
use crate::combinatorics::{compositions, factorial};
use crate::rational::Rational;
use crate::series::{LinearForm, MultiSeries};

/// One failed coefficient comparison: series side vs. formula side.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub m: Vec<u32>,
    pub k: Vec<i64>,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Linear form over `2r` variables with ones on `x_from..x_r` (when `with_x`)
/// and `y_from..y_r` (when `with_y`).
fn xy_suffix_form(r: usize, from: usize, with_x: bool, with_y: bool) -> LinearForm {
    let mut coeffs = vec![0i64; 2 * r];
    for j in from..r {
        if with_x {
            coeffs[j] = 1;
        }
        if with_y {
            coeffs[r + j] = 1;
        }
    }
    LinearForm::from_ints(&coeffs)
}

/// The closed-form product, truncated at total degree `truncation`, in the
/// variable order `x_1..x_r, y_1..y_r`.
pub fn genfunc_closed(r: usize, truncation: u32) -> MultiSeries {
    assert!(r >= 1, "rank must be positive");
    let v = 2 * r;
    let mut acc = MultiSeries::one(v, truncation);
    for j in 0..r {
        let e_xy = MultiSeries::exp_linear(v, truncation, &xy_suffix_form(r, j, true, true));
        let e_x = MultiSeries::exp_linear(v, truncation, &xy_suffix_form(r, j, true, false));
        let e_y = MultiSeries::exp_linear(v, truncation, &xy_suffix_form(r, j, false, true));
        let denom = e_x.sub(&e_xy).add(&e_y);
        let factor = e_xy.mul(&denom.inverse().expect("denominator has constant term 1"));
        acc = acc.mul(&factor);
    }
    acc
}

/// Compare every coefficient of [`genfunc_closed`] of total degree at most
/// `degree` against [`explicit_multi`] with negated weights, returning the
/// (ideally empty) list of violations in graded-lexicographic order.
pub fn verify_genfunc(r: usize, degree: u32) -> Vec<Mismatch> {
    let series = genfunc_closed(r, degree);
    let mut mismatches = Vec::new();
    for total in 0..=degree {
        for expo in compositions(total, 2 * r) {
            let m: Vec<u32> = expo[..r].to_vec();
            let ky: Vec<u32> = expo[r..].to_vec();
            let coeff = series
                .coefficient(expo.parts())
                .expect("exponent within truncation");
            let scale: Rational = expo
                .parts()
                .iter()
                .map(|&e| Rational::from_integer(factorial(e)))
                .product();
            let lhs = coeff * scale;
            let k: Vec<i64> = ky.iter().map(|&e| -(e as i64)).collect();
            let rhs = explicit_multi(
                &IndexTuple::new(m.clone()),
                &WeightTuple::new(k.clone()),
            );
            if lhs != rhs {
                mismatches.push(Mismatch { m, k, lhs, rhs });
            }
        }
    }
    mismatches
}
