//! Exact arithmetic: arbitrary-precision integers and reduced rationals.
//!
//! Every value that leaves this crate is a [`Rational`] in lowest terms with
//! a positive denominator, or an [`Integer`]. Both are re-exported from the
//! `num` family, which maintains those invariants on every operation.

use num_traits::{One, Signed, Zero};

/// Arbitrary-precision signed integer.
pub type Integer = num_bigint::BigInt;

/// Exact ratio of two [`Integer`]s, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Shorthand for an [`Integer`] from a machine integer.
pub fn int(n: i64) -> Integer {
    Integer::from(n)
}

/// Shorthand for a [`Rational`] with machine-sized numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

/// Embed an [`Integer`] as a [`Rational`] with denominator one.
pub fn rational_from_integer(n: Integer) -> Rational {
    Rational::from_integer(n)
}

/// `base^exp` as an exact rational, for any signed exponent.
///
/// A negative exponent yields the unit fraction `1 / base^|exp|`.
/// Requires `base >= 1`.
pub fn rational_int_pow(base: &Integer, exp: i64) -> Rational {
    assert!(base.is_positive(), "rational_int_pow requires base >= 1, got {base}");
    let mag = base.pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(Integer::one(), mag)
    }
}

/// `base^exp` for a machine-sized base; see [`rational_int_pow`].
pub fn upow(base: u64, exp: i64) -> Rational {
    rational_int_pow(&Integer::from(base), exp)
}

/// True when `r` is reduced and its denominator is positive.
///
/// `num_rational` keeps every value in this form; the check exists so tests
/// can audit outputs of compound computations.
pub fn is_normalized(r: &Rational) -> bool {
    use num_integer::Integer as _;
    r.denom().is_positive()
        && (r.numer().is_zero() && r.denom().is_one()
            || r.numer().gcd(r.denom()).is_one())
}
