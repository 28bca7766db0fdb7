//! Exact computation of multi-indexed poly-Bernoulli numbers.
//!
//! The crate provides three independent routes to the same family of
//! rational numbers and the machinery to cross-check them coefficient by
//! coefficient:
//!
//! * explicit alternating Stirling-number formulas, from the classical
//!   Bernoulli case through double- and triple-indexed specializations up
//!   to the general multi-indexed formula ([`bernoulli`]);
//! * series oracles that expand the defining generating function inside a
//!   sparse truncated multivariate power-series ring ([`oracles`],
//!   [`series`]);
//! * the closed-form generating function of the negated-weight family and
//!   its coefficient verifier ([`genfunc`]), which also witnesses the
//!   duality `B_m^{(-k)} = B_k^{(-m)}`.
//!
//! All arithmetic is exact: arbitrary-precision integers and reduced
//! rationals throughout.

pub mod bernoulli;
pub mod combinatorics;
pub mod genfunc;
pub mod oracles;
pub mod rational;
pub mod series;
pub mod stirling;

pub use bernoulli::{
    classical_bernoulli, compute, compute_record, double_index_formula, duality_check,
    explicit_multi, poly_bernoulli, triple_index_formula_a, triple_index_formula_b, DualityCheck,
    IndexTuple, Method, PolyBernoulliRecord, RankMismatch, WeightTuple,
};
pub use combinatorics::{binomial, compositions, factorial, multinomial, Composition};
pub use genfunc::{genfunc_closed, verify_genfunc, Mismatch};
pub use oracles::{
    ell_sum_series, li_sha_series, oracle_ell_sum, oracle_li_sha, single_index_multiple,
};
pub use rational::{int, rat, rational_int_pow, Integer, Rational};
pub use series::{LinearForm, MultiSeries, SeriesError};
pub use stirling::{stirling2, stirling2_closed, with_stirling_table, StirlingTable};
