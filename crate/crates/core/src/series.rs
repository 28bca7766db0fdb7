//! Sparse multivariate formal power series over [`Rational`], truncated by
//! total degree.
//!
//! A series knows its variable count `v` and truncation bound `N` and stores
//! only nonzero coefficients, keyed by exponent tuple in graded-lexicographic
//! order (total degree first, then lexicographic). All ring operations are
//! exact; anything of total degree above `N` is discarded, and coefficient
//! queries above `N` are errors rather than zeros, since those values were
//! never computed.

use std::collections::BTreeMap;
use std::fmt;

use crate::rational::Rational;
use num_traits::{One, Zero};

/// Exponent tuple ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
struct GradedExp(Vec<u32>);

impl GradedExp {
    fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for GradedExp {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for GradedExp {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Errors surfaced by series operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesError {
    /// Inversion requires constant term exactly one.
    NotInvertible,
    /// Requested coefficient lies beyond the truncation bound: unknown, not zero.
    OutOfTruncation { degree: u32, truncation: u32 },
    /// Exact division left a remainder.
    DivisionNotExact,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::NotInvertible => {
                write!(f, "series is not invertible: constant term must be 1")
            }
            SeriesError::OutOfTruncation { degree, truncation } => write!(
                f,
                "coefficient of total degree {degree} requested from a series truncated at {truncation}"
            ),
            SeriesError::DivisionNotExact => write!(f, "exact division left a remainder"),
        }
    }
}

impl std::error::Error for SeriesError {}

/// A linear form `c_1 t_1 + ... + c_v t_v` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: Vec<Rational>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        LinearForm { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        LinearForm {
            coeffs: coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(),
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl std::ops::Add for &LinearForm {
    type Output = LinearForm;

    fn add(self, rhs: &LinearForm) -> LinearForm {
        assert_eq!(self.len(), rhs.len(), "linear forms over different variables");
        LinearForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Sparse truncated multivariate formal power series over [`Rational`].
///
/// Two series compare equal when they have the same variable count and the
/// same term map; stored terms never include zero coefficients or exponents
/// above the truncation bound.
#[derive(Clone, Debug)]
pub struct MultiSeries {
    num_vars: usize,
    truncation: u32,
    terms: BTreeMap<GradedExp, Rational>,
}

impl PartialEq for MultiSeries {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.terms == other.terms
    }
}

impl Eq for MultiSeries {}

impl MultiSeries {
    /// The zero series in `num_vars` variables truncated at total degree
    /// `truncation`.
    pub fn zero(num_vars: usize, truncation: u32) -> Self {
        assert!(num_vars >= 1, "a series needs at least one variable");
        MultiSeries {
            num_vars,
            truncation,
            terms: BTreeMap::new(),
        }
    }

    /// The constant series 1.
    pub fn one(num_vars: usize, truncation: u32) -> Self {
        let mut s = Self::zero(num_vars, truncation);
        s.set_coefficient(&vec![0; num_vars], Rational::one());
        s
    }

    /// The monomial `t_index` (zero-based variable index).
    pub fn var(num_vars: usize, truncation: u32, index: usize) -> Self {
        assert!(index < num_vars, "variable index out of range");
        let mut s = Self::zero(num_vars, truncation);
        let mut e = vec![0; num_vars];
        e[index] = 1;
        s.set_coefficient(&e, Rational::one());
        s
    }

    /// A constant series with the given value.
    pub fn constant(num_vars: usize, truncation: u32, value: Rational) -> Self {
        let mut s = Self::zero(num_vars, truncation);
        s.set_coefficient(&vec![0; num_vars], value);
        s
    }

    /// Build a series from explicit terms, summing duplicates; terms above
    /// the truncation bound are dropped, zero sums are pruned.
    pub fn from_terms(
        num_vars: usize,
        truncation: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Self {
        let mut s = Self::zero(num_vars, truncation);
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars, "exponent arity mismatch");
            s.add_to_coefficient(GradedExp(e), c);
        }
        s
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Stored terms in graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.0.as_slice(), c))
    }

    /// Constant term (zero if absent).
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&GradedExp(vec![0; self.num_vars]))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Stored coefficient at `expo`, or zero; errors above the truncation
    /// bound because that value was never computed.
    pub fn coefficient(&self, expo: &[u32]) -> Result<Rational, SeriesError> {
        assert_eq!(expo.len(), self.num_vars, "exponent arity mismatch");
        let degree: u32 = expo.iter().sum();
        if degree > self.truncation {
            return Err(SeriesError::OutOfTruncation {
                degree,
                truncation: self.truncation,
            });
        }
        Ok(self
            .terms
            .get(&GradedExp(expo.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero))
    }

    fn set_coefficient(&mut self, expo: &[u32], value: Rational) {
        let key = GradedExp(expo.to_vec());
        if key.degree() > self.truncation || value.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, value);
        }
    }

    fn add_to_coefficient(&mut self, key: GradedExp, value: Rational) {
        if key.degree() > self.truncation || value.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(slot) => {
                slot.insert(value);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += value;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.num_vars, other.num_vars, "series variable counts differ");
        assert_eq!(self.truncation, other.truncation, "series truncations differ");
    }

    /// Exact sum.
    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_to_coefficient(e.clone(), c.clone());
        }
        out
    }

    /// Exact difference.
    pub fn sub(&self, rhs: &Self) -> Self {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_to_coefficient(e.clone(), -c.clone());
        }
        out
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars, self.truncation);
        }
        let mut out = Self::zero(self.num_vars, self.truncation);
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    /// Exact product, truncated to the common total-degree bound.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_compatible(rhs);
        let mut out = Self::zero(self.num_vars, self.truncation);
        for (ea, ca) in &self.terms {
            let da = ea.degree();
            if da > self.truncation {
                break;
            }
            for (eb, cb) in &rhs.terms {
                // graded key order: every later eb only has larger degree
                if da + eb.degree() > self.truncation {
                    break;
                }
                let e = GradedExp(ea.0.iter().zip(&eb.0).map(|(x, y)| x + y).collect());
                out.add_to_coefficient(e, ca * cb);
            }
        }
        out
    }

    /// `self^exponent` by binary exponentiation; `a^0` is the constant 1.
    pub fn pow(&self, exponent: u32) -> Self {
        let mut result = Self::one(self.num_vars, self.truncation);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `exp(c_1 t_1 + ... + c_v t_v)` truncated at total degree `truncation`.
    pub fn exp_linear(num_vars: usize, truncation: u32, form: &LinearForm) -> Self {
        assert_eq!(form.len(), num_vars, "linear form arity mismatch");
        let mut base = Self::zero(num_vars, truncation);
        for (i, c) in form.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; num_vars];
                e[i] = 1;
                base.set_coefficient(&e, c.clone());
            }
        }
        let mut out = Self::one(num_vars, truncation);
        let mut term = Self::one(num_vars, truncation);
        for d in 1..=truncation {
            term = term.mul(&base).scale(&Rational::new(1.into(), (d as i64).into()));
            if term.is_zero() {
                break;
            }
            out = out.add(&term);
        }
        out
    }

    /// Multiplicative inverse up to the truncation bound.
    ///
    /// Errors unless the constant term is exactly 1; rescaling a general
    /// unit constant term is the caller's responsibility.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_one() {
            return Err(SeriesError::NotInvertible);
        }
        // self = 1 - h with h of valuation >= 1, so the inverse is
        // sum h^i; N Horner steps reach every term up to the bound
        let h = Self::one(self.num_vars, self.truncation).sub(self);
        let one = Self::one(self.num_vars, self.truncation);
        let mut inv = one.clone();
        for _ in 0..self.truncation {
            inv = one.add(&h.mul(&inv));
        }
        Ok(inv)
    }

    /// Copy truncated to a lower total-degree bound.
    pub fn truncated(&self, truncation: u32) -> Self {
        assert!(truncation <= self.truncation, "cannot raise a truncation bound");
        let mut out = Self::zero(self.num_vars, truncation);
        for (e, c) in &self.terms {
            if e.degree() > truncation {
                break;
            }
            out.terms.insert(e.clone(), c.clone());
        }
        out
    }

    /// Exact division by a homogeneous linear form.
    ///
    /// The quotient is determined one degree lower than the input, so its
    /// truncation bound drops by one. Errors if the form is zero or the
    /// division leaves a remainder in any homogeneous degree.
    pub fn div_linear_exact(&self, form: &LinearForm) -> Result<Self, SeriesError> {
        assert_eq!(form.len(), self.num_vars, "linear form arity mismatch");
        assert!(self.truncation >= 1, "nothing is known below truncation 1");
        let lead = form
            .coeffs()
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(SeriesError::DivisionNotExact)?;
        let lead_coeff = form.coeffs()[lead].clone();
        if !self.constant_term().is_zero() {
            return Err(SeriesError::DivisionNotExact);
        }

        // split into homogeneous components
        let mut by_degree: Vec<Vec<(Vec<u32>, Rational)>> =
            vec![Vec::new(); self.truncation as usize + 1];
        for (e, c) in &self.terms {
            by_degree[e.degree() as usize].push((e.0.clone(), c.clone()));
        }

        // multiply a homogeneous slice by the tail of the form (vars after `lead`)
        let tail_mul = |part: &BTreeMap<Vec<u32>, Rational>| {
            let mut out: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
            for (e, c) in part {
                for (i, fc) in form.coeffs().iter().enumerate().skip(lead + 1) {
                    if fc.is_zero() {
                        continue;
                    }
                    let mut shifted = e.clone();
                    shifted[i] += 1;
                    let entry = out.entry(shifted).or_insert_with(Rational::zero);
                    *entry += c * fc;
                }
            }
            out.retain(|_, v| !v.is_zero());
            out
        };

        let mut out = Self::zero(self.num_vars, self.truncation - 1);
        for d in 1..=self.truncation {
            // solve component P_d = form * Q_{d-1}, peeling powers of the
            // leading variable from the top down
            let mut residual: BTreeMap<Vec<u32>, Rational> =
                by_degree[d as usize].iter().cloned().collect();
            let max_p = residual.keys().map(|e| e[lead]).max().unwrap_or(0);
            let mut quotient_part: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
            for p in (1..=max_p).rev() {
                let layer: Vec<(Vec<u32>, Rational)> = residual
                    .iter()
                    .filter(|(e, _)| e[lead] == p)
                    .map(|(e, c)| (e.clone(), c.clone()))
                    .collect();
                let mut solved: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
                for (e, c) in layer {
                    let mut q_expo = e.clone();
                    q_expo[lead] -= 1;
                    solved.insert(q_expo, c / &lead_coeff);
                }
                // subtract form * solved from the residual
                for (e, c) in &solved {
                    let mut bumped = e.clone();
                    bumped[lead] += 1;
                    subtract_term(&mut residual, bumped, c * &lead_coeff);
                }
                for (e, c) in tail_mul(&solved) {
                    subtract_term(&mut residual, e, c);
                }
                quotient_part.extend(solved);
            }
            if !residual.is_empty() {
                return Err(SeriesError::DivisionNotExact);
            }
            for (e, c) in quotient_part {
                out.add_to_coefficient(GradedExp(e), c);
            }
        }
        Ok(out)
    }

    /// JSON dump: `{"vars": v, "trunc": N, "terms": [{"e": [...], "num": "...",
    /// "den": "..."}, ...]}` with terms in graded-lexicographic order and
    /// integers as decimal strings.
    pub fn to_json_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{{\"vars\":{},\"trunc\":{},\"terms\":[",
            self.num_vars, self.truncation
        ));
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                out.push(',');
            }
            first = false;
            let expo: Vec<String> = e.0.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!(
                "{{\"e\":[{}],\"num\":\"{}\",\"den\":\"{}\"}}",
                expo.join(","),
                c.numer(),
                c.denom()
            ));
        }
        out.push_str("]}");
        out
    }
}

fn subtract_term(map: &mut BTreeMap<Vec<u32>, Rational>, e: Vec<u32>, c: Rational) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(e) {
        Entry::Vacant(slot) => {
            slot.insert(-c);
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() -= c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

impl std::ops::Add for &MultiSeries {
    type Output = MultiSeries;

    fn add(self, rhs: &MultiSeries) -> MultiSeries {
        MultiSeries::add(self, rhs)
    }
}

impl std::ops::Sub for &MultiSeries {
    type Output = MultiSeries;

    fn sub(self, rhs: &MultiSeries) -> MultiSeries {
        MultiSeries::sub(self, rhs)
    }
}

impl std::ops::Mul for &MultiSeries {
    type Output = MultiSeries;

    fn mul(self, rhs: &MultiSeries) -> MultiSeries {
        MultiSeries::mul(self, rhs)
    }
}
