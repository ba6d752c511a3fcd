//! Truncated multivariate power series over Q(q).
//!
//! Terms are stored sparsely as `ExponentKey -> RationalFunction` with zero
//! coefficients pruned. Every key carries a weight (the grading) computed
//! from per-variable weights; keys above the context's weight bound are
//! dropped by every operation, so arithmetic is exact below the bound.
//!
//! Two gradings are in play. A dimension-type context has one variable per
//! vertex, each of weight 1, and a key is a dimension vector. A refined
//! context has one variable per (vertex, level) pair in level-major order;
//! a key stores the multiplicity matrix entry m_{ik} while the variable
//! X_{ik} implicitly carries the exponent k*m_{ik}, so the weight of
//! variable (i,k) is k. In both cases the displayed exponent of variable j
//! is weight_j * key_j.

mod plethystic;

pub use plethystic::moebius;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::qfield::RationalFunction;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series contexts differ (variables, weights, or bound)")]
    ContextMismatch,
    #[error("exponent key has length {got}, context has {expected} variables")]
    KeyLength { expected: usize, got: usize },
    #[error("constant term must be 0 for this operation")]
    ConstantTermNotZero,
    #[error("constant term must be 1 for this operation")]
    ConstantTermNotOne,
}

/// Exponent data of one monomial over the context's variable set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentKey(Vec<u32>);

impl ExponentKey {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentKey(entries)
    }

    pub fn zero(nvars: usize) -> Self {
        ExponentKey(vec![0; nvars])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn plus(&self, other: &ExponentKey) -> ExponentKey {
        ExponentKey(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn scaled(&self, d: u32) -> ExponentKey {
        ExponentKey(self.0.iter().map(|a| a * d).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesContext {
    labels: Vec<String>,
    weights: Vec<u32>,
    weight_bound: u32,
}

impl SeriesContext {
    pub fn new(labels: Vec<String>, weights: Vec<u32>, weight_bound: u32) -> Self {
        assert_eq!(labels.len(), weights.len());
        assert!(
            weights.iter().all(|&w| w >= 1),
            "variable weights must be positive"
        );
        SeriesContext {
            labels,
            weights,
            weight_bound,
        }
    }

    /// One variable per vertex, X1..Xn, each of weight 1.
    pub fn dims(n: usize, weight_bound: u32) -> Self {
        SeriesContext::new(
            (1..=n).map(|i| format!("X{i}")).collect(),
            vec![1; n],
            weight_bound,
        )
    }

    /// One variable per (vertex, level) pair, level-major: X1_1..Xn_1,
    /// X1_2..Xn_2, ...; the variable for level k has weight k.
    pub fn refined(n: usize, levels: u32, weight_bound: u32) -> Self {
        let mut labels = Vec::with_capacity(n * levels as usize);
        let mut weights = Vec::with_capacity(n * levels as usize);
        for k in 1..=levels {
            for i in 1..=n {
                labels.push(format!("X{i}_{k}"));
                weights.push(k);
            }
        }
        SeriesContext::new(labels, weights, weight_bound)
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weight_bound(&self) -> u32 {
        self.weight_bound
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn key_weight(&self, key: &ExponentKey) -> u64 {
        key.entries()
            .iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    fn in_bound(&self, key: &ExponentKey) -> bool {
        self.key_weight(key) <= self.weight_bound as u64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    context: SeriesContext,
    terms: BTreeMap<ExponentKey, RationalFunction>,
}

impl TruncatedSeries {
    pub fn zero(context: SeriesContext) -> Self {
        TruncatedSeries {
            context,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(context: SeriesContext) -> Self {
        TruncatedSeries::constant(context, RationalFunction::one())
    }

    pub fn constant(context: SeriesContext, value: RationalFunction) -> Self {
        let mut s = TruncatedSeries::zero(context);
        if !value.is_zero() {
            s.terms.insert(ExponentKey::zero(s.context.nvars()), value);
        }
        s
    }

    /// A single monomial; silently truncated away if above the bound.
    pub fn monomial(
        context: SeriesContext,
        key: ExponentKey,
        coeff: RationalFunction,
    ) -> Result<Self, SeriesError> {
        if key.len() != context.nvars() {
            return Err(SeriesError::KeyLength {
                expected: context.nvars(),
                got: key.len(),
            });
        }
        let mut s = TruncatedSeries::zero(context);
        if !coeff.is_zero() && s.context.in_bound(&key) {
            s.terms.insert(key, coeff);
        }
        Ok(s)
    }

    /// Assembles a series from key/coefficient pairs, summing duplicates.
    pub fn from_terms(
        context: SeriesContext,
        terms: impl IntoIterator<Item = (ExponentKey, RationalFunction)>,
    ) -> Result<Self, SeriesError> {
        let mut s = TruncatedSeries::zero(context);
        for (key, coeff) in terms {
            if key.len() != s.context.nvars() {
                return Err(SeriesError::KeyLength {
                    expected: s.context.nvars(),
                    got: key.len(),
                });
            }
            if !s.context.in_bound(&key) {
                continue;
            }
            s.accumulate(key, coeff);
        }
        Ok(s)
    }

    fn accumulate(&mut self, key: ExponentKey, coeff: RationalFunction) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn context(&self) -> &SeriesContext {
        &self.context
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &ExponentKey) -> RationalFunction {
        self.terms
            .get(key)
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    pub fn constant_term(&self) -> RationalFunction {
        self.coefficient(&ExponentKey::zero(self.context.nvars()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentKey, &RationalFunction)> {
        self.terms.iter()
    }

    fn check_context(&self, other: &TruncatedSeries) -> Result<(), SeriesError> {
        if self.context != other.context {
            return Err(SeriesError::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (key, coeff) in &other.terms {
            out.accumulate(key.clone(), coeff.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (key, coeff) in &other.terms {
            out.accumulate(key.clone(), -coeff);
        }
        Ok(out)
    }

    /// Truncated product: key pairs whose combined weight exceeds the bound
    /// are dropped as they arise.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_context(other)?;
        let bound = self.context.weight_bound as u64;
        let rhs: Vec<(&ExponentKey, u64, &RationalFunction)> = other
            .terms
            .iter()
            .map(|(k, c)| (k, other.context.key_weight(k), c))
            .collect();
        let mut out = TruncatedSeries::zero(self.context.clone());
        for (ka, ca) in &self.terms {
            let wa = self.context.key_weight(ka);
            for (kb, wb, cb) in &rhs {
                if wa + wb > bound {
                    continue;
                }
                out.accumulate(ka.plus(kb), ca * *cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<TruncatedSeries, SeriesError> {
        let mut out = TruncatedSeries::one(self.context.clone());
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Multiplies every coefficient by a scalar from Q(q).
    pub fn scale(&self, c: &RationalFunction) -> TruncatedSeries {
        if c.is_zero() {
            return TruncatedSeries::zero(self.context.clone());
        }
        TruncatedSeries {
            context: self.context.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn negate(&self) -> TruncatedSeries {
        TruncatedSeries {
            context: self.context.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    /// The Adams operation psi_d: q -> q^d on coefficients and key -> d*key,
    /// dropping keys that leave the bound.
    pub fn adams(&self, d: u32) -> TruncatedSeries {
        assert!(d >= 1, "Adams operations are indexed by positive integers");
        if d == 1 {
            return self.clone();
        }
        let mut out = TruncatedSeries::zero(self.context.clone());
        for (key, coeff) in &self.terms {
            let scaled = key.scaled(d);
            if out.context.in_bound(&scaled) {
                out.accumulate(scaled, coeff.substitute_power(d));
            }
        }
        out
    }

    /// Keys in graded lexicographic order (weight first, then key order).
    pub fn sorted_keys(&self) -> Vec<&ExponentKey> {
        let mut keys: Vec<&ExponentKey> = self.terms.keys().collect();
        keys.sort_by_key(|k| (self.context.key_weight(k), (*k).clone()));
        keys
    }

    /// The display form of one key, e.g. "X1^2*X2" or "1".
    pub fn monomial_text(&self, key: &ExponentKey) -> String {
        let mut pieces = Vec::new();
        for (j, &e) in key.entries().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let exponent = e as u64 * self.context.weights[j] as u64;
            if exponent == 1 {
                pieces.push(self.context.labels[j].clone());
            } else {
                pieces.push(format!("{}^{}", self.context.labels[j], exponent));
            }
        }
        if pieces.is_empty() {
            "1".to_string()
        } else {
            pieces.join("*")
        }
    }

    /// Deterministic multi-line dump used by snapshot tests and the CLI.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for key in self.sorted_keys() {
            let _ = writeln!(out, "{}: {}", self.monomial_text(key), self.terms[key]);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RationalFunction {
        s.parse().unwrap()
    }

    fn single_var(bound: u32) -> SeriesContext {
        SeriesContext::dims(1, bound)
    }

    fn x_power(ctx: &SeriesContext, e: u32) -> TruncatedSeries {
        TruncatedSeries::monomial(
            ctx.clone(),
            ExponentKey::new(vec![e]),
            RationalFunction::one(),
        )
        .unwrap()
    }

    #[test]
    fn product_truncates_at_bound() {
        let ctx = single_var(2);
        let one = TruncatedSeries::one(ctx.clone());
        let x = x_power(&ctx, 1);
        let one_plus = one.add(&x).unwrap();
        let one_minus = one.sub(&x).unwrap();
        let product = one_plus.mul(&one_minus).unwrap();
        let expect = TruncatedSeries::one(ctx.clone())
            .sub(&x_power(&ctx, 2))
            .unwrap();
        assert_eq!(product, expect);

        let tight = SeriesContext::dims(1, 1);
        let p = TruncatedSeries::one(tight.clone())
            .add(&x_power(&tight, 1))
            .unwrap();
        let sq = p.mul(&p).unwrap();
        assert_eq!(sq.coefficient(&ExponentKey::new(vec![1])), rf("2"));
        assert_eq!(sq.coefficient(&ExponentKey::new(vec![0])), rf("1"));
        assert_eq!(sq.len(), 2);
    }

    #[test]
    fn add_zero_is_identity() {
        let ctx = single_var(3);
        let s = x_power(&ctx, 2).scale(&rf("q/(q-1)"));
        let z = TruncatedSeries::zero(ctx);
        assert_eq!(s.add(&z).unwrap(), s);
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = TruncatedSeries::one(SeriesContext::dims(1, 3));
        let b = TruncatedSeries::one(SeriesContext::dims(2, 3));
        assert_eq!(a.add(&b), Err(SeriesError::ContextMismatch));
        let c = TruncatedSeries::one(SeriesContext::dims(1, 4));
        assert_eq!(a.mul(&c), Err(SeriesError::ContextMismatch));
    }

    #[test]
    fn adams_scales_keys_and_coefficients() {
        let ctx = single_var(4);
        let s = x_power(&ctx, 1).scale(&rf("q+1"));
        let t = s.adams(2);
        assert_eq!(t.coefficient(&ExponentKey::new(vec![2])), rf("q^2+1"));
        assert_eq!(t.len(), 1);
        assert_eq!(s.adams(1), s);

        // Keys leaving the bound vanish.
        let far = x_power(&ctx, 3);
        assert!(far.adams(2).is_zero());
    }

    #[test]
    fn adams_on_two_variables() {
        let ctx = SeriesContext::dims(2, 6);
        let s =
            TruncatedSeries::monomial(ctx.clone(), ExponentKey::new(vec![1, 1]), rf("q")).unwrap();
        let t = s.adams(3);
        assert_eq!(t.coefficient(&ExponentKey::new(vec![3, 3])), rf("q^3"));
    }

    #[test]
    fn refined_context_weights_and_display() {
        let ctx = SeriesContext::refined(2, 2, 6);
        assert_eq!(ctx.labels(), &["X1_1", "X2_1", "X1_2", "X2_2"]);
        assert_eq!(ctx.weights(), &[1, 1, 2, 2]);
        let key = ExponentKey::new(vec![1, 0, 2, 0]);
        assert_eq!(ctx.key_weight(&key), 5);
        let s = TruncatedSeries::monomial(ctx, key, rf("q")).unwrap();
        let keys = s.sorted_keys();
        // X1_2 holds m=2 at level 2, so the displayed exponent is 4.
        assert_eq!(s.monomial_text(keys[0]), "X1_1*X1_2^4");
    }

    #[test]
    fn dump_is_graded_lexicographic() {
        let ctx = SeriesContext::dims(2, 3);
        let mut s = TruncatedSeries::one(ctx.clone());
        for (key, c) in [
            (vec![1, 0], "q"),
            (vec![0, 1], "1"),
            (vec![1, 1], "q^2"),
            (vec![2, 0], "-1"),
        ] {
            s = s
                .add(&TruncatedSeries::monomial(ctx.clone(), ExponentKey::new(key), rf(c)).unwrap())
                .unwrap();
        }
        assert_eq!(s.dump(), "1: 1\nX2: 1\nX1: q\nX1*X2: q^2\nX1^2: -1\n");
    }
}
