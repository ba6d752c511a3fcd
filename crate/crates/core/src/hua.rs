//! The generating series of a quiver and the tables extracted from them.
//!
//! A term is indexed by a tuple of dimension vectors (alpha^1, ..., alpha^r)
//! with alpha^r nonzero; writing beta^k for the suffix sum over levels >= k,
//! its value is
//!
//!   prod_k q^(<a^k,a^k> - <b^k,b^k>) * |R(a^k)| / |GL(a^k)|.
//!
//! The dimension series attaches the monomial X^(sum_k k*alpha^k); the
//! refined series keeps the levels separate, keyed by the multiplicity
//! matrix with column k equal to alpha^k. Applying (q-1) Log to either
//! series and reading off coefficients yields the Kac table and the refined
//! Kac table respectively.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::partitions::{MultiplicityMatrix, Partition, PartitionError, PartitionTuple};
use crate::qfield::{gl_order, q_minus_one, IntPolynomial, QFieldError, RationalFunction};
use crate::quiver::{DimVector, Quiver, QuiverError};
use crate::series::{ExponentKey, SeriesContext, SeriesError, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HuaError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    QField(#[from] QFieldError),
    #[error("key of weight {weight} is outside the table range 1..={bound}")]
    OutOfBound { weight: u32, bound: u32 },
}

/// The factor contributed by one tuple of dimension vectors.
pub fn hua_term(quiver: &Quiver, alphas: &[DimVector]) -> Result<RationalFunction, HuaError> {
    let mut cache = GlCache::default();
    hua_term_cached(quiver, alphas, &mut cache)
}

#[derive(Default, Clone)]
struct GlCache {
    orders: HashMap<Vec<u32>, IntPolynomial>,
}

impl GlCache {
    fn order(&mut self, alpha: &DimVector) -> IntPolynomial {
        self.orders
            .entry(alpha.entries().to_vec())
            .or_insert_with(|| gl_order(alpha.entries()))
            .clone()
    }
}

fn hua_term_cached(
    quiver: &Quiver,
    alphas: &[DimVector],
    cache: &mut GlCache,
) -> Result<RationalFunction, HuaError> {
    assert!(!alphas.is_empty(), "a term needs at least one level");
    let n = quiver.vertex_count();
    let mut exponent: i64 = 0;
    let mut den = IntPolynomial::one();
    let mut beta = DimVector::zero(n);
    // Walk levels from the top so the suffix sums come for free.
    for alpha in alphas.iter().rev() {
        beta = beta.plus(alpha);
        exponent += quiver.euler_form(alpha, alpha)?;
        exponent -= quiver.euler_form(&beta, &beta)?;
        exponent += quiver.rep_space_exponent(alpha)?;
        den = &den * &cache.order(alpha);
    }
    let (num, extra_den) = if exponent >= 0 {
        (
            IntPolynomial::q_power(exponent as usize),
            IntPolynomial::one(),
        )
    } else {
        (
            IntPolynomial::one(),
            IntPolynomial::q_power((-exponent) as usize),
        )
    };
    Ok(RationalFunction::new(num, &den * &extra_den)?)
}

/// All dimension vectors over n vertices with total <= bound, ascending
/// lexicographic.
fn dim_vectors_up_to(n: usize, bound: u32) -> Vec<DimVector> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    gen_dims(0, bound, &mut current, &mut out);
    out.sort();
    out
}

fn gen_dims(i: usize, budget: u32, current: &mut Vec<u32>, out: &mut Vec<DimVector>) {
    if i == current.len() {
        out.push(DimVector::new(current.clone()));
        return;
    }
    for v in 0..=budget {
        current[i] = v;
        gen_dims(i + 1, budget - v, current, out);
    }
    current[i] = 0;
}

/// All level tuples (alpha^1, ..., alpha^r) with r <= max_level, the last
/// vector nonzero, and sum_k k*|alpha^k| <= weight_bound. Interior zero
/// vectors are kept (they shift the suffix sums); trailing zeros are not
/// generated, matching the trimmed normal form.
fn level_tuples(n: usize, weight_bound: u32, max_level: u32) -> Vec<Vec<DimVector>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    gen_levels(n, 1, weight_bound, max_level, &mut current, &mut out);
    out
}

fn gen_levels(
    n: usize,
    level: u32,
    budget: u32,
    max_level: u32,
    current: &mut Vec<DimVector>,
    out: &mut Vec<Vec<DimVector>>,
) {
    if level > max_level {
        return;
    }
    for alpha in dim_vectors_up_to(n, budget / level) {
        let cost = level * alpha.total();
        current.push(alpha.clone());
        if !alpha.is_zero() {
            out.push(current.clone());
        }
        gen_levels(n, level + 1, budget - cost, max_level, current, out);
        current.pop();
    }
}

/// Evaluates the terms of a series in parallel and merges them into a map.
/// Accumulation is a commutative sum of exact values, so the result does
/// not depend on the worker count (RAYON_NUM_THREADS).
fn assemble_terms(
    quiver: &Quiver,
    tuples: &[Vec<DimVector>],
    key_of: impl Fn(&[DimVector]) -> ExponentKey + Sync,
) -> Result<BTreeMap<ExponentKey, RationalFunction>, HuaError> {
    // One shared |GL| cache, filled over the distinct vectors up front.
    let mut cache = GlCache::default();
    for tuple in tuples {
        for alpha in tuple {
            cache.order(alpha);
        }
    }
    let chunk_size = (tuples.len() / 64 + 1).max(16);
    let chunks: Vec<Result<BTreeMap<ExponentKey, RationalFunction>, HuaError>> = tuples
        .par_chunks(chunk_size)
        .map_with(cache, |cache, chunk| {
            let mut local: BTreeMap<ExponentKey, RationalFunction> = BTreeMap::new();
            for tuple in chunk {
                let coeff = hua_term_cached(quiver, tuple, cache)?;
                let key = key_of(tuple);
                match local.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(coeff);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() = e.get() + &coeff;
                    }
                }
            }
            Ok(local)
        })
        .collect();
    let mut merged: BTreeMap<ExponentKey, RationalFunction> = BTreeMap::new();
    for chunk in chunks {
        for (key, coeff) in chunk? {
            match merged.entry(key) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(coeff);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() = e.get() + &coeff;
                }
            }
        }
    }
    merged.retain(|_, c| !c.is_zero());
    Ok(merged)
}

/// The dimension-graded series: 1 plus one term per level tuple, with
/// monomial X^(sum_k k*alpha^k), truncated at total dimension `weight_bound`.
pub fn p_series(quiver: &Quiver, weight_bound: u32) -> Result<TruncatedSeries, HuaError> {
    let n = quiver.vertex_count();
    let ctx = SeriesContext::dims(n, weight_bound);
    let tuples = level_tuples(n, weight_bound, weight_bound);
    let terms = assemble_terms(quiver, &tuples, |tuple| {
        let mut exps = vec![0u32; n];
        for (k, alpha) in tuple.iter().enumerate() {
            for (i, &a) in alpha.entries().iter().enumerate() {
                exps[i] += (k as u32 + 1) * a;
            }
        }
        ExponentKey::new(exps)
    })?;
    TruncatedSeries::one(ctx.clone())
        .add(&TruncatedSeries::from_terms(ctx, terms)?)
        .map_err(Into::into)
}

/// The refined series with levels capped at `max_part` (weight_bound when
/// None): keys are multiplicity matrices in level-major layout, column k
/// holding alpha^k.
pub fn q_series(
    quiver: &Quiver,
    weight_bound: u32,
    max_part: Option<u32>,
) -> Result<TruncatedSeries, HuaError> {
    let n = quiver.vertex_count();
    let levels = max_part.unwrap_or(weight_bound).max(1);
    let ctx = SeriesContext::refined(n, levels, weight_bound);
    let tuples = level_tuples(n, weight_bound, levels.min(weight_bound).max(1));
    let nvars = n * levels as usize;
    let terms = assemble_terms(quiver, &tuples, |tuple| {
        let mut exps = vec![0u32; nvars];
        for (k, alpha) in tuple.iter().enumerate() {
            for (i, &a) in alpha.entries().iter().enumerate() {
                exps[k * n + i] = a;
            }
        }
        ExponentKey::new(exps)
    })?;
    TruncatedSeries::one(ctx.clone())
        .add(&TruncatedSeries::from_terms(ctx, terms)?)
        .map_err(Into::into)
}

/// Converts a refined-series key back to the partition tuple it indexes.
pub(crate) fn key_to_tuple(key: &ExponentKey, n: usize) -> PartitionTuple {
    let levels = key.len() / n;
    let components = (0..n)
        .map(|i| {
            let mut parts = Vec::new();
            for k in (1..=levels).rev() {
                let m = key.entries()[(k - 1) * n + i];
                for _ in 0..m {
                    parts.push(k as u32);
                }
            }
            Partition::new(parts).expect("descending by construction")
        })
        .collect();
    PartitionTuple::new(components)
}

/// Kac polynomials A(alpha, q) for all alpha with 1 <= |alpha| <= the bound.
#[derive(Clone, Debug)]
pub struct KacTable {
    quiver: Quiver,
    weight_bound: u32,
    entries: BTreeMap<DimVector, RationalFunction>,
}

impl KacTable {
    /// Extracts the table as the coefficients of (q-1) Log of the dimension
    /// series.
    pub fn compute(quiver: &Quiver, weight_bound: u32) -> Result<KacTable, HuaError> {
        let series = p_series(quiver, weight_bound)?;
        let log = series.plethystic_log()?.scale(&q_minus_one());
        let entries = log
            .terms()
            .map(|(key, coeff)| (DimVector::new(key.entries().to_vec()), coeff.clone()))
            .collect();
        Ok(KacTable {
            quiver: quiver.clone(),
            weight_bound,
            entries,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn weight_bound(&self) -> u32 {
        self.weight_bound
    }

    /// The value at a dimension vector inside the bound; structural zeros
    /// come back as explicit 0.
    pub fn get(&self, alpha: &DimVector) -> Result<RationalFunction, HuaError> {
        if alpha.len() != self.quiver.vertex_count() {
            return Err(QuiverError::DimensionMismatch {
                expected: self.quiver.vertex_count(),
                got: alpha.len(),
            }
            .into());
        }
        let weight = alpha.total();
        if weight == 0 || weight > self.weight_bound {
            return Err(HuaError::OutOfBound {
                weight,
                bound: self.weight_bound,
            });
        }
        Ok(self
            .entries
            .get(alpha)
            .cloned()
            .unwrap_or_else(RationalFunction::zero))
    }

    /// Stored (nonzero) entries in graded lexicographic order.
    pub fn entries(&self) -> Vec<(&DimVector, &RationalFunction)> {
        let mut out: Vec<_> = self.entries.iter().collect();
        out.sort_by_key(|(a, _)| (a.total(), (*a).clone()));
        out
    }

    /// Every in-bound dimension vector paired with its (possibly zero)
    /// value, in graded lexicographic order.
    pub fn dense_entries(&self) -> Vec<(DimVector, RationalFunction)> {
        let mut out = Vec::new();
        for w in 1..=self.weight_bound {
            let mut grade: Vec<DimVector> = dim_vectors_up_to(self.quiver.vertex_count(), w)
                .into_iter()
                .filter(|a| a.total() == w)
                .collect();
            grade.sort();
            for alpha in grade {
                let value = self.get(&alpha).expect("in bound");
                out.push((alpha, value));
            }
        }
        out
    }
}

/// Refined Kac functions A(lambda_*, q) for tuples with parts <= max_part
/// and 1 <= total weight <= the bound.
#[derive(Clone, Debug)]
pub struct RefinedKacTable {
    quiver: Quiver,
    weight_bound: u32,
    max_part: u32,
    entries: BTreeMap<PartitionTuple, RationalFunction>,
}

impl RefinedKacTable {
    /// Extracts the table as the coefficients of (q-1) Log of the refined
    /// series, re-keyed from multiplicity matrices to partition tuples.
    pub fn compute(
        quiver: &Quiver,
        weight_bound: u32,
        max_part: Option<u32>,
    ) -> Result<RefinedKacTable, HuaError> {
        let n = quiver.vertex_count();
        let series = q_series(quiver, weight_bound, max_part)?;
        let log = series.plethystic_log()?.scale(&q_minus_one());
        let entries = log
            .terms()
            .map(|(key, coeff)| (key_to_tuple(key, n), coeff.clone()))
            .collect();
        Ok(RefinedKacTable {
            quiver: quiver.clone(),
            weight_bound,
            max_part: max_part.unwrap_or(weight_bound).max(1),
            entries,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn weight_bound(&self) -> u32 {
        self.weight_bound
    }

    pub fn max_part(&self) -> u32 {
        self.max_part
    }

    /// The value at a partition tuple inside the bounds; zeros are explicit.
    pub fn get(&self, t: &PartitionTuple) -> Result<RationalFunction, HuaError> {
        if t.len() != self.quiver.vertex_count() {
            return Err(QuiverError::DimensionMismatch {
                expected: self.quiver.vertex_count(),
                got: t.len(),
            }
            .into());
        }
        if t.max_part() > self.max_part {
            return Err(PartitionError::PartExceedsMax {
                part: t.max_part(),
                max: self.max_part,
            }
            .into());
        }
        let weight = t.total_weight();
        if weight == 0 || weight > self.weight_bound {
            return Err(HuaError::OutOfBound {
                weight,
                bound: self.weight_bound,
            });
        }
        Ok(self
            .entries
            .get(t)
            .cloned()
            .unwrap_or_else(RationalFunction::zero))
    }

    /// Stored (nonzero) entries, graded by total weight.
    pub fn entries(&self) -> Vec<(&PartitionTuple, &RationalFunction)> {
        let mut out: Vec<_> = self.entries.iter().collect();
        out.sort_by_key(|(t, _)| (t.total_weight(), (*t).clone()));
        out
    }

    /// Every in-bound tuple paired with its (possibly zero) value, graded by
    /// total weight.
    pub fn dense_entries(&self) -> Vec<(PartitionTuple, RationalFunction)> {
        crate::partitions::enumerate_tuples(
            self.quiver.vertex_count(),
            self.weight_bound,
            Some(self.max_part),
        )
        .into_iter()
        .filter(|t| t.total_weight() >= 1)
        .map(|t| {
            let value = self.get(&t).expect("in bound");
            (t, value)
        })
        .collect()
    }

    /// The tuple and multiplicity-vector renderings of a key, as shown in
    /// tables.
    pub fn key_display(t: &PartitionTuple) -> (String, String) {
        (t.to_string(), MultiplicityMatrix::from_tuple(t).to_string())
    }
}
