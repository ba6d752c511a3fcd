//! Verification harness: golden-table reproduction, identity checks,
//! positivity certification, and independent oracles for the plethystic
//! logarithm and the enlarged-quiver companion matrix.
//!
//! Every check returns a [`CheckReport`]; failures are report content, not
//! errors. Randomized checks take an explicit seed so runs reproduce.

mod golden;
mod identities;

pub use golden::check_tables;
pub use identities::{
    check_gamma_oracle, check_heine, check_jordan, check_level_transport, check_mozgovoy_transport,
    check_oracle_log, check_positivity, check_sum_identity, check_width_one,
};

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use thiserror::Error;

use crate::hua::HuaError;
use crate::qfield::{IntPolynomial, RationalFunction};
use crate::quiver::{Quiver, QuiverError};
use crate::series::{ExponentKey, SeriesContext, SeriesError, TruncatedSeries};

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub input: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: String,
    pub cases: Vec<CaseResult>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            status: "pass".to_string(),
            cases: Vec::new(),
        }
    }

    /// Records one comparison; pass iff the rendered values agree.
    pub fn case(
        &mut self,
        input: impl Into<String>,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) {
        let expected = expected.to_string();
        let actual = actual.to_string();
        let pass = expected == actual;
        self.push(CaseResult {
            input: input.into(),
            expected,
            actual,
            pass,
        });
    }

    /// Records a predicate with an explicit outcome.
    pub fn case_bool(
        &mut self,
        input: impl Into<String>,
        expected: impl Into<String>,
        actual: impl fmt::Display,
        pass: bool,
    ) {
        self.push(CaseResult {
            input: input.into(),
            expected: expected.into(),
            actual: actual.to_string(),
            pass,
        });
    }

    fn push(&mut self, case: CaseResult) {
        if !case.pass {
            self.status = "fail".to_string();
        }
        self.cases.push(case);
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn failed_cases(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failed_cases().count();
        if failed == 0 {
            write!(f, "{}: pass ({} cases)", self.name, self.cases.len())?;
        } else {
            write!(
                f,
                "{}: FAIL ({failed}/{} cases)",
                self.name,
                self.cases.len()
            )?;
            for c in self.failed_cases() {
                write!(
                    f,
                    "\n  {} | expected {} | got {}",
                    c.input, c.expected, c.actual
                )?;
            }
        }
        Ok(())
    }
}

/// Solves Exp(L) = f for L grade by grade: at each weight the missing terms
/// of f against Exp of the partial solution are exactly the new terms of L.
/// This route never calls the plethystic logarithm, so it can check it.
pub fn oracle_log(f: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    if !f.constant_term().is_one() {
        return Err(SeriesError::ConstantTermNotOne);
    }
    let ctx = f.context().clone();
    let mut solution = TruncatedSeries::zero(ctx.clone());
    for w in 1..=ctx.weight_bound() {
        let image = solution.plethystic_exp()?;
        let diff = f.sub(&image)?;
        let grade: Vec<(ExponentKey, RationalFunction)> = diff
            .terms()
            .filter(|(k, _)| ctx.key_weight(k) == w as u64)
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        if grade.is_empty() {
            continue;
        }
        solution = solution.add(&TruncatedSeries::from_terms(ctx.clone(), grade)?)?;
    }
    Ok(solution)
}

/// The enlarged-quiver companion matrix read off by brute-force expansion of
/// the level quadratic form: substitute the suffix sums, collect the
/// coefficient of every variable pair, and fold onto the upper triangle.
/// Independent of the closed form used by `Quiver::gamma_m`.
pub fn gamma_m_oracle(quiver: &Quiver, m: u32) -> Result<Vec<Vec<u32>>, QuiverError> {
    assert!(m >= 1);
    let n = quiver.vertex_count();
    for i in 0..n {
        if quiver.arrows(i, i) == 0 {
            return Err(QuiverError::MissingLoop {
                vertex: quiver.vertex_label(i).to_string(),
            });
        }
    }
    let nm = n * m as usize;
    let flat = |i: usize, k: u32| (k as usize - 1) * n + i;
    // Ordered coefficient collection: coeff[v][w] of the product x_v x_w,
    // with v from the left beta factor and w from the right.
    let mut coeff = vec![vec![0i64; nm]; nm];
    for k in 1..=m {
        for i in 0..n {
            coeff[flat(i, k)][flat(i, k)] += 1;
        }
        for i in 0..n {
            for s in 0..n {
                let d = quiver.arrows(i, s) as i64 - i64::from(i == s);
                for a in k..=m {
                    for b in k..=m {
                        coeff[flat(i, a)][flat(s, b)] += d;
                    }
                }
            }
        }
    }
    let mut companion = vec![vec![0u32; nm]; nm];
    for v in 0..nm {
        for w in 0..nm {
            let c = if v == w {
                coeff[v][v]
            } else if v < w {
                coeff[v][w] + coeff[w][v]
            } else {
                0
            };
            companion[v][w] = u32::try_from(c).expect("non-negative arrow count");
        }
    }
    Ok(companion)
}

/// Deterministic source for the randomized suites.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn random_rational(rng: &mut ChaCha8Rng) -> RationalFunction {
    let num = random_poly(rng, 3, 4);
    let mut den = random_poly(rng, 2, 4);
    while den.is_zero() {
        den = random_poly(rng, 2, 4);
    }
    RationalFunction::new(num, den).expect("nonzero denominator")
}

pub(crate) fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize, max_abs: i64) -> IntPolynomial {
    let deg = rng.gen_range(0..=max_deg);
    IntPolynomial::from_coeffs(
        (0..=deg)
            .map(|_| rng.gen_range(-max_abs..=max_abs).into())
            .collect(),
    )
}

pub(crate) fn random_nonneg_poly(
    rng: &mut ChaCha8Rng,
    max_deg: usize,
    max_coeff: i64,
) -> IntPolynomial {
    let deg = rng.gen_range(0..=max_deg);
    IntPolynomial::from_coeffs(
        (0..=deg)
            .map(|_| rng.gen_range(0..=max_coeff).into())
            .collect(),
    )
}

/// A random series with zero constant term over n variables of weight 1.
pub fn random_positive_series(
    rng: &mut ChaCha8Rng,
    n: usize,
    bound: u32,
    max_terms: usize,
) -> TruncatedSeries {
    let ctx = SeriesContext::dims(n, bound);
    let count = rng.gen_range(0..=max_terms);
    let mut terms = Vec::with_capacity(count);
    for _ in 0..count {
        let mut key = vec![0u32; n];
        loop {
            for e in key.iter_mut() {
                *e = rng.gen_range(0..=bound);
            }
            let total: u32 = key.iter().sum();
            if total >= 1 && total <= bound {
                break;
            }
        }
        terms.push((ExponentKey::new(key), random_rational(rng)));
    }
    TruncatedSeries::from_terms(ctx, terms).expect("keys fit the context")
}

/// A random quiver with a loop at every vertex.
pub(crate) fn random_enough_loop_quiver(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    max_entries: u32,
) -> Quiver {
    let n = rng.gen_range(1..=max_n);
    let mut companion = vec![vec![0u32; n]; n];
    for (i, row) in companion.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let low = u32::from(i == j);
            *cell = rng.gen_range(low..=max_entries.max(low));
        }
    }
    Quiver::new(companion).expect("square by construction")
}

/// Settings shared by the named suites.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Overrides each suite's default weight bound when set.
    pub weight: Option<u32>,
    /// Seed for the randomized suites.
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            weight: None,
            seed: 1729,
        }
    }
}

pub const SUITE_NAMES: &[&str] = &[
    "tables",
    "sum",
    "transport",
    "positivity",
    "jordan",
    "heine",
    "width1",
    "mozgovoy",
    "oracle",
    "gamma",
];

fn two_loop() -> Quiver {
    Quiver::g_loop(2)
}

fn loops_and_arrow() -> Quiver {
    Quiver::parse("[[1,1],[0,1]]").expect("constant matrix")
}

fn single_arrow() -> Quiver {
    Quiver::parse("[[0,1],[0,0]]").expect("constant matrix")
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite `{name}`; available: {available} or all")]
    UnknownSuite { name: String, available: String },
    #[error(transparent)]
    Check(#[from] HuaError),
}

/// Runs one named suite; `all` runs every suite in order.
pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<Vec<CheckReport>, SuiteError> {
    let w = |default: u32| cfg.weight.unwrap_or(default);
    let reports = match name {
        "tables" => vec![check_tables()?],
        "sum" => vec![
            check_sum_identity(&two_loop(), w(4))?,
            check_sum_identity(&loops_and_arrow(), w(4))?,
            check_sum_identity(&single_arrow(), w(4))?,
            check_sum_identity(&Quiver::g_loop(3), w(3))?,
        ],
        "transport" => (1..=3)
            .map(|g| check_level_transport(&Quiver::g_loop(g), 2, w(4)))
            .collect::<Result<Vec<_>, _>>()?,
        "positivity" => {
            let mut out = Vec::new();
            for g in 1..=3 {
                out.push(check_positivity(&Quiver::g_loop(g), w(4))?);
            }
            out.push(check_positivity(&loops_and_arrow(), w(4))?);
            out.push(check_positivity(&single_arrow(), w(4))?);
            out
        }
        "jordan" => vec![check_jordan(w(6))?],
        "heine" => vec![check_heine(w(8))?],
        "width1" => vec![
            check_width_one(&two_loop(), w(3))?,
            check_width_one(&single_arrow(), w(3))?,
            check_width_one(&loops_and_arrow(), w(3))?,
        ],
        "mozgovoy" => vec![check_mozgovoy_transport(20, w(4), cfg.seed)?],
        "oracle" => vec![check_oracle_log(50, cfg.seed)?],
        "gamma" => vec![check_gamma_oracle(30, cfg.seed)?],
        "all" => {
            let mut out = Vec::new();
            for suite in SUITE_NAMES {
                out.extend(run_suite(suite, cfg)?);
            }
            out
        }
        other => {
            return Err(SuiteError::UnknownSuite {
                name: other.to_string(),
                available: SUITE_NAMES.join(", "),
            })
        }
    };
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hua::p_series;

    #[test]
    fn oracle_log_trivial_cases() {
        let ctx = SeriesContext::dims(1, 4);
        let one = TruncatedSeries::one(ctx.clone());
        assert!(oracle_log(&one).unwrap().is_zero());

        let x = TruncatedSeries::monomial(
            ctx.clone(),
            ExponentKey::new(vec![1]),
            RationalFunction::one(),
        )
        .unwrap();
        let f = x.plethystic_exp().unwrap();
        assert_eq!(oracle_log(&f).unwrap(), x);

        assert!(oracle_log(&TruncatedSeries::zero(ctx)).is_err());
    }

    #[test]
    fn oracle_log_matches_plethystic_log_on_hua_series() {
        let f = p_series(&Quiver::g_loop(2), 3).unwrap();
        assert_eq!(oracle_log(&f).unwrap(), f.plethystic_log().unwrap());
    }

    #[test]
    fn gamma_oracle_matches_closed_form_on_g_loops() {
        for g in 1..=3u32 {
            for m in 1..=3u32 {
                let q = Quiver::g_loop(g);
                assert_eq!(
                    gamma_m_oracle(&q, m).unwrap(),
                    q.gamma_m(m).unwrap().companion().to_vec(),
                    "g={g} m={m}"
                );
            }
        }
    }

    #[test]
    fn gamma_oracle_needs_loops() {
        assert!(gamma_m_oracle(&single_arrow(), 2).is_err());
    }

    #[test]
    fn report_rendering() {
        let mut r = CheckReport::new("demo");
        r.case("a", "1", "1");
        assert!(r.passed());
        assert_eq!(r.to_string(), "demo: pass (1 cases)");
        r.case("b", "1", "2");
        assert!(!r.passed());
        assert_eq!(r.status, "fail");
        assert!(r.to_string().contains("expected 1 | got 2"));
    }

    #[test]
    fn unknown_suite_lists_options() {
        let err = run_suite("nope", &VerifyConfig::default()).unwrap_err();
        assert!(err.to_string().contains("tables"));
    }
}
