//! Formal and plethystic exponential/logarithm on truncated series.
//!
//! The plethystic pair is built from Adams operations:
//!   Exp(s) = exp(sum_{d>=1} psi_d(s)/d)
//!   Log(f) = sum_{d>=1} (mu(d)/d) psi_d(log f)
//! with exp/log the ordinary Taylor sums. Since psi_d multiplies every key
//! weight by d, both sums stop at d = weight_bound.

use crate::qfield::RationalFunction;

use super::{SeriesError, TruncatedSeries};

/// The classical Moebius function, by trial factorization.
pub fn moebius(d: u32) -> i64 {
    assert!(d >= 1, "moebius is defined on positive integers");
    let mut n = d;
    let mut primes = 0u32;
    let mut p = 2u32;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    if primes.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl TruncatedSeries {
    /// exp(s) = sum_{k>=0} s^k / k!, requiring constant term 0.
    pub fn formal_exp(&self) -> Result<TruncatedSeries, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::ConstantTermNotZero);
        }
        let mut result = TruncatedSeries::one(self.context().clone());
        let mut term = TruncatedSeries::one(self.context().clone());
        for k in 1..=self.context().weight_bound() {
            term = term
                .mul(self)?
                .scale(&RationalFunction::from_ratio(1, k as i64).expect("nonzero factorial step"));
            if term.is_zero() {
                break;
            }
            result = result.add(&term)?;
        }
        Ok(result)
    }

    /// log(f) = sum_{k>=1} (-1)^(k+1) (f-1)^k / k, requiring constant term 1.
    pub fn formal_log(&self) -> Result<TruncatedSeries, SeriesError> {
        if !self.constant_term().is_one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let g = self.sub(&TruncatedSeries::one(self.context().clone()))?;
        let mut result = TruncatedSeries::zero(self.context().clone());
        let mut power = TruncatedSeries::one(self.context().clone());
        for k in 1..=self.context().weight_bound() {
            power = power.mul(&g)?;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            result = result.add(
                &power.scale(&RationalFunction::from_ratio(sign, k as i64).expect("k >= 1")),
            )?;
        }
        Ok(result)
    }

    /// The plethystic exponential; requires constant term 0.
    pub fn plethystic_exp(&self) -> Result<TruncatedSeries, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::ConstantTermNotZero);
        }
        let mut inner = TruncatedSeries::zero(self.context().clone());
        for d in 1..=self.context().weight_bound() {
            let layer = self.adams(d);
            if layer.is_zero() {
                continue;
            }
            inner = inner
                .add(&layer.scale(&RationalFunction::from_ratio(1, d as i64).expect("d >= 1")))?;
        }
        inner.formal_exp()
    }

    /// The plethystic logarithm, inverse of `plethystic_exp` up to the
    /// weight bound; requires constant term 1.
    pub fn plethystic_log(&self) -> Result<TruncatedSeries, SeriesError> {
        if !self.constant_term().is_one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let h = self.formal_log()?;
        let mut result = TruncatedSeries::zero(self.context().clone());
        for d in 1..=self.context().weight_bound() {
            let mu = moebius(d);
            if mu == 0 {
                continue;
            }
            let layer = h.adams(d);
            if layer.is_zero() {
                continue;
            }
            result = result
                .add(&layer.scale(&RationalFunction::from_ratio(mu, d as i64).expect("d >= 1")))?;
        }
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{ExponentKey, SeriesContext, TruncatedSeries};
    use super::*;
    use crate::qfield::RationalFunction;

    fn rf(s: &str) -> RationalFunction {
        s.parse().unwrap()
    }

    fn x_times(ctx: &SeriesContext, coeff: &str) -> TruncatedSeries {
        TruncatedSeries::monomial(ctx.clone(), ExponentKey::new(vec![1]), rf(coeff)).unwrap()
    }

    #[test]
    fn moebius_values() {
        let expect = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &m) in expect.iter().enumerate() {
            assert_eq!(moebius(i as u32 + 1), m, "mu({})", i + 1);
        }
    }

    #[test]
    fn formal_log_mercator() {
        let ctx = SeriesContext::dims(1, 3);
        let f = TruncatedSeries::one(ctx.clone())
            .add(&x_times(&ctx, "1"))
            .unwrap();
        let log = f.formal_log().unwrap();
        assert_eq!(log.coefficient(&ExponentKey::new(vec![1])), rf("1"));
        assert_eq!(log.coefficient(&ExponentKey::new(vec![2])), rf("-1/2"));
        assert_eq!(log.coefficient(&ExponentKey::new(vec![3])), rf("1/3"));
        assert_eq!(log.len(), 3);
    }

    #[test]
    fn formal_exp_of_zero_is_one() {
        let ctx = SeriesContext::dims(2, 4);
        let z = TruncatedSeries::zero(ctx.clone());
        assert_eq!(z.formal_exp().unwrap(), TruncatedSeries::one(ctx));
    }

    #[test]
    fn formal_pair_inverts() {
        let ctx = SeriesContext::dims(2, 4);
        let s = TruncatedSeries::from_terms(
            ctx.clone(),
            [
                (ExponentKey::new(vec![1, 0]), rf("q")),
                (ExponentKey::new(vec![0, 1]), rf("-1/(q-1)")),
                (ExponentKey::new(vec![1, 1]), rf("q^2+1")),
            ],
        )
        .unwrap();
        let f = s.formal_exp().unwrap();
        assert_eq!(f.formal_log().unwrap(), s);
    }

    #[test]
    fn preconditions_are_enforced() {
        let ctx = SeriesContext::dims(1, 3);
        let one = TruncatedSeries::one(ctx.clone());
        let zero = TruncatedSeries::zero(ctx.clone());
        assert!(one.formal_exp().is_err());
        assert!(zero.formal_log().is_err());
        assert!(one.plethystic_exp().is_err());
        assert!(zero.plethystic_log().is_err());
    }

    #[test]
    fn plethystic_exp_of_x_is_geometric() {
        let ctx = SeriesContext::dims(1, 3);
        let f = x_times(&ctx, "1").plethystic_exp().unwrap();
        for e in 0..=3u32 {
            assert_eq!(f.coefficient(&ExponentKey::new(vec![e])), rf("1"));
        }
        assert_eq!(f.len(), 4);
    }

    #[test]
    fn plethystic_log_of_geometric_is_x() {
        let ctx = SeriesContext::dims(1, 5);
        let mut geometric = TruncatedSeries::zero(ctx.clone());
        for e in 0..=5u32 {
            geometric = geometric
                .add(
                    &TruncatedSeries::monomial(ctx.clone(), ExponentKey::new(vec![e]), rf("1"))
                        .unwrap(),
                )
                .unwrap();
        }
        assert_eq!(geometric.plethystic_log().unwrap(), x_times(&ctx, "1"));
    }

    #[test]
    fn heine_shape_at_low_weight() {
        // Exp(X/(1-q)) has coefficient 1/((1-q)...(1-q^m)) on X^m.
        let ctx = SeriesContext::dims(1, 3);
        let f = x_times(&ctx, "-1/(q-1)").plethystic_exp().unwrap();
        assert_eq!(f.coefficient(&ExponentKey::new(vec![1])), rf("-1/(q-1)"));
        let m2 = rf("1").div(&(&rf("1-q") * &rf("1-q^2"))).unwrap();
        assert_eq!(f.coefficient(&ExponentKey::new(vec![2])), m2);
        let m3 = rf("1")
            .div(&(&(&rf("1-q") * &rf("1-q^2")) * &rf("1-q^3")))
            .unwrap();
        assert_eq!(f.coefficient(&ExponentKey::new(vec![3])), m3);
    }

    #[test]
    fn exp_is_multiplicative_on_sums() {
        let ctx = SeriesContext::dims(2, 4);
        let a = TruncatedSeries::from_terms(
            ctx.clone(),
            [
                (ExponentKey::new(vec![1, 0]), rf("q/(q-1)")),
                (ExponentKey::new(vec![0, 2]), rf("3")),
            ],
        )
        .unwrap();
        let b = TruncatedSeries::from_terms(
            ctx.clone(),
            [
                (ExponentKey::new(vec![0, 1]), rf("q^2")),
                (ExponentKey::new(vec![1, 1]), rf("-1/2")),
            ],
        )
        .unwrap();
        let lhs = a.add(&b).unwrap().plethystic_exp().unwrap();
        let rhs = a
            .plethystic_exp()
            .unwrap()
            .mul(&b.plethystic_exp().unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn adams_is_a_ring_morphism() {
        let ctx = SeriesContext::dims(2, 6);
        let a = TruncatedSeries::from_terms(
            ctx.clone(),
            [
                (ExponentKey::new(vec![1, 0]), rf("q")),
                (ExponentKey::new(vec![0, 1]), rf("1/(q+1)")),
            ],
        )
        .unwrap();
        let b = TruncatedSeries::from_terms(
            ctx.clone(),
            [
                (ExponentKey::new(vec![0, 1]), rf("q-1")),
                (ExponentKey::new(vec![2, 0]), rf("5")),
            ],
        )
        .unwrap();
        for d in 1..=3u32 {
            assert_eq!(
                a.mul(&b).unwrap().adams(d),
                a.adams(d).mul(&b.adams(d)).unwrap(),
                "psi_{d} fails multiplicativity"
            );
        }
    }
}

#[cfg(test)]
mod proptests {
    use super::super::{ExponentKey, SeriesContext, TruncatedSeries};
    use crate::qfield::{IntPolynomial, RationalFunction};
    use proptest::prelude::*;

    fn arb_poly(max_deg: usize, max_abs: i64) -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-max_abs..=max_abs, 0..=max_deg)
            .prop_map(|cs| IntPolynomial::from_coeffs(cs.into_iter().map(Into::into).collect()))
    }

    fn arb_rf() -> impl Strategy<Value = RationalFunction> {
        (arb_poly(3, 4), arb_poly(2, 4))
            .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
    }

    /// A series with zero constant term over 1..=3 variables, bound <= 5.
    fn arb_positive_series() -> impl Strategy<Value = TruncatedSeries> {
        (1usize..=3, 2u32..=5).prop_flat_map(|(n, bound)| {
            let keys = prop::collection::vec(0u32..=bound, n).prop_filter(
                "nonzero key within bound",
                move |k| {
                    let total: u32 = k.iter().sum();
                    total >= 1 && total <= bound
                },
            );
            prop::collection::vec((keys, arb_rf()), 0..=5).prop_map(move |terms| {
                TruncatedSeries::from_terms(
                    SeriesContext::dims(n, bound),
                    terms.into_iter().map(|(k, c)| (ExponentKey::new(k), c)),
                )
                .unwrap()
            })
        })
    }

    /// Two series sharing one context, so sums are well formed.
    fn arb_series_pair() -> impl Strategy<Value = (TruncatedSeries, TruncatedSeries)> {
        (1usize..=2, 2u32..=4).prop_flat_map(|(n, bound)| {
            let keys = move || {
                prop::collection::vec(0u32..=bound, n).prop_filter(
                    "nonzero key within bound",
                    move |k| {
                        let total: u32 = k.iter().sum();
                        total >= 1 && total <= bound
                    },
                )
            };
            let terms = move || prop::collection::vec((keys(), arb_rf()), 0..=4);
            (terms(), terms()).prop_map(move |(a, b)| {
                let ctx = SeriesContext::dims(n, bound);
                let build = |ts: Vec<(Vec<u32>, crate::qfield::RationalFunction)>| {
                    TruncatedSeries::from_terms(
                        ctx.clone(),
                        ts.into_iter().map(|(k, c)| (ExponentKey::new(k), c)),
                    )
                    .unwrap()
                };
                (build(a), build(b))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn log_exp_round_trip(s in arb_positive_series()) {
            let f = s.plethystic_exp().unwrap();
            prop_assert_eq!(f.plethystic_log().unwrap(), s);
        }

        #[test]
        fn exp_log_round_trip(s in arb_positive_series()) {
            // Any series with constant term 1 is Exp of something; build one.
            let f = TruncatedSeries::one(s.context().clone()).add(&s).unwrap();
            let log = f.plethystic_log().unwrap();
            prop_assert_eq!(log.plethystic_exp().unwrap(), f);
        }

        #[test]
        fn exp_turns_sums_into_products((a, b) in arb_series_pair()) {
            let lhs = a.add(&b).unwrap().plethystic_exp().unwrap();
            let rhs = a
                .plethystic_exp()
                .unwrap()
                .mul(&b.plethystic_exp().unwrap())
                .unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
