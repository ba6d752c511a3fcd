//! Exact arithmetic over Q(q): integer polynomials in q, the rational
//! function field, and the |GL| order polynomials.

mod parse;
mod poly;
mod ratfunc;

pub use poly::{gl_order, gl_order_single, poly_gcd, IntPolynomial};
pub use ratfunc::RationalFunction;

pub(crate) use parse::parse_uint;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QFieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator polynomial is zero")]
    ZeroDenominator,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZero,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

/// The polynomial q - 1, the prefactor of the plethystic-Log extraction.
pub fn q_minus_one() -> RationalFunction {
    RationalFunction::from_poly("q-1".parse().expect("constant polynomial text"))
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly(max_deg: usize, max_abs: i64) -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-max_abs..=max_abs, 0..=max_deg)
            .prop_map(|cs| IntPolynomial::from_coeffs(cs.into_iter().map(Into::into).collect()))
    }

    fn arb_rf() -> impl Strategy<Value = RationalFunction> {
        (arb_poly(4, 5), arb_poly(3, 5))
            .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_rf(), b in arb_rf(), c in arb_rf()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inverse().unwrap(), RationalFunction::one());
            }
        }

        #[test]
        fn substitute_power_composes(r in arb_rf(), d1 in 1u32..4, d2 in 1u32..4) {
            prop_assert_eq!(
                r.substitute_power(d1).substitute_power(d2),
                r.substitute_power(d1 * d2)
            );
        }

        #[test]
        fn gl_order_concatenation(a in prop::collection::vec(0u32..4, 0..3),
                                  b in prop::collection::vec(0u32..4, 0..3)) {
            let mut ab = a.clone();
            ab.extend_from_slice(&b);
            prop_assert_eq!(&gl_order(&a) * &gl_order(&b), gl_order(&ab));
        }

        #[test]
        fn canonical_form_is_idempotent(r in arb_rf()) {
            let again = RationalFunction::new(r.numerator().clone(), r.denominator().clone()).unwrap();
            prop_assert_eq!(again.numerator(), r.numerator());
            prop_assert_eq!(again.denominator(), r.denominator());
        }

        #[test]
        fn render_parse_round_trip(r in arb_rf()) {
            let text = r.to_string();
            let back: RationalFunction = text.parse().unwrap();
            prop_assert_eq!(back, r);
        }

        #[test]
        fn canonical_equality_matches_value_equality(a in arb_rf(), b in arb_rf()) {
            // a/1 == b/1 as values iff cross products match; canonical form
            // must agree with that.
            let cross_equal = {
                let lhs = a.numerator() * b.denominator();
                let rhs = b.numerator() * a.denominator();
                lhs == rhs
            };
            prop_assert_eq!(a == b, cross_equal);
        }
    }
}
