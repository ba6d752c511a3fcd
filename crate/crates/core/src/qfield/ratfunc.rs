//! The rational function field Q(q), represented exactly.
//!
//! Canonical form (unique per value):
//! - numerator and denominator are coprime integer polynomials
//! - gcd(content(num), content(den)) = 1
//! - the denominator's leading coefficient is positive
//! - zero is 0/1
//!
//! Negative q-powers live here as q-power denominators, so Laurent values
//! like q^-1 + q^-2 need no separate type.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{poly_gcd, IntPolynomial};
use super::{parse, QFieldError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: IntPolynomial::zero(),
            den: IntPolynomial::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(IntPolynomial::one())
    }

    pub fn from_poly(num: IntPolynomial) -> Self {
        RationalFunction {
            num,
            den: IntPolynomial::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        RationalFunction::from_poly(IntPolynomial::constant(c))
    }

    /// The exact fraction a/b of two integers.
    pub fn from_ratio(a: i64, b: i64) -> Result<Self, QFieldError> {
        RationalFunction::new(IntPolynomial::constant(a), IntPolynomial::constant(b))
    }

    /// q^e for any integer e, negative exponents as q-power denominators.
    pub fn q_power(e: i64) -> Self {
        if e >= 0 {
            RationalFunction::from_poly(IntPolynomial::q_power(e as usize))
        } else {
            RationalFunction {
                num: IntPolynomial::one(),
                den: IntPolynomial::q_power((-e) as usize),
            }
        }
    }

    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Result<Self, QFieldError> {
        if den.is_zero() {
            return Err(QFieldError::ZeroDenominator);
        }
        Ok(RationalFunction::canonical(num, den))
    }

    fn canonical(num: IntPolynomial, den: IntPolynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let g = poly_gcd(&num, &den).expect("gcd of nonzero polynomials");
        let mut num = num.exact_div(&g);
        let mut den = den.exact_div(&g);
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        if den.leading_coefficient().unwrap().is_negative() {
            num = -&num;
            den = -&den;
        }
        RationalFunction { num, den }
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, QFieldError> {
        if rhs.is_zero() {
            return Err(QFieldError::DivisionByZero);
        }
        Ok(RationalFunction::canonical(
            &self.num * &rhs.den,
            &self.den * &rhs.num,
        ))
    }

    pub fn inverse(&self) -> Result<Self, QFieldError> {
        RationalFunction::one().div(self)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = RationalFunction::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// The Adams substitution q -> q^d, re-canonicalized.
    pub fn substitute_power(&self, d: u32) -> Self {
        assert!(d >= 1, "substitution power must be positive");
        RationalFunction::canonical(self.num.substitute_power(d), self.den.substitute_power(d))
    }

    /// Some(polynomial) iff the value is a polynomial with integer
    /// coefficients. In canonical form this is exactly `den == 1`.
    pub fn as_polynomial(&self) -> Option<IntPolynomial> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    /// True iff the value is a polynomial in q all of whose coefficients are
    /// non-negative integers.
    pub fn is_nonneg_int_poly(&self) -> bool {
        self.as_polynomial().is_some_and(|p| p.is_nonneg())
    }

    /// Exact evaluation at an integer value of q, as a (num, den) pair of
    /// integers. None if the denominator vanishes there.
    pub fn eval_int(&self, x: &BigInt) -> Option<(BigInt, BigInt)> {
        let d = self.den.eval_int(x);
        if d.is_zero() {
            return None;
        }
        Some((self.num.eval_int(x), d))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonical(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

/// True iff the denominator is exactly q^k for some k >= 1, which makes the
/// value a Laurent polynomial rendered with negative exponents.
fn q_power_denominator(den: &IntPolynomial) -> Option<usize> {
    let d = den.degree()?;
    if d == 0 {
        return None;
    }
    if !den.leading_coefficient().unwrap().is_one() {
        return None;
    }
    if (0..d).any(|k| !den.coefficient(k).is_zero()) {
        return None;
    }
    Some(d)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return self.num.fmt_terms(f, 0);
        }
        if let Some(k) = q_power_denominator(&self.den) {
            return self.num.fmt_terms(f, -(k as i64));
        }
        let num_terms = self.num.coeffs().iter().filter(|c| !c.is_zero()).count();
        if num_terms > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        write!(f, "/")?;
        // A denominator is left bare only when it reads unambiguously as a
        // single token: a plain integer or a monic power of q.
        let den_terms = self.den.coeffs().iter().filter(|c| !c.is_zero()).count();
        let bare = den_terms == 1
            && (self.den.degree() == Some(0) || self.den.leading_coefficient().unwrap().is_one());
        if bare {
            write!(f, "{}", self.den)
        } else {
            write!(f, "({})", self.den)
        }
    }
}

impl FromStr for RationalFunction {
    type Err = QFieldError;

    fn from_str(s: &str) -> Result<Self, QFieldError> {
        parse::parse_rational(s)
    }
}
