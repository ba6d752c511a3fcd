//! Univariate polynomials in q with arbitrary-precision integer coefficients.
//!
//! Invariants:
//! - `coeffs[k]` is the coefficient of q^k
//! - the zero polynomial is the empty vector
//! - otherwise the last entry (the leading coefficient) is nonzero

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{parse, QFieldError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPolynomial::from_coeffs(vec![c.into()])
    }

    /// The polynomial q.
    pub fn q() -> Self {
        IntPolynomial::q_power(1)
    }

    /// The monomial q^k.
    pub fn q_power(k: usize) -> Self {
        IntPolynomial::monomial(BigInt::one(), k)
    }

    /// The monomial c * q^k.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPolynomial { coeffs }
    }

    /// Builds a polynomial from coefficients indexed by exponent, trimming
    /// leading zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// True iff every coefficient is non-negative.
    pub fn is_nonneg(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn mul_scalar(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by q^k.
    pub fn shifted(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = IntPolynomial::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Substitutes q -> q^d.
    pub fn substitute_power(&self, d: u32) -> Self {
        assert!(d >= 1, "substitution power must be positive");
        if d == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * d as usize + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * d as usize] = c.clone();
        }
        IntPolynomial { coeffs }
    }

    /// Gcd of all coefficients, non-negative; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let c = self.content();
        if c.is_one() {
            return self.clone();
        }
        self.div_scalar(&c)
    }

    /// Exact scalar division; panics if some coefficient is not divisible.
    pub(crate) fn div_scalar(&self, c: &BigInt) -> Self {
        assert!(!c.is_zero());
        IntPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    let (quot, rem) = a.div_rem(c);
                    assert!(rem.is_zero(), "scalar division is not exact");
                    quot
                })
                .collect(),
        }
    }

    /// Exact polynomial division; panics if the division leaves a remainder.
    pub(crate) fn exact_div(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let dd = d.degree().unwrap();
        let ld = d.leading_coefficient().unwrap();
        let mut rem = self.clone();
        let mut out = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = rem.degree() {
            assert!(dr >= dd, "polynomial division is not exact");
            let (quot, r) = rem.leading_coefficient().unwrap().div_rem(ld);
            assert!(r.is_zero(), "polynomial division is not exact");
            rem = &rem - &d.shifted(dr - dd).mul_scalar(&quot);
            out[dr - dd] = quot;
        }
        IntPolynomial::from_coeffs(out)
    }

    /// Pseudo-remainder: the result equals c * (self mod d) for some nonzero
    /// integer c, which is enough for a primitive remainder sequence.
    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo_rem by zero polynomial");
        let ld = d.leading_coefficient().unwrap().clone();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let lr = rem.leading_coefficient().unwrap().clone();
            rem = &rem.mul_scalar(&ld) - &d.shifted(dr - dd).mul_scalar(&lr);
        }
        rem
    }

    /// Exact evaluation at an integer value of q.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub(crate) fn fmt_terms(&self, f: &mut fmt::Formatter<'_>, shift: i64) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_term(f, c, k as i64 + shift, first)?;
            first = false;
        }
        Ok(())
    }
}

/// Writes one monomial term of a (Laurent) polynomial in the canonical text
/// form: descending exponents, "q^5", "2q^3", "-q", "7", "q^-2".
fn write_term(f: &mut fmt::Formatter<'_>, c: &BigInt, exp: i64, first: bool) -> fmt::Result {
    if c.is_negative() {
        write!(f, "-")?;
    } else if !first {
        write!(f, "+")?;
    }
    let a = c.abs();
    if exp == 0 {
        return write!(f, "{}", a);
    }
    if !a.is_one() {
        write!(f, "{}", a)?;
    }
    if exp == 1 {
        write!(f, "q")
    } else {
        write!(f, "q^{}", exp)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f, 0)
    }
}

impl FromStr for IntPolynomial {
    type Err = QFieldError;

    fn from_str(s: &str) -> Result<Self, QFieldError> {
        let r = parse::parse_rational(s)?;
        r.as_polynomial().ok_or_else(|| QFieldError::Parse {
            position: 0,
            message: format!("`{s}` is not a polynomial in q"),
        })
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coefficient(k) + rhs.coefficient(k));
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coefficient(k) - rhs.coefficient(k));
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// A greatest common divisor, primitive with positive leading coefficient,
/// computed by a primitive pseudo-remainder sequence.
pub fn poly_gcd(a: &IntPolynomial, b: &IntPolynomial) -> Result<IntPolynomial, QFieldError> {
    if a.is_zero() && b.is_zero() {
        return Err(QFieldError::GcdOfZero);
    }
    let mut a = a.primitive_part();
    let mut b = b.primitive_part();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.pseudo_rem(&b).primitive_part();
        a = b;
        b = r;
    }
    if a.leading_coefficient().unwrap().is_negative() {
        a = -&a;
    }
    Ok(a)
}

/// |GL(m, F_q)| as a polynomial in q: prod_{k=0}^{m-1} (q^m - q^k).
pub fn gl_order_single(m: u32) -> IntPolynomial {
    let mut out = IntPolynomial::one();
    for k in 0..m {
        let factor = &IntPolynomial::q_power(m as usize) - &IntPolynomial::q_power(k as usize);
        out = &out * &factor;
    }
    out
}

/// |GL(alpha, F_q)| for a dimension vector: the product of the single-vertex
/// orders over all components. The empty product is 1.
pub fn gl_order(alpha: &[u32]) -> IntPolynomial {
    let mut out = IntPolynomial::one();
    for &a in alpha {
        if a > 0 {
            out = &out * &gl_order_single(a);
        }
    }
    out
}
