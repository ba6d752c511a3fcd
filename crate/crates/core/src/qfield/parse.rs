//! Text form of Q(q) values.
//!
//! Grammar (whitespace ignored, positions are byte offsets):
//!
//! ```text
//! sum     := product (('+'|'-') product)*
//! product := factor (('*'|'/') factor)*
//! factor  := '-' factor | '(' sum ')' | atom
//! atom    := integer ['q' ['^' exponent]] | 'q' ['^' exponent]
//! ```
//!
//! Exponents may be negative ("q^-2"), and "3q^2" carries an implicit
//! multiplication. This covers everything the renderer emits.

use num_bigint::BigInt;

use super::ratfunc::RationalFunction;
use super::QFieldError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Q,
    Caret,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

fn err(position: usize, message: impl Into<String>) -> QFieldError {
    QFieldError::Parse {
        position,
        message: message.into(),
    }
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, QFieldError> {
    let bytes = s.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let value: BigInt = s[start..i].parse().expect("digits");
                toks.push((Tok::Int(value), start));
            }
            b'q' => {
                toks.push((Tok::Q, i));
                i += 1;
            }
            b'^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            b'+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            b'/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            _ => {
                return Err(err(
                    i,
                    format!("unexpected character `{}`", s[i..].chars().next().unwrap()),
                ))
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), QFieldError> {
        let at = self.here();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(err(at, format!("expected {what}"))),
        }
    }

    fn sum(&mut self) -> Result<RationalFunction, QFieldError> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.product()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<RationalFunction, QFieldError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    let at = self.here();
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc.div(&rhs).map_err(|_| err(at, "division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RationalFunction, QFieldError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-&self.factor()?)
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.sum()?;
                self.expect(Tok::RParen, "closing `)`")?;
                Ok(inner)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<RationalFunction, QFieldError> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Int(value)) => {
                let coeff =
                    RationalFunction::from_poly(crate::qfield::IntPolynomial::from_coeffs(vec![
                        value,
                    ]));
                if matches!(self.peek(), Some(Tok::Q)) {
                    self.bump();
                    let e = self.exponent()?;
                    Ok(&coeff * &RationalFunction::q_power(e))
                } else {
                    Ok(coeff)
                }
            }
            Some(Tok::Q) => {
                let e = self.exponent()?;
                Ok(RationalFunction::q_power(e))
            }
            _ => Err(err(at, "expected a number, `q`, or `(`")),
        }
    }

    /// The optional `^ <signed integer>` suffix of a q token; 1 if absent.
    fn exponent(&mut self) -> Result<i64, QFieldError> {
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(1);
        }
        self.bump();
        let negative = if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            true
        } else {
            false
        };
        let at = self.here();
        match self.bump() {
            Some(Tok::Int(value)) => {
                let e: i64 = value
                    .try_into()
                    .map_err(|_| err(at, "exponent out of range"))?;
                Ok(if negative { -e } else { e })
            }
            _ => Err(err(at, "expected an integer exponent after `^`")),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<RationalFunction, QFieldError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(err(0, "empty input"));
    }
    let mut parser = Parser {
        toks,
        pos: 0,
        end: s.len(),
    };
    let value = parser.sum()?;
    if parser.pos != parser.toks.len() {
        return Err(err(parser.here(), "unexpected trailing input"));
    }
    Ok(value)
}

/// Parses a non-negative integer, trailing garbage rejected. Used by the
/// quiver and partition text formats.
pub(crate) fn parse_uint(s: &str, offset: usize) -> Result<u32, QFieldError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(err(offset, "expected a non-negative integer"));
    }
    t.parse::<u32>()
        .map_err(|_| err(offset, format!("`{t}` is not a non-negative integer")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_garbage_with_position() {
        let e = parse_rational("q^2 + #").unwrap_err();
        match e {
            QFieldError::Parse { position, .. } => assert_eq!(position, 6),
            _ => panic!("expected parse error"),
        }
    }

    #[test]
    fn rejects_trailing_tokens() {
        assert!(parse_rational("q 1").is_err());
        assert!(parse_rational("(q").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn parses_expressions() {
        let v = parse_rational("(q^2-1)/(q-1)").unwrap();
        assert_eq!(v.to_string(), "q+1");
        let w = parse_rational("2*q^3 - q/(q-1)").unwrap();
        assert_eq!(w.to_string(), "(2q^4-2q^3-q)/(q-1)");
    }

    #[test]
    fn division_by_zero_reports_position() {
        assert!(parse_rational("1/(q-q)").is_err());
    }
}
