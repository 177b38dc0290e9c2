//! Recursive-descent parser for polynomial expressions in `x`, `y`.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | IDENT | '(' expr ')'
//! ```
//!
//! Identifiers other than `x` and `y` become free parameters. Division is
//! only accepted by nonzero rational constants.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::params::Param;
use super::parampoly::ParamPoly;
use super::rational::Rational;
use super::xypoly::XYPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("non-polynomial construct at position {pos}: {msg}")]
    NonPolynomial { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut lx = Lexer { src: src.as_bytes(), pos: 0 };
        let mut out = Vec::new();
        loop {
            while lx.pos < lx.src.len() && lx.src[lx.pos].is_ascii_whitespace() {
                lx.pos += 1;
            }
            let start = lx.pos;
            let Some(&c) = lx.src.get(lx.pos) else {
                out.push((start, Tok::End));
                return Ok(out);
            };
            if c.is_ascii_digit() {
                while lx.pos < lx.src.len() && lx.src[lx.pos].is_ascii_digit() {
                    lx.pos += 1;
                }
                if lx.src.get(lx.pos).is_some_and(|b| *b == b'.') {
                    return Err(ParseError::Syntax {
                        pos: lx.pos,
                        msg: "decimal literals are not supported; use a rational like 3/2".into(),
                    });
                }
                let digits = std::str::from_utf8(&lx.src[start..lx.pos]).unwrap();
                out.push((start, Tok::Int(digits.parse().unwrap())));
            } else if c.is_ascii_alphabetic() {
                while lx.pos < lx.src.len() && (lx.src[lx.pos].is_ascii_alphanumeric() || lx.src[lx.pos] == b'_') {
                    lx.pos += 1;
                }
                let name = std::str::from_utf8(&lx.src[start..lx.pos]).unwrap();
                out.push((start, Tok::Ident(name.to_string())));
            } else if b"+-*/^()".contains(&c) {
                lx.pos += 1;
                out.push((start, Tok::Op(c as char)));
            } else {
                return Err(ParseError::Syntax { pos: start, msg: format!("unexpected character '{}'", c as char) });
            }
        }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

type P = XYPoly<Rational>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<P, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Op('-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<P, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Op('/') => {
                    self.bump();
                    let pos = self.pos();
                    let d = self.unary()?;
                    let c = as_rational(&d).ok_or_else(|| ParseError::NonPolynomial {
                        pos,
                        msg: "division is only allowed by a rational constant".into(),
                    })?;
                    if c.is_zero() {
                        return Err(ParseError::NonPolynomial { pos, msg: "division by zero".into() });
                    }
                    acc = acc.scale(&ParamPoly::constant(c.recip()));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<P, ParseError> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<P, ParseError> {
        let base = self.atom()?;
        if let Tok::Op('^') = self.peek() {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Tok::Int(n) => {
                    let e: u32 = n.try_into().map_err(|_| ParseError::NonPolynomial {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                    return Ok(base.pow(e));
                }
                Tok::Op('-') | Tok::Op('(') | Tok::Ident(_) => {
                    return Err(ParseError::NonPolynomial {
                        pos,
                        msg: "exponents must be nonnegative integer literals".into(),
                    })
                }
                t => return Err(ParseError::Syntax { pos, msg: format!("expected exponent, found {}", describe(&t)) }),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<P, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(P::constant(ParamPoly::constant(Rational::from_big(n, BigInt::one())))),
            Tok::Ident(name) => Ok(match name.as_str() {
                "x" => P::x(),
                "y" => P::y(),
                _ => P::constant(ParamPoly::var(Param::intern(&name))),
            }),
            Tok::Op('(') => {
                let e = self.expr()?;
                let pos = self.pos();
                match self.bump() {
                    Tok::Op(')') => Ok(e),
                    t => Err(ParseError::Syntax { pos, msg: format!("expected ')', found {}", describe(&t)) }),
                }
            }
            t => Err(ParseError::Syntax { pos, msg: format!("expected a number, identifier or '(', found {}", describe(&t)) }),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number {n}"),
        Tok::Ident(s) => format!("identifier '{s}'"),
        Tok::Op(c) => format!("'{c}'"),
        Tok::End => "end of input".into(),
    }
}

fn as_rational(p: &P) -> Option<Rational> {
    let mut it = p.iter();
    match (it.next(), it.next()) {
        (None, _) => Some(Rational::zero()),
        (Some(((0, 0), c)), None) => c.as_constant(),
        _ => None,
    }
}

/// Parses a polynomial in `x`, `y` whose coefficients may involve free parameters.
pub fn parse_poly(text: &str) -> Result<XYPoly<Rational>, ParseError> {
    let toks = Lexer::tokens(text)?;
    let mut p = Parser { toks, at: 0 };
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        t => {
            let t = t.clone();
            Err(ParseError::Syntax { pos: p.pos(), msg: format!("unexpected {} (explicit '*' is required)", describe(&t)) })
        }
    }
}

/// Parses an expression that must not contain `x` or `y`.
pub fn parse_param_expr(text: &str) -> Result<ParamPoly<Rational>, ParseError> {
    let p = parse_poly(text)?;
    let mut out = ParamPoly::zero();
    for ((i, j), c) in p.iter() {
        if *i != 0 || *j != 0 {
            return Err(ParseError::NonPolynomial { pos: 0, msg: "parameter expression must not contain x or y".into() });
        }
        out = c.clone();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collins_unperturbed() {
        let p = parse_poly("-y + x^2*y").unwrap();
        assert_eq!(p.coeff(0, 1).as_constant(), Some(Rational::from_integer(-1)));
        assert_eq!(p.coeff(2, 1).as_constant(), Some(Rational::from_integer(1)));
        assert_eq!(p.degree(), 3);
    }

    #[test]
    fn zero_and_rational_literals() {
        assert!(parse_poly("0").unwrap().is_zero());
        let p = parse_poly("ps_a1_1*x + 3/2*y^2").unwrap();
        assert_eq!(p.coeff(0, 2).as_constant(), Some(Rational::new(3, 2)));
        assert_eq!(p.coeff(1, 0), ParamPoly::var(Param::intern("ps_a1_1")));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_poly("x/y"), Err(ParseError::NonPolynomial { pos: 2, .. })));
        assert!(matches!(parse_poly("x^(1/2)"), Err(ParseError::NonPolynomial { .. })));
        assert!(matches!(parse_poly("2x"), Err(ParseError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("(x + 1"), Err(ParseError::Syntax { pos: 6, .. })));
        assert!(matches!(parse_poly("x $ y"), Err(ParseError::Syntax { pos: 2, .. })));
    }

    #[test]
    fn precedence() {
        let a = parse_poly("-x^2 + 2*(x - y)*(x + y)").unwrap();
        let b = parse_poly("x^2 - 2*y^2").unwrap();
        assert_eq!(a, b);
    }
}
