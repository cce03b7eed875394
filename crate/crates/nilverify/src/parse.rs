//! Recursive-descent parser for the scalar and form token syntax.
//!
//! Scalars: integers, fractions `p/q`, and root-of-unity tokens `z^k`
//! (twelfth roots) with `zN^k` sugar for any N dividing 12, so `z6^4` is
//! the fourth power of the sixth root and `z4` is the imaginary unit.
//! Products and sums use `*`, `+`, `-` and parentheses. In form
//! expressions generator names denote degree-1 forms, `~name` conjugate
//! generators, and `^` wedges forms together; after a scalar, `^` with an
//! integer exponent is a power.

use num_bigint::BigInt;
use thiserror::Error;

use crate::exterior::{Form, GeneratorSet};
use crate::scalar::{CycloScalar, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at column {col}: {message}")]
pub struct ParseError {
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(col: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            col,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '+' => {
                out.push((col, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((col, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((col, Tok::Star));
                i += 1;
            }
            '^' => {
                out.push((col, Tok::Caret));
                i += 1;
            }
            '/' => {
                out.push((col, Tok::Slash));
                i += 1;
            }
            '(' => {
                out.push((col, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((col, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((col, Tok::Int(digits.parse().unwrap())));
            }
            c if c.is_ascii_alphabetic() || c == '~' || c == '_' => {
                let start = i;
                i += 1;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                out.push((col, Tok::Ident(chars[start..i].iter().collect())));
            }
            other => return Err(ParseError::new(col, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

/// A value mid-parse: scalar or exterior form.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
enum Value {
    Scalar(CycloScalar),
    Form(Form),
}

impl Value {
    fn into_form(self) -> Form {
        match self {
            Value::Scalar(s) => Form::unit(s),
            Value::Form(f) => f,
        }
    }

    fn neg(self) -> Value {
        match self {
            Value::Scalar(s) => Value::Scalar(-&s),
            Value::Form(f) => Value::Form(f.neg()),
        }
    }

    fn add(self, other: Value, col: usize) -> Result<Value, ParseError> {
        match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => Ok(Value::Scalar(&a + &b)),
            (a, b) => Ok(Value::Form(a.into_form().add(&b.into_form()))),
        }
        .map_err(|e: ParseError| ParseError::new(col, e.message))
    }

    fn mul(self, other: Value) -> Value {
        match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(&a * &b),
            (Value::Scalar(a), Value::Form(f)) | (Value::Form(f), Value::Scalar(a)) => {
                Value::Form(f.scale(&a))
            }
            (Value::Form(a), Value::Form(b)) => Value::Form(a.wedge(&b)),
        }
    }
}

/// Resolve `z` / `zN` sugar to a power of the twelfth root.
fn root_token(name: &str) -> Option<i64> {
    if name == "z" {
        return Some(1);
    }
    let n: u32 = name.strip_prefix('z')?.parse().ok()?;
    if n == 0 || 12 % n != 0 {
        return None;
    }
    Some((12 / n) as i64)
}

/// True when a generator name would shadow a scalar token.
pub fn is_reserved_name(name: &str) -> bool {
    root_token(name).is_some()
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    gens: Option<&'a GeneratorSet>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_col(&self) -> usize {
        self.toks.last().map(|(c, _)| c + 1).unwrap_or(1)
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = match self.peek() {
            Some((_, Tok::Minus)) => {
                self.next();
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        while let Some((col, tok)) = self.peek().cloned() {
            match tok {
                Tok::Plus => {
                    self.next();
                    let rhs = self.term()?;
                    acc = acc.add(rhs, col)?;
                }
                Tok::Minus => {
                    self.next();
                    let rhs = self.term()?.neg();
                    acc = acc.add(rhs, col)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.atom()?;
        loop {
            match self.peek().cloned() {
                Some((_, Tok::Star)) => {
                    self.next();
                    let rhs = self.atom()?;
                    acc = acc.mul(rhs);
                }
                Some((col, Tok::Caret)) => {
                    self.next();
                    // A scalar raised to a literal (possibly negative)
                    // integer is a power; anything else wedges.
                    let exp_sign = if matches!(self.peek(), Some((_, Tok::Minus))) {
                        self.next();
                        -1i64
                    } else {
                        1
                    };
                    if exp_sign < 0 || matches!((&acc, self.peek()), (Value::Scalar(_), Some((_, Tok::Int(_))))) {
                        let Some((icol, Tok::Int(n))) = self.next() else {
                            return Err(ParseError::new(col, "expected integer exponent"));
                        };
                        let Value::Scalar(s) = acc else {
                            return Err(ParseError::new(col, "cannot raise a form to a power"));
                        };
                        let e: i64 = n.to_string().parse().map_err(|_| {
                            ParseError::new(icol, "exponent too large")
                        })?;
                        let powered = s
                            .pow(exp_sign * e)
                            .map_err(|e| ParseError::new(icol, e.to_string()))?;
                        acc = Value::Scalar(powered);
                    } else {
                        let rhs = self.atom()?;
                        acc = acc.mul(rhs);
                    }
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        match self.next() {
            Some((_, Tok::Int(n))) => {
                // Optional fraction.
                if matches!(self.peek(), Some((_, Tok::Slash))) {
                    let (scol, _) = self.next().unwrap();
                    match self.next() {
                        Some((dcol, Tok::Int(d))) => {
                            if d == BigInt::from(0) {
                                return Err(ParseError::new(dcol, "zero denominator"));
                            }
                            Ok(Value::Scalar(CycloScalar::from_rational(Rational::new(
                                n, d,
                            ))))
                        }
                        _ => Err(ParseError::new(scol, "expected denominator")),
                    }
                } else {
                    Ok(Value::Scalar(CycloScalar::from_rational(Rational::from(n))))
                }
            }
            Some((col, Tok::Ident(name))) => {
                if let Some(gens) = self.gens {
                    if let Some(idx) = gens.index_of(&name) {
                        return Ok(Value::Form(Form::generator(idx)));
                    }
                }
                if let Some(base) = root_token(&name) {
                    return Ok(Value::Scalar(CycloScalar::root_of_unity(base)));
                }
                Err(ParseError::new(col, format!("unknown generator `{name}`")))
            }
            Some((col, Tok::Minus)) => {
                let inner = self.atom()?;
                let _ = col;
                Ok(inner.neg())
            }
            Some((col, Tok::LParen)) => {
                let inner = self.expr()?;
                match self.next() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    _ => Err(ParseError::new(col, "unclosed parenthesis")),
                }
            }
            Some((col, tok)) => Err(ParseError::new(col, format!("unexpected token {tok:?}"))),
            None => Err(ParseError::new(self.end_col(), "unexpected end of expression")),
        }
    }

    fn finish(&mut self, v: Value) -> Result<Value, ParseError> {
        match self.peek() {
            None => Ok(v),
            Some((col, tok)) => Err(ParseError::new(
                *col,
                format!("trailing input starting at {tok:?}"),
            )),
        }
    }
}

/// Parse a scalar expression such as `z6^4` or `-1/2 + z^3`.
pub fn parse_scalar(text: &str) -> Result<CycloScalar, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        gens: None,
    };
    let v = p.expr()?;
    match p.finish(v)? {
        Value::Scalar(s) => Ok(s),
        Value::Form(_) => Err(ParseError::new(1, "expected a scalar, found a form")),
    }
}

/// Parse a form expression such as `z^9*mu^~mu + nu^theta + ~nu^~theta`.
pub fn parse_form(text: &str, gens: &GeneratorSet) -> Result<Form, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        gens: Some(gens),
    };
    let v = p.expr()?;
    Ok(p.finish(v)?.into_form())
}
