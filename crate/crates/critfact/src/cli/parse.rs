//! Recursive-descent parser for polynomial expressions in `x` and `y`.
//!
//! Grammar (whitespace is ignored between tokens):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' uint)?
//! base   := uint | 'x' | 'y' | GEN | '(' expr ')'
//! ```
//!
//! `GEN` is an optional symbol naming the generator of an extension field
//! (`t` for `GF(p^k)`). Division is only accepted by nonzero constants.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::fields::FieldCtx;
use crate::polyring::BiPoly;

/// Largest accepted exponent literal.
pub const EXPONENT_CAP: u64 = 1_000_000;

/// Abstract syntax tree of an expression; `Div` keeps the byte offset of its divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Int(BigInt),
    X,
    Y,
    Gen,
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Div(Box<PolyExpr>, Box<PolyExpr>, usize),
    Pow(Box<PolyExpr>, u64),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    gen: Option<u8>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            offset: self.pos,
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<PolyExpr> {
        let mut lhs = if self.peek() == Some(b'-') {
            self.pos += 1;
            PolyExpr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    lhs = PolyExpr::Div(Box::new(lhs), Box::new(self.factor()?), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<PolyExpr> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return self.err("exponent must be a nonnegative integer literal");
            }
            let e: BigInt = digits.parse().expect("ascii digits");
            match e.to_u64() {
                Some(v) if v <= EXPONENT_CAP => Ok(PolyExpr::Pow(Box::new(base), v)),
                _ => Err(Error::ExponentTooLarge { offset: start }),
            }
        } else {
            Ok(base)
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<PolyExpr> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                Ok(PolyExpr::Int(d.parse().expect("ascii digits")))
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(PolyExpr::X)
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(PolyExpr::Y)
            }
            Some(c) if Some(c) == self.gen => {
                self.pos += 1;
                Ok(PolyExpr::Gen)
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` into an expression tree; `gen` names the field generator.
pub fn parse_expr(text: &str, gen: Option<char>) -> Result<PolyExpr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        gen: gen.map(|c| c as u8),
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Evaluates an expression tree over `f`.
pub fn eval_expr(e: &PolyExpr, f: &FieldCtx) -> Result<BiPoly> {
    Ok(match e {
        PolyExpr::Int(n) => BiPoly::constant(f, f.from_bigint(n)),
        PolyExpr::X => BiPoly::x(f),
        PolyExpr::Y => BiPoly::y(f),
        PolyExpr::Gen => BiPoly::constant(f, f.gen()),
        PolyExpr::Neg(a) => eval_expr(a, f)?.neg(),
        PolyExpr::Add(a, b) => eval_expr(a, f)?.add(&eval_expr(b, f)?),
        PolyExpr::Sub(a, b) => eval_expr(a, f)?.sub(&eval_expr(b, f)?),
        PolyExpr::Mul(a, b) => eval_expr(a, f)?.mul(&eval_expr(b, f)?),
        PolyExpr::Div(a, b, at) => {
            let d = eval_expr(b, f)?;
            if d.deg_y() != 0 || d.deg_x() != 0 || d.is_zero() {
                return Err(Error::Syntax {
                    offset: *at,
                    msg: "division is only allowed by nonzero constants".into(),
                });
            }
            let c = f.inv(&d.coeff(0, 0))?;
            eval_expr(a, f)?.scale(&c)
        }
        PolyExpr::Pow(a, k) => {
            let b = eval_expr(a, f)?;
            if b.is_zero() && *k > 0 {
                b
            } else {
                b.pow(*k)
            }
        }
    })
}

/// Parses and evaluates `text` over `f`; the symbol `t` denotes the generator
/// of an extension field.
pub fn parse_poly(text: &str, f: &FieldCtx) -> Result<BiPoly> {
    let gen = if f.is_extension() { Some('t') } else { None };
    eval_expr(&parse_expr(text, gen)?, f)
}

/// Parses over `f` with `gen` naming the generator of `f` over its base.
pub fn parse_poly_with(text: &str, f: &FieldCtx, gen: char) -> Result<BiPoly> {
    eval_expr(&parse_expr(text, Some(gen))?, f)
}
