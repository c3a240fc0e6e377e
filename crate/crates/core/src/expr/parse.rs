//! Text form of expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' ['-'] integer)?
//! base   := number | 'I1' | 'I2' | 'J' | 'z1' | 'z2' | 'cz1' | 'cz2'
//!         | func '(' expr ')' | '(' expr ')'
//! func   := 'exp' | 'sin' | 'cos' | 'sinh' | 'cosh'
//! ```
//!
//! Offsets in errors are byte offsets into the source.

use std::fmt;

use crate::bicomplex::Bicomplex;
use crate::error::ParseError;

use super::ast::{Expr, Func, Node, Var};

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(ParseError::syntax(p.pos, format!("unexpected '{}'", p.rest_char())));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn bytes(&self) -> &'a [u8] {
        self.src.as_bytes()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes().get(self.pos).copied()
    }

    fn rest_char(&self) -> char {
        self.src[self.pos..].chars().next().unwrap_or(' ')
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = lhs + self.term()?;
            } else if self.eat(b'-') {
                lhs = lhs - self.term()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(b'*') {
                lhs = lhs * self.factor()?;
            } else if self.eat(b'/') {
                lhs = lhs / self.factor()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let neg = self.eat(b'-');
            self.skip_ws();
            let digits = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.pos == digits {
                return Err(ParseError::syntax(self.pos, "expected integer exponent"));
            }
            let n: i32 = self.src[digits..self.pos]
                .parse()
                .map_err(|_| ParseError::syntax(start, "exponent out of range"))?;
            return Ok(base.powi(if neg { -n } else { n }));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => Err(ParseError::syntax(start, "unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    self.skip_ws();
                    return Err(ParseError::syntax(self.pos, "expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                let leaf = match name {
                    "I1" => Some(Expr::i1()),
                    "I2" => Some(Expr::i2()),
                    "J" => Some(Expr::j()),
                    "z1" => Some(Expr::var(Var::Z1)),
                    "z2" => Some(Expr::var(Var::Z2)),
                    "cz1" => Some(Expr::var(Var::Cz1)),
                    "cz2" => Some(Expr::var(Var::Cz2)),
                    _ => None,
                };
                if let Some(e) = leaf {
                    return Ok(e);
                }
                let f = Func::from_name(name).ok_or_else(|| ParseError::UnknownIdentifier {
                    name: name.to_string(),
                    offset: start,
                })?;
                if !self.eat(b'(') {
                    self.skip_ws();
                    return Err(ParseError::syntax(self.pos, format!("expected '(' after {name}")));
                }
                let arg = self.expr()?;
                if !self.eat(b')') {
                    self.skip_ws();
                    return Err(ParseError::syntax(self.pos, "expected ')'"));
                }
                Ok(Expr::func(f, arg))
            }
            Some(_) => Err(ParseError::syntax(start, format!("unexpected '{}'", self.rest_char()))),
        }
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while matches!(p.peek(), Some(c) if c.is_ascii_digit()) {
                p.pos += 1;
            }
            p.pos > s
        };
        let int = digits(self);
        let mut frac = false;
        if self.peek() == Some(b'.') {
            self.pos += 1;
            frac = digits(self);
        }
        if !int && !frac {
            return Err(ParseError::syntax(start, "malformed number"));
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if !digits(self) {
                self.pos = mark;
            }
        }
        let text = &self.src[start..self.pos];
        let v: f64 = text
            .parse()
            .map_err(|_| ParseError::syntax(start, format!("malformed number '{text}'")))?;
        Ok(Expr::constant(v))
    }
}

fn write_const(f: &mut fmt::Formatter<'_>, c: Bicomplex) -> fmt::Result {
    let terms: Vec<(f64, &str)> = [(c.w0, ""), (c.w1, "I1"), (c.w2, "I2"), (c.w3, "J")]
        .into_iter()
        .filter(|(v, _)| *v != 0.0)
        .collect();
    if terms.is_empty() {
        return write!(f, "0");
    }
    if let [(v, "")] = terms.as_slice() {
        if v.is_sign_positive() {
            return write!(f, "{v}");
        }
    }
    write!(f, "(")?;
    for (i, (v, unit)) in terms.iter().enumerate() {
        let mag = v.abs();
        if i == 0 {
            if v.is_sign_negative() {
                write!(f, "-")?;
            }
        } else if v.is_sign_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        if unit.is_empty() {
            write!(f, "{mag}")?;
        } else {
            write!(f, "{mag}*{unit}")?;
        }
    }
    write!(f, ")")
}

/// Fully parenthesized output that parses back to an equal tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Const(c) => write_const(f, *c),
            Node::Var(v) => write!(f, "{}", v.name()),
            Node::Add(a, b) => write!(f, "({a} + {b})"),
            Node::Sub(a, b) => write!(f, "({a} - {b})"),
            Node::Mul(a, b) => write!(f, "({a} * {b})"),
            Node::Div(a, b) => write!(f, "({a} / {b})"),
            Node::Neg(a) => write!(f, "(-{a})"),
            Node::Pow(a, n) => write!(f, "({a}^{n})"),
            Node::Func(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}
