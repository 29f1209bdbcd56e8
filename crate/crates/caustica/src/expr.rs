//! Surface expression trees: parsing, printing, and evaluation over scalars
//! and jets.
//!
//! Grammar (infix, `^` binds tighter than unary minus, then `* /`, then
//! `+ -`; `^` takes integer exponents only; no implicit multiplication):
//!
//! ```text
//! surface := '(' expr ',' expr ',' expr ')'
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' ['-'] integer)?
//! atom    := number | 'u' | 'v' | 'pi' | ident '(' expr ')' | '(' expr ')'
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::jet::{Jet, JetVec3, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    U,
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sqrt,
    Sin,
    Cos,
    Exp,
    Log,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sqrt => "sqrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(Var),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Box<Expr>),
}

impl Expr {
    /// Evaluate at a scalar point. Domain violations report the offending
    /// subtree.
    pub fn eval(&self, p: Point) -> Result<f64> {
        let bad = |what: &str| Error::Domain {
            what: what.to_string(),
            subtree: self.to_string(),
        };
        let r = match self {
            Expr::Const(c) => *c,
            Expr::Var(Var::U) => p.0,
            Expr::Var(Var::V) => p.1,
            Expr::Add(a, b) => a.eval(p)? + b.eval(p)?,
            Expr::Sub(a, b) => a.eval(p)? - b.eval(p)?,
            Expr::Mul(a, b) => a.eval(p)? * b.eval(p)?,
            Expr::Div(a, b) => {
                let d = b.eval(p)?;
                if d == 0.0 {
                    return Err(bad("division by zero"));
                }
                a.eval(p)? / d
            }
            Expr::Neg(a) => -a.eval(p)?,
            Expr::Pow(a, n) => {
                let base = a.eval(p)?;
                if base == 0.0 && *n < 0 {
                    return Err(bad("zero raised to negative power"));
                }
                base.powi(*n)
            }
            Expr::Call(f, a) => {
                let x = a.eval(p)?;
                match f {
                    Func::Sqrt => {
                        if x < 0.0 {
                            return Err(bad("sqrt of negative value"));
                        }
                        x.sqrt()
                    }
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Exp => x.exp(),
                    Func::Log => {
                        if x <= 0.0 {
                            return Err(bad("log of non-positive value"));
                        }
                        x.ln()
                    }
                }
            }
        };
        if !r.is_finite() {
            return Err(Error::NonFinite(self.to_string()));
        }
        Ok(r)
    }

    /// Evaluate as an order-`K` jet at the base point.
    pub fn eval_jet(&self, base: Point, order: usize) -> Result<Jet> {
        let dom = |what: &str| Error::Domain {
            what: what.to_string(),
            subtree: self.to_string(),
        };
        match self {
            Expr::Const(c) => Ok(Jet::constant(base, order, *c)),
            Expr::Var(Var::U) => Ok(Jet::variable_u(base, order)),
            Expr::Var(Var::V) => Ok(Jet::variable_v(base, order)),
            Expr::Add(a, b) => a.eval_jet(base, order)?.add(&b.eval_jet(base, order)?),
            Expr::Sub(a, b) => a.eval_jet(base, order)?.sub(&b.eval_jet(base, order)?),
            Expr::Mul(a, b) => a.eval_jet(base, order)?.mul(&b.eval_jet(base, order)?),
            Expr::Div(a, b) => a
                .eval_jet(base, order)?
                .div(&b.eval_jet(base, order)?)
                .map_err(|e| match e {
                    Error::JetDivisionByZero => dom("division by zero"),
                    other => other,
                }),
            Expr::Neg(a) => Ok(a.eval_jet(base, order)?.neg()),
            Expr::Pow(a, n) => a.eval_jet(base, order)?.powi(*n).map_err(|e| match e {
                Error::JetDivisionByZero => dom("zero raised to negative power"),
                other => other,
            }),
            Expr::Call(f, a) => {
                let x = a.eval_jet(base, order)?;
                match f {
                    Func::Sqrt => x.sqrt().map_err(|e| match e {
                        Error::JetSqrtNonPositive(_) => dom("sqrt of non-positive value"),
                        other => other,
                    }),
                    Func::Sin => Ok(x.sin()),
                    Func::Cos => Ok(x.cos()),
                    Func::Exp => Ok(x.exp()),
                    Func::Log => x.ln().map_err(|e| match e {
                        Error::JetLogNonPositive(_) => dom("log of non-positive value"),
                        other => other,
                    }),
                }
            }
        }
    }

    /// Substitute `u <-> v`. Used to mirror branch-1 formulas onto branch 2.
    pub fn swap_params(&self) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(*c),
            Expr::Var(Var::U) => Expr::Var(Var::V),
            Expr::Var(Var::V) => Expr::Var(Var::U),
            Expr::Add(a, b) => Expr::Add(Box::new(a.swap_params()), Box::new(b.swap_params())),
            Expr::Sub(a, b) => Expr::Sub(Box::new(a.swap_params()), Box::new(b.swap_params())),
            Expr::Mul(a, b) => Expr::Mul(Box::new(a.swap_params()), Box::new(b.swap_params())),
            Expr::Div(a, b) => Expr::Div(Box::new(a.swap_params()), Box::new(b.swap_params())),
            Expr::Neg(a) => Expr::Neg(Box::new(a.swap_params())),
            Expr::Pow(a, n) => Expr::Pow(Box::new(a.swap_params()), *n),
            Expr::Call(f, a) => Expr::Call(*f, Box::new(a.swap_params())),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Const(_) | Expr::Var(_) | Expr::Call(..) => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, parent: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < parent {
            write!(f, "(")?;
        }
        match self {
            Expr::Const(c) => {
                if *c == c.trunc() && c.abs() < 1e15 {
                    write!(f, "{}", *c as i64)?;
                } else {
                    write!(f, "{c:?}")?;
                }
            }
            Expr::Var(Var::U) => write!(f, "u")?,
            Expr::Var(Var::V) => write!(f, "v")?,
            Expr::Add(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Sub(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " - ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Mul(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "*")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Div(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "/")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_prec(f, 3)?;
            }
            Expr::Pow(a, n) => {
                a.fmt_prec(f, 5)?;
                write!(f, "^{n}")?;
            }
            Expr::Call(func, a) => {
                write!(f, "{}(", func.name())?;
                a.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
        }
        if prec < parent {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// A parsed parametrization R^2 -> R^3, immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceExpr {
    components: [Expr; 3],
}

impl SurfaceExpr {
    pub fn new(components: [Expr; 3]) -> SurfaceExpr {
        SurfaceExpr { components }
    }

    pub fn components(&self) -> &[Expr; 3] {
        &self.components
    }

    pub fn eval(&self, p: Point) -> Result<[f64; 3]> {
        Ok([
            self.components[0].eval(p)?,
            self.components[1].eval(p)?,
            self.components[2].eval(p)?,
        ])
    }

    /// Lift to a 3-vector of order-`K` jets at the base point.
    pub fn lift(&self, base: Point, order: usize) -> Result<JetVec3> {
        JetVec3::new(
            self.components[0].eval_jet(base, order)?,
            self.components[1].eval_jet(base, order)?,
            self.components[2].eval_jet(base, order)?,
        )
    }

    /// The surface with parameters relabeled `(u, v) -> (v, u)`.
    pub fn swap_params(&self) -> SurfaceExpr {
        SurfaceExpr {
            components: [
                self.components[0].swap_params(),
                self.components[1].swap_params(),
                self.components[2].swap_params(),
            ],
        }
    }
}

impl fmt::Display for SurfaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.components[0], self.components[1], self.components[2]
        )
    }
}

/// Parse a parenthesized comma-separated triple of expressions.
pub fn parse_surface(text: &str) -> Result<SurfaceExpr> {
    let mut p = Parser::new(text);
    p.skip_ws();
    p.expect('(')?;
    let mut comps = Vec::new();
    loop {
        comps.push(p.parse_expr()?);
        p.skip_ws();
        match p.peek() {
            Some(',') => {
                p.bump();
            }
            Some(')') => {
                p.bump();
                break;
            }
            _ => {
                return Err(p.err("expected `,` or `)`"));
            }
        }
    }
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("trailing input after surface"));
    }
    if comps.len() != 3 {
        return Err(Error::Arity(comps.len()));
    }
    let mut it = comps.into_iter();
    Ok(SurfaceExpr::new([
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    ]))
}

/// Parse a single scalar expression in `u`, `v`.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text);
    let e = p.parse_expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("trailing input after expression"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Parser<'a> {
        Parser { src, bytes: src.as_bytes(), pos: 0 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<char> {
        self.bytes.get(self.pos).map(|b| *b as char)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.bump();
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn parse_expr(&mut self) -> Result<Expr> {
        let mut lhs = self.parse_term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.parse_term()?));
                }
                Some('-') => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.parse_term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr> {
        let mut lhs = self.parse_unary()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.parse_unary()?));
                }
                Some('/') => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.parse_unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_unary(&mut self) -> Result<Expr> {
        self.skip_ws();
        if self.peek() == Some('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.parse_unary()?)));
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<Expr> {
        let base = self.parse_atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let neg = if self.peek() == Some('-') {
                self.bump();
                true
            } else {
                false
            };
            let start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.bump();
            }
            if start == self.pos {
                return Err(self.err("expected integer exponent after `^`"));
            }
            let n: i32 = self.src[start..self.pos]
                .parse()
                .map_err(|_| self.err("integer exponent out of range"))?;
            let n = if neg { -n } else { n };
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.parse_expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.parse_number(),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.parse_ident(),
            Some(c) => Err(self.err(&format!("unexpected character `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn parse_number(&mut self) -> Result<Expr> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '.') {
            self.bump();
        }
        if matches!(self.peek(), Some('e') | Some('E')) {
            let mark = self.pos;
            self.bump();
            if matches!(self.peek(), Some('+') | Some('-')) {
                self.bump();
            }
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.bump();
                }
            } else {
                self.pos = mark;
            }
        }
        let text = &self.src[start..self.pos];
        let val: f64 = text
            .parse()
            .map_err(|_| self.err(&format!("invalid number `{text}`")))?;
        if !val.is_finite() {
            return Err(self.err("non-finite constant"));
        }
        Ok(Expr::Const(val))
    }

    fn parse_ident(&mut self) -> Result<Expr> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.bump();
        }
        let name = &self.src[start..self.pos];
        match name {
            "u" => Ok(Expr::Var(Var::U)),
            "v" => Ok(Expr::Var(Var::V)),
            "pi" => Ok(Expr::Const(std::f64::consts::PI)),
            _ => {
                self.skip_ws();
                if self.peek() == Some('(') {
                    let func = match name {
                        "sqrt" => Func::Sqrt,
                        "sin" => Func::Sin,
                        "cos" => Func::Cos,
                        "exp" => Func::Exp,
                        "log" => Func::Log,
                        _ => return Err(Error::UnknownFunction(name.to_string(), start)),
                    };
                    self.bump();
                    let arg = self.parse_expr()?;
                    self.expect(')')?;
                    Ok(Expr::Call(func, Box::new(arg)))
                } else {
                    Err(Error::UnknownIdentifier(name.to_string(), start))
                }
            }
        }
    }
}
