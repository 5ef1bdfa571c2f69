//! Expression grammar for the command line.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := base ('^' uint)?
//! base   := uint | 'x' | 't' | 'X' | '(' expr ')'
//! ```
//!
//! `x` is the function field variable, `t` the generator of `F_{p^m}` and `X`
//! the cubic's variable.

use std::fmt;

use thiserror::Error;

use crate::ffield::{Field, FieldElem};
use crate::polyring::{Poly, RatFunc, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sym {
    /// `x`
    FunctionVar,
    /// `t`
    FieldGen,
    /// `X`
    CubicVar,
}

impl Sym {
    pub fn as_char(&self) -> char {
        match self {
            Sym::FunctionVar => 'x',
            Sym::FieldGen => 't',
            Sym::CubicVar => 'X',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Decimal literal, kept as written.
    Int(String),
    Var(Sym),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("degree error: {0}")]
    Degree(String),
    #[error("unbound symbol '{sym}' at {pos}")]
    UnboundSymbol { sym: char, pos: usize },
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Tok {
    Num(usize, usize),
    Sym(Sym),
    Op(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(src: &str) -> Result<Lexer, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((Tok::Num(start, i), start));
            }
            'x' => {
                toks.push((Tok::Sym(Sym::FunctionVar), i));
                i += 1;
            }
            't' => {
                toks.push((Tok::Sym(Sym::FieldGen), i));
                i += 1;
            }
            'X' => {
                toks.push((Tok::Sym(Sym::CubicVar), i));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                toks.push((Tok::Op(c), i));
                i += 1;
            }
            _ => {
                return Err(ParseError::Syntax { pos: i, msg: format!("unexpected character '{c}'") })
            }
        }
    }
    toks.push((Tok::End, src.len()));
    Ok(Lexer { toks })
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Tok {
        self.toks[self.at].0
    }
    fn pos(&self) -> usize {
        self.toks[self.at].1
    }
    fn bump(&mut self) -> Tok {
        let t = self.peek();
        self.at += 1;
        t
    }
    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), msg: msg.to_string() })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Op('-') => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Op('/') => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Tok::Op('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        match self.peek() {
            Tok::Num(s, e) => {
                let n = self.src[s..e]
                    .parse::<u32>()
                    .or_else(|_| self.err("exponent too large"))?;
                self.bump();
                Ok(Expr::Pow(Box::new(base), n))
            }
            _ => self.err("expected a nonnegative integer exponent"),
        }
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.bump() {
            Tok::Num(s, e) => Ok(Expr::Int(self.src[s..e].to_string())),
            Tok::Sym(s) => Ok(Expr::Var(s)),
            Tok::Op('(') => {
                let inner = self.expr()?;
                if self.peek() != Tok::Op(')') {
                    return self.err("expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => {
                self.at -= 1;
                self.err("unexpected end of input")
            }
            _ => {
                self.at -= 1;
                self.err("expected a number, a variable or '('")
            }
        }
    }
}

/// Parses an expression into its syntax tree.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let Lexer { toks } = lex(src)?;
    let mut p = Parser { src, toks, at: 0 };
    let e = p.expr()?;
    if p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        Expr::Int(_) | Expr::Var(_) => 5,
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, paren: bool) -> fmt::Result {
    if paren {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Renders with the fewest parentheses that reparse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(s) => f.write_str(s),
            Expr::Var(s) => write!(f, "{}", s.as_char()),
            Expr::Neg(e) => {
                f.write_str("-")?;
                write_child(f, e, prec(e) < 3)
            }
            Expr::Pow(b, n) => {
                write_child(f, b, prec(b) < 5)?;
                write!(f, "^{n}")
            }
            Expr::Add(l, r) | Expr::Sub(l, r) | Expr::Mul(l, r) | Expr::Div(l, r) => {
                let (op, p) = match self {
                    Expr::Add(..) => ('+', 1),
                    Expr::Sub(..) => ('-', 1),
                    Expr::Mul(..) => ('*', 2),
                    _ => ('/', 2),
                };
                write_child(f, l, prec(l) < p)?;
                write!(f, "{op}")?;
                write_child(f, r, prec(r) <= p)
            }
        }
    }
}

impl Expr {
    fn symbols(&self, out: &mut Vec<Sym>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(s) => {
                if !out.contains(s) {
                    out.push(*s)
                }
            }
            Expr::Neg(e) | Expr::Pow(e, _) => e.symbols(out),
            Expr::Add(l, r) | Expr::Sub(l, r) | Expr::Mul(l, r) | Expr::Div(l, r) => {
                l.symbols(out);
                r.symbols(out);
            }
        }
    }

    pub fn mentions(&self, s: Sym) -> bool {
        let mut v = Vec::new();
        self.symbols(&mut v);
        v.contains(&s)
    }
}

fn int_mod(digits: &str, field: Field) -> FieldElem {
    let p = field.p() as u64;
    let r = digits.bytes().fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p);
    field.from_int(r as i64)
}

/// Values of expressions that may mention `X`: polynomials in `X` over `F_q(x)`.
type XPoly = Poly<RatFunc>;

fn eval_x(e: &Expr, field: Field, allow_x: bool) -> Result<XPoly, ParseError> {
    let zero = RatFunc::zero(field);
    let lift = |r: RatFunc| Poly::constant(r);
    Ok(match e {
        Expr::Int(s) => lift(RatFunc::constant(int_mod(s, field))),
        Expr::Var(Sym::FunctionVar) => {
            if !allow_x {
                return Err(ParseError::UnboundSymbol { sym: 'x', pos: 0 });
            }
            lift(RatFunc::x(field))
        }
        Expr::Var(Sym::FieldGen) => {
            if field.degree() == 1 {
                return Err(ParseError::UnboundSymbol { sym: 't', pos: 0 });
            }
            lift(RatFunc::constant(field.gen()))
        }
        Expr::Var(Sym::CubicVar) => Poly::x(zero),
        Expr::Neg(a) => -eval_x(a, field, allow_x)?,
        Expr::Add(a, b) => eval_x(a, field, allow_x)? + eval_x(b, field, allow_x)?,
        Expr::Sub(a, b) => eval_x(a, field, allow_x)? - eval_x(b, field, allow_x)?,
        Expr::Mul(a, b) => eval_x(a, field, allow_x)? * eval_x(b, field, allow_x)?,
        Expr::Div(a, b) => {
            let (num, den) = (eval_x(a, field, allow_x)?, eval_x(b, field, allow_x)?);
            if den.deg() > 0 {
                return Err(ParseError::Degree("X may not appear in a denominator".into()));
            }
            if den.is_zero() {
                return Err(ParseError::DivisionByZero);
            }
            num.scale(&den.coeff(0).inv())
        }
        Expr::Pow(a, n) => eval_x(a, field, allow_x)?.pow(*n as u64),
    })
}

fn unbound_at(src: &str, c: char, err: ParseError) -> ParseError {
    match err {
        ParseError::UnboundSymbol { sym, .. } if sym == c => {
            ParseError::UnboundSymbol { sym, pos: src.find(c).unwrap_or(0) }
        }
        other => other,
    }
}

/// A monic cubic in `X`, returned as its coefficients `(e, f, g)` over `F_q(x)`.
pub fn parse_cubic(src: &str, field: Field, allow_x: bool) -> Result<[RatFunc; 3], ParseError> {
    let ast = parse_expr(src)?;
    let p = eval_x(&ast, field, allow_x).map_err(|e| unbound_at(src, 'x', unbound_at(src, 't', e)))?;
    if p.deg() != 3 {
        return Err(ParseError::Degree(format!("expected a cubic in X, found degree {}", p.deg().max(0))));
    }
    let p = p.monic();
    Ok([p.coeff(2), p.coeff(1), p.coeff(0)])
}

/// An element of `F_q(x)` (no `X`).
pub fn parse_ratfunc(src: &str, field: Field) -> Result<RatFunc, ParseError> {
    let ast = parse_expr(src)?;
    if ast.mentions(Sym::CubicVar) {
        return Err(ParseError::UnboundSymbol { sym: 'X', pos: src.find('X').unwrap_or(0) });
    }
    let p = eval_x(&ast, field, true).map_err(|e| unbound_at(src, 't', e))?;
    Ok(p.coeff(0))
}
