//! Parser for polynomial expressions.
//!
//! Grammar: identifiers, integer literals, `+ - * / ^` and parentheses.
//! `^` takes a non-negative integer literal; `/` may only divide by a
//! nonzero constant when evaluating to a [`Polynomial`], which is how
//! rational literals `p/q` are written. Multiplication is always explicit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{Polynomial, UniPoly};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((Tok::Num(s.parse().unwrap()), pos));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((Tok::Ident(s), pos));
            }
            '+' => {
                out.push((Tok::Plus, pos));
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push((Tok::Minus, pos));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, pos));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, pos));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, pos));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, pos));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, pos));
                i += 1;
            }
            other => {
                return Err(Error::Syntax { pos, msg: format!("unexpected character `{other}`") });
            }
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

/// Parsed expression tree with source positions for error reporting.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Var(String, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    let pos = self.bump().1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let pos = self.pos();
            match self.bump().0 {
                Tok::Num(n) => {
                    let e = n.to_u32().ok_or(Error::Syntax { pos, msg: "exponent too large".into() })?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(Error::Syntax { pos, msg: "`^` expects a non-negative integer literal".into() }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump().0 {
            Tok::Num(n) => Ok(Expr::Num(n)),
            Tok::Ident(s) => Ok(Expr::Var(s, pos)),
            Tok::LParen => {
                let e = self.expr()?;
                let pos = self.pos();
                match self.bump().0 {
                    Tok::RParen => Ok(e),
                    _ => Err(Error::Syntax { pos, msg: "expected `)`".into() }),
                }
            }
            Tok::End => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
            t => Err(Error::Syntax { pos, msg: format!("unexpected token {}", describe(&t)) }),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("`{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses an expression tree without resolving variables.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        t => {
            let msg = match t {
                Tok::Ident(_) | Tok::Num(_) | Tok::LParen => {
                    format!("unexpected token {} (multiplication must be written with `*`)", describe(t))
                }
                _ => format!("unexpected token {}", describe(t)),
            };
            Err(Error::Syntax { pos: p.pos(), msg })
        }
    }
}

/// Parses `src` as a polynomial in the declared variables `vars`.
pub fn parse(src: &str, vars: &[String]) -> Result<Polynomial> {
    eval(&parse_expr(src)?, vars)
}

fn eval(e: &Expr, vars: &[String]) -> Result<Polynomial> {
    let n = vars.len();
    Ok(match e {
        Expr::Num(k) => Polynomial::constant(n, BigRational::from_integer(k.clone())),
        Expr::Var(name, pos) => match vars.iter().position(|v| v == name) {
            Some(i) => Polynomial::var(n, i),
            None => return Err(Error::UnknownVariable { name: name.clone(), pos: *pos }),
        },
        Expr::Neg(a) => eval(a, vars)?.neg(),
        Expr::Add(a, b) => eval(a, vars)?.add(&eval(b, vars)?),
        Expr::Sub(a, b) => eval(a, vars)?.sub(&eval(b, vars)?),
        Expr::Mul(a, b) => eval(a, vars)?.mul(&eval(b, vars)?),
        Expr::Div(a, b, pos) => {
            let d = eval(b, vars)?;
            let c = d.constant_term();
            if d.len() > 1 || (d.len() == 1 && c.is_zero()) {
                return Err(Error::Syntax { pos: *pos, msg: "division by a non-constant".into() });
            }
            if c.is_zero() {
                return Err(Error::Syntax { pos: *pos, msg: "division by zero".into() });
            }
            eval(a, vars)?.scale(&c.recip())
        }
        Expr::Pow(a, k) => eval(a, vars)?.pow(*k),
    })
}

/// Parses `src` as a rational function in the single variable `var`,
/// returning a numerator/denominator pair with monic, coprime denominator.
pub fn parse_rational_function(src: &str, var: &str) -> Result<(UniPoly, UniPoly)> {
    eval_ratfn(&parse_expr(src)?, var)
}

fn reduce_fraction(num: UniPoly, den: UniPoly) -> (UniPoly, UniPoly) {
    if num.is_zero() {
        return (num, UniPoly::one());
    }
    let g = num.gcd(&den);
    let (n, d) = (num.div_rem(&g).0, den.div_rem(&g).0);
    let lc = d.leading().cloned().unwrap();
    (n.scale(&lc.recip()), d.monic())
}

fn eval_ratfn(e: &Expr, var: &str) -> Result<(UniPoly, UniPoly)> {
    Ok(match e {
        Expr::Num(k) => (UniPoly::constant(BigRational::from_integer(k.clone())), UniPoly::one()),
        Expr::Var(name, pos) => {
            if name != var {
                return Err(Error::UnknownVariable { name: name.clone(), pos: *pos });
            }
            (UniPoly::x(), UniPoly::one())
        }
        Expr::Neg(a) => {
            let (n, d) = eval_ratfn(a, var)?;
            (n.scale(&-BigRational::one()), d)
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (n1, d1) = eval_ratfn(a, var)?;
            let (n2, d2) = eval_ratfn(b, var)?;
            let (l, r) = (n1.mul(&d2), n2.mul(&d1));
            let n = if matches!(e, Expr::Add(..)) { l.add(&r) } else { l.sub(&r) };
            reduce_fraction(n, d1.mul(&d2))
        }
        Expr::Mul(a, b) => {
            let (n1, d1) = eval_ratfn(a, var)?;
            let (n2, d2) = eval_ratfn(b, var)?;
            reduce_fraction(n1.mul(&n2), d1.mul(&d2))
        }
        Expr::Div(a, b, pos) => {
            let (n1, d1) = eval_ratfn(a, var)?;
            let (n2, d2) = eval_ratfn(b, var)?;
            if n2.is_zero() {
                return Err(Error::Syntax { pos: *pos, msg: "division by zero".into() });
            }
            reduce_fraction(n1.mul(&d2), d1.mul(&n2))
        }
        Expr::Pow(a, k) => {
            let (n, d) = eval_ratfn(a, var)?;
            (n.pow(*k), d.pow(*k))
        }
    })
}
