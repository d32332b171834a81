//! Expression grammar for elements of `U_q(n)`:
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := "-" unary | power
//! power   := primary ("^" exponent)?
//! exponent:= "-"? INT | "(" INT ")"
//! primary := INT | "q" | "E" INT | "(" expr ")"
//! ```
//!
//! `E3^(2)` is a divided power; `x^k` with `k < 0` needs a scalar base. Division
//! is by scalars only.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::qea::{UPlusExpr, Word};
use crate::rootdata::CartanDatum;
use crate::scalars::RatScalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    Int(BigInt),
    Q,
    Gen { index: usize, offset: usize },
    Divided { index: usize, k: u32, offset: usize },
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>, usize),
    Pow(Box<ExprAst>, i64, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Decimal(String),
    Ident(String),
    Sym(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < bytes.len() && bytes[i] == b'.' && bytes[i + 1].is_ascii_digit() {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Decimal(text[s..i].to_string()), s));
            } else {
                out.push((Tok::Int(text[s..i].parse().expect("digits")), s));
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[s..i].to_string()), s));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(Error::Syntax { offset: i, msg: format!("unexpected character `{c}`") });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, msg: &str) -> Result<T> {
        let found = match self.peek() {
            Tok::End => "end of input".to_string(),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Ident(s) | Tok::Decimal(s) => format!("`{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
        };
        Err(Error::Syntax { offset: self.offset(), msg: format!("expected {msg}, found {found}") })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.error(&format!("`{c}`"))
        }
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump();
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Sym('/') => {
                    let at = self.bump().1;
                    lhs = ExprAst::Div(Box::new(lhs), Box::new(self.unary()?), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<ExprAst> {
        if *self.peek() == Tok::Sym('-') {
            self.bump();
            return Ok(ExprAst::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ExprAst> {
        let base = self.primary()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        let at = self.bump().1;
        if *self.peek() == Tok::Sym('(') {
            self.bump();
            let k_at = self.offset();
            let k = self.integer(false)?;
            self.expect(')')?;
            let ExprAst::Gen { index, offset } = base else {
                return Err(Error::Syntax { offset: at, msg: "divided powers apply to a generator".into() });
            };
            let k = u32::try_from(k).map_err(|_| Error::NonIntegerExponent(k_at))?;
            return Ok(ExprAst::Divided { index, k, offset });
        }
        let neg = *self.peek() == Tok::Sym('-');
        if neg {
            self.bump();
        }
        let k = self.integer(neg)?;
        Ok(ExprAst::Pow(Box::new(base), k, at))
    }

    fn integer(&mut self, neg: bool) -> Result<i64> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let k = i64::try_from(n).map_err(|_| Error::NonIntegerExponent(at))?;
                Ok(if neg { -k } else { k })
            }
            Tok::Ident(_) | Tok::Decimal(_) | Tok::Sym('(') => Err(Error::NonIntegerExponent(at)),
            _ => self.error("an integer exponent"),
        }
    }

    fn primary(&mut self) -> Result<ExprAst> {
        let (tok, at) = (self.peek().clone(), self.offset());
        match tok {
            Tok::Int(n) => {
                self.bump();
                Ok(ExprAst::Int(n))
            }
            Tok::Ident(s) => {
                self.bump();
                if s == "q" {
                    return Ok(ExprAst::Q);
                }
                let index = s
                    .strip_prefix('E')
                    .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) && !d.starts_with('0'))
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&i| (1..=9).contains(&i))
                    .ok_or(Error::UnknownAtom { offset: at, atom: s })?;
                Ok(ExprAst::Gen { index, offset: at })
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => self.error("an operand"),
        }
    }
}

/// Parses text into an AST.
pub fn parse_ast(text: &str) -> Result<ExprAst> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error("an operator or end of input");
    }
    Ok(e)
}

fn as_scalar(x: &UPlusExpr) -> Option<RatScalar> {
    match x.len() {
        0 => Some(RatScalar::zero()),
        1 => {
            let (w, c) = x.terms().next()?;
            w.is_empty().then(|| c.clone())
        }
        _ => None,
    }
}

/// Lowers an AST to an element, checking generator indices against the rank.
pub fn lower(datum: &CartanDatum, ast: &ExprAst) -> Result<UPlusExpr> {
    let gen = |index: usize, offset: usize| {
        if index > datum.rank() {
            Err(Error::UnknownAtom { offset, atom: format!("E{index}") })
        } else {
            Ok(())
        }
    };
    Ok(match ast {
        ExprAst::Int(n) => UPlusExpr::scalar(RatScalar::from_int(n.clone())),
        ExprAst::Q => UPlusExpr::scalar(RatScalar::q_pow(1)),
        ExprAst::Gen { index, offset } => {
            gen(*index, *offset)?;
            UPlusExpr::gen(*index)
        }
        ExprAst::Divided { index, k, offset } => {
            gen(*index, *offset)?;
            if *k == 0 {
                UPlusExpr::one()
            } else {
                UPlusExpr::term(Word::divided(*index, *k), RatScalar::one())
            }
        }
        ExprAst::Neg(a) => lower(datum, a)?.scale(&RatScalar::from_int(-1)),
        ExprAst::Add(a, b) => lower(datum, a)?.add(&lower(datum, b)?),
        ExprAst::Sub(a, b) => lower(datum, a)?.sub(&lower(datum, b)?),
        ExprAst::Mul(a, b) => lower(datum, a)?.mul(datum, &lower(datum, b)?),
        ExprAst::Div(a, b, at) => {
            let d = as_scalar(&lower(datum, b)?)
                .ok_or_else(|| Error::Syntax { offset: *at, msg: "division by a non-scalar".into() })?;
            lower(datum, a)?.scale(&d.inv()?)
        }
        ExprAst::Pow(a, k, at) => {
            let x = lower(datum, a)?;
            if *k >= 0 {
                x.pow(datum, *k as u32)
            } else {
                let s = as_scalar(&x)
                    .ok_or_else(|| Error::Syntax { offset: *at, msg: "negative power of a non-scalar".into() })?;
                let inv = s.inv()?;
                let mut r = RatScalar::one();
                for _ in 0..-*k {
                    r = &r * &inv;
                }
                UPlusExpr::scalar(r)
            }
        }
    })
}

/// Parses and lowers in one step.
pub fn parse_expr(datum: &CartanDatum, text: &str) -> Result<UPlusExpr> {
    lower(datum, &parse_ast(text)?)
}

