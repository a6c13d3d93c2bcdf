//! Text grammar for polynomials and factored rational functions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' uint)?
//! atom   := integer | 'X' | 'Y' uint | '(' expr ')'
//! ```
//!
//! Polynomials may only be divided by nonzero constants. Factored rational
//! functions may additionally be divided by products of powers of
//! homogeneous linear forms, e.g. `X/((X+Y1)*(X-Y1)^2)`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{FactoredRational, LinForm, Poly, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    X,
    Y(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'/' => out.push((start, Tok::Slash)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = if word == "X" {
                    Tok::X
                } else if let Some(idx) = word
                    .strip_prefix('Y')
                    .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&k| k >= 1)
                {
                    Tok::Y(idx)
                } else {
                    return Err(Error::UnknownVariable {
                        pos: start,
                        name: word.to_string(),
                    });
                };
                out.push((start, tok));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{}`", ch),
                });
            }
        }
        i += 1;
    }
    Ok(out)
}

#[derive(Debug)]
enum Expr {
    Int(BigInt),
    Var { pos: usize, index: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div { pos: usize, lhs: Box<Expr>, rhs: Box<Expr> },
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.at += 1;
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
                Some(Tok::Star) => {
                    self.at += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    let pos = self.pos();
                    self.at += 1;
                    lhs = Expr::Div {
                        pos,
                        lhs: Box::new(lhs),
                        rhs: Box::new(self.unary()?),
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.at += 1;
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    let e = match n.to_u32() {
                        Some(e) => e,
                        None => return self.err("exponent too large"),
                    };
                    self.at += 1;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return self.err("expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::X) => {
                self.at += 1;
                Ok(Expr::Var { pos, index: 0 })
            }
            Some(Tok::Y(i)) => {
                self.at += 1;
                Ok(Expr::Var { pos, index: i })
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.at += 1;
                Ok(e)
            }
            Some(_) => self.err("expected a number, variable or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_expr(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

fn check_var(pos: usize, index: usize, ny: usize) -> Result<()> {
    if index > ny {
        return Err(Error::UnknownVariable {
            pos,
            name: format!("Y{}", index),
        });
    }
    Ok(())
}

fn eval_poly(e: &Expr, ny: usize) -> Result<Poly> {
    Ok(match e {
        Expr::Int(n) => Poly::constant(ny, Rational::from_integer(n.clone())),
        Expr::Var { pos, index } => {
            check_var(*pos, *index, ny)?;
            Poly::var(ny, *index)
        }
        Expr::Neg(a) => -eval_poly(a, ny)?,
        Expr::Add(a, b) => eval_poly(a, ny)? + eval_poly(b, ny)?,
        Expr::Sub(a, b) => eval_poly(a, ny)? - eval_poly(b, ny)?,
        Expr::Mul(a, b) => eval_poly(a, ny)? * eval_poly(b, ny)?,
        Expr::Pow(a, k) => eval_poly(a, ny)?.pow(*k),
        Expr::Div { pos, lhs, rhs } => {
            let d = eval_poly(rhs, ny)?;
            match d.as_constant() {
                Some(c) if !c.is_zero() => eval_poly(lhs, ny)?.scale(&c.recip()),
                Some(_) => {
                    return Err(Error::Syntax {
                        pos: *pos,
                        msg: "division by zero".to_string(),
                    })
                }
                None => {
                    return Err(Error::Syntax {
                        pos: *pos,
                        msg: "polynomials may only be divided by constants".to_string(),
                    })
                }
            }
        }
    })
}

/// Evaluates a divisor as `constant · ∏ form^k`.
fn eval_divisor(e: &Expr, ny: usize, pos: usize) -> Result<(Rational, Vec<(LinForm, u32)>)> {
    match e {
        Expr::Neg(a) => {
            let (c, f) = eval_divisor(a, ny, pos)?;
            Ok((-c, f))
        }
        Expr::Mul(a, b) => {
            let (ca, mut fa) = eval_divisor(a, ny, pos)?;
            let (cb, fb) = eval_divisor(b, ny, pos)?;
            fa.extend(fb);
            Ok((ca * cb, fa))
        }
        Expr::Pow(a, k) => {
            let (c, f) = eval_divisor(a, ny, pos)?;
            Ok((
                c.pow(*k as i32),
                f.into_iter().map(|(l, m)| (l, m * k)).collect(),
            ))
        }
        other => {
            let p = eval_poly(other, ny)?;
            if let Some(c) = p.as_constant() {
                if c.is_zero() {
                    return Err(Error::Syntax {
                        pos,
                        msg: "division by zero".to_string(),
                    });
                }
                return Ok((c, Vec::new()));
            }
            match LinForm::from_poly(&p) {
                Some(l) => Ok((Rational::from_integer(1.into()), alloc::vec![(l, 1)])),
                None => Err(Error::Syntax {
                    pos,
                    msg: format!("divisor `{}` is not a product of homogeneous linear forms", p),
                }),
            }
        }
    }
}

fn eval_factored(e: &Expr, ny: usize) -> Result<FactoredRational> {
    Ok(match e {
        Expr::Neg(a) => -eval_factored(a, ny)?,
        Expr::Add(a, b) => eval_factored(a, ny)?.checked_add(&eval_factored(b, ny)?)?,
        Expr::Sub(a, b) => eval_factored(a, ny)?.checked_sub(&eval_factored(b, ny)?)?,
        Expr::Mul(a, b) => eval_factored(a, ny)?.checked_mul(&eval_factored(b, ny)?)?,
        Expr::Pow(a, k) => {
            let base = eval_factored(a, ny)?;
            let mut acc = FactoredRational::one(ny);
            for _ in 0..*k {
                acc = acc.checked_mul(&base)?;
            }
            acc
        }
        Expr::Div { pos, lhs, rhs } => {
            let n = eval_factored(lhs, ny)?;
            let (c, factors) = eval_divisor(rhs, ny, *pos)?;
            let d = FactoredRational::new(Poly::constant(ny, c.recip()), factors)?;
            n.checked_mul(&d)?
        }
        other => FactoredRational::from_poly(eval_poly(other, ny)?),
    })
}

/// Parses a polynomial in `X, Y1, …, Y{ny}`.
pub fn parse_poly(text: &str, ny: usize) -> Result<Poly> {
    eval_poly(&parse_expr(text)?, ny)
}

/// Parses a rational function whose divisors are products of linear forms.
pub fn parse_factored(text: &str, ny: usize) -> Result<FactoredRational> {
    eval_factored(&parse_expr(text)?, ny)
}

/// Largest `Yi` index mentioned in `text` (0 if none).
pub fn infer_num_y_vars(text: &str) -> Result<usize> {
    Ok(lex(text)?
        .into_iter()
        .filter_map(|(_, t)| match t {
            Tok::Y(i) => Some(i),
            _ => None,
        })
        .max()
        .unwrap_or(0))
}
