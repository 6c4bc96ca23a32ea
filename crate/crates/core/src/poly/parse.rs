//! Text format: signed integer or rational coefficients, `*` for
//! products, `^` for powers, variables `x{i}{j}` or `x{i}_{j}`.
//! Whitespace is insignificant.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::ring::{Ring, Variable};
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Var(Variable),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            '+' => out.push(Token::Plus),
            '-' => out.push(Token::Minus),
            '*' => out.push(Token::Star),
            '^' => out.push(Token::Caret),
            '/' => out.push(Token::Slash),
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..=i].iter().collect();
                out.push(Token::Num(s.parse().expect("digits")));
            }
            'x' | '_' => {
                let start = i;
                i += 1;
                if c == '_' {
                    while i < chars.len() && chars[i].is_ascii_alphabetic() {
                        i += 1;
                    }
                }
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token::Var(s.parse()?));
                continue;
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

type RawTerm = (BigRational, Vec<(Variable, u16)>);

fn parse_terms(src: &str) -> Result<Vec<RawTerm>> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut pos = 0;
    let mut terms = Vec::new();
    let err = |msg: &str| Error::Parse(format!("{msg} in `{src}`"));
    loop {
        let mut sign = BigRational::one();
        match toks.get(pos) {
            Some(Token::Plus) => pos += 1,
            Some(Token::Minus) => {
                sign = -sign;
                pos += 1;
            }
            _ if pos > 0 => return Err(err("expected + or -")),
            _ => {}
        }
        let mut coeff = sign;
        let mut vars = Vec::new();
        loop {
            match toks.get(pos) {
                Some(Token::Num(n)) => {
                    pos += 1;
                    let mut q = BigRational::from_integer(n.clone());
                    if toks.get(pos) == Some(&Token::Slash) {
                        pos += 1;
                        match toks.get(pos) {
                            Some(Token::Num(d)) if *d != BigInt::from(0) => {
                                q /= BigRational::from_integer(d.clone());
                                pos += 1;
                            }
                            _ => return Err(err("bad denominator")),
                        }
                    }
                    coeff *= q;
                }
                Some(Token::Var(v)) => {
                    pos += 1;
                    let mut e = 1u16;
                    if toks.get(pos) == Some(&Token::Caret) {
                        pos += 1;
                        match toks.get(pos) {
                            Some(Token::Num(n)) => {
                                e = n.to_string().parse().map_err(|_| err("exponent too large"))?;
                                pos += 1;
                            }
                            _ => return Err(err("bad exponent")),
                        }
                    }
                    vars.push((*v, e));
                }
                _ => return Err(err("expected factor")),
            }
            if toks.get(pos) == Some(&Token::Star) {
                pos += 1;
            } else {
                break;
            }
        }
        terms.push((coeff, vars));
        if pos >= toks.len() {
            break;
        }
    }
    Ok(terms)
}

/// Parses `src` in `ring`; every variable must belong to the ring.
pub fn parse_polynomial<F: Field>(ring: &Ring<F>, src: &str) -> Result<Polynomial<F>> {
    let field = ring.field();
    let n = ring.nvars();
    let mut out = Vec::new();
    for (coeff, vars) in parse_terms(src)? {
        let mut exps = vec![0u16; n];
        for (v, e) in vars {
            exps[ring.require(v)?] += e;
        }
        out.push((Monomial::from_exponents(exps), field.from_rational(&coeff)?));
    }
    Ok(Polynomial::from_terms(ring, out))
}

/// Variables mentioned in the given texts, in row-major order.
pub fn variables_in(texts: &[&str]) -> Result<Vec<Variable>> {
    let mut set = BTreeSet::new();
    for t in texts {
        for (_, vars) in parse_terms(t)? {
            set.extend(vars.into_iter().map(|(v, _)| v));
        }
    }
    Ok(set.into_iter().collect())
}

impl<F: Field> Polynomial<F> {
    pub fn parse(ring: &Ring<F>, src: &str) -> Result<Self> {
        parse_polynomial(ring, src)
    }
}
