//! A small expression parser for polynomials in `q` and `A`.
//!
//! Accepts `+ - * / ^`, parentheses, implicit multiplication (`2q^3`),
//! integer literals and the variables `q` and `A`. Division is allowed by
//! anything whose `A`-dependence is a single monomial. The canonical renderings
//! of [`LaurentPoly`] and [`LaurentPolyA`] parse back to the same value.

use thiserror::Error;

use super::{LaurentPoly, LaurentPolyA, RatFuncA};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseExprError {
    #[error("unexpected character {ch:?} at offset {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected token at offset {0}")]
    UnexpectedToken(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot divide by an expression with non-monomial A-dependence")]
    NonMonomialDivisor,
    #[error("expression depends on A")]
    DependsOnA,
    #[error("expression is not a Laurent polynomial")]
    NotPolynomial,
    #[error("exponent out of range")]
    ExponentRange,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    Q,
    A,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ParseExprError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        let tok = match ch {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let mut v: i64 = 0;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(chars[i].1.to_digit(10).unwrap() as i64))
                        .ok_or(ParseExprError::ExponentRange)?;
                    i += 1;
                }
                out.push((Tok::Num(v), pos));
                continue;
            }
            'q' => Tok::Q,
            'A' => Tok::A,
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '\u{00b7}' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(ParseExprError::UnexpectedChar { ch, pos }),
        };
        out.push((tok, pos));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, p)| *p).unwrap_or(usize::MAX)
    }

    fn expr(&mut self) -> Result<RatFuncA, ParseExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFuncA, ParseExprError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = mul(&acc, &self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.next();
                    acc = div(&acc, &self.unary()?)?;
                }
                Some(Tok::Num(_)) | Some(Tok::Q) | Some(Tok::A) | Some(Tok::LParen) => {
                    acc = mul(&acc, &self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFuncA, ParseExprError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                Ok(&RatFuncA::zero() - &self.unary()?)
            }
            Some(Tok::Plus) => {
                self.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFuncA, ParseExprError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.next();
        let e = self.exponent()?;
        pow(&base, e)
    }

    fn exponent(&mut self) -> Result<i64, ParseExprError> {
        let at = self.offset();
        match self.next() {
            Some(Tok::Num(n)) => Ok(n),
            Some(Tok::Minus) => Ok(-self.exponent()?),
            Some(Tok::Plus) => self.exponent(),
            Some(Tok::LParen) => {
                let e = self.exponent()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    None => Err(ParseExprError::UnexpectedEnd),
                    _ => Err(ParseExprError::UnexpectedToken(at)),
                }
            }
            None => Err(ParseExprError::UnexpectedEnd),
            _ => Err(ParseExprError::UnexpectedToken(at)),
        }
    }

    fn atom(&mut self) -> Result<RatFuncA, ParseExprError> {
        let at = self.offset();
        match self.next() {
            Some(Tok::Num(n)) => Ok(RatFuncA::from_poly_a(LaurentPolyA::from_poly(LaurentPoly::from_int(n)))),
            Some(Tok::Q) => Ok(RatFuncA::from_poly_a(LaurentPolyA::from_poly(LaurentPoly::q()))),
            Some(Tok::A) => Ok(RatFuncA::from_poly_a(LaurentPolyA::a_pow(1))),
            Some(Tok::LParen) => {
                let v = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(v),
                    None => Err(ParseExprError::UnexpectedEnd),
                    _ => Err(ParseExprError::UnexpectedToken(at)),
                }
            }
            None => Err(ParseExprError::UnexpectedEnd),
            _ => Err(ParseExprError::UnexpectedToken(at)),
        }
    }
}

fn mul(a: &RatFuncA, b: &RatFuncA) -> RatFuncA {
    RatFuncA::new(a.num() * b.num(), a.den() * b.den())
}

fn div(a: &RatFuncA, b: &RatFuncA) -> Result<RatFuncA, ParseExprError> {
    if b.is_zero() {
        return Err(ParseExprError::DivisionByZero);
    }
    let exps = b.a_exponents();
    if exps.len() != 1 {
        return Err(ParseExprError::NonMonomialDivisor);
    }
    let k = exps[0];
    let bq = b.num().coeff(k);
    Ok(RatFuncA::new(a.num().shift_a(-k).scale(b.den()), a.den() * &bq))
}

fn pow(base: &RatFuncA, e: i64) -> Result<RatFuncA, ParseExprError> {
    if e.unsigned_abs() > 10_000 {
        return Err(ParseExprError::ExponentRange);
    }
    let one = RatFuncA::from_poly_a(LaurentPolyA::one());
    let mut acc = one.clone();
    for _ in 0..e.unsigned_abs() {
        acc = mul(&acc, base);
    }
    if e < 0 {
        div(&one, &acc)
    } else {
        Ok(acc)
    }
}

/// Parses an expression in `q` and `A`, allowing `q`-only denominators.
pub fn parse_ratfunc_a(s: &str) -> Result<RatFuncA, ParseExprError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(ParseExprError::UnexpectedEnd);
    }
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(ParseExprError::UnexpectedToken(p.offset()));
    }
    Ok(v)
}

/// Parses a Laurent polynomial in `q` and `A`.
pub fn parse_laurent_a(s: &str) -> Result<LaurentPolyA, ParseExprError> {
    let r = parse_ratfunc_a(s)?;
    if let Some(p) = r.as_laurent_a() {
        return Ok(p);
    }
    // Rational constants such as 3/2 leave a constant denominator.
    if let Some(c) = r.den().as_constant() {
        return Ok(r.num().scale_rat(&c.recip()));
    }
    Err(ParseExprError::NotPolynomial)
}

/// Parses a Laurent polynomial in `q`.
pub fn parse_laurent(s: &str) -> Result<LaurentPoly, ParseExprError> {
    let p = parse_laurent_a(s)?;
    match p.a_exponents().as_slice() {
        [] => Ok(LaurentPoly::zero()),
        [0] => Ok(p.coeff(0)),
        _ => Err(ParseExprError::DependsOnA),
    }
}
