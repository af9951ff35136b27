//! Text form of polynomials: terms `c*x^i*y^j` joined by `+`/`-`, with
//! optional coefficient (default 1) and possibly negative exponents written
//! `x^-2` or `x^(-2)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{BiLaurent, IntPoly};

/// A parse failure at a 1-based character column.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    c: &BigInt,
    vars: &[(&str, i64)],
    first: bool,
) -> fmt::Result {
    match (first, c.is_negative()) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let mag = c.abs();
    let factors: Vec<String> = vars
        .iter()
        .filter(|(_, e)| *e != 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if factors.is_empty() {
        return write!(f, "{mag}");
    }
    if !mag.is_one() {
        write!(f, "{mag}*")?;
    }
    f.write_str(&factors.join("*"))
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser { chars: src.chars().collect(), pos: 0 }
    }

    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: at + 1, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let at = self.pos;
        let Some(d) = self.digits() else {
            return self.err(at, "expected an exponent");
        };
        if paren && !self.eat(')') {
            return self.err(self.pos, "expected ')'");
        }
        let e: i64 = match d.parse() {
            Ok(e) => e,
            Err(_) => return self.err(at, "exponent out of range"),
        };
        Ok(if neg { -e } else { e })
    }

    /// One term, returned as `(coefficient, x exponent, y exponent)`.
    fn term(&mut self) -> Result<(BigInt, i64, i64), ParseError> {
        let mut coeff = BigInt::one();
        let (mut ex, mut ey) = (0i64, 0i64);
        let mut need_factor = true;
        if let Some(d) = self.digits() {
            coeff = d.parse().expect("ascii digits");
            if !self.eat('*') {
                return Ok((coeff, 0, 0));
            }
        }
        while need_factor {
            self.skip_ws();
            let at = self.pos;
            let var = match self.peek() {
                Some(c) if c.is_ascii_alphabetic() => c,
                Some(c) => return self.err(at, format!("unexpected character '{c}'")),
                None => return self.err(at, "unexpected end of input"),
            };
            self.pos += 1;
            let e = if self.eat('^') { self.exponent()? } else { 1 };
            match var {
                'x' => ex += e,
                'y' => ey += e,
                other => {
                    return self.err(
                        at,
                        format!("unknown variable '{other}'; only x and y are allowed"),
                    )
                }
            }
            need_factor = self.eat('*');
        }
        Ok((coeff, ex, ey))
    }

    fn polynomial(&mut self) -> Result<BTreeMap<(i64, i64), BigInt>, ParseError> {
        let mut terms: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        self.skip_ws();
        if self.peek().is_none() {
            return self.err(0, "empty polynomial");
        }
        let mut negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        loop {
            let (c, ex, ey) = self.term()?;
            *terms.entry((ex, ey)).or_default() += if negative { -c } else { c };
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(c) => return self.err(self.pos, format!("unexpected character '{c}'")),
            }
            self.pos += 1;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(terms)
    }
}

pub(crate) fn parse_bivariate(s: &str) -> Result<BiLaurent, ParseError> {
    let terms = Parser::new(s).polynomial()?;
    Ok(BiLaurent::from_terms(terms))
}

pub(crate) fn parse_univariate(s: &str) -> Result<IntPoly, ParseError> {
    let terms = Parser::new(s).polynomial()?;
    let mut coeffs: Vec<BigInt> = Vec::new();
    for ((ex, ey), c) in terms {
        if ey != 0 {
            let col = s.find('y').map_or(1, |i| s[..i].chars().count() + 1);
            return Err(ParseError { column: col, message: "univariate polynomial may only use x".into() });
        }
        if ex < 0 {
            return Err(ParseError { column: 1, message: format!("negative exponent {ex} in a polynomial") });
        }
        let ex = ex as usize;
        if coeffs.len() <= ex {
            coeffs.resize(ex + 1, BigInt::zero());
        }
        coeffs[ex] += c;
    }
    Ok(IntPoly::new(coeffs))
}
