//! Textual grammar for Lie elements.
//!
//! ```text
//! element := ['+'|'-'] term (('+'|'-') term)*
//! term    := [scalar ['*']] gen
//! gen     := 'L[' int ']' | 'K[' int ']' | 'C'
//! scalar  := '(' gaussian ')' | rational ['i'] | 'i'
//! ```
//!
//! Generators print with index 0 first, then positive indices ascending, then
//! negative indices by increasing magnitude, then `C`.

use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{Gq, Rational};
use crate::lie::{AlgebraKind, LieElement};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Gen {
    L(i64),
    K(i64),
    C,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos, msg)
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        &self.src[start..self.pos]
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let d = self.digits();
        if d.is_empty() {
            return Err(Error::parse(start, "expected an integer index"));
        }
        let v: i64 = d
            .parse()
            .map_err(|_| Error::parse(start, "index out of range"))?;
        self.skip_ws();
        Ok(if neg { -v } else { v })
    }

    fn gen(&mut self) -> Result<Option<(Gen, usize)>> {
        let start = self.pos;
        let g = match self.peek() {
            Some('C') => {
                self.bump();
                Gen::C
            }
            Some(c @ ('L' | 'K')) => {
                self.bump();
                self.expect('[')?;
                let n = self.int()?;
                self.expect(']')?;
                if c == 'L' {
                    Gen::L(n)
                } else {
                    Gen::K(n)
                }
            }
            _ => return Ok(None),
        };
        Ok(Some((g, start)))
    }

    fn scalar(&mut self) -> Result<Option<Gq>> {
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                let close = self.src[self.pos..]
                    .find(')')
                    .ok_or_else(|| self.error("unclosed '('"))?;
                let inner = &self.src[self.pos + 1..self.pos + close];
                let v = Gq::from_str(inner).map_err(|e| match e {
                    Error::Parse { pos, msg } => Error::parse(start + 1 + pos, msg),
                    other => other,
                })?;
                self.pos += close + 1;
                Ok(Some(v))
            }
            Some('i') => {
                self.bump();
                Ok(Some(Gq::i()))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits();
                let mut r: Rational = num
                    .parse::<num_bigint::BigInt>()
                    .map_err(|_| Error::parse(start, "invalid number"))?
                    .into();
                if self.eat('/') {
                    let dpos = self.pos;
                    let den = self.digits();
                    let d: num_bigint::BigInt = den
                        .parse()
                        .map_err(|_| Error::parse(dpos, "expected a denominator"))?;
                    if d.is_zero() {
                        return Err(Error::parse(dpos, "zero denominator"));
                    }
                    r /= Rational::from(d);
                }
                if self.eat('i') {
                    Ok(Some(Gq::new(Rational::zero(), r)))
                } else {
                    Ok(Some(Gq::real(r)))
                }
            }
            _ => Ok(None),
        }
    }

    /// Returns the term's coefficient and generator (`None` for a bare scalar, which must be zero).
    fn term(&mut self) -> Result<(Gq, Option<(Gen, usize)>)> {
        self.skip_ws();
        if let Some(g) = self.gen()? {
            return Ok((Gq::one(), Some(g)));
        }
        let start = self.pos;
        let Some(c) = self.scalar()? else {
            return Err(self.error("expected a term"));
        };
        self.skip_ws();
        let star = self.eat('*');
        self.skip_ws();
        match self.gen()? {
            Some(g) => Ok((c, Some(g))),
            None if star => Err(self.error("expected a generator after '*'")),
            None if c.is_zero() => Ok((c, None)),
            None => Err(Error::parse(start, "scalar term without generator")),
        }
    }
}

/// Parses an element; the kind is K when only `K[n]`/`C` occur, Vir when `L[n]` occurs.
pub fn parse_element(text: &str) -> Result<LieElement> {
    let mut p = Parser { src: text, pos: 0 };
    let mut terms: Vec<(Gq, Gen, usize)> = Vec::new();
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error("empty element"));
    }
    let mut first = true;
    loop {
        p.skip_ws();
        let negate = if p.eat('-') {
            true
        } else if p.eat('+') || first {
            false
        } else {
            return Err(p.error("expected '+' or '-'"));
        };
        let (c, g) = p.term()?;
        if let Some((g, at)) = g {
            terms.push((if negate { -c } else { c }, g, at));
        }
        first = false;
        p.skip_ws();
        if p.peek().is_none() {
            break;
        }
    }

    let has_l = terms.iter().any(|t| matches!(t.1, Gen::L(_)));
    let has_k = terms.iter().any(|t| matches!(t.1, Gen::K(_)));
    if has_l && has_k {
        let at = terms
            .iter()
            .filter(|t| matches!(t.1, Gen::K(_) | Gen::L(_)))
            .nth(1)
            .map_or(0, |t| t.2);
        return Err(Error::parse(at, "cannot mix L and K generators"));
    }
    let kind = if has_l {
        AlgebraKind::Vir
    } else {
        AlgebraKind::K
    };
    let mut gens = Vec::new();
    let mut central = Gq::zero();
    for (c, g, at) in terms {
        match g {
            Gen::C => central += c,
            Gen::K(0) => return Err(Error::parse(at, "index 0 not in K basis")),
            Gen::K(n) | Gen::L(n) => gens.push((n, c)),
        }
    }
    LieElement::from_terms(kind, gens, central)
}

/// Parses and reinterprets in the requested kind (e.g. K0 for a centerless K expression).
pub fn parse_element_as(text: &str, kind: AlgebraKind) -> Result<LieElement> {
    let x = parse_element(text)?;
    if x.is_central() && x.kind().is_k() != kind.is_k() {
        return LieElement::central_element(kind, x.central().clone());
    }
    x.with_kind(kind)
}

fn order_key(n: i64) -> (u8, u64) {
    match n.signum() {
        0 => (0, 0),
        1 => (1, n.unsigned_abs()),
        _ => (2, n.unsigned_abs()),
    }
}

fn push_term(out: &mut String, c: &Gq, gen: &str) {
    let first = out.is_empty();
    let one = Gq::one();
    if c.is_real() {
        let neg = c.re().is_negative();
        let mag = c.re().abs();
        match (first, neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if Gq::real(mag.clone()) != one {
            out.push_str(&format!("{mag}*"));
        }
    } else {
        if !first {
            out.push_str(" + ");
        }
        out.push_str(&format!("({c})*"));
    }
    out.push_str(gen);
}

/// Deterministic text form; `parse_element` inverts it up to kind (K/Vir).
pub fn format_element(x: &LieElement) -> String {
    let mut terms: Vec<(i64, &Gq)> = x.terms().collect();
    terms.sort_by_key(|&(n, _)| order_key(n));
    let letter = if x.kind().is_k() { 'K' } else { 'L' };
    let mut out = String::new();
    for (n, c) in terms {
        push_term(&mut out, c, &format!("{letter}[{n}]"));
    }
    if !x.central().is_zero() {
        push_term(&mut out, x.central(), "C");
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Text form of a scalar: the exact Gaussian-rational grammar.
pub fn format_scalar(c: &Gq) -> String {
    c.to_string()
}

pub fn parse_scalar(text: &str) -> Result<Gq> {
    Gq::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn parses_grammar_instances() {
        let x = parse_element("K[2] - K[-2] + (0+1/2i)*C").unwrap();
        let want = LieElement::k(2) - LieElement::k(-2)
            + LieElement::central_element(AlgebraKind::K, Gq::new(int(0), rat(1, 2))).unwrap();
        assert_eq!(x, want);
        let y = parse_element("3*L[0]").unwrap();
        assert_eq!(y, LieElement::l(0).scale(&Gq::from_int(3)));
        assert_eq!(
            parse_element("-1/2 K[1]").unwrap(),
            LieElement::k(1).scale(&Gq::from_ratio(-1, 2))
        );
        assert_eq!(
            parse_element("2i*C").unwrap().central(),
            &Gq::new(int(0), int(2))
        );
        assert!(parse_element("0").unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_input() {
        match parse_element("K[0]") {
            Err(Error::Parse { msg, .. }) => assert_eq!(msg, "index 0 not in K basis"),
            other => panic!("{other:?}"),
        }
        assert!(parse_element("K[1] + L[1]").is_err());
        assert!(parse_element("K[1] K[2]").is_err());
        assert!(parse_element("3").is_err());
        assert!(parse_element("").is_err());
        assert!(matches!(
            parse_element("K[1] + * K[2]"),
            Err(Error::Parse { pos: 7, .. })
        ));
    }

    #[test]
    fn formatting_order_and_signs() {
        let x = LieElement::k(1).scale(&Gq::from_int(3))
            - LieElement::k(2).scale(&Gq::from_int(2))
            - LieElement::k(-1);
        assert_eq!(format_element(&x), "3*K[1] - 2*K[2] - K[-1]");
        assert_eq!(format_element(&LieElement::zero(AlgebraKind::K)), "0");
        let c = LieElement::central_element(AlgebraKind::K, Gq::new(int(0), rat(1, 2))).unwrap();
        let y = LieElement::k(-3).scale(&Gq::from_int(-1)) + c;
        assert_eq!(format_element(&y), "-K[-3] + (0+1/2i)*C");
        assert_eq!(parse_element(&format_element(&y)).unwrap(), y);
    }
}
