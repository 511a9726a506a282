//! Gaussian rationals: exact scalars `a + b i` with `a, b` in ℚ.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Builds the rational `n / d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Binomial coefficient as an exact rational.
pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    Rational::from_integer(acc)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gq {
    re: Rational,
    im: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Gaussian rationals under their descriptive name.
pub type GaussianRational = Gq;

pub fn gq_conjugate(a: &Gq) -> Gq {
    a.conj()
}

/// Field arithmetic in ℚ(i). Division by zero is reported, never panics.
pub fn gq_arith(a: &Gq, b: &Gq, op: ArithOp) -> Result<Gq> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl Gq {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gq { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Gq {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Gq::real(int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Gq::real(rat(n, d))
    }

    pub fn i() -> Self {
        Gq {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    pub fn conj(&self) -> Gq {
        Gq {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|z|^2`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Gq> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Gq {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn checked_div(&self, rhs: &Gq) -> Result<Gq> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Gq {
        Gq {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    pub fn pow(&self, e: u32) -> Gq {
        let mut acc = Gq::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Lossy conversion for the few transcendental outputs.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl Default for Gq {
    fn default() -> Self {
        Gq::zero()
    }
}

impl Zero for Gq {
    fn zero() -> Self {
        Gq {
            re: Rational::zero(),
            im: Rational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gq {
    fn one() -> Self {
        Gq::real(Rational::one())
    }
}

impl From<i64> for Gq {
    fn from(n: i64) -> Self {
        Gq::from_int(n)
    }
}

impl From<Rational> for Gq {
    fn from(r: Rational) -> Self {
        Gq::real(r)
    }
}

impl<'a> Add<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn add(self, rhs: &Gq) -> Gq {
        Gq {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn sub(self, rhs: &Gq) -> Gq {
        Gq {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn mul(self, rhs: &Gq) -> Gq {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Gq::real(&self.re * &rhs.re);
        }
        Gq {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

/// Panics on a zero divisor; use [`Gq::checked_div`] where the divisor is not known to be nonzero.
impl<'a> Div<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn div(self, rhs: &Gq) -> Gq {
        self.checked_div(rhs).expect("Gq division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Gq> for Gq {
            type Output = Gq;
            fn $m(self, rhs: Gq) -> Gq {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Gq> for Gq {
            type Output = Gq;
            fn $m(self, rhs: &Gq) -> Gq {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Gq> for &'a Gq {
            type Output = Gq;
            fn $m(self, rhs: Gq) -> Gq {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl AddAssign<&Gq> for Gq {
    fn add_assign(&mut self, rhs: &Gq) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign for Gq {
    fn add_assign(&mut self, rhs: Gq) {
        *self += &rhs;
    }
}

impl SubAssign<&Gq> for Gq {
    fn sub_assign(&mut self, rhs: &Gq) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl SubAssign for Gq {
    fn sub_assign(&mut self, rhs: Gq) {
        *self -= &rhs;
    }
}

impl MulAssign<&Gq> for Gq {
    fn mul_assign(&mut self, rhs: &Gq) {
        *self = &*self * rhs;
    }
}

impl Sum for Gq {
    fn sum<I: Iterator<Item = Gq>>(iter: I) -> Gq {
        iter.fold(Gq::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Gq> for Gq {
    fn sum<I: Iterator<Item = &'a Gq>>(iter: I) -> Gq {
        iter.fold(Gq::zero(), |acc, x| acc + x)
    }
}

impl Product for Gq {
    fn product<I: Iterator<Item = Gq>>(iter: I) -> Gq {
        iter.fold(Gq::one(), |acc, x| acc * x)
    }
}

/// Textual form: `a/b` when real, otherwise `a/b+c/di` or `a/b-c/di`.
impl fmt::Display for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", self.re, sign, self.im.abs())
    }
}

impl fmt::Debug for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gq({self})")
    }
}

fn parse_rational(s: &str, offset: usize) -> Result<Rational> {
    let s_trim = s.trim();
    if s_trim.is_empty() {
        return Err(Error::parse(offset, "expected a number"));
    }
    let (num, den) = match s_trim.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s_trim, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::parse(offset, format!("invalid integer '{num}'")))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::parse(offset, format!("invalid integer '{d}'")))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::parse(offset, "zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

/// Parses a rational in `a` or `a/b` form.
pub fn parse_rational_str(s: &str) -> Result<Rational> {
    parse_rational(s, 0)
}

/// Parses the imaginary coefficient text preceding the trailing `i`: `""`, `"-"`, `"+"`, or a rational.
fn parse_imag_coeff(s: &str, offset: usize) -> Result<Rational> {
    match s.trim() {
        "" | "+" => Ok(Rational::one()),
        "-" => Ok(-Rational::one()),
        t => parse_rational(t.strip_prefix('+').unwrap_or(t), offset),
    }
}

impl FromStr for Gq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Gq> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        if t.is_empty() {
            return Err(Error::parse(0, "empty scalar"));
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Gq::real(parse_rational(t, 0)?));
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        match split {
            Some(k) => {
                let re = parse_rational(&body[..k], 0)?;
                let im = parse_imag_coeff(&body[k..], k)?;
                Ok(Gq::new(re, im))
            }
            None => Ok(Gq::new(Rational::zero(), parse_imag_coeff(body, 0)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: (i64, i64), b: (i64, i64)) -> Gq {
        Gq::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn product_expands() {
        let a = g((1, 1), (2, 1));
        let b = g((3, 1), (-1, 1));
        assert_eq!(&a * &b, g((5, 1), (5, 1)));
    }

    #[test]
    fn self_division_is_one() {
        let a = g((1, 2), (1, 3));
        assert_eq!(gq_arith(&a, &a, ArithOp::Div).unwrap(), Gq::one());
        assert_eq!(&a * &Gq::one(), a);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = Gq::from_int(3);
        assert_eq!(
            gq_arith(&a, &Gq::zero(), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn conjugation() {
        assert_eq!(g((2, 1), (3, 1)).conj(), g((2, 1), (-3, 1)));
        assert_eq!(Gq::from_int(5).conj(), Gq::from_int(5));
    }

    #[test]
    fn textual_form() {
        assert_eq!(g((1, 2), (-1, 3)).to_string(), "1/2-1/3i");
        assert_eq!(g((0, 1), (1, 2)).to_string(), "0+1/2i");
        assert_eq!(Gq::from_int(-4).to_string(), "-4");
        for s in ["1/2-1/3i", "0+1/2i", "-4", "7/3", "-2+1i", "3/4+5/6i"] {
            assert_eq!(s.parse::<Gq>().unwrap().to_string(), s);
        }
        assert_eq!("i".parse::<Gq>().unwrap(), Gq::i());
        assert_eq!("-i".parse::<Gq>().unwrap(), -Gq::i());
        assert_eq!("(2-i)".parse::<Gq>().unwrap(), g((2, 1), (-1, 1)));
        assert_eq!("-1/2i".parse::<Gq>().unwrap(), g((0, 1), (-1, 2)));
        assert!("1/0".parse::<Gq>().is_err());
        assert!("abc".parse::<Gq>().is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(9, 0), int(1));
        assert_eq!(binomial(3, 5), int(0));
    }
}
