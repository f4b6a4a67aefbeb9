//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! The text form is `terms joined by + / -`, where a term is `coef*mono`,
//! `mono` or `coef`. Variable names follow `[A-Za-z][A-Za-z0-9_+-]*` and are
//! read greedily, so a term separator that follows a variable must be set off
//! by whitespace (`x - 1`, not `x-1`). [`Polynomial`]'s `Display` always
//! emits that spacing, which makes `parse(serialize(p)) == p` hold exactly.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Rational::one(), m)
    }

    /// The polynomial `name`. Panics on an invalid variable name.
    pub fn var(name: &str) -> Self {
        Self::monomial(Monomial::var(name).expect("valid variable name"))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The monomial if the polynomial is a single term with coefficient 1.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        c.is_one().then_some(m)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().map(|(v, _)| v.to_owned()))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Repeatedly cancels the leading term in graded-lex order. Over a field this
    /// succeeds exactly when the division is exact, because leading terms multiply.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let (lm, lc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        if let Some(c) = divisor.as_constant() {
            return Ok(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quotient = Polynomial::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let Some(qm) = rm.div(lm) else {
                return Err(Error::NotDivisible {
                    dividend: self.to_string(),
                    divisor: divisor.to_string(),
                });
            };
            let qc = rc / lc;
            rem -= &divisor.mul_term(&qm, &qc);
            quotient.add_term(qm, qc);
        }
        Ok(quotient)
    }

    /// Substitutes rationals for every variable.
    pub fn eval(&self, assignment: &HashMap<String, Rational>) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (v, e) in m.factors() {
                let x = assignment
                    .get(v)
                    .ok_or_else(|| Error::UnboundVariable(v.to_owned()))?;
                value *= num_traits::pow(x.clone(), e as usize);
            }
            total += value;
        }
        Ok(total)
    }

    /// Substitutes polynomials for some variables; others are kept.
    pub fn substitute(&self, assignment: &HashMap<String, Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone());
            let mut rest = Monomial::one();
            for (v, e) in m.factors() {
                match assignment.get(v) {
                    Some(p) => term = &term * &p.pow(e),
                    None => rest = rest.mul(&Monomial::power(v, e).expect("existing name")),
                }
            }
            out += &term.mul_term(&rest, &Rational::one());
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parser::new(s).parse()
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::parse(format!("{what} at offset {} in `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.err("empty polynomial"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let mut negative = false;
            match self.peek() {
                Some(b'+') => self.pos += 1,
                Some(b'-') => {
                    negative = true;
                    self.pos += 1
                }
                Some(_) if first => {}
                Some(_) => return Err(self.err("expected `+` or `-`")),
                None => break,
            }
            first = false;
            self.skip_ws();
            let (m, c) = self.term()?;
            out.add_term(m, if negative { -c } else { c });
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, Rational)> {
        let mut coef = Rational::one();
        let mut mono = Monomial::one();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b) if b.is_ascii_digit() || b == b'.' => coef *= self.number()?,
                Some(b) if b.is_ascii_alphabetic() => mono = mono.mul(&self.power()?),
                _ => return Err(self.err("expected a coefficient or variable")),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((mono, coef));
            }
        }
    }

    fn number(&mut self) -> Result<Rational> {
        let start = self.pos;
        let mut seen_slash = false;
        while let Some(b) = self.peek() {
            if b.is_ascii_digit() || b == b'.' {
                self.pos += 1;
            } else if b == b'/' && !seen_slash {
                seen_slash = true;
                self.pos += 1;
            } else {
                break;
            }
        }
        parse_rational(&self.src[start..self.pos])
    }

    fn power(&mut self) -> Result<Monomial> {
        let start = self.pos;
        self.pos += 1;
        while let Some(b) = self.peek() {
            if b.is_ascii_alphanumeric() || matches!(b, b'_' | b'+' | b'-') {
                self.pos += 1;
            } else {
                break;
            }
        }
        let name = &self.src[start..self.pos];
        let mut exp = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let s = self.pos;
            while self.peek().is_some_and(|b| b.is_ascii_digit()) {
                self.pos += 1;
            }
            exp = self.src[s..self.pos]
                .parse()
                .map_err(|_| self.err("expected an exponent"))?;
        }
        Monomial::power(name, exp)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial { (&self).$f(&rhs) }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial { (&self).$f(rhs) }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial { self.$f(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::one(), |acc, p| &acc * &p)
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::monomial(m)
    }
}

/// Parses a polynomial literal; panics on malformed input. Intended for tests and fixtures.
pub fn poly(s: &str) -> Polynomial {
    s.parse()
        .unwrap_or_else(|e| panic!("bad polynomial literal `{s}`: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};

    #[test]
    fn difference_of_squares() {
        assert_eq!(&poly("x + 1") * &poly("x - 1"), poly("x^2 - 1"));
    }

    #[test]
    fn display_is_grlex_descending() {
        let p = poly("1 - 3/2*y + x*y + x^2 - a+*a-");
        assert_eq!(p.to_string(), "-a+*a- + x^2 + x*y - 3/2*y + 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(poly("-1").to_string(), "-1");
    }

    #[test]
    fn parse_variants() {
        assert_eq!(poly("0.3"), Polynomial::constant(ratio(3, 10)));
        assert_eq!(poly("2*x*3"), poly("6*x"));
        assert_eq!(poly("x*x"), poly("x^2"));
        assert_eq!(poly("x - x"), Polynomial::zero());
        assert_eq!(poly("h1+^2*h1-"), poly("h1- * h1+ * h1+"));
        // greedy variable names swallow an unspaced sign
        assert_eq!(poly("q-1"), Polynomial::var("q-1"));
        assert!("x +".parse::<Polynomial>().is_err());
        assert!("".parse::<Polynomial>().is_err());
        assert!("x y".parse::<Polynomial>().is_err());
        assert!("x^".parse::<Polynomial>().is_err());
    }

    #[test]
    fn edge_factor_expansion() {
        let f = &Polynomial::one() - &(&Polynomial::var("a+") * &Polynomial::var("a-"));
        let g = &f * &Polynomial::one();
        assert_eq!(g.num_terms(), 2);
        let mut it = g.terms().rev();
        let (m, c) = it.next().unwrap();
        assert_eq!((m.to_string(), c.clone()), ("a+*a-".to_owned(), int(-1)));
        let (m, c) = it.next().unwrap();
        assert_eq!((m.is_one(), c.clone()), (true, int(1)));
        assert_eq!(&f * &f, poly("a+^2*a-^2 - 2*a+*a- + 1"));
    }

    #[test]
    fn exact_division() {
        assert_eq!(poly("x^2 - 1").exact_div(&poly("x - 1")).unwrap(), poly("x + 1"));
        assert!(matches!(
            poly("x").exact_div(&poly("y")),
            Err(Error::NotDivisible { .. })
        ));
        assert!(matches!(
            poly("x").exact_div(&Polynomial::zero()),
            Err(Error::DivisionByZero)
        ));
        assert!(poly("x^2 + 1").exact_div(&poly("x + 1")).is_err());
        assert_eq!(poly("3*x").exact_div(&poly("2")).unwrap(), poly("3/2*x"));
        assert_eq!(Polynomial::zero().exact_div(&poly("x")).unwrap(), Polynomial::zero());
    }

    #[test]
    fn evaluation() {
        let env: HashMap<String, Rational> = [("x".to_owned(), int(2))].into();
        assert_eq!(poly("x^2 - 1").eval(&env).unwrap(), int(3));
        let q: HashMap<String, Rational> = [("q".to_owned(), int(1))].into();
        let f = &poly("1 + 2*q") * &poly("1 - q").pow(2);
        assert_eq!(f.eval(&q).unwrap(), int(0));
        assert!(matches!(
            poly("y").eval(&env),
            Err(Error::UnboundVariable(v)) if v == "y"
        ));
    }

    #[test]
    fn substitution() {
        let sub: HashMap<String, Polynomial> = [("a".to_owned(), poly("h"))].into();
        assert_eq!(poly("a^2*b + a").substitute(&sub), poly("h^2*b + h"));
    }
}
