//! Integer-coefficient multivariate Laurent polynomials.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, so iteration is in
//! ascending lexicographic order and no zero coefficient is ever stored.
//! That makes structural equality coincide with polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::term(nvars, vec![0; nvars], c)
    }

    /// Single term with coefficient 1.
    pub fn monomial(nvars: usize, exponents: &[i64]) -> Self {
        assert_eq!(exponents.len(), nvars, "exponent vector has wrong length");
        Self::term(nvars, exponents.to_vec(), 1)
    }

    /// The variable x_i, 0-based.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(nvars, e, 1)
    }

    pub fn term(nvars: usize, exponents: Vec<i64>, coef: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(exponents, coef.into());
        p
    }

    /// Build from arbitrary (exponent, coefficient) pairs, merging duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<i64>, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector has wrong length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: Vec<i64>, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[i64]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// `Some((exponent, coefficient))` if this is a single term.
    pub fn as_term(&self) -> Option<(&Vec<i64>, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut acc: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms: acc,
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
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

    /// Multiply by the monomial x^shift.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.nvars);
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    fn min_exponents(&self) -> Vec<i64> {
        let mut mins = vec![i64::MAX; self.nvars];
        for e in self.terms.keys() {
            for (m, &x) in mins.iter_mut().zip(e) {
                *m = (*m).min(x);
            }
        }
        mins
    }

    /// The vector d such that p x^d is a polynomial not divisible by any
    /// variable.
    pub fn denominator_vector(&self) -> Result<Vec<i64>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.min_exponents().into_iter().map(|m| -m).collect())
    }

    /// True when p x^d has only nonnegative exponents for d its denominator
    /// vector, i.e. the denominator is a monomial. Always true for a Laurent
    /// polynomial; kept as an explicit invariant check for mutation output.
    pub fn has_monomial_denominator(&self) -> bool {
        match self.denominator_vector() {
            Ok(d) => self
                .shift(&d)
                .terms
                .keys()
                .all(|e| e.iter().all(|&x| x >= 0)),
            Err(_) => true,
        }
    }

    /// Exact quotient `self / divisor` in the Laurent ring over the integers.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.check_vars(divisor)?;
        if divisor.is_zero() {
            return Err(Error::NonExactDivision);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        // Normalize both to polynomials; the divisor is then coprime to every
        // variable so Laurent divisibility equals polynomial divisibility.
        let dmin = divisor.min_exponents();
        let pmin = self.min_exponents();
        let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let d = divisor.shift(&neg(&dmin));
        let mut rem = self.shift(&neg(&pmin));
        let (dlead_exp, dlead_coef) = d.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut quotient = Self::zero(self.nvars);
        while let Some((lead_exp, lead_coef)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let exp: Vec<i64> = lead_exp.iter().zip(&dlead_exp).map(|(a, b)| a - b).collect();
            if exp.iter().any(|&x| x < 0) {
                return Err(Error::NonExactDivision);
            }
            let (coef, r) = lead_coef.div_rem(&dlead_coef);
            if !r.is_zero() {
                return Err(Error::NonExactDivision);
            }
            let t = Self::term(self.nvars, exp, coef);
            rem = &rem - &(&t * &d);
            quotient = &quotient + &t;
        }
        let back: Vec<i64> = pmin.iter().zip(&dmin).map(|(p, d)| p - d).collect();
        Ok(quotient.shift(&back))
    }

    /// Evaluate at a point with all coordinates nonzero integers, returning a
    /// rational as (numerator, denominator).
    pub fn evaluate(&self, point: &[i64]) -> num_rational::BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = num_rational::BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = num_rational::BigRational::from_integer(c.clone());
            for (&x, &k) in point.iter().zip(e) {
                let base = num_rational::BigRational::from_integer(BigInt::from(x));
                let p = if k >= 0 {
                    num_traits::pow(base, k as usize)
                } else {
                    num_traits::pow(base.recip(), (-k) as usize)
                };
                t *= p;
            }
            acc += t;
        }
        acc
    }

    /// Canonical byte serialization: the canonical text form.
    pub fn canonical_serialize(&self) -> Vec<u8> {
        self.to_string().into_bytes()
    }

    /// Parse the canonical text form (whitespace tolerated).
    pub fn parse(nvars: usize, text: &str) -> Result<Self> {
        Parser::new(nvars, text).parse_all()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("LaurentPoly serializes")
    }
}

fn write_monomial(f: &mut impl fmt::Write, exp: &[i64]) -> fmt::Result {
    let mut first = true;
    for (i, &k) in exp.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if k != 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let den: Vec<i64> = self.min_exponents().iter().map(|&m| (-m).max(0)).collect();
        let mut numer = String::new();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let e: Vec<i64> = e.iter().zip(&den).map(|(a, b)| a + b).collect();
            let is_const = e.iter().all(|&x| x == 0);
            if c.is_negative() {
                numer.push('-');
            } else if k > 0 {
                numer.push('+');
            }
            let a = c.abs();
            if is_const {
                numer.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    numer.push_str(&a.to_string());
                    numer.push('*');
                }
                write_monomial(&mut numer, &e)?;
            }
        }
        let nonzero_den = den.iter().filter(|&&x| x != 0).count();
        if nonzero_den == 0 {
            return f.write_str(&numer);
        }
        if self.terms.len() > 1 {
            write!(f, "({numer})/")?;
        } else {
            write!(f, "{numer}/")?;
        }
        let mut d = String::new();
        write_monomial(&mut d, &den)?;
        if nonzero_den > 1 {
            write!(f, "({d})")
        } else {
            f.write_str(&d)
        }
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = Error;

    /// Infers the variable count from the largest variable index present.
    fn from_str(s: &str) -> Result<Self> {
        let mut max = 0;
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i] == b'x' {
                let start = i + 1;
                let mut j = start;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if let Ok(v) = s[start..j].parse::<usize>() {
                    max = max.max(v);
                }
                i = j;
            } else {
                i += 1;
            }
        }
        LaurentPoly::parse(max.max(1), s)
    }
}

struct Parser<'a> {
    nvars: usize,
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(nvars: usize, src: &'a str) -> Self {
        Parser {
            nvars,
            src,
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::ParseLaurent(format!("{what} at offset {} in `{}`", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_all(mut self) -> Result<LaurentPoly> {
        let numer = if self.eat('(') {
            let s = self.sum()?;
            if !self.eat(')') {
                return Err(self.err("expected `)`"));
            }
            s
        } else {
            self.sum()?
        };
        let result = if self.eat('/') {
            let den = if self.eat('(') {
                let m = self.monomial()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                m
            } else {
                self.monomial()?
            };
            let neg: Vec<i64> = den.iter().map(|x| -x).collect();
            numer.shift(&neg)
        } else {
            numer
        };
        if self.pos != self.chars.len() {
            return Err(self.err("trailing input"));
        }
        Ok(result)
    }

    fn sum(&mut self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero(self.nvars);
        let mut first = true;
        loop {
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                break;
            };
            first = false;
            let (exp, coef) = self.term()?;
            acc.add_term(exp, if negative { -coef } else { coef });
            if !matches!(self.peek(), Some('+') | Some('-')) {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<(Vec<i64>, BigInt)> {
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let c = self.integer()?;
            if self.eat('*') {
                Ok((self.monomial()?, c))
            } else {
                Ok((vec![0; self.nvars], c))
            }
        } else {
            Ok((self.monomial()?, BigInt::one()))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("expected integer"))
    }

    fn monomial(&mut self) -> Result<Vec<i64>> {
        let mut exp = vec![0; self.nvars];
        loop {
            if !self.eat('x') {
                return Err(self.err("expected variable"));
            }
            let idx = self.integer()?.to_usize().ok_or_else(|| self.err("bad index"))?;
            if idx == 0 || idx > self.nvars {
                return Err(self.err("variable index out of range"));
            }
            let mut k = 1i64;
            if self.eat('^') {
                let neg = self.eat('-');
                k = self.integer()?.to_i64().ok_or_else(|| self.err("bad exponent"))?;
                if neg {
                    k = -k;
                }
            }
            exp[idx - 1] += k;
            // `*` followed by another variable continues the monomial.
            if self.peek() == Some('*') && self.chars.get(self.pos + 1) == Some(&'x') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(exp)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("Laurent polynomials in different variable counts")
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    exp: Vec<i64>,
    coef: JsonInt,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    nvars: usize,
    terms: Vec<JsonTerm>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        JsonPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| JsonTerm {
                    exp: e.clone(),
                    coef: match c.to_i64() {
                        Some(v) => JsonInt::Small(v),
                        None => JsonInt::Big(c.to_string()),
                    },
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = JsonPoly::deserialize(d)?;
        if raw.nvars == 0 {
            return Err(D::Error::custom("nvars must be positive"));
        }
        let mut p = LaurentPoly::zero(raw.nvars);
        for t in raw.terms {
            if t.exp.len() != raw.nvars {
                return Err(D::Error::custom("exponent vector has wrong length"));
            }
            let c = match t.coef {
                JsonInt::Small(v) => BigInt::from(v),
                JsonInt::Big(s) => s.parse().map_err(D::Error::custom)?,
            };
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficient"));
            }
            if p.terms.contains_key(&t.exp) {
                return Err(D::Error::custom("duplicate exponent"));
            }
            p.terms.insert(t.exp, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> LaurentPoly {
        LaurentPoly::var(n, i)
    }

    fn inv(p: &LaurentPoly) -> LaurentPoly {
        let (e, _) = p.as_term().unwrap();
        LaurentPoly::monomial(p.nvars(), &e.iter().map(|v| -v).collect::<Vec<_>>())
    }

    #[test]
    fn arithmetic_examples() {
        let one = LaurentPoly::one(2);
        assert_eq!(&x(2, 0) * &inv(&x(2, 0)), one);
        let p = &(&one + &x(2, 1)) * &inv(&x(2, 0));
        let expected = LaurentPoly::from_terms(
            2,
            [(vec![-1, 0], BigInt::from(1)), (vec![-1, 1], BigInt::from(1))],
        );
        assert_eq!(p, expected);
        let q = &(&one + &x(2, 0)) * &inv(&x(2, 1));
        assert_eq!((&p * &q).len(), 4);
        assert_eq!(
            LaurentPoly::one(2).checked_add(&LaurentPoly::one(3)),
            Err(Error::VariableCountMismatch(2, 3))
        );
    }

    #[test]
    fn monomial_examples() {
        assert_eq!(LaurentPoly::monomial(2, &[0, 0]), LaurentPoly::one(2));
        assert_eq!(LaurentPoly::monomial(2, &[1, -1]).to_string(), "x1/x2");
        assert_eq!(LaurentPoly::monomial(3, &[0, 2, 0]).to_string(), "x2^2");
    }

    #[test]
    fn denominator_examples() {
        let p = LaurentPoly::parse(2, "(x1+1+x2)/(x1*x2)").unwrap();
        assert_eq!(p.denominator_vector(), Ok(vec![1, 1]));
        assert_eq!(x(2, 0).denominator_vector(), Ok(vec![-1, 0]));
        assert_eq!(LaurentPoly::constant(2, 5).denominator_vector(), Ok(vec![0, 0]));
        assert_eq!(LaurentPoly::zero(2).denominator_vector(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn text_form() {
        assert_eq!(LaurentPoly::one(2).to_string(), "1");
        assert_eq!(LaurentPoly::zero(2).to_string(), "0");
        let p = LaurentPoly::parse(2, "(1+x2)/x1").unwrap();
        assert_eq!(p.to_string(), "(1+x2)/x1");
        let q = LaurentPoly::parse(2, "(x1+1+x2)/(x1*x2)").unwrap();
        assert_eq!(q.to_string(), "(1+x2+x1)/(x1*x2)");
        let r = LaurentPoly::parse(3, "(2*x1^2-x3)/x2^3").unwrap();
        assert_eq!(r.to_string(), "(-x3+2*x1^2)/x2^3");
        assert_eq!(LaurentPoly::parse(3, &r.to_string()).unwrap(), r);
        assert_eq!(LaurentPoly::parse(2, "-x2/x1").unwrap().to_string(), "-x2/x1");
        assert!(LaurentPoly::parse(2, "x3").is_err());
        assert!(LaurentPoly::parse(2, "(1+x1").is_err());
    }

    #[test]
    fn canonical_bytes_do_not_depend_on_construction() {
        let a = LaurentPoly::parse(2, "(1+x2)/x1").unwrap();
        let b = &(&LaurentPoly::parse(2, "x1+x1*x2").unwrap() * &LaurentPoly::monomial(2, &[-2, 0]))
            + &LaurentPoly::zero(2);
        assert_eq!(a.canonical_serialize(), b.canonical_serialize());
    }

    #[test]
    fn exact_division() {
        let p = LaurentPoly::parse(2, "(1+x2)/x1").unwrap();
        let q = LaurentPoly::parse(2, "(1+x1+x2)/x2").unwrap();
        let prod = &p * &q;
        assert_eq!(prod.div_exact(&q), Ok(p.clone()));
        assert_eq!(prod.div_exact(&p), Ok(q.clone()));
        let bad = LaurentPoly::parse(2, "1+x1").unwrap();
        assert_eq!(p.div_exact(&bad), Err(Error::NonExactDivision));
        let two = LaurentPoly::constant(2, 2);
        assert_eq!(p.div_exact(&two), Err(Error::NonExactDivision));
    }

    #[test]
    fn json_round_trip() {
        let p = LaurentPoly::parse(2, "(1+x2)/x1").unwrap();
        let v = p.to_json_value();
        assert_eq!(v["nvars"], 2);
        assert_eq!(v["terms"][0]["exp"], serde_json::json!([-1, 0]));
        let back: LaurentPoly = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);
        let bad = serde_json::json!({"nvars": 2, "terms": [{"exp": [1], "coef": 1}]});
        assert!(serde_json::from_value::<LaurentPoly>(bad).is_err());
    }
}
