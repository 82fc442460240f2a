//! Coefficient domains: exact rationals and Laurent polynomials in `u`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Bit length of numerator plus denominator; used as a pivot size heuristic.
pub fn bit_size(r: &Rational) -> u64 {
    r.numer().bits() + r.denom().bits()
}

pub fn pow_rational(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffKind {
    Rational,
    LaurentU,
}

/// The operations polynomial arithmetic needs from a coefficient.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const KIND: CoeffKind;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(r: Rational) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Coeff for Rational {
    const KIND: CoeffKind = CoeffKind::Rational;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn to_json(&self) -> Value {
        Value::String(rational_to_string(self))
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            _ => Err(Error::Parse("rational coefficient must be a string".into())),
        }
    }
}

/// Element of Q[u, 1/u].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentU {
    terms: BTreeMap<i32, Rational>,
}

impl LaurentU {
    pub fn monomial(coeff: Rational, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&coeff) {
            terms.insert(exp, coeff);
        }
        LaurentU { terms }
    }

    pub fn u_pow(exp: i32) -> Self {
        Self::monomial(rat(1), exp)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn constant(&self) -> Option<Rational> {
        if self.terms.keys().all(|&e| e == 0) {
            Some(self.terms.get(&0).cloned().unwrap_or_else(Zero::zero))
        } else {
            None
        }
    }

    pub fn evaluate(&self, u: &Rational) -> Result<Rational> {
        if Zero::is_zero(u) && self.terms.keys().any(|&e| e < 0) {
            return Err(Error::InvalidArgument(
                "u = 0 with negative powers of u".into(),
            ));
        }
        let mut acc = <Rational as Zero>::zero();
        for (e, c) in &self.terms {
            acc += c * pow_rational(u, *e as i64);
        }
        Ok(acc)
    }

    fn insert_add(&mut self, e: i32, c: Rational) {
        let entry = self.terms.entry(e).or_insert_with(Zero::zero);
        *entry += c;
        if Zero::is_zero(entry) {
            self.terms.remove(&e);
        }
    }
}

impl fmt::Display for LaurentU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match *e {
                0 => write!(f, "{}", rational_to_string(&mag))?,
                _ => {
                    if !One::is_one(&mag) {
                        write!(f, "{}*", rational_to_string(&mag))?;
                    }
                    if *e == 1 {
                        write!(f, "u")?
                    } else {
                        write!(f, "u^{}", e)?
                    }
                }
            }
        }
        Ok(())
    }
}

impl Coeff for LaurentU {
    const KIND: CoeffKind = CoeffKind::LaurentU;
    fn zero() -> Self {
        LaurentU::default()
    }
    fn one() -> Self {
        LaurentU::monomial(rat(1), 0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentU::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.insert_add(e1 + e2, c1 * c2);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        LaurentU {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
    fn from_rational(r: Rational) -> Self {
        LaurentU::monomial(r, 0)
    }
    fn scale(&self, r: &Rational) -> Self {
        if Zero::is_zero(r) {
            return LaurentU::default();
        }
        LaurentU {
            terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }
    fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| json!({"u": e, "coeff": rational_to_string(c)}))
                .collect(),
        )
    }
    fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("laurent coefficient must be an array".into()))?;
        let mut out = LaurentU::default();
        for item in arr {
            let e = item
                .get("u")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::Parse("missing u exponent".into()))?;
            let c = Rational::from_json(
                item.get("coeff")
                    .ok_or_else(|| Error::Parse("missing coeff".into()))?,
            )?;
            out.insert_add(e as i32, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(rational_to_string(&frac(-3, 2)), "-3/2");
        assert_eq!(rational_to_string(&rat(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(parse_rational("0/5").unwrap(), rat(0));
    }

    #[test]
    fn laurent_arithmetic() {
        let a = LaurentU::u_pow(1).add(&LaurentU::u_pow(-1));
        let sq = a.mul(&a);
        // (u + 1/u)^2 = u^2 + 2 + u^-2
        assert_eq!(sq.evaluate(&rat(2)).unwrap(), frac(25, 4));
        assert_eq!(sq.constant(), None);
        assert!(LaurentU::u_pow(-1).evaluate(&rat(0)).is_err());
        let back = LaurentU::from_json(&sq.to_json()).unwrap();
        assert_eq!(back, sq);
        assert!(a.sub(&a).is_zero());
    }
}
