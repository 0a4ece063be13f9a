use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Field element. Over `F_p` the value is always an integer in `[0, p)`.
pub type Scalar = BigRational;

/// The base field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::from_integer(BigInt::from(v)),
            FieldSpec::Prime(p) => Scalar::from_integer(BigInt::from(v.rem_euclid(*p as i64))),
        }
    }

    /// `(-1)^e` as a field element.
    pub fn sign(&self, e: i64) -> Scalar {
        if e.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.from_i64(-1)
        }
    }

    /// Maps an arbitrary rational into the field. Fails when the denominator
    /// vanishes modulo `p`.
    pub fn embed(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => Ok(q.clone()),
            FieldSpec::Prime(p) => {
                let p = BigInt::from(*p);
                let num = q.numer().mod_floor(&p);
                let den = q.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::Field(format!(
                        "denominator of {q} vanishes in characteristic {p}"
                    )));
                }
                let inv = mod_inverse(&den, &p);
                Ok(Scalar::from_integer((num * inv).mod_floor(&p)))
            }
        }
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let q = parse_rational(s)?;
        self.embed(&q)
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.normalize(-a)
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            FieldSpec::Rationals => a.recip(),
            FieldSpec::Prime(p) => {
                let p = BigInt::from(*p);
                Scalar::from_integer(mod_inverse(a.numer(), &p))
            }
        }
    }

    fn normalize(&self, v: Scalar) -> Scalar {
        match self {
            FieldSpec::Rationals => v,
            FieldSpec::Prime(p) => {
                debug_assert!(v.is_integer());
                let p = BigInt::from(*p);
                Scalar::from_integer(v.numer().mod_floor(&p))
            }
        }
    }

    /// Human-readable form of a scalar; over `F_p` values above `p/2` print negative.
    pub fn display(&self, a: &Scalar) -> String {
        match self {
            FieldSpec::Rationals => a.to_string(),
            FieldSpec::Prime(p) => {
                let v = a.numer().to_i64().unwrap_or(0);
                let p = *p as i64;
                if p > 2 && v > p / 2 {
                    (v - p).to_string()
                } else {
                    v.to_string()
                }
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "q" | "Q" | "rationals" => Ok(FieldSpec::Rationals),
            _ => {
                let rest = s
                    .strip_prefix("fp:")
                    .or_else(|| s.strip_prefix("F_"))
                    .ok_or_else(|| Error::Field(format!("unknown field `{s}`")))?;
                let p: u64 = rest
                    .parse()
                    .map_err(|_| Error::Field(format!("bad characteristic `{rest}`")))?;
                FieldSpec::prime(p)
            }
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Field(format!("cannot parse scalar `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(n))
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    debug_assert!(e.gcd.abs().is_one());
    e.x.mod_floor(p)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(7).is_ok());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(9).is_err());
    }

    #[test]
    fn modular_arithmetic() {
        let f = FieldSpec::prime(7).unwrap();
        let a = f.from_i64(3);
        let b = f.inv(&a);
        assert_eq!(f.mul(&a, &b), f.one());
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(4));
        assert!(FieldSpec::prime(2).unwrap().parse_scalar("1/2").is_err());
    }

    #[test]
    fn parse_field_names() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("fp:5".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(5));
        assert!("fp:4".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(5).to_string(), "fp:5");
    }
}

/// Serializes scalars as strings (`"3/2"`), for reports.
pub fn serialize_scalars<S: serde::Serializer>(v: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}
