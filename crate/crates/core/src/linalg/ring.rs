use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Every matrix entry is stored as a rational number. Over ℤ and ℤ/p the
/// denominator is always one; over ℤ/p the numerator lies in `[0, p)`.
pub type Scalar = BigRational;

/// Coefficient ring for all arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl Ring {
    /// Builds `ℤ/p`, rejecting composite moduli.
    pub fn prime_field(p: u64) -> Result<Ring> {
        if p < 2 || !is_prime(p) {
            return Err(Error::InvalidRing(format!("Z/{p} is not a field")));
        }
        Ok(Ring::PrimeField(p))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Integers)
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.reduce(Scalar::from_integer(BigInt::from(v)))
    }

    pub fn from_int(&self, v: BigInt) -> Scalar {
        self.reduce(Scalar::from_integer(v))
    }

    /// Canonical representative of `x` in this ring.
    ///
    /// Non-integral values are only meaningful over ℚ; over ℤ/p a fraction
    /// `a/b` is interpreted as `a·b⁻¹`.
    pub fn reduce(&self, x: Scalar) -> Scalar {
        match self {
            Ring::Integers | Ring::Rationals => x,
            Ring::PrimeField(p) => {
                let p = BigInt::from(*p);
                let num = x.numer().mod_floor(&p);
                if x.denom().is_one() {
                    return Scalar::from_integer(num);
                }
                let den = x.denom().mod_floor(&p);
                let inv = mod_inverse(&den, &p);
                Scalar::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match self {
            Ring::Rationals => true,
            Ring::Integers => x.is_integer(),
            Ring::PrimeField(p) => x.is_integer() && !x.is_negative() && x.numer() < &BigInt::from(*p),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    /// Multiplicative inverse; `None` for non-units.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            Ring::Integers => {
                if a.numer().abs().is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            Ring::Rationals => Some(a.recip()),
            Ring::PrimeField(p) => {
                let p = BigInt::from(*p);
                Some(Scalar::from_integer(mod_inverse(a.numer(), &p)))
            }
        }
    }

    /// Euclidean size: `|a|` over ℤ, `1` for nonzero field elements.
    pub fn size(&self, a: &Scalar) -> BigInt {
        match self {
            Ring::Integers => a.numer().abs(),
            _ => {
                if a.is_zero() {
                    BigInt::zero()
                } else {
                    BigInt::one()
                }
            }
        }
    }

    /// Division with remainder. Over ℤ the quotient is floored so that the
    /// remainder lies in `[0, b)` for positive `b`; over a field the remainder is zero.
    pub fn quo_rem(&self, a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        match self {
            Ring::Integers => {
                let (q, r) = a.numer().div_mod_floor(b.numer());
                (Scalar::from_integer(q), Scalar::from_integer(r))
            }
            _ => {
                let inv = self.inv(b).expect("division by zero");
                (self.mul(a, &inv), Scalar::zero())
            }
        }
    }

    /// Exact division `a / b`, assuming `b` divides `a`.
    pub fn exact_div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        if b.is_zero() {
            return None;
        }
        match self {
            Ring::Integers => {
                let (q, r) = a.numer().div_rem(b.numer());
                if r.is_zero() {
                    Some(Scalar::from_integer(q))
                } else {
                    None
                }
            }
            _ => Some(self.mul(a, &self.inv(b)?)),
        }
    }

    /// Unit `u` such that `u·a` is the canonical associate of `a`
    /// (positive over ℤ, one over a field).
    pub fn normalizing_unit(&self, a: &Scalar) -> Scalar {
        match self {
            Ring::Integers => {
                if a.is_negative() {
                    -Scalar::one()
                } else {
                    Scalar::one()
                }
            }
            _ => self.inv(a).unwrap_or_else(Scalar::one),
        }
    }

    /// Canonical reduction of `a` modulo the ideal generated by `m`.
    pub fn reduce_mod(&self, a: &Scalar, m: &Scalar) -> Scalar {
        if m.is_zero() {
            return a.clone();
        }
        self.quo_rem(a, m).1
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "Z/{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        match s.trim() {
            "Z" | "ZZ" | "integers" => Ok(Ring::Integers),
            "Q" | "QQ" | "rationals" => Ok(Ring::Rationals),
            other => {
                let p = other
                    .strip_prefix("Z/")
                    .or_else(|| other.strip_prefix("F"))
                    .and_then(|t| t.parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidRing(format!("unknown ring '{other}'")))?;
                Ring::prime_field(p)
            }
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Ring, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut k = 3;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let g = a.mod_floor(p).extended_gcd(p);
    g.x.mod_floor(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composite_modulus_rejected() {
        assert!(Ring::prime_field(4).is_err());
        assert!(Ring::prime_field(1).is_err());
        assert_eq!(Ring::prime_field(7).unwrap(), Ring::PrimeField(7));
        assert!("Z/6".parse::<Ring>().is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Ring::PrimeField(5);
        let a = f.from_i64(-3);
        assert_eq!(a, f.from_i64(2));
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        let half = f.reduce(Scalar::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(half, f.from_i64(3));
    }

    #[test]
    fn integer_quo_rem_is_floored() {
        let z = Ring::Integers;
        let (q, r) = z.quo_rem(&z.from_i64(-7), &z.from_i64(3));
        assert_eq!(q, z.from_i64(-3));
        assert_eq!(r, z.from_i64(2));
    }

    #[test]
    fn ring_round_trips_through_strings() {
        for r in [Ring::Integers, Ring::Rationals, Ring::PrimeField(2)] {
            assert_eq!(r.to_string().parse::<Ring>().unwrap(), r);
        }
    }
}
