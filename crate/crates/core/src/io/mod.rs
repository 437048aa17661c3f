//! JSON encodings for scalars, matrices and input documents.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub mod document;
pub mod report;

use crate::linalg::{Matrix, Ring, Scalar};
pub use document::{Document, Input, Kind, Options, Parsed};

/// An integer written as a JSON number when it fits in 64 bits and as a
/// decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigIntRepr(pub BigInt);

impl From<&BigInt> for BigIntRepr {
    fn from(v: &BigInt) -> Self {
        BigIntRepr(v.clone())
    }
}

impl Serialize for BigIntRepr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct BigIntVisitor;

impl<'de> Visitor<'de> for BigIntVisitor {
    type Value = BigIntRepr;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<BigIntRepr, E> {
        Ok(BigIntRepr(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<BigIntRepr, E> {
        Ok(BigIntRepr(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<BigIntRepr, E> {
        let t = v.trim();
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(E::custom(format!("not an integer: {v:?}")));
        }
        t.parse::<BigInt>().map(BigIntRepr).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for BigIntRepr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(BigIntVisitor)
    }
}

/// A scalar: an integer, or `[numerator, denominator]` for a non-integral rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Int(BigIntRepr),
    Frac(BigIntRepr, BigIntRepr),
}

impl ScalarRepr {
    pub fn from_scalar(x: &Scalar) -> ScalarRepr {
        if x.denom().is_one() {
            ScalarRepr::Int(BigIntRepr(x.numer().clone()))
        } else {
            ScalarRepr::Frac(BigIntRepr(x.numer().clone()), BigIntRepr(x.denom().clone()))
        }
    }

    pub fn to_scalar(&self, ring: Ring) -> Result<Scalar> {
        match self {
            ScalarRepr::Int(v) => Ok(ring.from_int(v.0.clone())),
            ScalarRepr::Frac(n, d) => {
                if d.0 == BigInt::from(0) {
                    return Err(Error::InvalidEntry(ring.to_string(), "zero denominator".into()));
                }
                let x = BigRational::new(n.0.clone(), d.0.clone());
                match ring {
                    Ring::Rationals => Ok(x),
                    Ring::Integers => Err(Error::InvalidEntry(ring.to_string(), format!("{x} is not an integer"))),
                    Ring::PrimeField(_) => {
                        let num = ring.from_int(x.numer().clone());
                        let den = ring.from_int(x.denom().clone());
                        let inv = ring.inv(&den).ok_or_else(|| {
                            Error::InvalidEntry(ring.to_string(), format!("denominator of {x} vanishes"))
                        })?;
                        Ok(ring.mul(&num, &inv))
                    }
                }
            }
        }
    }
}

/// Row-major matrix encoding. The shape is explicit so empty matrices keep it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRepr {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<ScalarRepr>>,
}

impl MatrixRepr {
    pub fn from_matrix(m: &Matrix) -> MatrixRepr {
        MatrixRepr {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows()).map(|i| m.row(i).iter().map(ScalarRepr::from_scalar).collect()).collect(),
        }
    }

    pub fn to_matrix(&self, ring: Ring) -> Result<Matrix> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::DimensionMismatch(format!(
                "matrix declared {}x{} but entries disagree",
                self.rows, self.cols
            )));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.to_scalar(ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_rows(ring, self.cols, rows))
    }
}
