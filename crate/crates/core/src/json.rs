//! Shared JSON encodings: rationals as `"p/q"` strings, big integers as plain
//! numbers when they fit in an `i64`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::Result;
use crate::linalg::{format_rational, parse_rational, Rational};

/// A rational as it appears in input files: `"p/q"`, `"n"`, or a bare integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Text(String),
    Int(i64),
}

impl RationalText {
    pub fn parse(&self) -> Result<Rational> {
        match self {
            RationalText::Text(s) => parse_rational(s),
            RationalText::Int(n) => Ok(Rational::from_integer((*n).into())),
        }
    }
}

impl From<&Rational> for RationalText {
    fn from(r: &Rational) -> Self {
        RationalText::Text(format_rational(r))
    }
}

pub fn int_value(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

pub fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(int_value))
}

pub fn ser_bigint_rows<S: Serializer>(
    v: &[Vec<BigInt>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|row| row.iter().map(int_value).collect::<Vec<_>>()))
}

pub fn ser_rationals<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

pub fn ser_rational<S: Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(v))
}
