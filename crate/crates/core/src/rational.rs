//! Exact rational helpers and the extended rationals `Q ∪ {+∞}`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = || Error::ParseRational(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
        None => BigInt::from_str(s).map(Rational::from_integer).map_err(|_| err()),
    }
}

/// Decimal rendering for display only.
pub fn approx(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// A rational number or `+∞`, totally ordered with `+∞` maximal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtendedRational {
    Finite(Rational),
    PosInfinity,
}

impl ExtendedRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(q) => Some(q),
            ExtendedRational::PosInfinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedRational::PosInfinity)
    }
}

impl From<Rational> for ExtendedRational {
    fn from(q: Rational) -> Self {
        ExtendedRational::Finite(q)
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedRational::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), PosInfinity) => Ordering::Less,
            (PosInfinity, Finite(_)) => Ordering::Greater,
            (PosInfinity, PosInfinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Finite(q) => write!(f, "{q}"),
            ExtendedRational::PosInfinity => write!(f, "+inf"),
        }
    }
}

impl FromStr for ExtendedRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+inf" | "inf" | "+infinity" | "infinity" => Ok(ExtendedRational::PosInfinity),
            other => parse_rational(other).map(ExtendedRational::Finite),
        }
    }
}
