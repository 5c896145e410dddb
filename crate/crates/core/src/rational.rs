//! Exact rationals and rational vectors in coroot-pairing coordinates.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

/// Random vector with coordinates `a/b`, `1 ≤ b ≤ max_den`, `|a| ≤ 2b`.
pub fn random_vector<R: Rng>(rng: &mut R, n: usize, max_den: i64) -> RationalVector {
    RationalVector(
        (0..n)
            .map(|_| {
                let b = rng.gen_range(1..=max_den);
                qf(rng.gen_range(-2 * b..=2 * b), b)
            })
            .collect(),
    )
}

/// Distance from `x` to the nearest integer.
pub fn frac_distance(x: &Q) -> Q {
    let f = x - x.floor();
    let g = Q::one() - &f;
    if f < g {
        f
    } else {
        g
    }
}

/// Number of integers strictly between two non-integral rationals.
pub fn integers_between(a: &Q, b: &Q) -> u64 {
    let fa = a.floor().to_integer();
    let fb = b.floor().to_integer();
    let d = (fa - fb).abs();
    u64::try_from(d).unwrap_or(u64::MAX)
}

pub fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// A point of the dual Cartan, coordinate `i` being the pairing with the `i`-th simple coroot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<Q>);

impl RationalVector {
    pub fn zero(n: usize) -> Self {
        RationalVector(vec![Q::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RationalVector(v.iter().map(|&x| q(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot_int(&self, w: &[i64]) -> Q {
        self.0.iter().zip(w).fold(Q::zero(), |acc, (x, &c)| acc + x * q(c))
    }

    pub fn scale(&self, s: &Q) -> Self {
        RationalVector(self.0.iter().map(|x| x * s).collect())
    }

    pub fn add_int_scaled(&self, v: &[i64], s: &Q) -> Self {
        RationalVector(self.0.iter().zip(v).map(|(x, &c)| x + s * q(c)).collect())
    }

    /// Parses `a,b,...`; a lone `0` expands to the zero vector of length `n`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero(n));
        }
        let v = s.split(',').map(parse_q).collect::<Result<Vec<_>>>()?;
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
        Ok(RationalVector(v))
    }
}

impl Index<usize> for RationalVector {
    type Output = Q;
    fn index(&self, i: usize) -> &Q {
        &self.0[i]
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, o: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, o: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_q).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for RationalVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(fmt_q).collect();
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts: Vec<String> = Vec::deserialize(d)?;
        parts
            .iter()
            .map(|p| parse_q(p))
            .collect::<Result<Vec<_>>>()
            .map(RationalVector)
            .map_err(serde::de::Error::custom)
    }
}

/// Serde helper for a single rational stored as a string.
pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        fmt_q(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("-3/6").unwrap(), qf(-1, 2));
        assert_eq!(fmt_q(&qf(4, 2)), "2");
        assert_eq!(fmt_q(&qf(-1, 3)), "-1/3");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn integers_strictly_between() {
        assert_eq!(integers_between(&qf(1, 3), &qf(7, 3)), 2);
        assert_eq!(integers_between(&qf(7, 3), &qf(-1, 2)), 3);
        assert_eq!(integers_between(&qf(1, 3), &qf(2, 3)), 0);
    }

    #[test]
    fn vector_parse_shorthand() {
        assert_eq!(RationalVector::parse("0", 2).unwrap(), RationalVector::zero(2));
        assert_eq!(RationalVector::parse("1/2, -1", 2).unwrap(), RationalVector(vec![qf(1, 2), q(-1)]));
        assert!(RationalVector::parse("1", 2).is_err());
    }
}
