//! Exact rationals extended with the sentinels `-inf` and `+inf`.
//!
//! `Ext` houses the elements of both the max-plus semifield (which uses
//! `-inf` as its zero) and the min-plus semifield (which uses `+inf`).
//! Ordering is total: `-inf < q < +inf` for every rational `q`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational in lowest terms, positive denominator.
pub type Rat = BigRational;

/// Integer as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The rational `p / q`. Panics when `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"3"`, `"-7/4"`, or a decimal such as `"0.125"` or `"1e-3"` exactly.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(p, q));
    }
    if let Ok(p) = BigInt::from_str(s) {
        return Ok(Rat::from_integer(p));
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<Rat> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{whole}{frac}");
    let mut value = Rat::from_integer(BigInt::from_str(if all.is_empty() { "0" } else { &all }).ok()?);
    let shift = exp - frac.len() as i32;
    let ten = Rat::from_integer(BigInt::from(10));
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= scale;
    } else {
        value /= scale;
    }
    Some(if neg { -value } else { value })
}

/// `p/q`, or `p` when the denominator is one.
pub fn format_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Lossy conversion, used only for rendering.
pub fn rat_to_f64(q: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Extended rational: an element of `Q ∪ {-inf, +inf}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    NegInf,
    Fin(Rat),
    PosInf,
}

impl Ext {
    pub fn zero() -> Ext {
        Ext::Fin(Rat::zero())
    }

    pub fn int(n: i64) -> Ext {
        Ext::Fin(int(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ext::Fin(_))
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Ext::Fin(q) => Some(q),
            _ => None,
        }
    }

    /// Sum in the extended line. `-inf + +inf` is an error.
    pub fn try_add(&self, other: &Ext) -> Result<Ext> {
        Ok(match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
            (Ext::NegInf, Ext::PosInf) | (Ext::PosInf, Ext::NegInf) => {
                return Err(Error::UndefinedSum)
            }
            (Ext::NegInf, _) | (_, Ext::NegInf) => Ext::NegInf,
            (Ext::PosInf, _) | (_, Ext::PosInf) => Ext::PosInf,
        })
    }

    /// Adds a finite amount; never fails.
    pub fn add_rat(&self, c: &Rat) -> Ext {
        match self {
            Ext::Fin(a) => Ext::Fin(a + c),
            other => other.clone(),
        }
    }

    pub fn neg(&self) -> Ext {
        match self {
            Ext::NegInf => Ext::PosInf,
            Ext::Fin(a) => Ext::Fin(-a),
            Ext::PosInf => Ext::NegInf,
        }
    }
}

impl From<Rat> for Ext {
    fn from(q: Rat) -> Self {
        Ext::Fin(q)
    }
}

impl From<i64> for Ext {
    fn from(n: i64) -> Self {
        Ext::int(n)
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => f.write_str("-inf"),
            Ext::PosInf => f.write_str("+inf"),
            Ext::Fin(q) => f.write_str(&format_rat(q)),
        }
    }
}

impl FromStr for Ext {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ext> {
        match s.trim() {
            "-inf" => Ok(Ext::NegInf),
            "+inf" | "inf" => Ok(Ext::PosInf),
            other => parse_rat(other).map(Ext::Fin),
        }
    }
}

impl serde::Serialize for Ext {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Ext {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Ext, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::String(s) => s.parse().map_err(D::Error::custom),
            // The textual form of a JSON number is parsed exactly.
            serde_json::Value::Number(n) => parse_rat(&n.to_string()).map(Ext::Fin).map_err(D::Error::custom),
            other => Err(D::Error::custom(format!("expected a scalar, found {other}"))),
        }
    }
}

/// `#[serde(with = "rat_str")]` for a rational stored as a JSON string.
pub mod rat_str {
    use super::{format_rat, Rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        use serde::de::Error as _;
        match super::Ext::deserialize(d)? {
            super::Ext::Fin(q) => Ok(q),
            other => Err(D::Error::custom(format!("expected a finite scalar, found {other}"))),
        }
    }
}

/// `#[serde(with = "rat_vec_str")]` for a finite vector stored as strings.
pub mod rat_vec_str {
    use super::{Ext, Rat};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|q| Ext::Fin(q.clone())).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        use serde::de::Error as _;
        Vec::<Ext>::deserialize(d)?
            .into_iter()
            .map(|e| match e {
                Ext::Fin(q) => Ok(q),
                other => Err(D::Error::custom(format!("expected a finite scalar, found {other}"))),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_total() {
        let mut v = vec![Ext::PosInf, Ext::int(3), Ext::NegInf, Ext::Fin(ratio(-1, 2))];
        v.sort();
        assert_eq!(v, vec![Ext::NegInf, Ext::Fin(ratio(-1, 2)), Ext::int(3), Ext::PosInf]);
    }

    #[test]
    fn mixed_infinities_are_rejected() {
        assert_eq!(Ext::NegInf.try_add(&Ext::PosInf), Err(Error::UndefinedSum));
        assert_eq!(Ext::NegInf.try_add(&Ext::int(4)), Ok(Ext::NegInf));
        assert_eq!(Ext::int(4).try_add(&Ext::PosInf), Ok(Ext::PosInf));
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rat("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rat("-6/-4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rat("0.125").unwrap(), ratio(1, 8));
        assert_eq!(parse_rat("-1.5e2").unwrap(), int(-150));
        assert_eq!(parse_rat("25e-2").unwrap(), ratio(1, 4));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
        assert_eq!("-inf".parse::<Ext>().unwrap(), Ext::NegInf);
        assert_eq!(Ext::Fin(ratio(-7, 4)).to_string(), "-7/4");
    }
}
