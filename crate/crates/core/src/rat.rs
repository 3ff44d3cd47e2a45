//! Exact rational scalars and their text form.
//!
//! Every scalar that crosses a serialization boundary is rendered as a
//! canonical `"p/q"` string (`"p"` when the denominator is 1), never as a
//! float. Parsing accepts `p`, `p/q`, and exact decimal literals.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::str::FromStr;
use thiserror::Error;

/// Arbitrary-precision rational. All public arithmetic in this crate is exact.
pub type Rat = BigRational;
/// Arbitrary-precision integer.
pub type Int = BigInt;

/// `n/d` as a [`Rat`]. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Integer `n` as a [`Rat`].
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p`, `p/q`, or an exact decimal such as `-0.125`.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ParseRatError::Empty);
    }
    if let Some((num, den)) = t.split_once('/') {
        let n = Int::from_str(num.trim()).map_err(|_| ParseRatError::Invalid(t.to_string()))?;
        let d = Int::from_str(den.trim()).map_err(|_| ParseRatError::Invalid(t.to_string()))?;
        if d.is_zero() {
            return Err(ParseRatError::ZeroDenominator(t.to_string()));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let neg = whole.trim_start().starts_with('-');
        let w = if whole.is_empty() || whole == "-" || whole == "+" {
            Int::zero()
        } else {
            Int::from_str(whole).map_err(|_| ParseRatError::Invalid(t.to_string()))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseRatError::Invalid(t.to_string()));
        }
        let f = Int::from_str(frac).map_err(|_| ParseRatError::Invalid(t.to_string()))?;
        let scale = Int::from(10u32).pow(frac.len() as u32);
        let mag = Rat::from_integer(w.abs()) + Rat::new(f, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let n = Int::from_str(t).map_err(|_| ParseRatError::Invalid(t.to_string()))?;
    Ok(Rat::from_integer(n))
}

/// Parses a comma-separated list of rationals, e.g. `"-1,-1/2,1/2"`.
pub fn parse_rat_list(s: &str) -> Result<Vec<Rat>, ParseRatError> {
    s.split(',').map(parse_rat).collect()
}

/// Canonical text form: lowest terms, `"p/q"` or `"p"`.
pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

/// Nearest `f64`. Only for display and for explicitly non-rigorous estimates.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite `f64`.
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

/// Floor as an integer.
pub fn rat_floor(r: &Rat) -> Int {
    r.floor().to_integer()
}

/// Rounds to the nearest integer, ties toward the even integer.
pub fn round_half_even(r: &Rat) -> Int {
    let fl = r.floor().to_integer();
    let frac = r - Rat::from_integer(fl.clone());
    let half = rat(1, 2);
    if frac < half {
        fl
    } else if frac > half {
        fl + 1
    } else if (&fl % 2u8).is_zero() {
        fl
    } else {
        fl + 1
    }
}

/// Best rational approximation to `x` with denominator at most `max_den`,
/// by continued-fraction convergents. Exact for exactly representable inputs.
pub fn approx_f64(x: f64, max_den: u64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let exact = Rat::from_float(x)?;
    if exact.denom() <= &Int::from(max_den) {
        return Some(exact);
    }
    let cap = Int::from(max_den);
    // Continued-fraction expansion of the exact value, stopping at the last
    // convergent whose denominator fits under the cap.
    let (mut p0, mut q0) = (Int::one(), Int::zero());
    let (mut p1, mut q1) = (exact.floor().to_integer(), Int::one());
    let mut rem = &exact - Rat::from_integer(p1.clone());
    while !rem.is_zero() {
        let inv = rem.recip();
        let a = inv.floor().to_integer();
        rem = inv - Rat::from_integer(a.clone());
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > cap {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    debug_assert!(q1.sign() == Sign::Plus);
    Some(Rat::new(p1, q1))
}

/// Serde adapters rendering rationals as canonical strings.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_rat_opt {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|v| parse_rat(&v).map_err(serde::de::Error::custom))
            .transpose()
    }
}

pub mod serde_rat_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod serde_int {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(i: &Int, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&i.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        let s = String::deserialize(d)?;
        Int::from_str(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_int_opt {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(i: &Option<Int>, s: S) -> Result<S::Ok, S::Error> {
        match i {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Int>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|v| Int::from_str(&v).map_err(serde::de::Error::custom))
            .transpose()
    }
}
