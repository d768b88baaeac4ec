//! Exact rationals and their `"num/den"` text form.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serializer};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Always `num/den`, denominator positive, lowest terms.
pub fn format_q(v: &Q) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Accepts `num/den` or a bare integer.
pub fn parse_q(s: &str) -> Result<Q, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| format!("bad numerator in {s:?}"))?;
    let den = BigInt::from_str(den).map_err(|_| format!("bad denominator in {s:?}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Q::new(num, den))
}

/// Decimal approximation for human-facing output only.
pub fn approx(v: &Q) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

pub fn serialize<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_q(v))
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
    let s = String::deserialize(d)?;
    parse_q(&s).map_err(serde::de::Error::custom)
}
