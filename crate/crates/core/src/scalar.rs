//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

/// `(-1)^k` as a scalar.
pub fn sign(odd: bool) -> Scalar {
    if odd {
        -one()
    } else {
        one()
    }
}

/// Canonical `p/q` text, denominators always written.
pub fn format(q: &Scalar) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `p`, `-p`, `p/q`.
pub fn parse(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Rational(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn is_negative(q: &Scalar) -> bool {
    q.is_negative()
}

pub mod serde_q {
    //! Serialize rationals as `"p/q"` strings.
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let q = parse("6/-4").unwrap();
        assert_eq!(format(&q), "-3/2");
        assert_eq!(format(&int(1)), "1/1");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }
}
