//! Helpers around [`BigRational`].

use alloc::format;
use alloc::string::String;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `p/q` with `q > 0` and `gcd(p, q) = 1`; integers keep the `/1`.
pub fn to_string(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Converts an integral rational to `i64`.
pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn denom_u64(x: &Q) -> Option<u64> {
    x.denom().to_u64()
}

pub fn one() -> Q {
    Q::one()
}

pub fn zero() -> Q {
    Q::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_is_canonical() {
        assert_eq!(to_string(&frac(2, -4)), "-1/2");
        assert_eq!(to_string(&int(3)), "3/1");
        assert_eq!(to_string(&zero()), "0/1");
    }

    #[test]
    fn parse_round_trips() {
        for s in ["-1/2", "3/1", "0/1", "7/9"] {
            assert_eq!(to_string(&parse(s).unwrap()), s);
        }
        assert_eq!(parse("4").unwrap(), int(4));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }
}
