//! Exact rationals. Backed by `num_rational::BigRational`, which is always
//! reduced with a positive denominator.

use alloc::format;
use alloc::string::String;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub type ExactRational = BigRational;

pub fn ratio(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn big_ratio(n: BigInt, d: BigInt) -> ExactRational {
    BigRational::new(n, d)
}

/// `"p/q"` with `q > 0`; the denominator is printed even when it is 1.
pub fn to_pq(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_pq(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a fraction: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Fractional part `{x} = x - floor(x)`, in `[0, 1)`.
pub fn fract(x: &ExactRational) -> ExactRational {
    x - x.floor()
}

/// Saw-tooth `psi(x) = 1/2 - {x}`; `psi(n) = 1/2` at integers.
pub fn psi(x: &ExactRational) -> ExactRational {
    ratio(1, 2) - fract(x)
}

pub fn half() -> ExactRational {
    ratio(1, 2)
}

pub fn one() -> ExactRational {
    ExactRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pq_round_trip() {
        for (n, d) in [(43, 216), (-3, 50), (0, 1), (5, 1), (-7, 3)] {
            let r = ratio(n, d);
            assert_eq!(parse_pq(&to_pq(&r)).unwrap(), r);
        }
        assert_eq!(to_pq(&integer(2)), "2/1");
        assert_eq!(to_pq(&ratio(2, -4)), "-1/2");
        assert_eq!(parse_pq("7").unwrap(), integer(7));
        assert!(parse_pq("1/0").is_err());
        assert!(parse_pq("x").is_err());
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi(&integer(3)), half());
        assert_eq!(psi(&ratio(1, 2)), integer(0));
        assert_eq!(psi(&ratio(-1, 4)), ratio(-1, 4));
        assert_eq!(psi(&ratio(1, 4)), ratio(1, 4));
    }
}
