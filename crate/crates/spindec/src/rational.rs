//! Exact rational scalars and their canonical text form.
//!
//! All coefficients in this crate are arbitrary-precision rationals kept in
//! lowest terms with a positive denominator; `num_rational::BigRational`
//! already guarantees both. Literals in file and CLI I/O are `n` or `n/d`
//! with signed decimal integers and no interior whitespace.

use crate::Error;
use alloc::string::{String, ToString};
use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Rational from an integer pair. Panics on a zero denominator, so it is
/// meant for literals in code, not for parsing input.
pub fn frac(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from an integer.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parse `n` or `n/d`. Rejects d = 0, empty parts and any whitespace.
pub fn parse_rational(text: &str) -> Result<BigRational, Error> {
    let err = || Error::ParseRational(text.to_string());
    let parse_int = |part: &str| -> Result<BigInt, Error> {
        if part.is_empty() || part.chars().any(|c| c.is_whitespace()) {
            return Err(err());
        }
        part.parse::<BigInt>().map_err(|_| err())
    };
    match text.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(text)?)),
        Some((n, d)) => {
            let numer = parse_int(n)?;
            let denom = parse_int(d)?;
            if denom.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(numer, denom))
        }
    }
}

/// Canonical text form: `n` for integers, `n/d` otherwise (d > 0).
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

/// Signed rendering used inside linear-form printers: `+ 3/2` or `- 3/2`.
pub fn format_signed(r: &BigRational) -> String {
    if r.is_negative() {
        alloc::format!("- {}", format_rational(&-r))
    } else {
        alloc::format!("+ {}", format_rational(r))
    }
}
