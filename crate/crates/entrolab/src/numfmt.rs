//! Parsing and rendering of exact rationals.
//!
//! The wire format for a rational is the decimal-free string `"p/q"`
//! (or just `"p"` for integers), always in lowest terms. Round-trips are
//! bit-exact.

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::str::FromStr;

/// Render a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse a `p/q` or `p` string into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num).map_err(|e| format!("bad numerator {num:?}: {e}"))?;
    let d = BigInt::from_str(den).map_err(|e| format!("bad denominator {den:?}: {e}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(n, d))
}

/// Round a rational to `digits` fractional digits (half away from zero)
/// and render it in plain decimal notation.
pub fn format_rational_decimal(r: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = r * BigRational::from_integer(scale.clone());
    // round half away from zero
    let two = BigInt::from(2);
    let num = scaled.numer();
    let den = scaled.denom(); // > 0
    let doubled = num * &two;
    let rounded: BigInt = if num.is_negative() {
        (doubled - den) / (den * &two)
    } else {
        (doubled + den) / (den * &two)
    };
    let neg = rounded.is_negative();
    let mag = rounded.magnitude().to_string();
    let mut digits_str = if mag.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - mag.len()), mag)
    } else {
        mag
    };
    if digits > 0 {
        digits_str.insert(digits_str.len() - digits, '.');
    }
    if neg && digits_str.chars().any(|c| c != '0' && c != '.') {
        format!("-{digits_str}")
    } else {
        digits_str
    }
}

/// Sign of a big rational as -1 / 0 / +1.
pub fn rational_sign(r: &BigRational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["1/2", "-3/4", "7", "0", "12345/6789"] {
            let r = parse_rational(s).unwrap();
            let back = format_rational(&r);
            assert_eq!(parse_rational(&back).unwrap(), r);
        }
    }

    #[test]
    fn reduces() {
        assert_eq!(format_rational(&parse_rational("2/4").unwrap()), "1/2");
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn decimal_rendering() {
        let r = parse_rational("1/3").unwrap();
        assert_eq!(format_rational_decimal(&r, 4), "0.3333");
        let r = parse_rational("-1/2").unwrap();
        assert_eq!(format_rational_decimal(&r, 2), "-0.50");
        let r = parse_rational("5").unwrap();
        assert_eq!(format_rational_decimal(&r, 0), "5");
    }
}
