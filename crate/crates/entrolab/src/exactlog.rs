//! Exact values of the form `Σ c_p · ln p` over primes `p`.
//!
//! Unique factorization makes `{ln p}` linearly independent over ℚ, so a
//! value is zero exactly when its coefficient map is empty. Nonzero sign
//! is decided by refining rational brackets for each `ln p` until the
//! enclosing interval excludes zero; the precision schedule starts at 64
//! bits and doubles up to a hard cap.

use crate::factor::factorize;
use crate::lnseries::{ln_uint, Bracket};
use crate::numfmt::{format_rational, format_rational_decimal, parse_rational};
use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Default precision cap for sign refinement. Unreachable for the
/// bounded-height values this crate produces; hitting it is treated as
/// misuse.
pub const MAX_SIGN_BITS: u32 = 4096;

const START_SIGN_BITS: u32 = 64;

static SIGN_BITS_CAP: std::sync::atomic::AtomicU32 =
    std::sync::atomic::AtomicU32::new(MAX_SIGN_BITS);

/// Override the precision cap (process-wide); used by the CLI config.
pub fn set_sign_bits_cap(bits: u32) {
    SIGN_BITS_CAP.store(
        bits.max(START_SIGN_BITS),
        std::sync::atomic::Ordering::Relaxed,
    );
}

fn sign_bits_cap() -> u32 {
    SIGN_BITS_CAP.load(std::sync::atomic::Ordering::Relaxed)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactLogError {
    #[error("logarithm argument must be positive")]
    NonPositive,
    #[error("cannot parse log expression: {0}")]
    Parse(String),
}

/// An element of ℚ·log ℚ₊: a finite ℚ-linear combination of logs of
/// primes, stored sparsely with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LogReal {
    terms: BTreeMap<BigUint, BigRational>,
}

impl LogReal {
    /// The zero value (empty combination).
    pub fn zero() -> Self {
        LogReal::default()
    }

    /// `log q` for a positive rational `q`, via prime factorization.
    pub fn log_of_rational(q: &BigRational) -> Result<Self, ExactLogError> {
        if !q.is_positive() {
            return Err(ExactLogError::NonPositive);
        }
        let mut terms: BTreeMap<BigUint, BigRational> = BTreeMap::new();
        for (p, e) in factorize(q.numer().magnitude()) {
            terms.insert(p, BigRational::from_integer(BigInt::from(e)));
        }
        for (p, e) in factorize(q.denom().magnitude()) {
            let coeff = terms.entry(p.clone()).or_insert_with(BigRational::zero);
            *coeff -= BigRational::from_integer(BigInt::from(e));
            if coeff.is_zero() {
                terms.remove(&p);
            }
        }
        Ok(LogReal { terms })
    }

    /// `log n` for a positive integer.
    pub fn log_of_uint(n: u64) -> Self {
        Self::log_of_rational(&BigRational::from_integer(BigInt::from(n)))
            .expect("positive integer")
    }

    /// Build directly from prime/coefficient pairs. Non-prime keys are
    /// rejected; zero coefficients are dropped.
    pub fn from_terms<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (BigUint, BigRational)>,
    {
        let mut terms: BTreeMap<BigUint, BigRational> = BTreeMap::new();
        for (p, c) in pairs {
            assert!(crate::factor::is_probable_prime(&p), "key {p} is not prime");
            let coeff = terms.entry(p).or_insert_with(BigRational::zero);
            *coeff += c;
        }
        terms.retain(|_, c| !c.is_zero());
        LogReal { terms }
    }

    pub fn terms(&self) -> &BTreeMap<BigUint, BigRational> {
        &self.terms
    }

    /// Zero iff there are no terms; exact by unique factorization.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// All coefficients integral, i.e. the value is the log of a
    /// positive rational.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    pub fn add(&self, other: &LogReal) -> LogReal {
        let mut terms = self.terms.clone();
        for (p, c) in &other.terms {
            let coeff = terms.entry(p.clone()).or_insert_with(BigRational::zero);
            *coeff += c;
            if coeff.is_zero() {
                terms.remove(p);
            }
        }
        LogReal { terms }
    }

    pub fn sub(&self, other: &LogReal) -> LogReal {
        self.add(&other.scale(&BigRational::from_integer(BigInt::from(-1))))
    }

    pub fn scale(&self, r: &BigRational) -> LogReal {
        if r.is_zero() {
            return LogReal::zero();
        }
        LogReal {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c * r)).collect(),
        }
    }

    /// Rational bracket containing the value, width ≲ `2^-bits` scaled by
    /// the coefficient mass.
    pub fn bracket(&self, bits: u32) -> Bracket {
        let mut acc = Bracket::zero();
        for (p, c) in &self.terms {
            acc = acc.add(&ln_uint(p, bits).scale(c));
        }
        acc
    }

    /// Exact sign: 0 iff symbolically zero, otherwise ±1 by interval
    /// refinement. Panics if the precision cap is reached, which cannot
    /// happen for nonzero values built from bounded inputs.
    pub fn sign(&self) -> i8 {
        if self.terms.is_empty() {
            return 0;
        }
        let cap = sign_bits_cap();
        let mut bits = START_SIGN_BITS;
        loop {
            let b = self.bracket(bits);
            if b.lo.is_positive() {
                return 1;
            }
            if b.hi.is_negative() {
                return -1;
            }
            if bits >= cap {
                panic!(
                    "sign undecided at {cap} bits for nonzero value {self}; \
                     input height exceeds supported range"
                );
            }
            bits *= 2;
        }
    }

    /// Compare two values exactly.
    pub fn cmp_exact(&self, other: &LogReal) -> std::cmp::Ordering {
        match self.sub(other).sign() {
            -1 => std::cmp::Ordering::Less,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        }
    }

    /// Decimal approximation accurate to the requested number of digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.terms.is_empty() {
            return format_rational_decimal(&BigRational::zero(), digits);
        }
        // refine until the bracket width is well under one ulp of the output
        let needed = (((digits + 2) as f64) * 3.322).ceil() as u32 + 8;
        let b = self.bracket(needed.max(START_SIGN_BITS));
        let mid = (&b.lo + &b.hi) / BigRational::from_integer(BigInt::from(2));
        format_rational_decimal(&mid, digits)
    }

    /// Canonical text form, e.g. `3/2*log(2) + 1*log(3)`; `0` when zero.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&format!("{}*log({})", format_rational(&c.abs()), p));
        }
        out
    }

    /// Parse the canonical text form back, bit-exactly.
    pub fn parse(s: &str) -> Result<Self, ExactLogError> {
        let s = s.trim();
        if s == "0" {
            return Ok(LogReal::zero());
        }
        let mut terms: BTreeMap<BigUint, BigRational> = BTreeMap::new();
        // split into signed chunks
        let mut rest = s;
        let mut sign = 1i32;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        }
        loop {
            let next_split = rest
                .find(" + ")
                .map(|i| (i, 1))
                .into_iter()
                .chain(rest.find(" - ").map(|i| (i, -1)))
                .min_by_key(|(i, _)| *i);
            let (chunk, remainder, next_sign) = match next_split {
                Some((i, sg)) => (&rest[..i], &rest[i + 3..], sg),
                None => (rest, "", 1),
            };
            let (coeff_s, prime_s) = chunk
                .split_once("*log(")
                .ok_or_else(|| ExactLogError::Parse(format!("bad term {chunk:?}")))?;
            let prime_s = prime_s
                .strip_suffix(')')
                .ok_or_else(|| ExactLogError::Parse(format!("unclosed log in {chunk:?}")))?;
            let coeff = parse_rational(coeff_s).map_err(ExactLogError::Parse)?;
            let prime: BigUint = prime_s
                .trim()
                .parse()
                .map_err(|e| ExactLogError::Parse(format!("bad prime {prime_s:?}: {e}")))?;
            if !crate::factor::is_probable_prime(&prime) {
                return Err(ExactLogError::Parse(format!("{prime} is not prime")));
            }
            let signed = if sign < 0 { -coeff } else { coeff };
            *terms.entry(prime).or_insert_with(BigRational::zero) += signed;
            if remainder.is_empty() {
                break;
            }
            rest = remainder;
            sign = next_sign;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(LogReal { terms })
    }
}

impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for LogReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for LogReal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        LogReal::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Outcome of comparing two pairs under the product order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairCmp {
    Lt,
    Gt,
    Eq,
    Incomparable,
}

/// A `(H₀, H₁)` value: the Hartley component is the log of a positive
/// integer (all-integer coefficients), the Shannon component is any
/// exact log value. Ordered by the product order on ℝ².
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntropyPair {
    pub h0: LogReal,
    pub h1: LogReal,
}

impl EntropyPair {
    pub fn new(h0: LogReal, h1: LogReal) -> Self {
        assert!(
            h0.has_integer_coefficients(),
            "Hartley component must be the log of a positive rational"
        );
        EntropyPair { h0, h1 }
    }

    /// Componentwise comparison under the product order.
    pub fn cmp_pair(&self, other: &EntropyPair) -> PairCmp {
        let s0 = self.h0.sub(&other.h0).sign();
        let s1 = self.h1.sub(&other.h1).sign();
        match (s0, s1) {
            (0, 0) => PairCmp::Eq,
            (a, b) if a >= 0 && b >= 0 => PairCmp::Gt,
            (a, b) if a <= 0 && b <= 0 => PairCmp::Lt,
            _ => PairCmp::Incomparable,
        }
    }

    pub fn render(&self) -> String {
        format!("({}, {})", self.h0.render(), self.h1.render())
    }
}

impl fmt::Display for EntropyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `log q` for a positive rational given as numerator/denominator.
pub fn log_ratio(num: u64, den: u64) -> LogReal {
    LogReal::log_of_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
        .expect("positive ratio")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lnseries::ln_uint_mercator;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn log_of_one_is_zero() {
        let l = LogReal::log_of_rational(&rat(1, 1)).unwrap();
        assert!(l.is_zero());
        assert_eq!(l.sign(), 0);
    }

    #[test]
    fn log_of_nine_fourths() {
        let l = LogReal::log_of_rational(&rat(9, 4)).unwrap();
        let expected = LogReal::from_terms([
            (BigUint::from(3u32), rat(2, 1)),
            (BigUint::from(2u32), rat(-2, 1)),
        ]);
        assert_eq!(l, expected);
    }

    #[test]
    fn log_of_twelve() {
        let l = LogReal::log_of_uint(12);
        let expected = LogReal::from_terms([
            (BigUint::from(2u32), rat(2, 1)),
            (BigUint::from(3u32), rat(1, 1)),
        ]);
        assert_eq!(l, expected);
    }

    #[test]
    fn nonpositive_rejected() {
        assert_eq!(
            LogReal::log_of_rational(&rat(0, 1)).unwrap_err(),
            ExactLogError::NonPositive
        );
        assert_eq!(
            LogReal::log_of_rational(&rat(-2, 3)).unwrap_err(),
            ExactLogError::NonPositive
        );
    }

    #[test]
    fn cancellation_is_symbolic() {
        // log 4 + (-2)·log 2 = 0
        let l = LogReal::log_of_uint(4).add(&LogReal::log_of_uint(2).scale(&rat(-2, 1)));
        assert!(l.is_zero());
        assert_eq!(l.sign(), 0);
    }

    #[test]
    fn half_log_nine_fourths() {
        // (1/2)·log(9/4) = log(3/2)
        let l = LogReal::log_of_rational(&rat(9, 4))
            .unwrap()
            .scale(&rat(1, 2));
        assert_eq!(l, LogReal::log_of_rational(&rat(3, 2)).unwrap());
    }

    #[test]
    fn log2_plus_log3_is_log6() {
        let l = LogReal::log_of_uint(2).add(&LogReal::log_of_uint(3));
        assert_eq!(l, LogReal::log_of_uint(6));
    }

    #[test]
    fn sign_examples() {
        // log 3 - (3/2) log 2 > 0 (1.0986 vs 1.0397)
        let x = LogReal::log_of_uint(3).sub(&LogReal::log_of_uint(2).scale(&rat(3, 2)));
        assert_eq!(x.sign(), 1);
        // log 2 - log 3 < 0
        let y = LogReal::log_of_uint(2).sub(&LogReal::log_of_uint(3));
        assert_eq!(y.sign(), -1);
    }

    #[test]
    fn sign_agrees_with_independent_series() {
        // a tight comparison: 12 log 2 vs 7 log 3 + log(4096/2187)
        let x = LogReal::log_of_uint(2)
            .scale(&rat(12, 1))
            .sub(&LogReal::log_of_uint(3).scale(&rat(7, 1)));
        let s = x.sign();
        let mut oracle = Bracket::zero();
        for (p, c) in x.terms() {
            oracle = oracle.add(&ln_uint_mercator(p, 256).scale(c));
        }
        assert!(!oracle.contains_zero());
        assert_eq!(s, if oracle.lo.is_positive() { 1 } else { -1 });
    }

    #[test]
    fn cmp_pair_examples() {
        let zero = EntropyPair::new(LogReal::zero(), LogReal::zero());
        let l2 = LogReal::log_of_uint(2);
        let c = EntropyPair::new(l2.clone(), l2.clone());
        assert_eq!(c.cmp_pair(&zero), PairCmp::Gt);
        assert_eq!(c.cmp_pair(&c.clone()), PairCmp::Eq);
        assert_eq!(zero.cmp_pair(&c), PairCmp::Lt);
        // (log3, log2) vs (log2, 3/2·log2): first up, second down
        let a = EntropyPair::new(LogReal::log_of_uint(3), l2.clone());
        let b = EntropyPair::new(l2.clone(), l2.scale(&rat(3, 2)));
        assert_eq!(a.cmp_pair(&b), PairCmp::Incomparable);
    }

    #[test]
    fn render_parse_round_trip() {
        let x = LogReal::from_terms([
            (BigUint::from(2u32), rat(3, 2)),
            (BigUint::from(3u32), rat(1, 1)),
            (BigUint::from(7u32), rat(-5, 4)),
        ]);
        assert_eq!(x.render(), "3/2*log(2) + 1*log(3) - 5/4*log(7)");
        assert_eq!(LogReal::parse(&x.render()).unwrap(), x);
        assert_eq!(LogReal::parse("0").unwrap(), LogReal::zero());
        let neg = x.scale(&rat(-1, 1));
        assert_eq!(LogReal::parse(&neg.render()).unwrap(), neg);
    }

    #[test]
    fn decimal_rendering() {
        let l2 = LogReal::log_of_uint(2);
        assert_eq!(&l2.to_decimal(6), "0.693147");
        assert_eq!(&l2.scale(&rat(-1, 1)).to_decimal(4), "-0.6931");
        assert_eq!(&LogReal::zero().to_decimal(3), "0.000");
    }
}
