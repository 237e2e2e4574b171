//! Entropy functionals on finite probability spaces, valued in the
//! exact log space.

use crate::exactlog::{EntropyPair, LogReal};
use crate::prob::{Dist, RandVar};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EntropyError {
    #[error("Rényi order must be an integer >= 2 (order 1 is Shannon, order 0 is Hartley)")]
    UnsupportedAlpha,
}

/// Hartley entropy: the log of the support size.
pub fn hartley(p: &Dist) -> LogReal {
    LogReal::log_of_uint(p.support_size() as u64)
}

/// Shannon entropy `Σ p·log(1/p)`, assembled exactly from the prime
/// factorizations of the masses.
pub fn shannon(p: &Dist) -> LogReal {
    let mut acc = LogReal::zero();
    for (_, m) in p.iter() {
        let log_m = LogReal::log_of_rational(m).expect("masses are positive");
        acc = acc.add(&log_m.scale(&-m.clone()));
    }
    acc
}

/// Order-`alpha` Rényi entropy for integer `alpha >= 2`:
/// `(1/(1-alpha))·log Σ pᵅ`. The inner sum is rational, so the value is
/// exact.
pub fn renyi(p: &Dist, alpha: u32) -> Result<LogReal, EntropyError> {
    if alpha < 2 {
        return Err(EntropyError::UnsupportedAlpha);
    }
    let mut power_sum = BigRational::zero();
    for (_, m) in p.iter() {
        let mut t = BigRational::one();
        for _ in 0..alpha {
            t *= m;
        }
        power_sum += t;
    }
    let log_sum = LogReal::log_of_rational(&power_sum).expect("sum of positive terms");
    let coeff = BigRational::new(BigInt::one(), BigInt::from(1i64 - alpha as i64));
    Ok(log_sum.scale(&coeff))
}

/// The Hartley/Shannon pair, the value of the finest entropy that is
/// still a real-valued invariant.
pub fn entropy_pair(p: &Dist) -> EntropyPair {
    EntropyPair::new(hartley(p), shannon(p))
}

/// Named entropy functionals, so suites can enumerate laws per
/// functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Functional {
    Hartley,
    Shannon,
    Renyi(u32),
}

impl Functional {
    pub fn eval(&self, p: &Dist) -> Result<LogReal, EntropyError> {
        match self {
            Functional::Hartley => Ok(hartley(p)),
            Functional::Shannon => Ok(shannon(p)),
            Functional::Renyi(a) => renyi(p, *a),
        }
    }
}

/// Entropy of a random variable: the functional applied to the codomain
/// distribution, realizing the variable/distribution correspondence.
pub fn rv_entropy(x: &RandVar, h: Functional) -> Result<LogReal, EntropyError> {
    h.eval(x.codomain())
}

/// Nonnegative combination `a·H₀ + b·H₁`, the general functional that
/// the two-component entropy factors through.
pub fn combo_entropy(p: &Dist, a: &BigRational, b: &BigRational) -> LogReal {
    hartley(p).scale(a).add(&shannon(p).scale(b))
}
