//! Rational brackets for natural logarithms of integers.
//!
//! Both evaluators return exact rational intervals `[lo, hi]` that
//! provably contain `ln n`, with width below `2^-bits`. The primary
//! route reduces to `ln(n/2^k) + k·ln 2` and sums the atanh series with
//! an explicit tail bound. A second, independent route through the
//! Mercator series `ln(1+u)` exists for cross-checking; the two share
//! no code beyond the bracket type.

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::Mutex;

/// Exact rational bracket `lo <= value <= hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bracket {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Bracket {
    pub fn exact(v: BigRational) -> Self {
        Bracket {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn zero() -> Self {
        Bracket::exact(BigRational::zero())
    }

    pub fn add(&self, other: &Bracket) -> Bracket {
        Bracket {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    /// Multiply by an exact rational scalar, flipping ends when negative.
    pub fn scale(&self, c: &BigRational) -> Bracket {
        if c.is_negative() {
            Bracket {
                lo: &self.hi * c,
                hi: &self.lo * c,
            }
        } else {
            Bracket {
                lo: &self.lo * c,
                hi: &self.hi * c,
            }
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }
}

fn pow2_inv(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

/// atanh series: `ln((1+t)/(1-t)) = 2 Σ_{j>=0} t^(2j+1)/(2j+1)` for
/// rational `0 <= t < 1`, summed exactly until the next term (which also
/// dominates the tail up to the factor `1/(1-t^2)`) dips below the target.
fn atanh_series(t: &BigRational, bits: u32) -> Bracket {
    debug_assert!(!t.is_negative() && t < &BigRational::one());
    if t.is_zero() {
        return Bracket::zero();
    }
    let target = pow2_inv(bits + 2);
    let t2 = t * t;
    let mut term_pow = t.clone();
    let mut sum = BigRational::zero();
    let mut j = 0u64;
    loop {
        sum += &term_pow / BigRational::from_integer(BigInt::from(2 * j + 1));
        term_pow *= &t2;
        j += 1;
        let next = &term_pow / BigRational::from_integer(BigInt::from(2 * j + 1));
        if next < target {
            // tail = Σ_{i>=j} t^(2i+1)/(2i+1) <= next / (1 - t²)
            let tail = &next / (BigRational::one() - &t2);
            let two = BigRational::from_integer(BigInt::from(2));
            return Bracket {
                lo: &two * &sum,
                hi: &two * (&sum + &tail),
            };
        }
    }
}

fn ln2_bracket(bits: u32) -> Bracket {
    // ln 2 = 2 atanh(1/3)
    atanh_series(&BigRational::new(BigInt::one(), BigInt::from(3)), bits)
}

/// Bracket for `ln n`, `n >= 1`, computed fresh (no cache).
fn ln_uint_uncached(n: &BigUint, bits: u32) -> Bracket {
    assert!(!n.is_zero(), "ln of zero");
    if n.is_one() {
        return Bracket::zero();
    }
    let k = n.bits() - 1; // 2^k <= n < 2^(k+1)
    let pow2 = BigUint::one() << k;
    // t = (n - 2^k)/(n + 2^k) in [0, 1/3)
    let t = BigRational::new(BigInt::from(n - &pow2), BigInt::from(n + &pow2));
    let frac = atanh_series(&t, bits + 1);
    let ln2 = ln2_bracket(bits + 1 + 64.min(k as u32));
    let k_rat = BigRational::from_integer(BigInt::from(k));
    frac.add(&ln2.scale(&k_rat))
}

static LN_CACHE: Mutex<Option<HashMap<(BigUint, u32), Bracket>>> = Mutex::new(None);

/// Cached bracket for `ln n` with width below `2^-bits`.
pub fn ln_uint(n: &BigUint, bits: u32) -> Bracket {
    let mut guard = LN_CACHE.lock().expect("ln cache poisoned");
    let cache = guard.get_or_insert_with(HashMap::new);
    if let Some(b) = cache.get(&(n.clone(), bits)) {
        return b.clone();
    }
    let b = ln_uint_uncached(n, bits);
    cache.insert((n.clone(), bits), b.clone());
    b
}

/// Independent evaluator: `ln n` via the Mercator series
/// `ln(1+u) = Σ_{m>=1} (-1)^(m+1) u^m / m` with `u = (n-2^k)/2^k`, and
/// `ln 2 = ln(4/3) + ln(3/2)` through the same series, summed in integer
/// fixed point with directed rounding. Used as an oracle against
/// [`ln_uint`]; deliberately shares no reduction or arithmetic with it.
pub fn ln_uint_mercator(n: &BigUint, bits: u32) -> Bracket {
    assert!(!n.is_zero(), "ln of zero");
    if n.is_one() {
        return Bracket::zero();
    }
    let k = n.bits() - 1;
    let pow2 = BigUint::one() << k;
    let frac = mercator_fixed(&(n - &pow2), &pow2, bits + 2);
    let ln2 = mercator_ln2(bits + 2 + 64.min(k as u32));
    frac.add(&ln2.scale(&BigRational::from_integer(BigInt::from(k))))
}

fn mercator_ln2(bits: u32) -> Bracket {
    // ln 2 = ln(1 + 1/3) + ln(1 + 1/2)
    let one = BigUint::one();
    mercator_fixed(&one, &BigUint::from(3u32), bits + 1).add(&mercator_fixed(
        &one,
        &BigUint::from(2u32),
        bits + 1,
    ))
}

/// Fixed-point bracket for `ln(1 + a/b)`, `0 <= a < b`: every quantity
/// is carried as an integer interval scaled by `2^bits` with floor/ceil
/// rounding, so the output bracket is rigorous by construction. The
/// alternating tail is absorbed by a one-ulp widening at the cut-off.
fn mercator_fixed(a: &BigUint, b: &BigUint, bits: u32) -> Bracket {
    if a.is_zero() {
        return Bracket::zero();
    }
    let scale = BigUint::one() << bits;
    let ceil_div = |x: &BigUint, d: &BigUint| (x + (d - BigUint::one())) / d;
    // u^m · 2^bits as an integer bracket
    let mut pow_lo = (&scale * a) / b;
    let mut pow_hi = ceil_div(&(&scale * a), b);
    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    let mut m = 1u64;
    loop {
        let mb = BigUint::from(m);
        let term_lo = BigInt::from(&pow_lo / &mb);
        let term_hi = BigInt::from(ceil_div(&pow_hi, &mb));
        if m % 2 == 1 {
            sum_lo += &term_lo;
            sum_hi += &term_hi;
        } else {
            sum_lo -= &term_hi;
            sum_hi -= &term_lo;
        }
        pow_lo = (&pow_lo * a) / b;
        pow_hi = ceil_div(&(&pow_hi * a), b);
        m += 1;
        // next term below one ulp: the alternating remainder is smaller
        if pow_hi < BigUint::from(m) {
            let ulp = BigInt::one();
            let denom = BigInt::from(scale);
            return Bracket {
                lo: BigRational::new(sum_lo - &ulp, denom.clone()),
                hi: BigRational::new(sum_hi + &ulp, denom),
            };
        }
    }
}
