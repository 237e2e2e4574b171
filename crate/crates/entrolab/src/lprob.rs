//! Finite shadows of summable infinite-support distributions: truncated
//! geometric families and ρ-th-power summability brackets. Infinite
//! objects never exist as values here; only their truncations do.

use crate::entropy::{hartley, shannon};
use crate::exactlog::LogReal;
use crate::prob::Dist;
use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::Serialize;

/// The truncation `Yₙ = min(X, n)` of a geometric variable with success
/// probability `p`: masses `p(1−p)^(k−1)` for `k < n` and the folded
/// tail `(1−p)^(n−1)` at `k = n`. Exact rationals throughout.
pub fn geometric_truncated(p: &BigRational, n: u32) -> Dist {
    assert!(
        p.is_positive() && p < &BigRational::one(),
        "success probability must lie in (0,1)"
    );
    assert!(n >= 1);
    let q = BigRational::one() - p;
    let mut pairs = Vec::with_capacity(n as usize);
    let mut tail = BigRational::one(); // (1-p)^(k-1)
    for k in 1..n {
        pairs.push((format!("k{k}"), p * &tail));
        tail *= &q;
    }
    pairs.push((format!("k{n}"), tail));
    Dist::new(pairs).expect("geometric masses are positive and sum to one")
}

/// Exact rational bracket `[lo, hi]` for `Σ P(x)^ρ` with rational
/// `ρ = num/den ∈ (0,1)`: each term is bracketed by directed fixed-point
/// `den`-th roots of `mass^num`.
pub fn rho_summability_margin(
    p: &Dist,
    rho: &BigRational,
    bits: u32,
) -> (BigRational, BigRational) {
    assert!(rho.is_positive() && rho < &BigRational::one());
    let num = rho.numer().to_biguint().expect("positive");
    let den = rho.denom().to_biguint().expect("positive");
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    for (_, m) in p.iter() {
        let (l, h) = rational_pow_bracket(m, &num, &den, bits);
        lo += l;
        hi += h;
    }
    (lo, hi)
}

/// Bracket `r^(num/den)` for a positive rational `r` by an integer
/// `den`-th root at `bits` of fixed-point precision. Exact powers are
/// detected and returned with zero width.
fn rational_pow_bracket(
    r: &BigRational,
    num: &BigUint,
    den: &BigUint,
    bits: u32,
) -> (BigRational, BigRational) {
    use num::ToPrimitive;
    let e = num.to_u32().expect("small exponent");
    let q = den.to_u64().expect("small root index");
    // r^num as an exact rational
    let mut pow = BigRational::one();
    for _ in 0..e {
        pow *= r;
    }
    // floor of the q-th root of pow · 2^(q·bits), scaled back by 2^bits
    let scale = BigUint::one() << bits;
    let scaled_num = pow.numer().to_biguint().expect("positive") * scale.pow(q as u32);
    let scaled = scaled_num / pow.denom().to_biguint().expect("positive");
    let root = scaled.nth_root(q as u32);
    let exact = root.pow(q as u32) == scaled
        && (&scaled * pow.denom().to_biguint().unwrap()
            == pow.numer().to_biguint().unwrap() * scale.pow(q as u32));
    let lo = BigRational::new(BigInt::from(root.clone()), BigInt::from(scale.clone()));
    if exact {
        (lo.clone(), lo)
    } else {
        let hi = BigRational::new(BigInt::from(root + 1u32), BigInt::from(scale));
        (lo, hi)
    }
}

/// Entropy trajectory report for the truncated geometric family.
#[derive(Debug, Serialize)]
pub struct TruncationReport {
    pub n: u32,
    pub entropy: LogReal,
    pub entropy_decimal: String,
    /// Decimal gap to the closed-form limit when `p = 1/2` (the limit
    /// `2·log 2` stays inside the exact fragment only there).
    pub gap_to_limit: Option<String>,
}

/// The exact limit entropy `2·log 2` of the geometric family at
/// `p = 1/2`.
pub fn geometric_half_limit() -> LogReal {
    LogReal::log_of_uint(2).scale(&BigRational::from_integer(BigInt::from(2)))
}

pub fn truncation_report(p: &BigRational, n: u32, digits: usize) -> TruncationReport {
    let dist = geometric_truncated(p, n);
    let h = shannon(&dist);
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let gap = if p == &half {
        Some(geometric_half_limit().sub(&h).to_decimal(digits))
    } else {
        None
    };
    TruncationReport {
        n,
        entropy_decimal: h.to_decimal(digits),
        entropy: h,
        gap_to_limit: gap,
    }
}

/// Smallest `n` such that `P^{⊗k} ⊗ Yₙ ≿₀₁ Q^{⊗k}` for the truncated
/// geometric attached to `p_geom`, given `H₁(P) ≥ H₁(Q)`: the Hartley
/// margin needs `k·H₀(P) + log n ≥ k·H₀(Q)` and the Shannon margin is
/// strict as soon as the truncation carries any entropy.
pub fn minimal_truncation_level(
    p: &Dist,
    q: &Dist,
    k: u32,
    p_geom: &BigRational,
    n_cap: u32,
) -> Option<u32> {
    (1..=n_cap).find(|&n| truncation_dominates(p, q, k, p_geom, n))
}

/// `P^{⊗k} ⊗ Yₙ ≿₀₁ Q^{⊗k}`, entropies evaluated additively.
pub fn truncation_dominates(p: &Dist, q: &Dist, k: u32, p_geom: &BigRational, n: u32) -> bool {
    let y = geometric_truncated(p_geom, n);
    crate::majorization::tensor_power_dominates(p, q, k, &y)
}

/// Hartley and Shannon entropies of one truncation level, for reports.
pub fn truncation_entropies(p_geom: &BigRational, n: u32) -> (LogReal, LogReal) {
    let y = geometric_truncated(p_geom, n);
    (hartley(&y), shannon(&y))
}
