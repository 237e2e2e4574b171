//! Integer factorization for human-scale inputs.
//!
//! Trial division over a small prime sieve handles everything the
//! library generates on its own (masses are built from small primes);
//! a Miller-Rabin primality test plus Pollard's rho covers arbitrary
//! user-supplied rationals.

use num::bigint::BigUint;
use num::{Integer, One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::sync::OnceLock;

const SIEVE_LIMIT: u32 = 100_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut is_comp = vec![false; SIEVE_LIMIT as usize + 1];
        let mut primes = Vec::new();
        for n in 2..=SIEVE_LIMIT as usize {
            if !is_comp[n] {
                primes.push(n as u32);
                let mut m = n * n;
                while m <= SIEVE_LIMIT as usize {
                    is_comp[m] = true;
                    m += n;
                }
            }
        }
        primes
    })
}

/// Prime factorization `n = Π p^e` of a positive integer.
///
/// Panics on zero; factorization of 1 is the empty map.
pub fn factorize(n: &BigUint) -> BTreeMap<BigUint, u64> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut out = BTreeMap::new();
    let mut rest = n.clone();
    for &p in small_primes() {
        if rest.is_one() {
            return out;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0u64;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            out.insert(pb, e);
        }
    }
    if !rest.is_one() {
        factor_large(&rest, &mut out);
    }
    out
}

fn factor_large(n: &BigUint, out: &mut BTreeMap<BigUint, u64>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(n) {
        *out.entry(n.clone()).or_insert(0) += 1;
        return;
    }
    let d = pollard_rho(n);
    factor_large(&d, out);
    factor_large(&(n / &d), out);
}

/// Miller-Rabin. Deterministic for inputs below 2^64 via a fixed witness
/// set; for larger inputs the same witnesses give a strong probable-prime
/// test, which is ample for the magnitudes this crate touches.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    if n == &two {
        return true;
    }
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigUint::from(a) % n;
        if a.is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint) -> BigUint {
    // n is odd, composite, and has no factor below the sieve limit here.
    let one = BigUint::one();
    let mut c = BigUint::from(1u32);
    loop {
        let mut x = BigUint::from(2u32);
        let mut y = BigUint::from(2u32);
        let mut d = BigUint::one();
        let f = |v: &BigUint| (v * v + &c) % n;
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && &d != n {
            return d;
        }
        c += &one;
    }
}

/// Convenience: factorization keyed by `u64` primes when they all fit.
pub fn factorize_u64(n: u64) -> BTreeMap<u64, u64> {
    factorize(&BigUint::from(n))
        .into_iter()
        .map(|(p, e)| (p.to_u64().expect("prime fits u64"), e))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(factorize(&BigUint::one()).is_empty());
        assert_eq!(factorize_u64(12), BTreeMap::from([(2, 2), (3, 1)]));
        assert_eq!(factorize_u64(97), BTreeMap::from([(97, 1)]));
        assert_eq!(
            factorize_u64(2 * 3 * 3 * 25_013),
            BTreeMap::from([(2, 1), (3, 2), (25_013, 1)])
        );
    }

    #[test]
    fn large_semiprime() {
        // 1000003 * 1000033, both above the sieve limit
        let n = BigUint::from(1_000_003u64) * BigUint::from(1_000_033u64);
        let f = factorize(&n);
        assert_eq!(
            f,
            BTreeMap::from([
                (BigUint::from(1_000_003u64), 1),
                (BigUint::from(1_000_033u64), 1)
            ])
        );
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&BigUint::from(2u32)));
        assert!(is_probable_prime(&BigUint::from(1_000_003u64)));
        assert!(!is_probable_prime(&BigUint::from(1u32)));
        assert!(!is_probable_prime(&(BigUint::from(1_000_003u64) * 7u32)));
    }

    #[test]
    fn reconstructs_product() {
        let n = BigUint::from(987_654_321_000u64);
        let f = factorize(&n);
        let mut prod = BigUint::one();
        for (p, e) in f {
            prod *= p.pow(e as u32);
        }
        assert_eq!(prod, n);
    }
}
