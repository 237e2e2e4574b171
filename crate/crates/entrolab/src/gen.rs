//! Seeded random generation of distributions, maps and related objects.
//! Everything flows from a ChaCha stream so suites are reproducible
//! across platforms from a single seed.

use crate::prob::{pushforward, Dist, MPMap, RandVar};
use num::bigint::BigInt;
use num::rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SuiteRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random distribution with support in `2..=max_support` and masses
/// `w/d` for a common denominator `d <= max_den`.
pub fn random_dist(rng: &mut SuiteRng, max_support: usize, max_den: u64) -> Dist {
    let support = rng.gen_range(2..=max_support);
    random_dist_exact_support(rng, support, max_den)
}

/// Random distribution with the given support size: a uniformly chosen
/// composition of a random denominator into positive parts.
pub fn random_dist_exact_support(rng: &mut SuiteRng, support: usize, max_den: u64) -> Dist {
    let den = rng.gen_range(support as u64..=max_den.max(support as u64));
    // distinct cut points make every part strictly positive
    let mut cuts: Vec<u64> = Vec::with_capacity(support - 1);
    while cuts.len() < support - 1 {
        let c = rng.gen_range(1..den);
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.sort_unstable();
    cuts.push(den);
    let mut weights = Vec::with_capacity(support);
    let mut prev = 0;
    for c in cuts {
        weights.push(c - prev);
        prev = c;
    }
    let pairs = weights
        .into_iter()
        .enumerate()
        .map(|(i, w)| {
            (
                format!("x{i}"),
                BigRational::new(BigInt::from(w), BigInt::from(den)),
            )
        })
        .collect();
    Dist::new(pairs).expect("composition parts are positive and sum to one")
}

/// Sometimes-uniform variant, so suites also exercise the boundary
/// cases of the range law.
pub fn random_dist_or_uniform(rng: &mut SuiteRng, max_support: usize, max_den: u64) -> Dist {
    if rng.gen_ratio(1, 5) {
        Dist::uniform(rng.gen_range(1..=max_support))
    } else {
        random_dist(rng, max_support, max_den)
    }
}

/// Random surjective merge out of `p`: a random function onto
/// `1..=classes` class labels (realized classes only).
pub fn random_merge(rng: &mut SuiteRng, p: &Dist) -> MPMap {
    let classes = rng.gen_range(1..=p.support_size());
    let targets: Vec<usize> = (0..p.support_size())
        .map(|_| rng.gen_range(0..classes))
        .collect();
    let outcome_index: std::collections::BTreeMap<String, usize> = p
        .outcomes()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i))
        .collect();
    pushforward(p, move |l| format!("c{}", targets[outcome_index[l]]))
}

/// Random variable over a base: pushforward along a random function.
pub fn random_rv(rng: &mut SuiteRng, base: &Dist) -> RandVar {
    RandVar::new(random_merge(rng, base))
}

/// Random strictly-non-injective merge, guaranteeing an entropy drop.
pub fn random_proper_merge(rng: &mut SuiteRng, p: &Dist) -> MPMap {
    assert!(p.support_size() >= 2);
    let classes = rng.gen_range(1..p.support_size());
    let targets: Vec<usize> = (0..p.support_size())
        .map(|i| {
            if i < classes {
                i // make every class nonempty
            } else {
                rng.gen_range(0..classes)
            }
        })
        .collect();
    let outcome_index: std::collections::BTreeMap<String, usize> = p
        .outcomes()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i))
        .collect();
    pushforward(p, move |l| format!("c{}", targets[outcome_index[l]]))
}

/// Random relabeling (an isomorphic copy).
pub fn random_relabel(rng: &mut SuiteRng, p: &Dist) -> Dist {
    let mut idx: Vec<usize> = (0..p.support_size()).collect();
    for i in (1..idx.len()).rev() {
        let j = rng.gen_range(0..=i);
        idx.swap(i, j);
    }
    Dist::new(
        idx.iter()
            .enumerate()
            .map(|(new, &old)| (format!("y{new}"), p.masses()[old].clone()))
            .collect(),
    )
    .expect("permutation preserves validity")
}

/// Random positive rational with numerator, denominator below the bound.
pub fn random_positive_rational(rng: &mut SuiteRng, bound: u64) -> BigRational {
    let den = rng.gen_range(1..=bound);
    let num = rng.gen_range(1..=bound);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Random rational in `[-bound, bound]` with denominator up to
/// `max_den`, never zero.
pub fn random_nonzero_rational(rng: &mut SuiteRng, bound: i64, max_den: u64) -> BigRational {
    loop {
        let den = rng.gen_range(1..=max_den) as i64;
        let num = rng.gen_range(-bound * den..=bound * den);
        if num != 0 {
            return BigRational::new(BigInt::from(num), BigInt::from(den));
        }
    }
}

/// Flatter distribution obtained by applying `1..=5` random Robin-Hood
/// transfers, optionally growing the support into fresh outcomes.
pub fn random_transfer_descendant(rng: &mut SuiteRng, q: &Dist) -> Dist {
    let mut masses = q.sorted_masses();
    if rng.gen_ratio(1, 4) {
        masses.push(BigRational::default()); // grow support by one slot
    }
    let steps = rng.gen_range(1..=5);
    for _ in 0..steps {
        let n = masses.len();
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let (hi, lo) = if masses[i] >= masses[j] {
            (i, j)
        } else {
            (j, i)
        };
        let gap = &masses[hi] - &masses[lo];
        if gap == BigRational::default() {
            continue;
        }
        // amount in (0, gap/2]: keeps order, never crosses
        let k = rng.gen_range(1..=8u64);
        let amount = gap * BigRational::new(BigInt::from(k), BigInt::from(16));
        masses[hi] -= &amount;
        masses[lo] += &amount;
    }
    let pairs = masses
        .into_iter()
        .enumerate()
        .filter(|(_, m)| m > &BigRational::default())
        .map(|(i, m)| (format!("t{i}"), m))
        .collect();
    Dist::new(pairs).expect("transfers preserve the total")
}
