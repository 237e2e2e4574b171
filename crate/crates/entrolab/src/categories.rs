//! The example categories and their canonical entropies: finite
//! inhabited sets (log of cardinality), vector spaces over a prime
//! field (dimension), finite sets opposite (cardinality), the augmented
//! simplex category (object index plus one), finite abelian groups
//! (prime-power multiplicity matrix with the suffix-sum order), and the
//! naturality squares connecting them all through finite probability.

use crate::entropy::{entropy_pair, shannon};
use crate::exactlog::{EntropyPair, LogReal};
use crate::prob::Dist;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CategoryError {
    #[error("the empty set is not an object here")]
    EmptySet,
    #[error("unknown naturality functor {0:?}")]
    UnknownFunctor(String),
}

// ---------------------------------------------------------------------
// Finite inhabited sets, sets-opposite, vector spaces, simplex objects
// ---------------------------------------------------------------------

/// Entropy of a finite inhabited set: `log |A|`.
pub fn finiset_entropy(size: u64) -> Result<LogReal, CategoryError> {
    if size == 0 {
        return Err(CategoryError::EmptySet);
    }
    Ok(LogReal::log_of_uint(size))
}

/// Entropy of an object of the opposite category of finite sets: the
/// cardinality itself, additive under disjoint union.
pub fn finsetop_entropy(size: u64) -> u64 {
    size
}

/// Entropy of a finite-dimensional vector space: its dimension.
pub fn vect_entropy(dim: u64) -> u64 {
    dim
}

/// Entropy of a Gaussian object: the dimension of its support. Means
/// and covariances do not matter because same-dimension Gaussians are
/// isomorphic under measure-preserving affine maps.
pub fn gauss_entropy(dim: u64) -> u64 {
    dim
}

/// Entropy of the simplex object `[n] = {0..n}` (with `[-1]` empty):
/// `n + 1`, additive under concatenation.
pub fn simplex_entropy(n: i64) -> u64 {
    assert!(n >= -1);
    (n + 1) as u64
}

// ---------------------------------------------------------------------
// Linear epimorphisms over a prime field
// ---------------------------------------------------------------------

/// A surjective linear map between coordinate spaces over `F_p`, stored
/// as a (rows = target dim) × (cols = source dim) matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearEpi {
    pub p: u64,
    pub rows: Vec<Vec<u64>>,
}

/// Row rank of a matrix over `F_p` by Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn rank_mod_p(matrix: &[Vec<u64>], p: u64) -> usize {
    if matrix.is_empty() {
        return 0;
    }
    let cols = matrix[0].len();
    let mut m: Vec<Vec<u64>> = matrix
        .iter()
        .map(|r| r.iter().map(|&v| v % p).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..m.len()).find(|&r| m[r][col] != 0);
        let Some(pivot) = pivot else { continue };
        m.swap(rank, pivot);
        let inv = mod_inverse(m[rank][col], p);
        for c in col..cols {
            m[rank][c] = m[rank][c] * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let f = m[r][col];
                for c in col..cols {
                    m[r][c] = (m[r][c] + (p - f) * m[rank][c]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: p prime
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl LinearEpi {
    /// Validating constructor: the matrix must have full row rank.
    pub fn new(p: u64, rows: Vec<Vec<u64>>) -> Option<LinearEpi> {
        let rank = rank_mod_p(&rows, p);
        if rank == rows.len() {
            Some(LinearEpi { p, rows })
        } else {
            None
        }
    }

    pub fn source_dim(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn target_dim(&self) -> usize {
        self.rows.len()
    }

    /// Dimension of the codomain of the joint of two maps from the same
    /// source: the rank of the stacked matrix (the image of the pairing).
    pub fn joint_dim(&self, other: &LinearEpi) -> usize {
        assert_eq!(self.p, other.p);
        assert_eq!(self.source_dim(), other.source_dim());
        let mut stacked = self.rows.clone();
        stacked.extend(other.rows.iter().cloned());
        rank_mod_p(&stacked, self.p)
    }
}

// ---------------------------------------------------------------------
// Order-preserving surjections (the augmented simplex category)
// ---------------------------------------------------------------------

/// An order-preserving surjection `[a] -> [b]` between the ordered sets
/// `[n] = {0..n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurjOrd {
    /// assignment[i] is the image of i; length a+1, onto {0..b}
    pub assignment: Vec<usize>,
    pub target_size: usize,
}

impl SurjOrd {
    pub fn new(assignment: Vec<usize>, target_size: usize) -> Option<SurjOrd> {
        if assignment.windows(2).any(|w| w[0] > w[1]) {
            return None;
        }
        let mut hit = vec![false; target_size];
        for &v in &assignment {
            if v >= target_size {
                return None;
            }
            hit[v] = true;
        }
        if hit.iter().all(|&h| h) {
            Some(SurjOrd {
                assignment,
                target_size,
            })
        } else {
            None
        }
    }

    pub fn source_size(&self) -> usize {
        self.assignment.len()
    }

    /// Joint with another surjection from the same source: the image of
    /// the pairing, which the product order makes a total order, so the
    /// result is again an object of the category. Returns `None` if the
    /// image fails to be totally ordered (it never does; the check is
    /// part of the verification surface).
    pub fn joint(&self, other: &SurjOrd) -> Option<SurjOrd> {
        assert_eq!(self.source_size(), other.source_size());
        let pairs: Vec<(usize, usize)> = self
            .assignment
            .iter()
            .zip(&other.assignment)
            .map(|(&x, &y)| (x, y))
            .collect();
        let mut image = pairs.clone();
        image.dedup();
        {
            let mut sorted = image.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != image.len() {
                return None; // image revisited a pair: not monotone
            }
            // total order under the product order: consecutive images
            // must be componentwise comparable; monotonicity of both
            // coordinates gives exactly that
            for w in sorted.windows(2) {
                let ((a1, b1), (a2, b2)) = (w[0], w[1]);
                if !(a1 <= a2 && b1 <= b2) {
                    return None;
                }
            }
            let assignment = pairs
                .iter()
                .map(|p| sorted.binary_search(p).expect("image member"))
                .collect();
            SurjOrd::new(assignment, sorted.len())
        }
    }
}

// ---------------------------------------------------------------------
// Finite abelian groups
// ---------------------------------------------------------------------

/// Multiplicity matrix of a finite abelian group: entry `(p, j) ↦ m`
/// records `m` copies of `Z_{p^j}` in the prime-power decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MMatrix {
    entries: BTreeMap<(u64, u32), u64>,
}

impl MMatrix {
    pub fn entries(&self) -> &BTreeMap<(u64, u32), u64> {
        &self.entries
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.is_empty()
    }

    /// Group order `Π p^(j·m)`.
    pub fn group_order(&self) -> BigInt {
        let mut acc = BigInt::one();
        for (&(p, j), &m) in &self.entries {
            acc *= BigInt::from(p).pow(j * m as u32);
        }
        acc
    }

    /// Direct sum accumulates multiplicities.
    pub fn direct_sum(&self, other: &MMatrix) -> MMatrix {
        let mut entries = self.entries.clone();
        for (&k, &m) in &other.entries {
            *entries.entry(k).or_insert(0) += m;
        }
        MMatrix { entries }
    }

    /// `log` of the group order, the image of the M-matrix in the
    /// Hartley component: `Σ m·log p^j`.
    pub fn log_order(&self) -> LogReal {
        let mut acc = LogReal::zero();
        for (&(p, j), &m) in &self.entries {
            acc = acc.add(
                &LogReal::log_of_uint(p)
                    .scale(&BigRational::from_integer(BigInt::from(j as u64 * m))),
            );
        }
        acc
    }

    /// The cyclic orders of the prime-power decomposition, one `p^j` per
    /// multiplicity.
    pub fn cyclic_orders(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (&(p, j), &m) in &self.entries {
            for _ in 0..m {
                out.push(p.pow(j));
            }
        }
        out
    }
}

/// Decompose a direct sum of cyclic groups `⊕ Z_n` into the prime-power
/// multiplicity matrix via the Chinese remainder splitting of each `Z_n`.
pub fn finab_decompose(orders: &[u64]) -> MMatrix {
    let mut entries: BTreeMap<(u64, u32), u64> = BTreeMap::new();
    for &n in orders {
        assert!(n >= 1, "cyclic order must be at least 1");
        for (p, e) in crate::factor::factorize_u64(n) {
            *entries.entry((p, e as u32)).or_insert(0) += 1;
        }
    }
    MMatrix { entries }
}

/// The domination order on multiplicity matrices: for every prime and
/// every `k ≥ 1`, the suffix sum `Σ_{j≥k} m_{p,j}` weakly dominates.
pub fn m_dominates(a: &MMatrix, b: &MMatrix) -> bool {
    let mut primes: Vec<u64> = a
        .entries
        .keys()
        .chain(b.entries.keys())
        .map(|&(p, _)| p)
        .collect();
    primes.sort_unstable();
    primes.dedup();
    for p in primes {
        let max_j = a
            .entries
            .keys()
            .chain(b.entries.keys())
            .filter(|&&(q, _)| q == p)
            .map(|&(_, j)| j)
            .max()
            .unwrap_or(0);
        let mut suffix_a = 0u64;
        let mut suffix_b = 0u64;
        for j in (1..=max_j).rev() {
            suffix_a += a.entries.get(&(p, j)).copied().unwrap_or(0);
            suffix_b += b.entries.get(&(p, j)).copied().unwrap_or(0);
            if suffix_a < suffix_b {
                return false;
            }
        }
    }
    true
}

/// Comparison summary for two multiplicity matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MCompare {
    Dominates,
    Dominated,
    Equal,
    Incomparable,
}

pub fn m_compare(a: &MMatrix, b: &MMatrix) -> MCompare {
    match (m_dominates(a, b), m_dominates(b, a)) {
        (true, true) => MCompare::Equal,
        (true, false) => MCompare::Dominates,
        (false, true) => MCompare::Dominated,
        (false, false) => MCompare::Incomparable,
    }
}

/// A finite abelian group materialized at element level as a product of
/// cyclic groups; the brute-force oracle works here.
#[derive(Debug, Clone)]
pub struct AbGroup {
    pub orders: Vec<u64>,
}

impl AbGroup {
    pub fn new(orders: Vec<u64>) -> Self {
        AbGroup {
            orders: orders.into_iter().filter(|&n| n > 1).collect(),
        }
    }

    pub fn size(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.orders.len()]
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect()
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![self.zero()];
        for (i, &n) in self.orders.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * n as usize);
            for e in &out {
                for v in 0..n {
                    let mut e2 = e.clone();
                    e2[i] = v;
                    next.push(e2);
                }
            }
            out = next;
        }
        out
    }

    /// Additive order of an element: lcm over coordinates of
    /// `n_i / gcd(n_i, x_i)`.
    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.orders)
            .map(|(&v, &n)| n / gcd(n, v))
            .fold(1u64, lcm)
    }

    /// Subgroup generated by a set of elements, as a sorted list.
    pub fn span(&self, gens: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(self.zero());
        let mut frontier = vec![self.zero()];
        while let Some(e) = frontier.pop() {
            for g in gens {
                let next = self.add(&e, g);
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        seen.into_iter().collect()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Result of the surjective-homomorphism search.
#[derive(Debug)]
pub enum EpiSearch {
    /// Images of the source generators under a verified epimorphism.
    Yes(Vec<Vec<u64>>),
    No,
    BudgetExhausted,
}

/// Brute-force search for a surjective homomorphism `A → B` by
/// enumerating generator images whose orders divide the generator
/// orders, pruning branches that can no longer reach a generating set.
/// Independent of the multiplicity-matrix order, so the two can be
/// checked against each other.
pub fn brute_epi_exists(a: &AbGroup, b: &AbGroup, max_nodes: u64) -> EpiSearch {
    let b_size = b.size();
    if b_size == 1 {
        return EpiSearch::Yes(vec![b.zero(); a.orders.len()]);
    }
    if a.orders.is_empty() {
        return EpiSearch::No;
    }
    // desk-scale guard on the order product before materializing b
    if a.size().saturating_mul(b_size) > 1 << 16 {
        return EpiSearch::BudgetExhausted;
    }
    let b_elements = b.elements();
    // candidate images per generator: elements whose order divides d_i
    let candidates: Vec<Vec<Vec<u64>>> = a
        .orders
        .iter()
        .map(|&d| {
            b_elements
                .iter()
                .filter(|e| d % b.element_order(e) == 0)
                .cloned()
                .collect()
        })
        .collect();
    let mut nodes = 0u64;
    let mut images: Vec<Vec<u64>> = Vec::new();

    fn remaining_capacity(orders: &[u64], from: usize) -> u64 {
        orders[from..]
            .iter()
            .fold(1u64, |acc, &d| acc.saturating_mul(d))
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        a: &AbGroup,
        b: &AbGroup,
        candidates: &[Vec<Vec<u64>>],
        images: &mut Vec<Vec<u64>>,
        level: usize,
        span_size: u64,
        b_size: u64,
        nodes: &mut u64,
        max_nodes: u64,
    ) -> Option<bool> {
        if level == a.orders.len() {
            return Some(span_size == b_size);
        }
        // prune: even maximal growth cannot generate all of b
        if span_size.saturating_mul(remaining_capacity(&a.orders, level)) < b_size {
            return Some(false);
        }
        for img in &candidates[level] {
            *nodes += 1;
            if *nodes > max_nodes {
                return None;
            }
            images.push(img.clone());
            let span = b.span(images);
            let found = dfs(
                a,
                b,
                candidates,
                images,
                level + 1,
                span.len() as u64,
                b_size,
                nodes,
                max_nodes,
            );
            match found {
                Some(true) => return Some(true),
                Some(false) => {
                    images.pop();
                }
                None => return None,
            }
        }
        Some(false)
    }

    match dfs(
        a,
        b,
        &candidates,
        &mut images,
        0,
        1,
        b_size,
        &mut nodes,
        max_nodes,
    ) {
        Some(true) => EpiSearch::Yes(images),
        Some(false) => EpiSearch::No,
        None => EpiSearch::BudgetExhausted,
    }
}

/// Verify a claimed epimorphism witness: orders divide, and the images
/// generate the whole target.
pub fn verify_epi_witness(a: &AbGroup, b: &AbGroup, images: &[Vec<u64>]) -> bool {
    if images.len() != a.orders.len() {
        return false;
    }
    for (img, &d) in images.iter().zip(&a.orders) {
        if d % b.element_order(img) != 0 {
            return false;
        }
    }
    b.span(images).len() as u64 == b.size()
}

/// All abelian groups of order exactly `n`, as multisets of prime-power
/// cyclic orders (one group per isomorphism class).
pub fn abelian_groups_of_order(n: u64) -> Vec<Vec<u64>> {
    fn partitions_of(e: u32) -> Vec<Vec<u32>> {
        fn go(rest: u32, max: u32) -> Vec<Vec<u32>> {
            if rest == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in (1..=max.min(rest)).rev() {
                for mut tail in go(rest - first, first) {
                    let mut v = vec![first];
                    v.append(&mut tail);
                    out.push(v);
                }
            }
            out
        }
        go(e, e)
    }
    let mut result: Vec<Vec<u64>> = vec![vec![]];
    for (p, e) in crate::factor::factorize_u64(n) {
        let mut next = Vec::new();
        for parts in partitions_of(e as u32) {
            for base in &result {
                let mut g = base.clone();
                for &j in &parts {
                    g.push(p.pow(j));
                }
                next.push(g);
            }
        }
        result = next;
    }
    result
}

// ---------------------------------------------------------------------
// Naturality squares
// ---------------------------------------------------------------------

/// Constants fixing the embeddings into finite probability.
#[derive(Debug, Clone)]
pub struct NaturalityConstants {
    /// Prime field order for the vector-space embedding.
    pub field: u64,
    /// Cyclic group order for the simplex embedding.
    pub group: u64,
    /// Base distribution for the sets-opposite embedding.
    pub dist: Dist,
}

impl Default for NaturalityConstants {
    fn default() -> Self {
        NaturalityConstants {
            field: 2,
            group: 2,
            dist: Dist::uniform(2),
        }
    }
}

/// Objects the squares can be evaluated at.
#[derive(Debug, Clone)]
pub enum NaturalityObject {
    Dist(Dist),
    Dimension(u64),
    AbGroup(Vec<u64>),
    Simplex(i64),
    SetSize(u64),
}

/// Both paths of one commuting square, as exact values.
#[derive(Debug, Clone, Serialize)]
pub struct SquareReport {
    pub functor: String,
    pub upper_path: String,
    pub lower_path: String,
    pub commutes: bool,
}

fn pair_scaled(x: u64, log_g: &LogReal) -> EntropyPair {
    let s = BigRational::from_integer(BigInt::from(x));
    EntropyPair::new(log_g.scale(&s), log_g.scale(&s))
}

/// Evaluate one naturality square on one object: compute the image of
/// the object's entropy along the codomain map, and the entropy of the
/// object's image, and compare exactly.
pub fn naturality_square(
    functor: &str,
    object: &NaturalityObject,
    consts: &NaturalityConstants,
) -> Result<SquareReport, CategoryError> {
    let (upper, lower) = match (functor, object) {
        ("supp", NaturalityObject::Dist(p)) => {
            // first project the pair, then compare with log|supp P|
            let upper = entropy_pair(p).h0;
            let lower = finiset_entropy(p.support_size() as u64)?;
            (upper.render(), lower.render())
        }
        ("incl_lprob", NaturalityObject::Dist(p)) => {
            let upper = entropy_pair(p).h1;
            let lower = shannon(p);
            (upper.render(), lower.render())
        }
        ("vect_to_prob", NaturalityObject::Dimension(d)) => {
            let log_f = LogReal::log_of_uint(consts.field);
            let upper = pair_scaled(vect_entropy(*d), &log_f);
            let uniform = uniform_power(consts.field, *d);
            let lower = entropy_pair(&uniform);
            (upper.render(), lower.render())
        }
        ("ab_to_prob", NaturalityObject::AbGroup(orders)) => {
            let m = finab_decompose(orders);
            let h = m.log_order();
            let upper = EntropyPair::new(h.clone(), h);
            let size: u64 = orders.iter().product();
            let lower = entropy_pair(&Dist::uniform(size as usize));
            (upper.render(), lower.render())
        }
        ("simplex_to_prob", NaturalityObject::Simplex(n)) => {
            let log_g = LogReal::log_of_uint(consts.group);
            let upper = pair_scaled(simplex_entropy(*n), &log_g);
            let uniform = uniform_power(consts.group, simplex_entropy(*n));
            let lower = entropy_pair(&uniform);
            (upper.render(), lower.render())
        }
        ("setop_to_prob", NaturalityObject::SetSize(s)) => {
            let x = BigRational::from_integer(BigInt::from(finsetop_entropy(*s)));
            let base = entropy_pair(&consts.dist);
            let upper = EntropyPair::new(base.h0.scale(&x), base.h1.scale(&x));
            let mut power = Dist::unit();
            for _ in 0..*s {
                power = power.product(&consts.dist);
            }
            let lower = entropy_pair(&power);
            (upper.render(), lower.render())
        }
        _ => return Err(CategoryError::UnknownFunctor(functor.to_string())),
    };
    Ok(SquareReport {
        functor: functor.to_string(),
        commutes: upper == lower,
        upper_path: upper,
        lower_path: lower,
    })
}

/// Uniform distribution over `base^exp` outcomes, built as a tensor
/// power so the comparison exercises the product construction.
fn uniform_power(base: u64, exp: u64) -> Dist {
    let mut acc = Dist::unit();
    for _ in 0..exp {
        acc = acc.product(&Dist::uniform(base as usize));
    }
    acc
}

pub const NATURALITY_FUNCTORS: [&str; 6] = [
    "supp",
    "incl_lprob",
    "vect_to_prob",
    "ab_to_prob",
    "simplex_to_prob",
    "setop_to_prob",
];

#[cfg(test)]
mod tests {
    use super::*;
    use num::ToPrimitive;

    #[test]
    fn finiset_values() {
        assert!(finiset_entropy(1).unwrap().is_zero());
        assert_eq!(
            finiset_entropy(6).unwrap(),
            LogReal::log_of_uint(2).add(&LogReal::log_of_uint(3))
        );
        assert_eq!(finiset_entropy(5).unwrap(), LogReal::log_of_uint(5));
        assert_eq!(finiset_entropy(0).unwrap_err(), CategoryError::EmptySet);
    }

    #[test]
    fn setop_values() {
        assert_eq!(finsetop_entropy(0), 0);
        assert_eq!(finsetop_entropy(1), 1);
        // disjoint union adds
        assert_eq!(
            finsetop_entropy(3 + 4),
            finsetop_entropy(3) + finsetop_entropy(4)
        );
    }

    #[test]
    fn simplex_values() {
        assert_eq!(simplex_entropy(-1), 0);
        assert_eq!(simplex_entropy(0), 1);
        // concatenation [m]⊗[n] has index m+n+1
        let (m, n) = (2i64, 4i64);
        assert_eq!(
            simplex_entropy(m + n + 1),
            simplex_entropy(m) + simplex_entropy(n)
        );
    }

    #[test]
    fn vect_rank_and_joint() {
        assert_eq!(vect_entropy(0), 0);
        assert_eq!(vect_entropy(2), 2);
        // two identical projections F_2² → F_2: the stacked rank is 1
        let f = LinearEpi::new(2, vec![vec![1, 0]]).unwrap();
        let g = LinearEpi::new(2, vec![vec![1, 0]]).unwrap();
        assert_eq!(f.joint_dim(&g), 1);
        assert!(f.joint_dim(&g) <= f.target_dim() + g.target_dim());
        // independent projections have joint rank 2
        let h = LinearEpi::new(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(f.joint_dim(&h), 2);
        // a rank-deficient matrix is not an epimorphism
        assert!(LinearEpi::new(2, vec![vec![1, 0], vec![1, 0]]).is_none());
    }

    #[test]
    fn rank_mod_p_values() {
        assert_eq!(rank_mod_p(&[vec![2, 4], vec![1, 2]], 5), 1);
        assert_eq!(rank_mod_p(&[vec![1, 0], vec![0, 1]], 3), 2);
        assert_eq!(rank_mod_p(&[vec![2, 0], vec![0, 2]], 2), 0);
    }

    #[test]
    fn surjord_validation_and_joint() {
        // merge steps 1,2 of [3] onto [2]
        let f = SurjOrd::new(vec![0, 1, 1, 2], 3).unwrap();
        assert_eq!(f.source_size(), 4);
        assert!(SurjOrd::new(vec![0, 2, 1], 3).is_none()); // not monotone
        assert!(SurjOrd::new(vec![0, 0, 1], 3).is_none()); // not surjective
        let g = SurjOrd::new(vec![0, 0, 1, 1], 2).unwrap();
        let j = f.joint(&g).expect("image is totally ordered");
        assert_eq!(j.source_size(), 4);
        // image pairs: (0,0),(1,0),(1,1),(2,1): all distinct
        assert_eq!(j.target_size, 4);
    }

    #[test]
    fn finab_decompose_values() {
        assert!(finab_decompose(&[1]).is_trivial());
        let z12 = finab_decompose(&[12]);
        assert_eq!(
            z12.entries().clone().into_iter().collect::<Vec<_>>(),
            vec![((2, 2), 1), ((3, 1), 1)]
        );
        let z2z4 = finab_decompose(&[2, 4]);
        assert_eq!(
            z2z4.entries().clone().into_iter().collect::<Vec<_>>(),
            vec![((2, 1), 1), ((2, 2), 1)]
        );
        assert_eq!(z2z4.group_order().to_u64().unwrap(), 8);
    }

    #[test]
    fn m_domination_examples() {
        let z4 = finab_decompose(&[4]);
        let z2 = finab_decompose(&[2]);
        let z2z2 = finab_decompose(&[2, 2]);
        assert!(m_dominates(&z4, &z2));
        assert_eq!(m_compare(&z4, &z2z2), MCompare::Incomparable);
        assert_eq!(m_compare(&z4, &z4), MCompare::Equal);
    }

    #[test]
    fn brute_epi_examples() {
        let z4 = AbGroup::new(vec![4]);
        let z2z2 = AbGroup::new(vec![2, 2]);
        let z2z4 = AbGroup::new(vec![2, 4]);
        // identity-shaped surjection exists
        match brute_epi_exists(&z4, &AbGroup::new(vec![4]), 10_000) {
            EpiSearch::Yes(w) => assert!(verify_epi_witness(&z4, &AbGroup::new(vec![4]), &w)),
            other => panic!("expected Yes, got {other:?}"),
        }
        // the homomorphic image of a cyclic group is cyclic
        assert!(matches!(
            brute_epi_exists(&z4, &z2z2, 10_000),
            EpiSearch::No
        ));
        match brute_epi_exists(&z2z4, &z2z2, 10_000) {
            EpiSearch::Yes(w) => assert!(verify_epi_witness(&z2z4, &z2z2, &w)),
            other => panic!("expected Yes, got {other:?}"),
        }
    }

    #[test]
    fn epi_matches_m_domination_small() {
        // exhaustive up to order 12
        for n in 1..=12u64 {
            for m in 1..=12u64 {
                for ga in abelian_groups_of_order(n) {
                    for gb in abelian_groups_of_order(m) {
                        let a = AbGroup::new(ga.clone());
                        let b = AbGroup::new(gb.clone());
                        let dom = m_dominates(&finab_decompose(&ga), &finab_decompose(&gb));
                        let epi = match brute_epi_exists(&a, &b, 100_000) {
                            EpiSearch::Yes(w) => {
                                assert!(verify_epi_witness(&a, &b, &w));
                                true
                            }
                            EpiSearch::No => false,
                            EpiSearch::BudgetExhausted => panic!("budget too small"),
                        };
                        assert_eq!(dom, epi, "mismatch at {ga:?} -> {gb:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn groups_of_order_counts() {
        assert_eq!(abelian_groups_of_order(1).len(), 1);
        assert_eq!(abelian_groups_of_order(8).len(), 3);
        assert_eq!(abelian_groups_of_order(12).len(), 2);
        assert_eq!(abelian_groups_of_order(16).len(), 5);
        assert_eq!(abelian_groups_of_order(36).len(), 4);
    }

    #[test]
    fn example_entropies_are_strongly_monoidal_and_monotone() {
        // sets: log|A×B| = log|A| + log|B|, epimorphisms shrink
        for (a, b) in [(2u64, 3u64), (4, 5), (1, 7)] {
            assert_eq!(
                finiset_entropy(a * b).unwrap(),
                finiset_entropy(a)
                    .unwrap()
                    .add(&finiset_entropy(b).unwrap())
            );
        }
        assert_eq!(
            finiset_entropy(5)
                .unwrap()
                .sub(&finiset_entropy(3).unwrap())
                .sign(),
            1
        );
        // vector spaces: dim adds under direct sum, drops along epis
        assert_eq!(vect_entropy(2 + 3), vect_entropy(2) + vect_entropy(3));
        // abelian groups: direct sum adds multiplicity matrices
        let a = finab_decompose(&[4, 3]);
        let b = finab_decompose(&[2, 9]);
        assert_eq!(a.direct_sum(&b), finab_decompose(&[4, 3, 2, 9]));
        assert!(m_dominates(&a.direct_sum(&b), &a));
    }

    #[test]
    fn vect_joint_subadditive_on_random_matrices() {
        // rank of a stacked matrix never exceeds the sum of the ranks
        let p = 3u64;
        let mats = [
            vec![vec![1, 2, 0], vec![0, 1, 1]],
            vec![vec![2, 2, 2]],
            vec![vec![1, 0, 1], vec![2, 1, 0]],
        ];
        for f_rows in &mats {
            for g_rows in &mats {
                let f = LinearEpi::new(p, f_rows.clone()).unwrap();
                let g = LinearEpi::new(p, g_rows.clone()).unwrap();
                let joint = f.joint_dim(&g);
                assert!(joint <= f.target_dim() + g.target_dim());
                assert!(joint >= f.target_dim().max(g.target_dim()));
            }
        }
    }

    #[test]
    fn simplex_joint_image_is_totally_ordered_on_samples() {
        // every pair of monotone surjections from [a] has a joint
        let surjections_from = |a: usize| -> Vec<SurjOrd> {
            let mut out = Vec::new();
            // enumerate assignments recursively: monotone steps of 0 or 1
            fn go(acc: &mut Vec<Vec<usize>>, cur: Vec<usize>, left: usize) {
                if left == 0 {
                    acc.push(cur);
                    return;
                }
                let last = *cur.last().unwrap();
                for next in [last, last + 1] {
                    let mut c = cur.clone();
                    c.push(next);
                    go(acc, c, left - 1);
                }
            }
            let mut raw = Vec::new();
            go(&mut raw, vec![0], a);
            for assignment in raw {
                let size = assignment.last().unwrap() + 1;
                out.push(SurjOrd::new(assignment, size).expect("monotone surjection"));
            }
            out
        };
        for a in 1..=4usize {
            let all = surjections_from(a);
            for f in &all {
                for g in &all {
                    let j = f.joint(g).expect("image is a total order");
                    // entropy subadditivity: |im| <= (b+1)·(c+1) and the
                    // joint refines both factors
                    assert!(j.target_size <= f.target_size * g.target_size);
                    assert!(j.target_size >= f.target_size.max(g.target_size));
                }
            }
        }
    }

    #[test]
    fn finab_joint_image_dominated_by_direct_sum() {
        // im((f,g)) is a subgroup of B ⊕ C: for f = g = id_A the image
        // is the diagonal copy of A
        let a = finab_decompose(&[4]);
        let sum = a.direct_sum(&a);
        assert!(m_dominates(&sum, &a));
        // quotient-and-inclusion pairing: im ≅ Z4 inside Z2 ⊕ Z4
        let b_sum = finab_decompose(&[2, 4]);
        assert!(m_dominates(&b_sum, &finab_decompose(&[4])));
    }

    #[test]
    fn naturality_squares_on_spec_objects() {
        let consts = NaturalityConstants::default();
        // supp on [1/2,1/4,1/4]
        let p = Dist::from_weights(&[2, 1, 1]);
        let r = naturality_square("supp", &NaturalityObject::Dist(p.clone()), &consts).unwrap();
        assert!(r.commutes, "supp: {} vs {}", r.upper_path, r.lower_path);
        assert_eq!(r.lower_path, LogReal::log_of_uint(3).render());
        // ab_to_prob on Z_2 ⊕ Z_4: both paths give (3 log 2, 3 log 2)
        let r = naturality_square(
            "ab_to_prob",
            &NaturalityObject::AbGroup(vec![2, 4]),
            &consts,
        )
        .unwrap();
        assert!(r.commutes);
        assert!(r.upper_path.contains("3*log(2)"));
        // vect_to_prob on F_2²
        let r =
            naturality_square("vect_to_prob", &NaturalityObject::Dimension(2), &consts).unwrap();
        assert!(r.commutes);
        assert!(r.upper_path.contains("2*log(2)"));
        // unknown functor
        assert_eq!(
            naturality_square("bogus", &NaturalityObject::Dimension(1), &consts).unwrap_err(),
            CategoryError::UnknownFunctor("bogus".into())
        );
    }
}
