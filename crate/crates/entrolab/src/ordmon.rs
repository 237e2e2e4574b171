//! Ordered commutative monoids and the reflection constructions:
//! presented monoids with a bounded order search, Grothendieck groups of
//! formal differences, catalytic regularization, and integral-closedness
//! checking on finite carriers.

use num::bigint::BigInt;
use serde::Serialize;
use std::collections::{BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrdMonError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("addition table is not {0}")]
    BadAddition(&'static str),
    #[error("order relation is not {0}")]
    BadOrder(&'static str),
    #[error("order is not compatible with addition at ({0}, {1}, {2})")]
    Incompatible(usize, usize, usize),
    #[error("cannot parse presentation: {0}")]
    Parse(String),
}

/// Element of a presented commutative monoid: an exponent vector over
/// the generators.
pub type Word = Vec<u32>;

/// A commutative monoid presented by generators and one-directional
/// relations `lhs ≥ rhs` between generator multisets. The order is the
/// smallest monoidal preorder containing the relations; membership is
/// only semi-decidable, so queries carry a depth bound.
#[derive(Debug, Clone)]
pub struct PresentedMonoid {
    generators: Vec<String>,
    relations: Vec<(Word, Word)>,
}

/// Result of a bounded order query: a proof was found, or nothing is
/// claimed either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Semidecision {
    Proven,
    Unknown,
}

impl PresentedMonoid {
    pub fn new(generators: Vec<String>, relations: Vec<(Word, Word)>) -> Self {
        for (l, r) in &relations {
            assert_eq!(l.len(), generators.len());
            assert_eq!(r.len(), generators.len());
        }
        PresentedMonoid {
            generators,
            relations,
        }
    }

    /// Parse a presentation from lines like `a+a+b >= b+c`. Generators
    /// are collected from the relations in order of first appearance.
    pub fn parse(text: &str) -> Result<Self, OrdMonError> {
        let mut generators: Vec<String> = Vec::new();
        let mut raw: Vec<(Vec<String>, Vec<String>)> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (lhs, rhs) = line
                .split_once(">=")
                .ok_or_else(|| OrdMonError::Parse(format!("missing >= in {line:?}")))?;
            let parse_side = |side: &str| -> Vec<String> {
                side.split('+')
                    .map(|t| t.trim().to_string())
                    .filter(|t| !t.is_empty() && t != "0")
                    .collect()
            };
            let l = parse_side(lhs);
            let r = parse_side(rhs);
            for g in l.iter().chain(r.iter()) {
                if !generators.contains(g) {
                    generators.push(g.clone());
                }
            }
            raw.push((l, r));
        }
        let to_word = |side: &[String], gens: &[String]| -> Word {
            let mut w = vec![0u32; gens.len()];
            for t in side {
                let i = gens.iter().position(|g| g == t).expect("collected above");
                w[i] += 1;
            }
            w
        };
        let relations = raw
            .iter()
            .map(|(l, r)| (to_word(l, &generators), to_word(r, &generators)))
            .collect();
        Ok(PresentedMonoid::new(generators, relations))
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    /// Parse a word like `a+a+b` over this presentation's generators.
    pub fn parse_word(&self, s: &str) -> Result<Word, OrdMonError> {
        let mut w = vec![0u32; self.generators.len()];
        for t in s
            .split('+')
            .map(str::trim)
            .filter(|t| !t.is_empty() && *t != "0")
        {
            let i = self
                .generators
                .iter()
                .position(|g| g == t)
                .ok_or_else(|| OrdMonError::UnknownGenerator(t.to_string()))?;
            w[i] += 1;
        }
        Ok(w)
    }

    /// Fallback cap on the number of distinct words explored by [`leq`].
    pub const DEFAULT_LEQ_NODES: usize = 200_000;

    /// Bounded search for `x ≥ y` in the smallest monoidal preorder
    /// containing the relations: breadth-first rewriting that replaces an
    /// embedded relation left side by its right side (sound because the
    /// closure is monoidal and transitive). Bounded in depth and in the
    /// number of visited words. `Proven` is definitive; `Unknown` claims
    /// nothing.
    pub fn leq(&self, x: &Word, y: &Word, depth: u32) -> Semidecision {
        if x == y {
            return Semidecision::Proven;
        }
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        let mut queue: VecDeque<(Word, u32)> = VecDeque::new();
        seen.insert(x.clone());
        queue.push_back((x.clone(), 0));
        while let Some((w, d)) = queue.pop_front() {
            if d >= depth || seen.len() > Self::DEFAULT_LEQ_NODES {
                continue;
            }
            for (lhs, rhs) in &self.relations {
                if lhs.iter().zip(&w).all(|(l, c)| l <= c) {
                    let next: Word = w
                        .iter()
                        .zip(lhs.iter().zip(rhs))
                        .map(|(c, (l, r))| c - l + r)
                        .collect();
                    if &next == y {
                        return Semidecision::Proven;
                    }
                    if seen.insert(next.clone()) {
                        queue.push_back((next, d + 1));
                    }
                }
            }
        }
        Semidecision::Unknown
    }

    /// Refute `x ≥ y` with a user-supplied monotone linear functional:
    /// if `φ` is nonnegative on every relation difference but
    /// `φ(x) < φ(y)`, no chain of relation applications can reach `y`
    /// from `x`.
    pub fn refute_by_functional(&self, x: &Word, y: &Word, phi: &[i64]) -> bool {
        assert_eq!(phi.len(), self.generators.len());
        let value = |w: &Word| -> i64 { w.iter().zip(phi).map(|(&c, &p)| c as i64 * p).sum() };
        let monotone = self.relations.iter().all(|(l, r)| value(l) >= value(r));
        monotone && value(x) < value(y)
    }
}

/// A finite ordered commutative monoid given by tables, with every
/// axiom checked eagerly at construction: commutativity, associativity,
/// unit laws, partial order, and translation-invariance of the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOrdMonoid {
    pub names: Vec<String>,
    add: Vec<Vec<usize>>,
    unit: usize,
    leq: Vec<Vec<bool>>,
}

impl FiniteOrdMonoid {
    pub fn new(
        names: Vec<String>,
        add: Vec<Vec<usize>>,
        unit: usize,
        leq: Vec<Vec<bool>>,
    ) -> Result<Self, OrdMonError> {
        let n = names.len();
        assert!(unit < n && add.len() == n && leq.len() == n);
        for row in &add {
            assert_eq!(row.len(), n);
            assert!(row.iter().all(|&v| v < n));
        }
        for row in &leq {
            assert_eq!(row.len(), n);
        }
        for x in 0..n {
            for y in 0..n {
                if add[x][y] != add[y][x] {
                    return Err(OrdMonError::BadAddition("commutative"));
                }
                for z in 0..n {
                    if add[add[x][y]][z] != add[x][add[y][z]] {
                        return Err(OrdMonError::BadAddition("associative"));
                    }
                }
            }
            if add[unit][x] != x {
                return Err(OrdMonError::BadAddition("unital"));
            }
            if !leq[x][x] {
                return Err(OrdMonError::BadOrder("reflexive"));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && leq[x][y] && leq[y][x] {
                    return Err(OrdMonError::BadOrder("antisymmetric"));
                }
                for z in 0..n {
                    if leq[x][y] && leq[y][z] && !leq[x][z] {
                        return Err(OrdMonError::BadOrder("transitive"));
                    }
                }
            }
        }
        // one-sided translation invariance suffices with transitivity
        for x in 0..n {
            for y in 0..n {
                if !leq[x][y] {
                    continue;
                }
                for z in 0..n {
                    if !leq[add[x][z]][add[y][z]] {
                        return Err(OrdMonError::Incompatible(x, y, z));
                    }
                }
            }
        }
        Ok(FiniteOrdMonoid {
            names,
            add,
            unit,
            leq,
        })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x][y]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    /// `n·x` by repeated addition.
    pub fn scale(&self, n: u64, x: usize) -> usize {
        let mut acc = self.unit;
        for _ in 0..n {
            acc = self.add[acc][x];
        }
        acc
    }

    /// Cancellative with respect to the order: `x+z ≥ y+z ⟹ x ≥ y`,
    /// checked over all triples.
    pub fn is_cancellative(&self) -> bool {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                if self.leq[y][x] {
                    continue;
                }
                for z in 0..n {
                    if self.leq[self.add[y][z]][self.add[x][z]] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Verify that a function table is an order-preserving monoid
    /// homomorphism into `other`.
    pub fn hom_check(&self, other: &FiniteOrdMonoid, f: &[usize]) -> bool {
        if f.len() != self.size() || f.iter().any(|&v| v >= other.size()) {
            return false;
        }
        if f[self.unit] != other.unit {
            return false;
        }
        for x in 0..self.size() {
            for y in 0..self.size() {
                if f[self.add[x][y]] != other.add[f[x]][f[y]] {
                    return false;
                }
                if self.leq[x][y] && !other.leq[f[x]][f[y]] {
                    return false;
                }
            }
        }
        true
    }
}

/// Violation of integral closedness: `n·x + a ≥ n·y + b` for every
/// `n ≥ 1`, yet `x ≥ y` fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IcWitness {
    pub x: usize,
    pub y: usize,
    pub a: usize,
    pub b: usize,
}

/// Replay an integral-closedness witness: confirm the premise over the
/// eventually-periodic joint orbit of `(n·x, n·y)` and the failure of
/// the conclusion.
pub fn verify_ic_witness(m: &FiniteOrdMonoid, w: &IcWitness) -> bool {
    if m.leq(w.x, w.y) {
        return false;
    }
    holds_for_all_n(m, w.x, w.y, w.a, w.b)
}

/// `n·x + a ≥ n·y + b` for all positive `n`, decided exactly: the joint
/// sequence `(n·x, n·y)` in a finite monoid is eventually periodic, so
/// only the orbit's distinct states need checking.
fn holds_for_all_n(m: &FiniteOrdMonoid, x: usize, y: usize, a: usize, b: usize) -> bool {
    let mut seen = BTreeSet::new();
    let mut nx = x;
    let mut ny = y;
    loop {
        if !m.leq(m.add(ny, b), m.add(nx, a)) {
            return false;
        }
        if !seen.insert((nx, ny)) {
            return true;
        }
        nx = m.add(nx, x);
        ny = m.add(ny, y);
    }
}

/// Exhaustive integral-closedness check over a finite carrier, returning
/// the first violating quadruple in enumeration order if any.
pub fn is_integrally_closed(m: &FiniteOrdMonoid) -> Result<(), IcWitness> {
    let n = m.size();
    for x in 0..n {
        for y in 0..n {
            if m.leq(x, y) {
                continue;
            }
            for a in 0..n {
                for b in 0..n {
                    if holds_for_all_n(m, x, y, a, b) {
                        return Err(IcWitness { x, y, a, b });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Catalytic regularization: pass to `x ≽ y ⟺ ∃z: x+z ≥ y+z` and
/// quotient by `≽ ∩ ≽ᵒᵖ`. The result is cancellative with respect to
/// its order, and regularizing twice changes nothing.
#[allow(clippy::needless_range_loop)]
pub fn catalytic_regularize(m: &FiniteOrdMonoid) -> FiniteOrdMonoid {
    let n = m.size();
    let mut succeq = vec![vec![false; n]; n];
    for x in 0..n {
        for y in 0..n {
            succeq[x][y] = (0..n).any(|z| m.leq(m.add(y, z), m.add(x, z)));
        }
    }
    // transitivity holds by concatenating catalysts: if x+z1 >= y+z1 and
    // y+z2 >= w+z2 then both lift to the common catalyst z1+z2
    // equivalence classes of mutual relation, numbered by least member
    let mut class_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for y in x..n {
            if succeq[x][y] && succeq[y][x] {
                class_of[y] = c;
            }
        }
    }
    let k = reps.len();
    let names = reps
        .iter()
        .map(|&r| {
            let members: Vec<&str> = (0..n)
                .filter(|&x| class_of[x] == class_of[r])
                .map(|x| m.names[x].as_str())
                .collect();
            members.join("~")
        })
        .collect();
    let mut add = vec![vec![0usize; k]; k];
    for (i, &ri) in reps.iter().enumerate() {
        for (j, &rj) in reps.iter().enumerate() {
            add[i][j] = class_of[m.add(ri, rj)];
        }
    }
    let mut leq = vec![vec![false; k]; k];
    for (i, &ri) in reps.iter().enumerate() {
        for (j, &rj) in reps.iter().enumerate() {
            leq[j][i] = succeq[ri][rj]; // ri ≽ rj means class j <= class i
        }
    }
    FiniteOrdMonoid::new(names, add, class_of[m.unit], leq)
        .expect("regularization yields a valid ordered monoid")
}

/// Interface for (possibly infinite) cancellative ordered commutative
/// monoids, as needed by the Grothendieck construction.
pub trait OrdCMonoid {
    type Elem: Clone + PartialEq;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn unit(&self) -> Self::Elem;
}

/// `ℕᵏ` with componentwise addition and the product order.
#[derive(Debug, Clone)]
pub struct NatVec {
    pub dim: usize,
}

impl OrdCMonoid for NatVec {
    type Elem = Vec<u64>;

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn leq(&self, a: &Vec<u64>, b: &Vec<u64>) -> bool {
        a.iter().zip(b).all(|(x, y)| x <= y)
    }

    fn unit(&self) -> Vec<u64> {
        vec![0; self.dim]
    }
}

/// A finite ordered monoid seen through the generic interface.
impl OrdCMonoid for FiniteOrdMonoid {
    type Elem = usize;

    fn add(&self, a: &usize, b: &usize) -> usize {
        FiniteOrdMonoid::add(self, *a, *b)
    }

    fn leq(&self, a: &usize, b: &usize) -> bool {
        FiniteOrdMonoid::leq(self, *a, *b)
    }

    fn unit(&self) -> usize {
        self.unit
    }
}

/// Formal difference `plus - minus` over a cancellative ordered
/// commutative monoid.
#[derive(Debug, Clone, PartialEq)]
pub struct Difference<M: OrdCMonoid> {
    pub plus: M::Elem,
    pub minus: M::Elem,
}

impl<M: OrdCMonoid> Difference<M> {
    pub fn new(plus: M::Elem, minus: M::Elem) -> Self {
        Difference { plus, minus }
    }

    pub fn from_element(m: &M, x: M::Elem) -> Self {
        Difference {
            plus: x,
            minus: m.unit(),
        }
    }
}

/// `d1 <= d2` for formal differences, by the defining condition
/// `x−y ≥ z−w` iff `x+w ≥ z+y` in the underlying monoid.
pub fn grothendieck_leq<M: OrdCMonoid>(m: &M, d1: &Difference<M>, d2: &Difference<M>) -> bool {
    m.leq(&m.add(&d1.plus, &d2.minus), &m.add(&d2.plus, &d1.minus))
}

/// `x−y = z−w` iff `x+w = z+y`.
pub fn grothendieck_eq<M: OrdCMonoid>(m: &M, d1: &Difference<M>, d2: &Difference<M>) -> bool {
    m.add(&d1.plus, &d2.minus) == m.add(&d2.plus, &d1.minus)
}

/// Group operations on differences.
pub fn grothendieck_add<M: OrdCMonoid>(
    m: &M,
    d1: &Difference<M>,
    d2: &Difference<M>,
) -> Difference<M> {
    Difference {
        plus: m.add(&d1.plus, &d2.plus),
        minus: m.add(&d1.minus, &d2.minus),
    }
}

pub fn grothendieck_neg<M: OrdCMonoid>(d: &Difference<M>) -> Difference<M> {
    Difference {
        plus: d.minus.clone(),
        minus: d.plus.clone(),
    }
}

/// Canonical image of a `ℕᵏ` difference in `ℤᵏ`.
pub fn nat_difference_to_int(d: &Difference<NatVec>) -> Vec<BigInt> {
    d.plus
        .iter()
        .zip(&d.minus)
        .map(|(&p, &m)| BigInt::from(p) - BigInt::from(m))
        .collect()
}

/// Library of small curated ordered monoids used by tests and suites.
pub mod models {
    use super::*;

    /// Saturating chain `{0..top}` with `min(x+y, top)` and the natural
    /// total order.
    pub fn saturating_chain(top: usize) -> FiniteOrdMonoid {
        let n = top + 1;
        let names = (0..n).map(|i| i.to_string()).collect();
        let add = (0..n)
            .map(|x| (0..n).map(|y| (x + y).min(top)).collect())
            .collect();
        let leq = (0..n).map(|x| (0..n).map(|y| x <= y).collect()).collect();
        FiniteOrdMonoid::new(names, add, 0, leq).expect("valid chain")
    }

    /// Saturating chain with the discrete order (only reflexivity).
    pub fn saturating_chain_discrete(top: usize) -> FiniteOrdMonoid {
        let n = top + 1;
        let names = (0..n).map(|i| i.to_string()).collect();
        let add = (0..n)
            .map(|x| (0..n).map(|y| (x + y).min(top)).collect())
            .collect();
        let leq = (0..n).map(|x| (0..n).map(|y| x == y).collect()).collect();
        FiniteOrdMonoid::new(names, add, 0, leq).expect("valid discrete chain")
    }

    /// Cyclic group `Z_k` with the discrete order; cancellative.
    pub fn cyclic_discrete(k: usize) -> FiniteOrdMonoid {
        let names = (0..k).map(|i| i.to_string()).collect();
        let add = (0..k)
            .map(|x| (0..k).map(|y| (x + y) % k).collect())
            .collect();
        let leq = (0..k).map(|x| (0..k).map(|y| x == y).collect()).collect();
        FiniteOrdMonoid::new(names, add, 0, leq).expect("valid group")
    }

    /// Product-order grid `{0..w-1} × {0..h-1}` with saturating
    /// componentwise addition.
    pub fn saturating_grid(w: usize, h: usize) -> FiniteOrdMonoid {
        let n = w * h;
        let coords = |i: usize| (i % w, i / w);
        let names = (0..n)
            .map(|i| {
                let (a, b) = coords(i);
                format!("({a},{b})")
            })
            .collect();
        let add = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let (a, b) = coords(i);
                        let (c, d) = coords(j);
                        (a + c).min(w - 1) + w * (b + d).min(h - 1)
                    })
                    .collect()
            })
            .collect();
        let leq = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let (a, b) = coords(i);
                        let (c, d) = coords(j);
                        a <= c && b <= d
                    })
                    .collect()
            })
            .collect();
        FiniteOrdMonoid::new(names, add, 0, leq).expect("valid grid")
    }

    /// Finite quotient of the first-coordinate-strict order: the carrier
    /// is `{0..w-1} × {0..h-1}` plus an absorbing top that swallows any
    /// first-coordinate overflow; `x ≥ y` iff the first coordinate is
    /// strictly larger, or the elements are equal, or `x` is the top.
    pub fn lex_strict_grid(w: usize, h: usize) -> FiniteOrdMonoid {
        let n = w * h + 1;
        let top = w * h;
        let coords = |i: usize| (i % w, i / w);
        let mut names: Vec<String> = (0..w * h)
            .map(|i| {
                let (a, b) = coords(i);
                format!("({a},{b})")
            })
            .collect();
        names.push("top".into());
        let add = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == top || j == top {
                            return top;
                        }
                        let (a, b) = coords(i);
                        let (c, d) = coords(j);
                        if a + c >= w {
                            top
                        } else {
                            (a + c) + w * (b + d).min(h - 1)
                        }
                    })
                    .collect()
            })
            .collect();
        let leq = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if j == top {
                            return true; // everything <= top
                        }
                        if i == top {
                            return false;
                        }
                        let (a, b) = coords(i);
                        let (c, d) = coords(j);
                        (a, b) == (c, d) || c > a
                    })
                    .collect()
            })
            .collect();
        FiniteOrdMonoid::new(names, add, 0, leq).expect("valid lex quotient")
    }

    /// Trivial one-element monoid.
    pub fn trivial() -> FiniteOrdMonoid {
        FiniteOrdMonoid::new(vec!["0".into()], vec![vec![0]], 0, vec![vec![true]])
            .expect("valid trivial monoid")
    }

    /// Direct product of two finite ordered monoids with product order.
    pub fn product(a: &FiniteOrdMonoid, b: &FiniteOrdMonoid) -> FiniteOrdMonoid {
        let n = a.size() * b.size();
        let idx = |x: usize, y: usize| x * b.size() + y;
        let names = (0..a.size())
            .flat_map(|x| (0..b.size()).map(move |y| (x, y)))
            .map(|(x, y)| format!("({},{})", a.names[x], b.names[y]))
            .collect();
        let mut add = vec![vec![0usize; n]; n];
        let mut leq = vec![vec![false; n]; n];
        for x1 in 0..a.size() {
            for y1 in 0..b.size() {
                for x2 in 0..a.size() {
                    for y2 in 0..b.size() {
                        add[idx(x1, y1)][idx(x2, y2)] = idx(a.add(x1, x2), b.add(y1, y2));
                        leq[idx(x1, y1)][idx(x2, y2)] = a.leq(x1, x2) && b.leq(y1, y2);
                    }
                }
            }
        }
        FiniteOrdMonoid::new(names, add, idx(a.unit(), b.unit()), leq)
            .expect("product of valid monoids is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::models::*;
    use super::*;

    fn two_gen_one_relation() -> PresentedMonoid {
        // generators {a, b}, relation a >= b
        PresentedMonoid::new(vec!["a".into(), "b".into()], vec![(vec![1, 0], vec![0, 1])])
    }

    #[test]
    fn presented_reflexive() {
        let m = two_gen_one_relation();
        let x = vec![2, 1];
        assert_eq!(m.leq(&x, &x, 0), Semidecision::Proven);
    }

    #[test]
    fn presented_monoidal_closure() {
        let m = two_gen_one_relation();
        // a+a >= b+b via two in-context applications
        assert_eq!(m.leq(&vec![2, 0], &vec![0, 2], 2), Semidecision::Proven);
        // not provable at depth 1
        assert_eq!(m.leq(&vec![2, 0], &vec![0, 2], 1), Semidecision::Unknown);
    }

    #[test]
    fn presented_reverse_is_unknown_and_refutable() {
        let m = two_gen_one_relation();
        assert_eq!(m.leq(&vec![0, 1], &vec![1, 0], 8), Semidecision::Unknown);
        // the monotone functional a↦1, b↦0 separates
        assert!(m.refute_by_functional(&vec![0, 1], &vec![1, 0], &[1, 0]));
    }

    #[test]
    fn presented_monotone_in_depth_and_context() {
        let m = PresentedMonoid::parse("a+a >= b\nb+b >= c").unwrap();
        let x = m.parse_word("a+a+a+a").unwrap();
        let y = m.parse_word("c").unwrap();
        let mut proven_at = None;
        for d in 0..6 {
            if m.leq(&x, &y, d) == Semidecision::Proven {
                proven_at = Some(d);
                break;
            }
        }
        let d0 = proven_at.expect("provable within depth 6");
        for d in d0..8 {
            assert_eq!(m.leq(&x, &y, d), Semidecision::Proven);
        }
        // context closure: x + c >= y + c still provable
        let add = |a: &Word, b: &Word| -> Word { a.iter().zip(b).map(|(u, v)| u + v).collect() };
        let ctx = m.parse_word("b+c").unwrap();
        assert_eq!(
            m.leq(&add(&x, &ctx), &add(&y, &ctx), 8),
            Semidecision::Proven
        );
    }

    #[test]
    fn presentation_parser() {
        let m = PresentedMonoid::parse("a+a+b >= b+c\n# comment\nc >= 0").unwrap();
        assert_eq!(m.generators(), &["a", "b", "c"]);
        assert_eq!(m.parse_word("a+a+b").unwrap(), vec![2, 1, 0]);
        assert_eq!(m.parse_word("0").unwrap(), vec![0, 0, 0]);
        assert!(m.parse_word("d").is_err());
    }

    #[test]
    fn finite_monoid_validation() {
        // a non-commutative table is rejected
        let bad = FiniteOrdMonoid::new(
            vec!["0".into(), "1".into()],
            vec![vec![0, 1], vec![0, 1]],
            0,
            vec![vec![true, false], vec![false, true]],
        );
        assert_eq!(bad.unwrap_err(), OrdMonError::BadAddition("commutative"));
        // incompatible order is rejected: 0 <= 1 but 0+1 > 1+1 in a
        // saturating chain with an inverted order between 1 and 2
        let bad_order = FiniteOrdMonoid::new(
            vec!["0".into(), "1".into(), "2".into()],
            vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]],
            0,
            {
                // order: 0 <= 1, 2 <= 1 (so 0 <= 1 but 0+1=1 <= 1+1=2 fails)
                let mut leq = vec![vec![false; 3]; 3];
                for i in 0..3 {
                    leq[i][i] = true;
                }
                leq[0][1] = true;
                leq[2][1] = true;
                leq
            },
        );
        assert!(matches!(
            bad_order.unwrap_err(),
            OrdMonError::Incompatible(..)
        ));
    }

    #[test]
    fn hom_check_examples() {
        let m = saturating_chain(3);
        let id: Vec<usize> = (0..m.size()).collect();
        assert!(m.hom_check(&m, &id));
        let t = trivial();
        let constant = vec![0; m.size()];
        assert!(m.hom_check(&t, &constant));
        // breaking additivity on one pair fails
        let mut bad = id.clone();
        bad[3] = 2;
        assert!(!m.hom_check(&m, &bad));
    }

    #[test]
    fn grothendieck_over_nat() {
        let m = NatVec { dim: 1 };
        let d1 = Difference::<NatVec>::new(vec![3], vec![1]);
        let d2 = Difference::<NatVec>::new(vec![5], vec![3]);
        assert!(grothendieck_eq(&m, &d1, &d2));
        assert!(grothendieck_leq(&m, &d1, &d2));
        let one = Difference::<NatVec>::new(vec![1], vec![0]);
        let two = Difference::<NatVec>::new(vec![2], vec![0]);
        // (1-0) >= (2-0) is false, the reverse holds
        assert!(!grothendieck_leq(&m, &two, &one));
        assert!(grothendieck_leq(&m, &one, &two));
    }

    #[test]
    fn grothendieck_over_nat2() {
        let m = NatVec { dim: 2 };
        // (2,0)-(0,1) >= (1,0)-(0,2) iff (2,2) >= (1,1)
        let d1 = Difference::<NatVec>::new(vec![2, 0], vec![0, 1]);
        let d2 = Difference::<NatVec>::new(vec![1, 0], vec![0, 2]);
        assert!(grothendieck_leq(&m, &d2, &d1));
    }

    #[test]
    fn grothendieck_matches_int_vectors() {
        let m = NatVec { dim: 2 };
        for a1 in 0..3u64 {
            for b1 in 0..3u64 {
                for a2 in 0..3u64 {
                    for b2 in 0..3u64 {
                        let d1 = Difference::<NatVec>::new(vec![a1, b1], vec![a2, b2]);
                        for c1 in 0..3u64 {
                            for e1 in 0..3u64 {
                                for c2 in 0..3u64 {
                                    for e2 in 0..3u64 {
                                        let d2 =
                                            Difference::<NatVec>::new(vec![c1, e1], vec![c2, e2]);
                                        let z1 = nat_difference_to_int(&d1);
                                        let z2 = nat_difference_to_int(&d2);
                                        let int_geq = z1.iter().zip(&z2).all(|(u, v)| u >= v);
                                        assert_eq!(grothendieck_leq(&m, &d2, &d1), int_geq);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn regularize_cancellative_input_is_identity() {
        let g = cyclic_discrete(4);
        assert!(g.is_cancellative());
        let r = catalytic_regularize(&g);
        assert_eq!(r.size(), g.size());
        let id: Vec<usize> = (0..g.size()).collect();
        assert!(g.hom_check(&r, &id));
    }

    #[test]
    fn regularize_discrete_saturating_chain_collapses() {
        // x⊕2 = 2 = y⊕2 relates every pair
        let m = saturating_chain_discrete(2);
        let r = catalytic_regularize(&m);
        assert_eq!(r.size(), 1);
    }

    #[test]
    fn regularize_trivial() {
        let t = trivial();
        let r = catalytic_regularize(&t);
        assert_eq!(r.size(), 1);
    }

    #[test]
    fn regularize_output_cancellative_and_idempotent() {
        let curated = vec![
            saturating_chain(3),
            saturating_chain_discrete(3),
            cyclic_discrete(5),
            saturating_grid(3, 2),
            lex_strict_grid(2, 3),
            product(&cyclic_discrete(2), &saturating_chain(2)),
        ];
        for m in curated {
            let r = catalytic_regularize(&m);
            assert!(r.is_cancellative(), "regularization not cancellative");
            let rr = catalytic_regularize(&r);
            assert_eq!(rr.size(), r.size(), "regularization not idempotent");
            assert_eq!(rr.names, r.names);
        }
    }

    #[test]
    fn trivial_monoid_is_integrally_closed() {
        assert!(is_integrally_closed(&trivial()).is_ok());
    }

    #[test]
    fn discrete_group_is_integrally_closed() {
        assert!(is_integrally_closed(&cyclic_discrete(4)).is_ok());
        assert!(is_integrally_closed(&product(&cyclic_discrete(2), &cyclic_discrete(3))).is_ok());
    }

    #[test]
    fn lex_grid_is_not_integrally_closed() {
        let m = lex_strict_grid(2, 3);
        let w = is_integrally_closed(&m).unwrap_err();
        assert!(verify_ic_witness(&m, &w));
        // the specific witness x=(0,1), y=(0,2), a=(1,0), b=(0,0)
        let find = |name: &str| m.names.iter().position(|n| n == name).unwrap();
        let spec_witness = IcWitness {
            x: find("(0,1)"),
            y: find("(0,2)"),
            a: find("(1,0)"),
            b: find("(0,0)"),
        };
        assert!(verify_ic_witness(&m, &spec_witness));
    }

    #[test]
    fn saturating_grid_is_not_integrally_closed() {
        // an absorbing top makes n·x + top ≥ n·y + 0 hold vacuously for
        // every n, while x ≥ y can still fail; saturation therefore
        // breaks cancellativity and with it integral closedness
        let m = saturating_grid(3, 3);
        assert!(!m.is_cancellative());
        let w = is_integrally_closed(&m).unwrap_err();
        assert!(verify_ic_witness(&m, &w));
    }

    #[test]
    fn ic_witness_replay_rejects_fake() {
        let m = saturating_chain(2);
        // x <= y makes the witness invalid regardless of the premise
        let fake = IcWitness {
            x: 0,
            y: 1,
            a: 0,
            b: 0,
        };
        assert!(!verify_ic_witness(&m, &fake));
    }
}
