//! Majorization, Robin-Hood transfers, the `≿₀₁` order, and a bounded
//! catalytic witness search.
//!
//! Vectors are compared after sorting in descending order and padding
//! with zeros to a common length; distributions themselves never carry
//! zero masses.

use crate::entropy::{hartley, shannon};
use crate::prob::{pushforward, Dist, MPMap, RandVar};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MajorizationError {
    #[error("left side does not majorize right side")]
    NotMajorized,
    #[error("entropic hypotheses fail: need H0(P) >= H0(Q) and H1(P) > H1(Q)")]
    HypothesisViolated,
}

fn sorted_padded(p: &Dist, q: &Dist) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut a = p.sorted_masses();
    let mut b = q.sorted_masses();
    let n = a.len().max(b.len());
    a.resize(n, BigRational::zero());
    b.resize(n, BigRational::zero());
    (a, b)
}

/// `q` majorizes `p`: every k-prefix sum of `q`'s sorted masses weakly
/// dominates that of `p`, exactly.
pub fn majorizes(q: &Dist, p: &Dist) -> bool {
    let (ps, qs) = sorted_padded(p, q);
    let mut prefix_p = BigRational::zero();
    let mut prefix_q = BigRational::zero();
    for (a, b) in ps.iter().zip(qs.iter()) {
        prefix_p += a;
        prefix_q += b;
        if prefix_q < prefix_p {
            return false;
        }
    }
    true
}

/// A single Robin-Hood transfer on a sorted mass vector: move `amount`
/// from the (larger) entry at `index_from` to the (smaller) entry at
/// `index_to` without letting them cross.
#[derive(Debug, Clone, PartialEq)]
pub struct Transfer {
    pub index_from: usize,
    pub index_to: usize,
    pub amount: BigRational,
}

/// Replay transfers on a descending mass vector, re-sorting is not
/// needed because the classical construction preserves sortedness.
pub fn replay_transfers(start: &[BigRational], transfers: &[Transfer]) -> Vec<BigRational> {
    let mut v = start.to_vec();
    for t in transfers {
        v[t.index_from] -= &t.amount;
        v[t.index_to] += &t.amount;
    }
    v
}

/// Decompose a majorization `p ⪯ q` into at most `n-1` Robin-Hood
/// transfers turning `q`'s sorted vector into `p`'s, by the classical
/// largest-surplus construction.
pub fn robin_hood_decompose(q: &Dist, p: &Dist) -> Result<Vec<Transfer>, MajorizationError> {
    if !majorizes(q, p) {
        return Err(MajorizationError::NotMajorized);
    }
    let (target, mut current) = sorted_padded(p, q);
    let mut transfers = Vec::new();
    // repeat until the vectors agree: pick the largest surplus index
    while let Some(j) = (0..current.len()).rev().find(|&i| current[i] > target[i]) {
        // smallest deficit index right of j
        let k = (j + 1..current.len())
            .find(|&i| current[i] < target[i])
            .expect("deficit exists while sums are equal");
        let surplus = &current[j] - &target[j];
        let deficit = &target[k] - &current[k];
        let amount = surplus.min(deficit);
        current[j] -= &amount;
        current[k] += &amount;
        transfers.push(Transfer {
            index_from: j,
            index_to: k,
            amount,
        });
    }
    debug_assert!(transfers.len() < current.len().max(1));
    Ok(transfers)
}

/// The `≿₀₁` order: isomorphic, or Hartley weakly larger and Shannon
/// strictly larger.
pub fn order01(p: &Dist, q: &Dist) -> bool {
    if p.is_isomorphic(q) {
        return true;
    }
    let d0 = hartley(p).sub(&hartley(q));
    let d1 = shannon(p).sub(&shannon(q));
    d0.sign() >= 0 && d1.sign() == 1
}

/// k-th power sum of the mass multiset, the additive invariant used to
/// compare tensor powers without materializing them.
fn power_sum(d: &Dist, k: u64) -> BigRational {
    let mut acc = BigRational::zero();
    for (_, m) in d.iter() {
        let mut t = BigRational::one();
        for _ in 0..k {
            t *= m;
        }
        acc += t;
    }
    acc
}

fn pow_rational(base: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

/// Multiset count of an n-fold product: multisets of size n over d
/// distinct values, times the catalyst's distinct values. Used as the
/// atom bound for the moment comparison.
fn distinct_bound(d: &Dist, n: u32) -> u128 {
    let distinct = {
        let mut m = d.sorted_masses();
        m.dedup();
        m.len() as u128
    };
    // C(n + distinct - 1, distinct - 1); exact at every prefix step
    let mut acc: u128 = 1;
    for i in 1..=(distinct - 1) {
        acc = acc.saturating_mul(n as u128 + i) / i;
    }
    acc
}

/// Exact isomorphism test between `P^{⊗n} ⊗ R` and `Q^{⊗n}` without
/// materializing either side. Sizes must agree, and then the mass
/// multisets agree iff enough power sums agree: two atomic measures with
/// at most `D` atoms each are equal once their first `2D` moments match.
fn tensor_iso(p: &Dist, r: &Dist, q: &Dist, n: u32) -> bool {
    let size_l = (p.support_size() as u128)
        .checked_pow(n)
        .and_then(|s| s.checked_mul(r.support_size() as u128));
    let size_r = (q.support_size() as u128).checked_pow(n);
    match (size_l, size_r) {
        (Some(a), Some(b)) if a == b => {}
        _ => return false,
    }
    let d_left = distinct_bound(p, n).saturating_mul(r.support_size() as u128);
    let d_right = distinct_bound(q, n);
    let needed = d_left.saturating_add(d_right);
    assert!(
        needed <= 1 << 20,
        "isomorphism decision needs {needed} moments; inputs exceed desk scale"
    );
    let needed = needed as u64;
    for k in 1..=needed {
        let lhs = pow_rational(&power_sum(p, k), n) * power_sum(r, k);
        let rhs = pow_rational(&power_sum(q, k), n);
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// `P^{⊗n} ⊗ R ≿₀₁ Q^{⊗n}` evaluated exactly with entropies computed
/// additively; the exponential-size supports are never materialized.
pub fn tensor_power_dominates(p: &Dist, q: &Dist, n: u32, r: &Dist) -> bool {
    let n_rat = BigRational::from_integer(BigInt::from(n));
    let h0_left = hartley(p).scale(&n_rat).add(&hartley(r));
    let h1_left = shannon(p).scale(&n_rat).add(&shannon(r));
    let h0_right = hartley(q).scale(&n_rat);
    let h1_right = shannon(q).scale(&n_rat);
    let d0 = h0_left.sub(&h0_right).sign();
    let d1 = h1_left.sub(&h1_right).sign();
    if d0 >= 0 && d1 == 1 {
        return true;
    }
    // strict branch failed; only an isomorphism can still satisfy ≿₀₁
    if d0 == 0 && d1 == 0 {
        return tensor_iso(p, r, q, n);
    }
    false
}

/// Search budget for the catalytic witness search.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessBudget {
    /// Maximum number of catalyst components in the product space.
    pub depth: u32,
    /// Maximum support size of each catalyst component.
    pub support: u32,
    /// Masses of catalyst components are multiples of `1/den`.
    pub den: u32,
    /// Cap on fully verified candidates before giving up.
    pub max_replays: u64,
    /// Skip candidates whose final comparison would exceed this support.
    pub max_outcomes: usize,
}

impl Default for WitnessBudget {
    fn default() -> Self {
        WitnessBudget {
            depth: 3,
            support: 4,
            den: 16,
            max_replays: 6_000,
            max_outcomes: 4096,
        }
    }
}

/// A verified catalytic witness: catalyst space `r` and three variables
/// over it such that `Q ⊗ Cod(X₁) ⊗ Cod(X₂) ⊗ Cod(X₃)` majorizes
/// `P ⊗ Cod(X₁⊗X₂⊗X₃)`.
#[derive(Debug, Clone)]
pub struct CatalyticWitness {
    pub catalyst: Dist,
    pub vars: [RandVar; 3],
    pub joint_codomain: Dist,
    pub transfers: Vec<Transfer>,
}

/// Outcome of the bounded search. Absence of a witness is never claimed.
#[derive(Debug)]
pub enum WitnessSearch {
    Found(Box<CatalyticWitness>),
    BudgetExhausted { candidates_checked: u64 },
}

/// Verify a proposed witness by exact majorization replay. Sound
/// regardless of how the candidate was produced.
pub fn verify_witness(p: &Dist, q: &Dist, w: &CatalyticWitness) -> bool {
    let joint = match w.vars[0]
        .joint(&w.vars[1])
        .and_then(|xy| xy.joint(&w.vars[2]))
    {
        Ok(j) => j,
        Err(_) => return false,
    };
    if !joint.codomain().is_isomorphic(&w.joint_codomain) {
        return false;
    }
    let left = p.product(joint.codomain());
    let right = q
        .product(w.vars[0].codomain())
        .product(w.vars[1].codomain())
        .product(w.vars[2].codomain());
    if !majorizes(&right, &left) {
        return false;
    }
    // transfers replay from the right (majorizing) side to the left
    let (target, start) = sorted_padded(&left, &right);
    replay_transfers(&start, &w.transfers) == target
}

/// Enumerate descending integer compositions: partitions of `total`
/// into at most `parts` positive parts.
fn partitions(total: u32, parts: u32, max_part: u32) -> Vec<Vec<u32>> {
    if total == 0 {
        return vec![vec![]];
    }
    if parts == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(total)).rev() {
        for mut rest in partitions(total - first, parts - 1, first) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Dyadic catalyst components within the budget, deterministically
/// ordered: partitions of `den` into at most `support` parts, skipping
/// the degenerate single-part catalyst (it adds nothing).
fn catalyst_components(budget: &WitnessBudget) -> Vec<Dist> {
    partitions(budget.den, budget.support, budget.den)
        .into_iter()
        .filter(|parts| parts.len() > 1)
        .map(|parts| {
            let weights: Vec<u64> = parts.iter().map(|&w| w as u64).collect();
            Dist::from_weights(&weights)
        })
        .collect()
}

/// Coordinate-projection shapes for one variable over a product of
/// `arity` components: a subset of coordinates, optionally composed with
/// a merge of the two least-mass outcomes when projecting to a single
/// coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
enum VarShape {
    Constant,
    Coord(usize),
    CoordMerged(usize),
    Pair(usize, usize),
    All,
}

fn var_shapes(arity: usize) -> Vec<VarShape> {
    let mut shapes = vec![VarShape::Constant];
    for i in 0..arity {
        shapes.push(VarShape::Coord(i));
        shapes.push(VarShape::CoordMerged(i));
    }
    for i in 0..arity {
        for j in i + 1..arity {
            shapes.push(VarShape::Pair(i, j));
        }
    }
    if arity > 1 {
        shapes.push(VarShape::All);
    }
    shapes
}

/// Decode a product-space outcome label into its component labels.
fn split_tuple(label: &str) -> Vec<String> {
    // labels are built by left-nested `tuple_label`; walk the escaping
    fn split_once_escaped(s: &str) -> Option<(String, String)> {
        let inner = s.strip_prefix('(')?.strip_suffix(')')?;
        let mut depth = 0usize;
        let mut escaped = false;
        let chars: Vec<char> = inner.chars().collect();
        for (i, &c) in chars.iter().enumerate() {
            if escaped {
                escaped = false;
                continue;
            }
            match c {
                '\\' => escaped = true,
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    let unesc = |cs: &[char]| {
                        let mut out = String::new();
                        let mut esc = false;
                        for &c in cs {
                            if esc {
                                out.push(c);
                                esc = false;
                            } else if c == '\\' {
                                esc = true;
                            } else {
                                out.push(c);
                            }
                        }
                        out
                    };
                    return Some((unesc(&chars[..i]), unesc(&chars[i + 1..])));
                }
                _ => {}
            }
        }
        None
    }
    match split_once_escaped(label) {
        None => vec![label.to_string()],
        Some((a, b)) => {
            let mut v = split_tuple(&a);
            v.push(b);
            v
        }
    }
}

fn shape_var(space: &Dist, comps: &[Dist], shape: VarShape) -> RandVar {
    match shape {
        VarShape::Constant => RandVar::constant(space),
        VarShape::Coord(i) => RandVar::from_fn(space, move |l| split_tuple(l)[i].clone()),
        VarShape::CoordMerged(i) => {
            // merge the two least-mass outcomes of component i
            let comp = &comps[i];
            let mut idx: Vec<usize> = (0..comp.support_size()).collect();
            idx.sort_by(|&a, &b| comp.masses()[a].cmp(&comp.masses()[b]));
            let merged: Vec<String> = idx
                .iter()
                .take(2)
                .map(|&k| comp.outcomes()[k].clone())
                .collect();
            RandVar::from_fn(space, move |l| {
                let x = split_tuple(l)[i].clone();
                if merged.contains(&x) {
                    "merged".to_string()
                } else {
                    x
                }
            })
        }
        VarShape::Pair(i, j) => RandVar::from_fn(space, move |l| {
            let parts = split_tuple(l);
            crate::prob::tuple_label(&parts[i], &parts[j])
        }),
        VarShape::All => RandVar::identity(space),
    }
}

/// Bounded search for a catalytic witness to the majorization
/// consequence of the entropy hypotheses `H₀(P) ≥ H₀(Q)`,
/// `H₁(P) > H₁(Q)`. The searched family (products of small dyadic
/// catalysts with coordinate projections and single-coordinate merges)
/// is a tractable fragment; completeness is not claimed, and every hit
/// is replay-verified before being returned.
pub fn catalytic_witness_search(
    p: &Dist,
    q: &Dist,
    budget: &WitnessBudget,
) -> Result<WitnessSearch, MajorizationError> {
    if hartley(p).sub(&hartley(q)).sign() < 0 || shannon(p).sub(&shannon(q)).sign() != 1 {
        return Err(MajorizationError::HypothesisViolated);
    }
    let comps = catalyst_components(budget);
    let checked = std::cell::Cell::new(0u64);
    let h1_p = shannon(p);
    let h1_q = shannon(q);

    let try_candidate = |comp_idx: &[usize]| -> Option<CatalyticWitness> {
        let chosen: Vec<Dist> = comp_idx.iter().map(|&i| comps[i].clone()).collect();
        let space = match chosen.split_first() {
            None => Dist::unit(),
            Some((first, rest)) => rest.iter().fold(first.clone(), |acc, c| acc.product(c)),
        };
        let shapes = var_shapes(chosen.len());
        for &s1 in &shapes {
            for &s2 in &shapes {
                for &s3 in &shapes {
                    if checked.get() >= budget.max_replays {
                        return None;
                    }
                    checked.set(checked.get() + 1);
                    let x1 = shape_var(&space, &chosen, s1);
                    let x2 = shape_var(&space, &chosen, s2);
                    let x3 = shape_var(&space, &chosen, s3);
                    let out_size = q.support_size()
                        * x1.codomain().support_size()
                        * x2.codomain().support_size()
                        * x3.codomain().support_size();
                    if out_size > budget.max_outcomes {
                        continue;
                    }
                    let joint = x1.joint(&x2).and_then(|a| a.joint(&x3)).expect("same base");
                    // entropy prefilter: majorization implies both
                    // entropy inequalities, so reject cheaply first
                    let h1_left = h1_p.add(&shannon(joint.codomain()));
                    let h1_right = h1_q
                        .add(&shannon(x1.codomain()))
                        .add(&shannon(x2.codomain()))
                        .add(&shannon(x3.codomain()));
                    if h1_left.sub(&h1_right).sign() < 0 {
                        continue;
                    }
                    let left = p.product(joint.codomain());
                    let right = q
                        .product(x1.codomain())
                        .product(x2.codomain())
                        .product(x3.codomain());
                    if left.support_size() < right.support_size() {
                        continue;
                    }
                    if majorizes(&right, &left) {
                        let transfers = robin_hood_decompose(&right, &left)
                            .expect("majorization just verified");
                        return Some(CatalyticWitness {
                            catalyst: space.clone(),
                            vars: [x1, x2, x3],
                            joint_codomain: joint.codomain().clone(),
                            transfers,
                        });
                    }
                }
            }
        }
        None
    };

    // depth 0: degenerate catalyst, plain majorization
    if let Some(w) = try_candidate(&[]) {
        return Ok(WitnessSearch::Found(Box::new(w)));
    }
    for depth in 1..=budget.depth as usize {
        let mut stack = vec![Vec::<usize>::new()];
        while let Some(prefix) = stack.pop() {
            if prefix.len() == depth {
                if let Some(w) = try_candidate(&prefix) {
                    return Ok(WitnessSearch::Found(Box::new(w)));
                }
                if checked.get() >= budget.max_replays {
                    return Ok(WitnessSearch::BudgetExhausted {
                        candidates_checked: checked.get(),
                    });
                }
                continue;
            }
            let start = prefix.last().copied().unwrap_or(0);
            for i in (start..comps.len()).rev() {
                let mut next = prefix.clone();
                next.push(i);
                stack.push(next);
            }
        }
    }
    Ok(WitnessSearch::BudgetExhausted {
        candidates_checked: checked.get(),
    })
}

/// Apply `count` random-looking but deterministic Robin-Hood transfers
/// to a distribution, producing a flatter one it majorizes. Exposed for
/// the verification suites.
pub fn transfer_descendant(d: &Dist, steps: &[(usize, usize, BigRational)]) -> Dist {
    let mut v = d.sorted_masses();
    for (from, to, frac) in steps {
        let (from, to) = (*from % v.len(), *to % v.len());
        if from == to {
            continue;
        }
        let (hi, lo) = if v[from] >= v[to] {
            (from, to)
        } else {
            (to, from)
        };
        let gap = &v[hi] - &v[lo];
        if gap.is_zero() {
            continue;
        }
        let amount = gap * frac / BigRational::from_integer(BigInt::from(2));
        v[hi] -= &amount;
        v[lo] += &amount;
    }
    let pairs = v
        .into_iter()
        .enumerate()
        .filter(|(_, m)| m.is_positive())
        .map(|(i, m)| (format!("t{i}"), m))
        .collect();
    Dist::new(pairs).expect("transfers preserve total mass and positivity")
}

/// Convenience wrapper building an `MPMap` certificate chain for the CLI.
#[derive(Debug, Serialize)]
pub struct MajorizationCertificate {
    pub relation: String,
    pub holds: bool,
    pub lhs_sorted: Vec<String>,
    pub rhs_sorted: Vec<String>,
    pub transfers: Option<Vec<TransferWire>>,
}

#[derive(Debug, Serialize)]
pub struct TransferWire {
    pub from: usize,
    pub to: usize,
    pub amount: String,
}

pub fn majorization_certificate(q: &Dist, p: &Dist) -> MajorizationCertificate {
    let holds = majorizes(q, p);
    let transfers = if holds {
        robin_hood_decompose(q, p).ok().map(|ts| {
            ts.into_iter()
                .map(|t| TransferWire {
                    from: t.index_from,
                    to: t.index_to,
                    amount: crate::numfmt::format_rational(&t.amount),
                })
                .collect()
        })
    } else {
        None
    };
    MajorizationCertificate {
        relation: "majorize".into(),
        holds,
        lhs_sorted: q
            .sorted_masses()
            .iter()
            .map(crate::numfmt::format_rational)
            .collect(),
        rhs_sorted: p
            .sorted_masses()
            .iter()
            .map(crate::numfmt::format_rational)
            .collect(),
        transfers,
    }
}

/// The MPMap view of a merge used in tests: pushforward along a
/// two-class split of the outcome set.
pub fn binary_merge(d: &Dist, first_class: &[String]) -> MPMap {
    pushforward(d, |l| {
        if first_class.iter().any(|x| x == l) {
            "lo".to_string()
        } else {
            "hi".to_string()
        }
    })
}
