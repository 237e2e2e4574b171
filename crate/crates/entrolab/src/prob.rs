//! Finite probability spaces with exact rational masses.
//!
//! A [`Dist`] carries strictly positive masses summing to one over
//! distinct labels; a [`MPMap`] is a measure-preserving assignment
//! between two of them, re-verified exactly on every construction.
//! All values are immutable after construction and safe to share.

use crate::numfmt::{format_rational, parse_rational};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProbError {
    #[error("mass for {0:?} is not strictly positive")]
    NonPositiveMass(String),
    #[error("masses sum to {0}, not 1")]
    MassSumNotOne(String),
    #[error("duplicate outcome label {0:?}")]
    DuplicateLabel(String),
    #[error("map does not preserve measure at {0:?}")]
    NotMeasurePreserving(String),
    #[error("assignment is missing outcome {0:?}")]
    MissingOutcome(String),
    #[error("random variables have different base spaces")]
    BaseMismatch,
    #[error("maps do not compose: target of first differs from source of second")]
    ChainMismatch,
}

/// Canonical label for a pair of outcomes. Escapes the delimiter
/// characters so that the encoding is injective on arbitrary labels.
pub fn tuple_label(a: &str, b: &str) -> String {
    fn esc(s: &str) -> String {
        let mut out = String::with_capacity(s.len());
        for ch in s.chars() {
            if matches!(ch, '(' | ')' | ',' | '\\') {
                out.push('\\');
            }
            out.push(ch);
        }
        out
    }
    format!("({},{})", esc(a), esc(b))
}

/// A finite probability space: distinct labels with strictly positive
/// rational masses summing to exactly one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dist {
    outcomes: Vec<String>,
    masses: Vec<BigRational>,
}

impl Dist {
    /// Validating constructor.
    pub fn new(pairs: Vec<(String, BigRational)>) -> Result<Self, ProbError> {
        let mut seen = std::collections::BTreeSet::new();
        let mut sum = BigRational::zero();
        for (label, mass) in &pairs {
            if !mass.is_positive() {
                return Err(ProbError::NonPositiveMass(label.clone()));
            }
            if !seen.insert(label.clone()) {
                return Err(ProbError::DuplicateLabel(label.clone()));
            }
            sum += mass;
        }
        if !sum.is_one() {
            return Err(ProbError::MassSumNotOne(format_rational(&sum)));
        }
        let (outcomes, masses) = pairs.into_iter().unzip();
        Ok(Dist { outcomes, masses })
    }

    /// The canonical tensor unit: a single outcome of mass one.
    pub fn unit() -> Self {
        Dist {
            outcomes: vec!["*".into()],
            masses: vec![BigRational::one()],
        }
    }

    /// Point mass on a named outcome.
    pub fn point(label: &str) -> Self {
        Dist {
            outcomes: vec![label.to_string()],
            masses: vec![BigRational::one()],
        }
    }

    /// Uniform distribution over `n` outcomes labelled `x0..x(n-1)`.
    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform distribution needs at least one outcome");
        let mass = BigRational::new(BigInt::one(), BigInt::from(n));
        Dist {
            outcomes: (0..n).map(|i| format!("x{i}")).collect(),
            masses: vec![mass; n],
        }
    }

    /// Distribution from integer weights (normalized by their sum).
    pub fn from_weights(weights: &[u64]) -> Self {
        let total: u64 = weights.iter().sum();
        assert!(total > 0 && weights.iter().all(|&w| w > 0));
        let pairs = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| {
                (
                    format!("x{i}"),
                    BigRational::new(BigInt::from(w), BigInt::from(total)),
                )
            })
            .collect();
        Dist::new(pairs).expect("weights are positive and normalized")
    }

    pub fn support_size(&self) -> usize {
        self.outcomes.len()
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn masses(&self) -> &[BigRational] {
        &self.masses
    }

    pub fn mass_of(&self, label: &str) -> Option<&BigRational> {
        self.outcomes
            .iter()
            .position(|l| l == label)
            .map(|i| &self.masses[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &BigRational)> {
        self.outcomes.iter().zip(self.masses.iter())
    }

    pub fn is_degenerate(&self) -> bool {
        self.outcomes.len() == 1
    }

    /// All masses equal.
    pub fn is_uniform(&self) -> bool {
        self.masses.iter().all(|m| m == &self.masses[0])
    }

    /// Masses in descending order (the majorization profile).
    pub fn sorted_masses(&self) -> Vec<BigRational> {
        let mut v = self.masses.clone();
        v.sort();
        v.reverse();
        v
    }

    /// Product distribution; outcome labels are canonical pair encodings.
    pub fn product(&self, other: &Dist) -> Dist {
        let mut outcomes = Vec::with_capacity(self.outcomes.len() * other.outcomes.len());
        let mut masses = Vec::with_capacity(outcomes.capacity());
        for (x, p) in self.iter() {
            for (y, q) in other.iter() {
                outcomes.push(tuple_label(x, y));
                masses.push(p * q);
            }
        }
        Dist { outcomes, masses }
    }

    /// `n`-fold tensor power, materialized. Use the additive entropy
    /// formulas instead when only entropies are needed.
    pub fn tensor_power(&self, n: u32) -> Dist {
        let mut acc = Dist::unit();
        for _ in 0..n {
            acc = acc.product(self);
        }
        acc
    }

    /// Isomorphism in the category: a bijective measure-preserving map
    /// exists iff the sorted mass multisets agree.
    pub fn is_isomorphic(&self, other: &Dist) -> bool {
        self.support_size() == other.support_size() && self.sorted_masses() == other.sorted_masses()
    }

    /// Witness bijection for isomorphic spaces: pairs of outcome indices,
    /// matched by mass with stable label tie-break.
    pub fn iso_witness(&self, other: &Dist) -> Option<Vec<(usize, usize)>> {
        if !self.is_isomorphic(other) {
            return None;
        }
        let key = |d: &Dist| {
            let mut idx: Vec<usize> = (0..d.support_size()).collect();
            idx.sort_by(|&a, &b| {
                d.masses[b]
                    .cmp(&d.masses[a])
                    .then_with(|| d.outcomes[a].cmp(&d.outcomes[b]))
            });
            idx
        };
        Some(key(self).into_iter().zip(key(other)).collect())
    }
}

impl Serialize for Dist {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            label: &'a str,
            mass: String,
        }
        #[derive(Serialize)]
        struct Wire<'a> {
            outcomes: Vec<Entry<'a>>,
        }
        Wire {
            outcomes: self
                .iter()
                .map(|(l, m)| Entry {
                    label: l,
                    mass: format_rational(m),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Dist {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Entry {
            label: String,
            mass: String,
        }
        #[derive(Deserialize)]
        struct Wire {
            outcomes: Vec<Entry>,
        }
        let wire = Wire::deserialize(d)?;
        let mut pairs = Vec::with_capacity(wire.outcomes.len());
        for e in wire.outcomes {
            let mass = parse_rational(&e.mass).map_err(D::Error::custom)?;
            pairs.push((e.label, mass));
        }
        Dist::new(pairs).map_err(D::Error::custom)
    }
}

/// A measure-preserving map between two distributions. The assignment is
/// stored as target indices aligned with the source outcomes; target
/// masses are re-checked to equal exact preimage sums (which also forces
/// surjectivity, since target masses are strictly positive).
#[derive(Debug, Clone, PartialEq)]
pub struct MPMap {
    source: Dist,
    target: Dist,
    assignment: Vec<usize>,
}

impl MPMap {
    /// Validating constructor from a label-level assignment.
    pub fn new(
        source: Dist,
        target: Dist,
        assign: &BTreeMap<String, String>,
    ) -> Result<Self, ProbError> {
        let mut assignment = Vec::with_capacity(source.support_size());
        for label in source.outcomes() {
            let image = assign
                .get(label)
                .ok_or_else(|| ProbError::MissingOutcome(label.clone()))?;
            let idx = target
                .outcomes()
                .iter()
                .position(|l| l == image)
                .ok_or_else(|| ProbError::MissingOutcome(image.clone()))?;
            assignment.push(idx);
        }
        Self::from_indices(source, target, assignment)
    }

    /// Validating constructor from target indices.
    pub fn from_indices(
        source: Dist,
        target: Dist,
        assignment: Vec<usize>,
    ) -> Result<Self, ProbError> {
        assert_eq!(assignment.len(), source.support_size());
        let mut sums = vec![BigRational::zero(); target.support_size()];
        for (i, &j) in assignment.iter().enumerate() {
            sums[j] += &source.masses()[i];
        }
        for (j, sum) in sums.iter().enumerate() {
            if sum != &target.masses()[j] {
                return Err(ProbError::NotMeasurePreserving(
                    target.outcomes()[j].clone(),
                ));
            }
        }
        Ok(MPMap {
            source,
            target,
            assignment,
        })
    }

    /// Identity map on a distribution.
    pub fn identity(d: &Dist) -> Self {
        MPMap {
            source: d.clone(),
            target: d.clone(),
            assignment: (0..d.support_size()).collect(),
        }
    }

    pub fn source(&self) -> &Dist {
        &self.source
    }

    pub fn target(&self) -> &Dist {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Image label of a source outcome.
    pub fn apply(&self, label: &str) -> Option<&str> {
        self.source
            .outcomes()
            .iter()
            .position(|l| l == label)
            .map(|i| self.target.outcomes()[self.assignment[i]].as_str())
    }

    /// Composition `g ∘ self`; measure preservation is re-verified.
    pub fn then(&self, g: &MPMap) -> Result<MPMap, ProbError> {
        if self.target != g.source {
            return Err(ProbError::ChainMismatch);
        }
        let assignment = self.assignment.iter().map(|&i| g.assignment[i]).collect();
        MPMap::from_indices(self.source.clone(), g.target.clone(), assignment)
    }

    pub fn is_identity_shape(&self) -> bool {
        self.source == self.target && self.assignment.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// Pushforward of a distribution along an arbitrary label function:
/// returns the induced map onto the image distribution, whose masses are
/// exact preimage sums.
pub fn pushforward<F>(p: &Dist, g: F) -> MPMap
where
    F: Fn(&str) -> String,
{
    let mut image: Vec<String> = Vec::new();
    let mut sums: Vec<BigRational> = Vec::new();
    let mut assignment = Vec::with_capacity(p.support_size());
    for (label, mass) in p.iter() {
        let y = g(label);
        let idx = match image.iter().position(|l| l == &y) {
            Some(i) => i,
            None => {
                image.push(y);
                sums.push(BigRational::zero());
                image.len() - 1
            }
        };
        sums[idx] += mass;
        assignment.push(idx);
    }
    let target = Dist {
        outcomes: image,
        masses: sums,
    };
    MPMap {
        source: p.clone(),
        target,
        assignment,
    }
}

/// A random variable over a base space: a measure-preserving map whose
/// source is the base.
#[derive(Debug, Clone, PartialEq)]
pub struct RandVar {
    map: MPMap,
}

impl RandVar {
    pub fn new(map: MPMap) -> Self {
        RandVar { map }
    }

    /// The variable `id_P`, distributed as the base itself.
    pub fn identity(base: &Dist) -> Self {
        RandVar {
            map: MPMap::identity(base),
        }
    }

    /// Constant (degenerate) variable over the base.
    pub fn constant(base: &Dist) -> Self {
        RandVar {
            map: pushforward(base, |_| "*".to_string()),
        }
    }

    /// Variable determined by an arbitrary label function on the base.
    pub fn from_fn<F>(base: &Dist, g: F) -> Self
    where
        F: Fn(&str) -> String,
    {
        RandVar {
            map: pushforward(base, g),
        }
    }

    pub fn base(&self) -> &Dist {
        self.map.source()
    }

    /// Distribution of the variable (codomain of the map).
    pub fn codomain(&self) -> &Dist {
        self.map.target()
    }

    pub fn map(&self) -> &MPMap {
        &self.map
    }

    /// Joint random variable: the image of the pairing, the categorical
    /// product in the category of variables over the shared base.
    pub fn joint(&self, other: &RandVar) -> Result<RandVar, ProbError> {
        if self.base() != other.base() {
            return Err(ProbError::BaseMismatch);
        }
        let a = self.map.clone();
        let b = other.map.clone();
        let joint = pushforward(self.base(), |label| {
            let x = a.apply(label).expect("total on base");
            let y = b.apply(label).expect("total on base");
            tuple_label(x, y)
        });
        Ok(RandVar { map: joint })
    }

    /// Projection maps from the joint codomain back to each factor,
    /// witnessing the product diagram.
    pub fn joint_projections(&self, other: &RandVar) -> Result<(RandVar, MPMap, MPMap), ProbError> {
        let joint = self.joint(other)?;
        // map each joint outcome to the outcome of self / other it came from
        let mut to_a: BTreeMap<String, String> = BTreeMap::new();
        let mut to_b: BTreeMap<String, String> = BTreeMap::new();
        for label in self.base().outcomes() {
            let j = joint.map.apply(label).expect("total").to_string();
            to_a.insert(j.clone(), self.map.apply(label).expect("total").to_string());
            to_b.insert(j, other.map.apply(label).expect("total").to_string());
        }
        let pa = MPMap::new(joint.codomain().clone(), self.codomain().clone(), &to_a)?;
        let pb = MPMap::new(joint.codomain().clone(), other.codomain().clone(), &to_b)?;
        Ok((joint, pa, pb))
    }
}
