//! Conditional probability spaces over a fixed target, the conditional
//! product, conditional Shannon entropy, the chain rule, and the
//! submodularity family used to separate the Shannon component.

use crate::entropy::{hartley, shannon};
use crate::exactlog::LogReal;
use crate::prob::{pushforward, tuple_label, Dist, MPMap, ProbError, RandVar};
use num::bigint::BigInt;
use num::rational::BigRational;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CondError {
    #[error("conditional spaces have different targets")]
    TargetMismatch,
    #[error("maps do not form a composable chain")]
    ChainMismatch,
    #[error("the triangle does not commute")]
    TriangleBroken,
    #[error("epsilon must satisfy 0 < eps < 1/4")]
    RangeError,
    #[error(transparent)]
    Prob(#[from] ProbError),
}

/// A conditional probability space: a measure-preserving map `f: P → Q`
/// regarded as an object over `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct CondObj {
    pub map: MPMap,
}

impl CondObj {
    pub fn new(map: MPMap) -> Self {
        CondObj { map }
    }

    pub fn total(&self) -> &Dist {
        self.map.source()
    }

    pub fn target(&self) -> &Dist {
        self.map.target()
    }
}

/// A conditional random variable over `f: P → Q`: a commuting triangle
/// `P → A → Q` whose long edge is `f`.
#[derive(Debug, Clone)]
pub struct CondRV {
    pub base: CondObj,
    pub mid: MPMap,
    pub down: MPMap,
}

impl CondRV {
    /// Validating constructor: `down ∘ mid` must equal the base map.
    pub fn new(base: CondObj, mid: MPMap, down: MPMap) -> Result<Self, CondError> {
        let composite = mid.then(&down).map_err(|_| CondError::ChainMismatch)?;
        if composite != base.map {
            return Err(CondError::TriangleBroken);
        }
        Ok(CondRV { base, mid, down })
    }

    pub fn codomain(&self) -> &Dist {
        self.mid.target()
    }
}

/// Conditional product of two spaces over the same target:
/// outcomes are agreeing pairs with mass `P₁(x₁)·P₂(x₂)/Q(f₁(x₁))`.
pub fn conditional_product(f1: &CondObj, f2: &CondObj) -> Result<CondObj, CondError> {
    if f1.target() != f2.target() {
        return Err(CondError::TargetMismatch);
    }
    let q = f1.target();
    let mut pairs = Vec::new();
    let mut assign = std::collections::BTreeMap::new();
    for (x1, m1) in f1.total().iter() {
        let y1 = f1.map.apply(x1).expect("total");
        for (x2, m2) in f2.total().iter() {
            let y2 = f2.map.apply(x2).expect("total");
            if y1 != y2 {
                continue;
            }
            let qy = q.mass_of(y1).expect("target outcome");
            let label = tuple_label(x1, x2);
            assign.insert(label.clone(), y1.to_string());
            pairs.push((label, m1 * m2 / qy));
        }
    }
    let total = Dist::new(pairs)?;
    let map = MPMap::new(total, q.clone(), &assign)?;
    Ok(CondObj::new(map))
}

/// Conditional Shannon entropy of a conditional random variable:
/// `H₁(A) − H₁(Q)` for the triangle `P → A → Q`.
pub fn cond_entropy(x: &CondRV) -> LogReal {
    shannon(x.codomain()).sub(&shannon(x.base.target()))
}

/// Certificate for one chain-rule identity: the three differences and
/// the exact identity between them.
#[derive(Debug, Clone, Serialize)]
pub struct ChainCertificate {
    pub h_top: LogReal,
    pub h_mid: LogReal,
    pub h_bot: LogReal,
    pub lhs: LogReal,
    pub rhs: LogReal,
    pub holds: bool,
}

/// Chain rule along a composable tower `K → P → Q`: the conditional
/// entropies telescope, `(H(K)−H(P)) + (H(P)−H(Q)) = H(K)−H(Q)`,
/// checked exactly. The identity is forced by construction, so the
/// check doubles as an arithmetic self-test; a certificate with the
/// three entropies is returned.
pub fn chain_rule_check(f: &MPMap, g: &MPMap) -> Result<ChainCertificate, CondError> {
    if f.target() != g.source() {
        return Err(CondError::ChainMismatch);
    }
    let h_top = shannon(f.source());
    let h_mid = shannon(f.target());
    let h_bot = shannon(g.target());
    let lhs = h_top.sub(&h_mid).add(&h_mid.sub(&h_bot));
    let rhs = h_top.sub(&h_bot);
    let holds = lhs == rhs;
    Ok(ChainCertificate {
        h_top,
        h_mid,
        h_bot,
        lhs,
        rhs,
        holds,
    })
}

/// The five-point family over `{0,1}³` whose submodularity deficit
/// separates the Shannon component: masses `1/4, 1/4, 1/4, 1/4−ε, ε` on
/// `(0,0,0), (0,1,0), (1,0,0), (1,1,0), (1,1,1)`.
pub fn epsilon_family(eps: &BigRational) -> Result<Dist, CondError> {
    let quarter = BigRational::new(BigInt::from(1), BigInt::from(4));
    if eps <= &BigRational::from_integer(BigInt::from(0)) || eps >= &quarter {
        return Err(CondError::RangeError);
    }
    Ok(Dist::new(vec![
        ("(0,0,0)".into(), quarter.clone()),
        ("(0,1,0)".into(), quarter.clone()),
        ("(1,0,0)".into(), quarter.clone()),
        ("(1,1,0)".into(), &quarter - eps),
        ("(1,1,1)".into(), eps.clone()),
    ])?)
}

/// The four distributions of the submodularity diagram for a
/// distribution over coordinate triples `(x,y,z)`: `A` from
/// `(x,y,z) ↦ (z,x)`, `B` from `(x,y,z) ↦ (y,z)`, `Q` from
/// `(x,y,z) ↦ z`.
pub struct SubmodularityInstance {
    pub p: Dist,
    pub a: Dist,
    pub b: Dist,
    pub q: Dist,
}

fn coord(label: &str, i: usize) -> String {
    let inner = label
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .expect("triple label");
    inner
        .split(',')
        .nth(i)
        .expect("three coordinates")
        .to_string()
}

pub fn submodularity_instance(p: &Dist) -> SubmodularityInstance {
    let a = pushforward(p, |l| tuple_label(&coord(l, 2), &coord(l, 0)));
    let b = pushforward(p, |l| tuple_label(&coord(l, 1), &coord(l, 2)));
    let q = pushforward(p, |l| coord(l, 2));
    SubmodularityInstance {
        p: p.clone(),
        a: a.target().clone(),
        b: b.target().clone(),
        q: q.target().clone(),
    }
}

/// Exact submodularity deficit `H₁(A)+H₁(B)−H₁(P)−H₁(Q)`; the
/// inequality holds when its sign is nonnegative.
pub fn submodularity_deficit(inst: &SubmodularityInstance) -> LogReal {
    shannon(&inst.a)
        .add(&shannon(&inst.b))
        .sub(&shannon(&inst.p))
        .sub(&shannon(&inst.q))
}

pub fn submodularity_check(p: &Dist) -> bool {
    submodularity_deficit(&submodularity_instance(p)).sign() >= 0
}

/// Hartley entropies of the four distributions in the instance.
pub fn submodularity_hartley_table(inst: &SubmodularityInstance) -> [LogReal; 4] {
    [
        hartley(&inst.p),
        hartley(&inst.a),
        hartley(&inst.b),
        hartley(&inst.q),
    ]
}

/// Build a conditional random variable from a tower `P → A → Q` given
/// as two maps.
pub fn cond_rv_from_tower(mid: MPMap, down: MPMap) -> Result<CondRV, CondError> {
    let base_map = mid.then(&down).map_err(|_| CondError::ChainMismatch)?;
    CondRV::new(CondObj::new(base_map), mid, down)
}

/// Joint of two conditional random variables over the same base object:
/// the joint of the mid maps, with the induced map down to the target.
pub fn cond_joint(x: &CondRV, y: &CondRV) -> Result<CondRV, CondError> {
    if x.base.map != y.base.map {
        return Err(CondError::TargetMismatch);
    }
    let rx = RandVar::new(x.mid.clone());
    let ry = RandVar::new(y.mid.clone());
    let joint = rx.joint(&ry)?;
    // the induced map J → Q: every joint class lies inside a fiber of f
    let mut down_assign = std::collections::BTreeMap::new();
    for label in x.base.total().outcomes() {
        let j = joint.map().apply(label).expect("total").to_string();
        let q = x.base.map.apply(label).expect("total").to_string();
        down_assign.insert(j, q);
    }
    let down = MPMap::new(
        joint.codomain().clone(),
        x.base.target().clone(),
        &down_assign,
    )?;
    CondRV::new(x.base.clone(), joint.map().clone(), down)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlog::LogReal;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn first_bit_on_uniform4() -> CondObj {
        let labels = ["00", "01", "10", "11"];
        let p = Dist::new(labels.iter().map(|l| (l.to_string(), rat(1, 4))).collect()).unwrap();
        CondObj::new(pushforward(&p, |l| l[0..1].to_string()))
    }

    #[test]
    fn conditional_product_over_degenerate_is_plain_product() {
        let p1 = Dist::from_weights(&[1, 1]);
        let p2 = Dist::from_weights(&[2, 1]);
        let f1 = CondObj::new(pushforward(&p1, |_| "*".into()));
        let f2 = CondObj::new(pushforward(&p2, |_| "*".into()));
        let prod = conditional_product(&f1, &f2).unwrap();
        assert!(prod.total().is_isomorphic(&p1.product(&p2)));
    }

    #[test]
    fn conditional_product_same_first_bit() {
        let f = first_bit_on_uniform4();
        let prod = conditional_product(&f, &f).unwrap();
        // support: pairs agreeing on the first bit, 8 outcomes of mass 1/8
        assert_eq!(prod.total().support_size(), 8);
        assert!(prod.total().is_uniform());
        assert_eq!(prod.total().masses()[0], rat(1, 8));
    }

    #[test]
    fn conditional_product_unit_law() {
        let f = first_bit_on_uniform4();
        let q = f.target().clone();
        let id = CondObj::new(MPMap::identity(&q));
        let prod = conditional_product(&id, &f).unwrap();
        assert!(prod.total().is_isomorphic(f.total()));
    }

    #[test]
    fn conditional_product_target_mismatch() {
        let f = first_bit_on_uniform4();
        let g = CondObj::new(MPMap::identity(&Dist::uniform(3)));
        assert_eq!(
            conditional_product(&f, &g).unwrap_err(),
            CondError::TargetMismatch
        );
    }

    #[test]
    fn cond_entropy_examples() {
        // A = Q: x = f gives zero
        let f = first_bit_on_uniform4();
        let x = CondRV::new(f.clone(), f.map.clone(), MPMap::identity(f.target())).unwrap();
        assert!(cond_entropy(&x).is_zero());
        // X uniform(4), Y = parity: H(X|Y) = log 4 − log 2 = log 2
        let y = CondRV::new(f.clone(), MPMap::identity(f.total()), f.map.clone()).unwrap();
        assert_eq!(cond_entropy(&y), LogReal::log_of_uint(2));
        // degenerate target: plain entropy
        let p = Dist::from_weights(&[2, 1, 1]);
        let to_point = pushforward(&p, |_| "*".into());
        let z = CondRV::new(
            CondObj::new(to_point.clone()),
            MPMap::identity(&p),
            to_point,
        )
        .unwrap();
        assert_eq!(cond_entropy(&z), shannon(&p));
    }

    #[test]
    fn cond_entropy_nonnegative() {
        let f = first_bit_on_uniform4();
        let x = CondRV::new(f.clone(), MPMap::identity(f.total()), f.map.clone()).unwrap();
        assert!(cond_entropy(&x).sign() >= 0);
    }

    #[test]
    fn triangle_validation() {
        let f = first_bit_on_uniform4();
        // wrong down map: constant instead of identity on Q
        let bad_down = pushforward(f.target(), |_| "*".into());
        assert_eq!(
            CondRV::new(f.clone(), f.map.clone(), bad_down).unwrap_err(),
            CondError::TriangleBroken
        );
    }

    #[test]
    fn chain_rule_examples() {
        // uniform(8) → uniform(4) → uniform(2)
        let k = Dist::uniform(8);
        let f = pushforward(&k, |l| format!("{}", l[1..].parse::<usize>().unwrap() % 4));
        let g = pushforward(f.target(), |l| {
            format!("{}", l.parse::<usize>().unwrap() % 2)
        });
        let cert = chain_rule_check(&f, &g).unwrap();
        assert!(cert.holds);
        assert_eq!(cert.h_top.sub(&cert.h_mid), LogReal::log_of_uint(2));
        // degenerate chain P → P → P
        let p = Dist::from_weights(&[3, 1]);
        let cert = chain_rule_check(&MPMap::identity(&p), &MPMap::identity(&p)).unwrap();
        assert!(cert.holds);
        assert!(cert.lhs.is_zero());
        // mismatched chain
        assert_eq!(
            chain_rule_check(&MPMap::identity(&p), &MPMap::identity(&Dist::uniform(3)))
                .unwrap_err(),
            CondError::ChainMismatch
        );
    }

    #[test]
    fn epsilon_family_shape() {
        let p = epsilon_family(&rat(1, 8)).unwrap();
        assert_eq!(p.support_size(), 5);
        assert_eq!(hartley(&p), LogReal::log_of_uint(5));
        assert_eq!(
            epsilon_family(&rat(1, 4)).unwrap_err(),
            CondError::RangeError
        );
        assert_eq!(
            epsilon_family(&rat(0, 1)).unwrap_err(),
            CondError::RangeError
        );
        // ε = 1/16: the z-marginal has masses (1−ε, ε)
        let p = epsilon_family(&rat(1, 16)).unwrap();
        let inst = submodularity_instance(&p);
        assert_eq!(inst.q.sorted_masses(), vec![rat(15, 16), rat(1, 16)]);
    }

    #[test]
    fn submodularity_on_epsilon_family() {
        for (n, d) in [(1i64, 8i64), (1, 16), (1, 32)] {
            let p = epsilon_family(&rat(n, d)).unwrap();
            let inst = submodularity_instance(&p);
            let [h0p, h0a, h0b, h0q] = submodularity_hartley_table(&inst);
            assert_eq!(h0p, LogReal::log_of_uint(5));
            assert_eq!(h0a, LogReal::log_of_uint(3));
            assert_eq!(h0b, LogReal::log_of_uint(3));
            assert_eq!(h0q, LogReal::log_of_uint(2));
            // strict inequality at every tested ε
            assert_eq!(submodularity_deficit(&inst).sign(), 1);
        }
    }

    #[test]
    fn submodularity_equality_for_independent_coordinates() {
        // independent triple: product of three coins relabeled as triples
        let cube = Dist::uniform(2)
            .product(&Dist::uniform(2))
            .product(&Dist::uniform(2));
        // labels are ((a,b),c); flatten to (a,b,c)
        let flat = pushforward(&cube, |l| {
            let chars: Vec<char> = l.chars().filter(|c| *c == '0' || *c == '1').collect();
            format!("({},{},{})", chars[0], chars[1], chars[2])
        });
        let inst = submodularity_instance(flat.target());
        assert!(submodularity_deficit(&inst).is_zero());
    }

    #[test]
    fn deficit_shrinks_along_epsilon() {
        let d8 = submodularity_deficit(&submodularity_instance(
            &epsilon_family(&rat(1, 8)).unwrap(),
        ));
        let d16 = submodularity_deficit(&submodularity_instance(
            &epsilon_family(&rat(1, 16)).unwrap(),
        ));
        let d32 = submodularity_deficit(&submodularity_instance(
            &epsilon_family(&rat(1, 32)).unwrap(),
        ));
        assert_eq!(d8.sub(&d16).sign(), 1);
        assert_eq!(d16.sub(&d32).sign(), 1);
    }

    #[test]
    fn conditional_product_symmetric_and_associative_up_to_iso() {
        let f = first_bit_on_uniform4();
        // a second space over the same target: masses must push to (1/2, 1/2)
        let p2 = Dist::from_weights(&[2, 1, 1]);
        let g = CondObj::new(
            MPMap::new(
                p2.clone(),
                f.target().clone(),
                &p2.outcomes()
                    .iter()
                    .map(|l| {
                        (
                            l.clone(),
                            if l == "x0" {
                                "0".to_string()
                            } else {
                                "1".to_string()
                            },
                        )
                    })
                    .collect(),
            )
            .unwrap(),
        );
        let fg = conditional_product(&f, &g).unwrap();
        let gf = conditional_product(&g, &f).unwrap();
        assert!(fg.total().is_isomorphic(gf.total()));
        let h = CondObj::new(MPMap::identity(f.target()));
        let left = conditional_product(&conditional_product(&f, &g).unwrap(), &h).unwrap();
        let right = conditional_product(&f, &conditional_product(&g, &h).unwrap()).unwrap();
        assert!(left.total().is_isomorphic(right.total()));
    }

    #[test]
    fn cond_joint_subadditivity_instance() {
        let f = first_bit_on_uniform4();
        let x = CondRV::new(f.clone(), MPMap::identity(f.total()), f.map.clone()).unwrap();
        let y = CondRV::new(f.clone(), f.map.clone(), MPMap::identity(f.target())).unwrap();
        let j = cond_joint(&x, &y).unwrap();
        let lhs = cond_entropy(&x).add(&cond_entropy(&y));
        let rhs = cond_entropy(&j);
        assert!(lhs.sub(&rhs).sign() >= 0);
    }
}
