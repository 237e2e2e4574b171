//! Property tests for the algebraic laws the library is built around:
//! exact-log vector-space axioms, category laws of the probability
//! constructions, and order-theoretic properties of majorization.

use entrolab::entropy::{combo_entropy, hartley, shannon};
use entrolab::exactlog::LogReal;
use entrolab::majorization::{majorizes, order01, replay_transfers, robin_hood_decompose};
use entrolab::prob::{pushforward, Dist, RandVar};
use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::Zero;
use proptest::prelude::*;

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn arb_logreal() -> impl Strategy<Value = LogReal> {
    proptest::collection::vec((0usize..PRIMES.len(), arb_rational()), 0..5).prop_map(|terms| {
        LogReal::from_terms(
            terms
                .into_iter()
                .map(|(i, c)| (BigUint::from(PRIMES[i]), c)),
        )
    })
}

fn arb_weights() -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::vec(1u64..=16, 1..=6)
}

fn arb_dist() -> impl Strategy<Value = Dist> {
    arb_weights().prop_map(|w| Dist::from_weights(&w))
}

proptest! {
    #[test]
    fn logreal_addition_commutes_and_associates(
        x in arb_logreal(), y in arb_logreal(), z in arb_logreal()
    ) {
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
    }

    #[test]
    fn logreal_scaling_distributes(
        x in arb_logreal(), y in arb_logreal(), a in arb_rational(), b in arb_rational()
    ) {
        prop_assert_eq!(x.add(&y).scale(&a), x.scale(&a).add(&y.scale(&a)));
        prop_assert_eq!(x.scale(&(&a + &b)), x.scale(&a).add(&x.scale(&b)));
        prop_assert_eq!(x.scale(&(&a * &b)), x.scale(&a).scale(&b));
    }

    #[test]
    fn logreal_subtraction_cancels_symbolically(x in arb_logreal()) {
        let d = x.sub(&x);
        prop_assert!(d.is_zero());
        prop_assert_eq!(d.sign(), 0);
    }

    #[test]
    fn logreal_sign_is_zero_iff_empty(x in arb_logreal()) {
        prop_assert_eq!(x.sign() == 0, x.terms().is_empty());
    }

    #[test]
    fn logreal_render_parse_round_trip(x in arb_logreal()) {
        prop_assert_eq!(LogReal::parse(&x.render()).unwrap(), x);
    }

    #[test]
    fn log_turns_products_into_sums(
        n1 in 1u64..500, d1 in 1u64..500, n2 in 1u64..500, d2 in 1u64..500
    ) {
        let a = BigRational::new(BigInt::from(n1), BigInt::from(d1));
        let b = BigRational::new(BigInt::from(n2), BigInt::from(d2));
        let lhs = LogReal::log_of_rational(&(&a * &b)).unwrap();
        let rhs = LogReal::log_of_rational(&a)
            .unwrap()
            .add(&LogReal::log_of_rational(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dist_json_round_trip(d in arb_dist()) {
        let text = serde_json::to_string(&d).unwrap();
        let back: Dist = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn product_is_symmetric_and_associative_up_to_iso(
        a in arb_dist(), b in arb_dist(), c in arb_dist()
    ) {
        prop_assert!(a.product(&b).is_isomorphic(&b.product(&a)));
        prop_assert!(a.product(&b).product(&c).is_isomorphic(&a.product(&b.product(&c))));
        prop_assert!(a.product(&Dist::unit()).is_isomorphic(&a));
    }

    #[test]
    fn entropy_additive_on_products(a in arb_dist(), b in arb_dist()) {
        let p = a.product(&b);
        prop_assert_eq!(hartley(&p), hartley(&a).add(&hartley(&b)));
        prop_assert_eq!(shannon(&p), shannon(&a).add(&shannon(&b)));
    }

    #[test]
    fn combo_entropy_monotone_under_merges(
        w in arb_weights(), splits in proptest::collection::vec(0u8..4, 6),
        an in 0i64..8, ad in 1i64..4, bn in 0i64..8, bd in 1i64..4
    ) {
        let p = Dist::from_weights(&w);
        let f = pushforward(&p, |l| {
            let i: usize = l[1..].parse().unwrap();
            format!("c{}", splits[i % splits.len()])
        });
        let a = BigRational::new(BigInt::from(an), BigInt::from(ad));
        let b = BigRational::new(BigInt::from(bn), BigInt::from(bd));
        let d = combo_entropy(&p, &a, &b).sub(&combo_entropy(f.target(), &a, &b));
        prop_assert!(d.sign() >= 0);
    }

    #[test]
    fn combo_entropy_additive_on_products(
        wa in arb_weights(), wb in arb_weights(),
        an in 0i64..8, ad in 1i64..4, bn in 0i64..8, bd in 1i64..4
    ) {
        let p = Dist::from_weights(&wa);
        let q = Dist::from_weights(&wb);
        let a = BigRational::new(BigInt::from(an), BigInt::from(ad));
        let b = BigRational::new(BigInt::from(bn), BigInt::from(bd));
        let lhs = combo_entropy(&p.product(&q), &a, &b);
        let rhs = combo_entropy(&p, &a, &b).add(&combo_entropy(&q, &a, &b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn joint_entropy_subadditive(
        w in arb_weights(),
        fx in proptest::collection::vec(0u8..3, 6),
        fy in proptest::collection::vec(0u8..3, 6),
        an in 0i64..8, ad in 1i64..4, bn in 0i64..8, bd in 1i64..4
    ) {
        let p = Dist::from_weights(&w);
        let x = RandVar::from_fn(&p, |l| {
            let i: usize = l[1..].parse().unwrap();
            format!("x{}", fx[i % fx.len()])
        });
        let y = RandVar::from_fn(&p, |l| {
            let i: usize = l[1..].parse().unwrap();
            format!("y{}", fy[i % fy.len()])
        });
        let j = x.joint(&y).unwrap();
        for h in [hartley as fn(&Dist) -> LogReal, shannon] {
            let d = h(x.codomain()).add(&h(y.codomain())).sub(&h(j.codomain()));
            prop_assert!(d.sign() >= 0);
        }
        // nonnegative combinations stay subadditive
        let a = BigRational::new(BigInt::from(an), BigInt::from(ad));
        let b = BigRational::new(BigInt::from(bn), BigInt::from(bd));
        let d = combo_entropy(x.codomain(), &a, &b)
            .add(&combo_entropy(y.codomain(), &a, &b))
            .sub(&combo_entropy(j.codomain(), &a, &b));
        prop_assert!(d.sign() >= 0);
    }

    #[test]
    fn majorization_is_reflexive_and_unit_maximal(d in arb_dist()) {
        prop_assert!(majorizes(&d, &d));
        prop_assert!(majorizes(&Dist::unit(), &d));
    }

    #[test]
    fn merge_targets_majorize_their_sources_never(
        w in arb_weights(), splits in proptest::collection::vec(0u8..3, 6)
    ) {
        // a merge concentrates mass, so the target majorizes the source
        let p = Dist::from_weights(&w);
        let f = pushforward(&p, |l| {
            let i: usize = l[1..].parse().unwrap();
            format!("c{}", splits[i % splits.len()])
        });
        prop_assert!(majorizes(f.target(), &p));
    }

    #[test]
    fn robin_hood_replay_is_exact(
        w in arb_weights(), splits in proptest::collection::vec(0u8..3, 6)
    ) {
        let p = Dist::from_weights(&w);
        let f = pushforward(&p, |l| {
            let i: usize = l[1..].parse().unwrap();
            format!("c{}", splits[i % splits.len()])
        });
        let q = f.target();
        let transfers = robin_hood_decompose(q, &p).unwrap();
        let n = p.support_size().max(q.support_size());
        prop_assert!(transfers.len() <= n - 1);
        let mut start = q.sorted_masses();
        let mut target = p.sorted_masses();
        start.resize(n, BigRational::zero());
        target.resize(n, BigRational::zero());
        prop_assert_eq!(replay_transfers(&start, &transfers), target);
    }

    #[test]
    fn order01_is_reflexive_and_transitive_on_merge_chains(
        w in arb_weights(),
        s1 in proptest::collection::vec(0u8..3, 6),
        s2 in proptest::collection::vec(0u8..2, 6)
    ) {
        let p = Dist::from_weights(&w);
        prop_assert!(order01(&p, &p));
        let f = pushforward(&p, |l| {
            let i: usize = l[1..].parse().unwrap();
            format!("c{}", s1[i % s1.len()])
        });
        let g = pushforward(f.target(), |l| {
            let i: usize = l[1..].parse().unwrap();
            format!("d{}", s2[i % s2.len()])
        });
        let q = f.target();
        let r = g.target();
        if order01(&p, q) && order01(q, r) {
            prop_assert!(order01(&p, r));
        }
    }
}
