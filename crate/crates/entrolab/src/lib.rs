//! Exact-arithmetic toolkit for entropy orders.
//!
//! Everything in this crate computes over arbitrary-precision rationals;
//! entropy values live in the exact fragment spanned by logarithms of
//! primes, so equalities are decided symbolically and strict inequalities
//! by interval refinement. The pieces:
//!
//! - [`prob`]: finite probability spaces with strictly positive rational
//!   masses, measure-preserving maps, products, joints and pushforwards.
//! - [`exactlog`]: the value space `Σ cᵖ·ln p` with exact sign decisions,
//!   and the Hartley/Shannon pair with its product order.
//! - [`entropy`]: the entropy functionals themselves.
//! - [`majorization`]: majorization, Robin-Hood transfer decomposition,
//!   the `≿₀₁` order and a bounded catalytic witness search.
//! - [`ordmon`]: ordered commutative monoids: presented monoids with a
//!   bounded rewrite search, Grothendieck differences, catalytic
//!   regularization and integral-closedness checking.
//! - [`categories`]: the example categories (inhabited sets, vector
//!   spaces over a prime field, sets-opposite, the augmented simplex
//!   category, finite abelian groups) with their canonical entropies and
//!   the connecting naturality squares.
//! - [`conditional`]: conditional probability spaces, the conditional
//!   product, conditional Shannon entropy, chain rule and submodularity.
//! - [`lprob`]: truncated geometric families and ρ-summability brackets.
//! - [`suites`]: the seeded verification suites run by the CLI and the
//!   acceptance tests.
//!
//! ```
//! use entrolab::entropy::{entropy_pair, shannon};
//! use entrolab::exactlog::{LogReal, PairCmp};
//! use entrolab::majorization::{majorizes, order01};
//! use entrolab::prob::Dist;
//!
//! // masses are exact rationals; the entropy is an exact log value
//! let p = Dist::from_weights(&[2, 1, 1]); // 1/2, 1/4, 1/4
//! assert_eq!(shannon(&p).render(), "3/2*log(2)");
//!
//! // the (Hartley, Shannon) pair under the product order
//! let pair = entropy_pair(&p);
//! assert_eq!(pair.h0, LogReal::log_of_uint(3));
//! assert_eq!(pair.cmp_pair(&entropy_pair(&Dist::uniform(2))), PairCmp::Gt);
//!
//! // exact majorization and the two-entropy order
//! assert!(majorizes(&Dist::uniform(2), &Dist::uniform(4)));
//! assert!(order01(&Dist::uniform(4), &Dist::uniform(2)));
//! ```

#![forbid(unsafe_code)]

pub mod categories;
pub mod conditional;
pub mod entropy;
pub mod exactlog;
mod factor;
pub mod gen;
mod lnseries;
pub mod lprob;
pub mod majorization;
pub mod numfmt;
pub mod ordmon;
pub mod prob;
pub mod suites;

pub use exactlog::{EntropyPair, LogReal, PairCmp};
pub use prob::{Dist, MPMap, RandVar};
