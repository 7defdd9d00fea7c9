//! Exact computation with exponential Puiseux monoids `M_{r,S} = <r^s : s in S>`.
//!
//! * [`arith`]: reduced big rationals.
//! * [`monoid`]: gap rules, exponent sets, atoms and the atomicity trichotomy.
//! * [`factorization`]: factorizations, rewriting normal forms, maximum-length
//!   carries, bounded enumeration and length sets.
//! * [`membership`]: membership and divisibility with honest unresolved results.
//! * [`accp`]: the ACCP/BFP/FFP classifier, witness chains and the
//!   counterexample construction.
//! * [`semiring`]: numerical monoids, exponent sets that yield semirings, and the
//!   multiplicative monoid.
//! * [`oracle`]: brute-force enumeration used to validate the fast paths.
//! * [`cli`]: the JSON command-line front end.

pub mod accp;
pub mod arith;
pub mod cli;
pub mod error;
pub mod factorization;
pub mod membership;
pub mod monoid;
pub mod oracle;
pub mod semiring;

pub use accp::{Classification, Evidence, Rule, Verdict};
pub use arith::Ratio;
pub use error::{Error, Result};
pub use factorization::Factorization;
pub use membership::MembershipResult;
pub use monoid::{AtomicityKind, AtomicityVerdict, DeltaSpec, ExpMonoid, Tail};
