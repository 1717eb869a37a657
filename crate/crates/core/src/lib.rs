//! Factorization invariants of finitely generated cancellative commutative
//! monoids and of monoid semirings.
//!
//! A monoid is given by rational generator vectors ([`MonoidPresentation`]).
//! Everything else is derived from the integer kernel of the generator matrix:
//! unique, length- and half-factoriality, prime and pure (purely long, purely
//! short) atoms, and master factorization relations. Bounded enumeration is
//! available as an independent cross-check.

pub mod classify;
pub mod cli;
pub mod construct;
pub mod error;
pub mod json;
pub mod linalg;
pub mod monoid;
pub mod par;
pub mod semiring;

pub use classify::{
    classify, master_relation, prime_atoms, pure_atom_labels, relation_evidence, AtomLabel,
    ClassificationReport, FactorizationRelation, Witness, WitnessClaim,
};
pub use error::{Error, Result};
pub use linalg::Rational;
pub use monoid::{
    atomic_divisors, enumerate_factorizations, length_set, normalize_atoms, validate_presentation,
    Element, FactorizationVector, Grading, Monoid, MonoidPresentation, NormalizeMode,
};
