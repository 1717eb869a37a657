//! Finitely generated reduced monoids given by rational generator vectors.

mod factorize;
mod presentation;

pub use factorize::{atomic_divisors, enumerate_factorizations, length_set, FactorizationTable};
pub use presentation::{
    normalize_atoms, validate_presentation, Element, FactorizationVector, Grading, Monoid,
    MonoidPresentation, NormalizeMode,
};
