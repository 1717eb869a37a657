//! Monoid semirings `ℕ₀[x;M]` and monoid algebras `ℚ[x;M]` over rank-one
//! exponent monoids, with the irreducibility and relation machinery used to
//! rule out pure irreducibles.

mod atoms;
mod numerical;
mod poly;
mod witness;

pub use atoms::{
    additive_divisor_closed, case1_relation, is_additive_atom, natural_atom_test, product_relation_fixture, AtomTest,
    PolyRelation, PurityLedger,
};
pub use numerical::NumericalMonoid;
pub use poly::{poly_divide_exact, poly_mul, SemiringPolynomial};
pub use witness::{
    algebra_witness, binomial_irreducibility_check, coprime_pairs, witness_sweep, witness_sweep_sequential,
    AlgebraWitness,
};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{common_denominator, Rational};
use crate::monoid::{Element, Monoid, MonoidPresentation};

/// Coefficient semiring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoeffDomain {
    #[serde(rename = "N")]
    Natural,
    #[serde(rename = "Q")]
    Rational,
}

/// Exponent monoid `M ⊆ ℚ≥0` of a monoid semiring.
#[derive(Debug, Clone)]
pub enum ExponentMonoid {
    Naturals,
    Numerical(NumericalMonoid),
    Puiseux(Box<Monoid>),
}

impl PartialEq for ExponentMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.generators() == other.generators()
    }
}

impl Eq for ExponentMonoid {}

impl ExponentMonoid {
    pub fn numerical(generators: &[u64]) -> Result<Self> {
        Ok(Self::Numerical(NumericalMonoid::new(generators)?))
    }

    /// A rank-one presentation with positive generators. Integer generators
    /// with gcd 1 give a numerical monoid; anything else is auto-reduced.
    pub fn puiseux(p: &MonoidPresentation) -> Result<Self> {
        if p.dim() != 1 {
            return Err(Error::Domain(format!("exponent monoid must have dimension 1, got {}", p.dim())));
        }
        if let Some(i) = p.generators().iter().position(|g| !g[0].is_positive()) {
            return Err(Error::InvalidGenerator { index: i });
        }
        let ints: Option<Vec<u64>> = p
            .generators()
            .iter()
            .map(|g| g[0].is_integer().then(|| g[0].to_integer().to_u64()).flatten())
            .collect();
        if let Some(ints) = ints {
            if let Ok(m) = NumericalMonoid::new(&ints) {
                return Ok(Self::Numerical(m));
            }
        }
        Ok(Self::Puiseux(Box::new(Monoid::reduced(p)?)))
    }

    /// Generators, or `None` for `ℕ₀`.
    pub fn generators(&self) -> Option<Vec<Rational>> {
        match self {
            Self::Naturals => None,
            Self::Numerical(m) => Some(
                m.generators()
                    .iter()
                    .map(|&g| Rational::from_integer(g.into()))
                    .collect(),
            ),
            Self::Puiseux(m) => Some(m.presentation().generators().iter().map(|g| g[0].clone()).collect()),
        }
    }

    pub fn presentation(&self) -> Option<MonoidPresentation> {
        match self {
            Self::Puiseux(m) => Some(m.presentation().clone()),
            _ => MonoidPresentation::puiseux(&self.generators()?).ok(),
        }
    }

    pub fn contains(&self, e: &Rational) -> bool {
        if e.is_negative() {
            return false;
        }
        if e.is_zero() {
            return true;
        }
        match self {
            Self::Naturals => e.is_integer(),
            Self::Numerical(m) => e.is_integer() && e.to_integer().to_i64().is_some_and(|n| m.contains(n)),
            Self::Puiseux(m) => m.contains(&Element(vec![e.clone()])).unwrap_or(false),
        }
    }

    /// Elements of `M` in `[0, bound]`, ascending.
    pub fn elements_up_to(&self, bound: &Rational) -> Vec<Rational> {
        if bound.is_negative() {
            return Vec::new();
        }
        let gens = self.generators().unwrap_or_default();
        let d = common_denominator(&gens);
        let top = (bound * Rational::from_integer(d.clone())).floor().to_integer();
        let mut out = Vec::new();
        let mut t = BigInt::zero();
        while t <= top {
            let e = Rational::new(t.clone(), d.clone());
            if self.contains(&e) {
                out.push(e);
            }
            t += 1;
        }
        out
    }
}
