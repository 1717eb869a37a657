//! Exact factorization verdicts read off the kernel lattice.
//!
//! Every relation `(z₁, z₂)` between factorizations of one element is the
//! split `(z⁺, z⁻)` of a kernel vector `z = z₁ − z₂`; irredundant relations are
//! exactly those splits. With `σ` the coordinate sum, `σ(z) = |z₁| − |z₂|`, so
//! length questions become sign conditions on `σ` over the lattice:
//!
//! * UFM: the lattice is zero.
//! * LFM: no nonzero lattice vector has `σ = 0` (rank 0, or rank 1 with
//!   `σ(b) ≠ 0`).
//! * HFM: `σ` vanishes on the lattice.
//! * atom `i` purely long: no lattice `z` with `zᵢ ≥ 1` and `σ(z) ≤ 0`; purely
//!   short symmetrically with `σ(z) ≥ 0`.
//!
//! The last two are homogeneous systems decided exactly by Fourier–Motzkin.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::json::{ser_bigint_rows, ser_bigints, ser_rationals};
use crate::linalg::{homogeneous_lp_witness, LatticeBasis, Rational};
use crate::monoid::{
    Element, FactorizationTable, FactorizationVector, Monoid, MonoidPresentation,
};
use crate::par::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum AtomLabel {
    Prime,
    PurelyLong,
    PurelyShort,
    Neither,
}

/// Two factorizations of one element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FactorizationRelation {
    pub left: FactorizationVector,
    pub right: FactorizationVector,
}

impl FactorizationRelation {
    pub fn new(left: FactorizationVector, right: FactorizationVector) -> Self {
        Self { left, right }
    }

    /// `(z⁺, z⁻)` for a kernel vector `z`.
    pub fn from_kernel_vector(z: &[BigInt]) -> Result<Self> {
        let (left, right) = FactorizationVector::split_signed(z)?;
        Ok(Self { left, right })
    }

    pub fn is_irredundant(&self) -> bool {
        self.left
            .multiplicities()
            .iter()
            .zip(self.right.multiplicities())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_balanced(&self) -> bool {
        self.left.length() == self.right.length()
    }

    pub fn swapped(&self) -> Self {
        Self {
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    /// Whether both sides evaluate to the same element of `p`.
    pub fn holds_in(&self, p: &MonoidPresentation) -> Result<bool> {
        Ok(p.evaluate(&self.left)? == p.evaluate(&self.right)?)
    }

    /// `left − right`.
    pub fn difference(&self) -> Vec<BigInt> {
        self.left
            .multiplicities()
            .iter()
            .zip(self.right.multiplicities())
            .map(|(a, b)| BigInt::from(*a) - BigInt::from(*b))
            .collect()
    }

    pub fn mentions(&self, atom: usize) -> bool {
        self.left.multiplicities()[atom] > 0 || self.right.multiplicities()[atom] > 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum WitnessClaim {
    /// some element has two factorizations
    NotUnique,
    /// two distinct factorizations of equal length
    NotLengthFactorial,
    /// two factorizations of different lengths
    NotHalfFactorial,
    /// the atom sits on a side that is not strictly longer
    NotPurelyLong { atom: usize },
    /// the atom sits on a side that is not strictly shorter
    NotPurelyShort { atom: usize },
}

/// A checkable certificate for a negative verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub claim: WitnessClaim,
    #[serde(serialize_with = "ser_bigints")]
    pub vector: Vec<BigInt>,
    pub relation: FactorizationRelation,
    #[serde(serialize_with = "ser_element")]
    pub element: Element,
}

fn ser_element<S: serde::Serializer>(e: &Element, s: S) -> std::result::Result<S::Ok, S::Error> {
    ser_rationals(&e.0, s)
}

impl Witness {
    fn new(claim: WitnessClaim, vector: Vec<BigInt>, p: &MonoidPresentation) -> Result<Self> {
        let relation = FactorizationRelation::from_kernel_vector(&vector)?;
        let element = p.evaluate(&relation.left)?;
        Ok(Self {
            claim,
            vector,
            relation,
            element,
        })
    }

    /// Re-evaluates the relation and checks it supports the claim.
    pub fn verify(&self, p: &MonoidPresentation) -> Result<bool> {
        let r = &self.relation;
        if !r.holds_in(p)? || r.left == r.right || p.evaluate(&r.left)? != self.element {
            return Ok(false);
        }
        let (l, s) = (r.left.length(), r.right.length());
        Ok(match self.claim {
            WitnessClaim::NotUnique => true,
            WitnessClaim::NotLengthFactorial => l == s,
            WitnessClaim::NotHalfFactorial => l != s,
            WitnessClaim::NotPurelyLong { atom } => {
                r.is_irredundant() && r.left.multiplicities()[atom] > 0 && l <= s
            }
            WitnessClaim::NotPurelyShort { atom } => {
                r.is_irredundant() && r.left.multiplicities()[atom] > 0 && l >= s
            }
        })
    }
}

const FFM_NOTE: &str = "finitely generated reduced monoids are always FFMs and BFMs; \
                        these flags are not computed";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub atom_count: usize,
    pub kernel_rank: usize,
    #[serde(serialize_with = "ser_bigint_rows")]
    pub kernel_basis: Vec<Vec<BigInt>>,
    #[serde(rename = "is_UFM")]
    pub is_ufm: bool,
    #[serde(rename = "is_LFM")]
    pub is_lfm: bool,
    #[serde(rename = "is_HFM")]
    pub is_hfm: bool,
    #[serde(rename = "is_PLSM")]
    pub is_plsm: bool,
    #[serde(rename = "is_FFM")]
    pub is_ffm: bool,
    #[serde(rename = "is_BFM")]
    pub is_bfm: bool,
    pub ffm_bfm_note: &'static str,
    pub labels: Vec<AtomLabel>,
    pub prime: BTreeSet<usize>,
    pub purely_long: BTreeSet<usize>,
    pub purely_short: BTreeSet<usize>,
    pub master: Option<FactorizationRelation>,
    pub witnesses: Vec<Witness>,
}

impl ClassificationReport {
    pub fn is_proper_lfm(&self) -> bool {
        self.is_lfm && !self.is_ufm
    }
}

fn coordinate_sum(k: usize) -> Vec<Rational> {
    vec![Rational::one(); k]
}

fn unit_functional(k: usize, i: usize) -> Vec<Rational> {
    let mut f = vec![Rational::zero(); k];
    f[i] = Rational::one();
    f
}

fn apply_sum(v: &[BigInt]) -> BigInt {
    v.iter().sum()
}

fn normalized(p: &MonoidPresentation) -> Result<Monoid> {
    Monoid::new(p.clone()).map_err(|e| match e {
        Error::NotAnAtom { .. } | Error::DuplicateGenerator { .. } => {
            Error::NotNormalized(e.to_string())
        }
        other => other,
    })
}

/// Per-atom purity data for one length functional.
#[derive(Debug, Clone)]
pub(crate) struct AtomPurity {
    pub(crate) label: AtomLabel,
    pub(crate) not_long: Option<Vec<BigInt>>,
    pub(crate) not_short: Option<Vec<BigInt>>,
}

/// Labels every atom against the length functional `length` (normally the
/// coordinate sum; its negation swaps long and short).
pub(crate) fn labels_for_functional(
    kernel: &LatticeBasis,
    length: &[Rational],
) -> Result<Vec<AtomPurity>> {
    let k = kernel.dim();
    let neg: Vec<Rational> = length.iter().map(|c| -c).collect();
    (0..k)
        .map(|i| {
            if kernel.vectors().iter().all(|b| b[i].is_zero()) {
                return Ok(AtomPurity {
                    label: AtomLabel::Prime,
                    not_long: None,
                    not_short: None,
                });
            }
            let e = unit_functional(k, i);
            let not_long = homogeneous_lp_witness(kernel, &e, std::slice::from_ref(&length.to_vec()))?;
            let not_short = homogeneous_lp_witness(kernel, &e, std::slice::from_ref(&neg))?;
            let label = match (&not_long, &not_short) {
                (None, Some(_)) => AtomLabel::PurelyLong,
                (Some(_), None) => AtomLabel::PurelyShort,
                (Some(_), Some(_)) => AtomLabel::Neither,
                (None, None) => {
                    return Err(Error::InternalContradiction(format!(
                        "non-prime atom {i} has no relation in either direction"
                    )))
                }
            };
            Ok(AtomPurity {
                label,
                not_long,
                not_short,
            })
        })
        .collect()
}

/// Nonzero lattice vector with `σ = 0`, if any.
fn balanced_lattice_vector(kernel: &LatticeBasis) -> Option<Vec<BigInt>> {
    let b = kernel.vectors();
    match b.len() {
        0 => None,
        1 => apply_sum(&b[0]).is_zero().then(|| b[0].clone()),
        _ => {
            let (s0, s1) = (apply_sum(&b[0]), apply_sum(&b[1]));
            if s0.is_zero() {
                return Some(b[0].clone());
            }
            let v = kernel.combination(&{
                let mut c = vec![BigInt::zero(); b.len()];
                c[0] = s1;
                c[1] = -s0;
                c
            });
            Some(primitive(v))
        }
    }
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    use num_integer::Integer;
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

// cap on exponent vectors visited when searching for a smallest balanced witness
const WITNESS_SEARCH_LIMIT: usize = 200_000;

/// Smallest-grade element with two distinct equal-length factorizations,
/// searched only up to the grade of an already known witness.
fn smallest_balanced_witness(m: &Monoid, known: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    let (plus, _) = FactorizationVector::split_signed(known)?;
    let bound = m.grade(&m.evaluate(&plus)?);
    let Some(table) = FactorizationTable::build_with_limit(m, &bound, WITNESS_SEARCH_LIMIT)? else {
        return Ok(None);
    };
    for (_, zs) in table.by_grade() {
        for (j, v) in zs.iter().enumerate().rev() {
            if let Some(u) = zs[..j].iter().rev().find(|u| u.length() == v.length()) {
                let rel = FactorizationRelation::new(v.clone(), u.clone());
                return Ok(Some(rel.difference()));
            }
        }
    }
    Ok(None)
}

fn orient_positive(v: &[BigInt]) -> Vec<BigInt> {
    if apply_sum(v).is_negative() {
        v.iter().map(|x| -x).collect()
    } else {
        v.to_vec()
    }
}

/// Full classification of a normalized presentation.
pub fn classify(p: &MonoidPresentation) -> Result<ClassificationReport> {
    let m = normalized(p)?;
    let k = p.len();
    let kernel = p.kernel();
    let rank = kernel.rank();
    let sums: Vec<BigInt> = kernel.vectors().iter().map(|b| apply_sum(b)).collect();

    let is_ufm = rank == 0;
    let is_lfm = rank == 0 || (rank == 1 && !sums[0].is_zero());
    let is_hfm = sums.iter().all(Zero::is_zero);

    let purity = labels_for_functional(&kernel, &coordinate_sum(k))?;
    let labels: Vec<AtomLabel> = purity.iter().map(|a| a.label).collect();
    let pick = |l: AtomLabel| -> BTreeSet<usize> {
        labels
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == l)
            .map(|(i, _)| i)
            .collect()
    };
    let prime = pick(AtomLabel::Prime);
    let purely_long = pick(AtomLabel::PurelyLong);
    let purely_short = pick(AtomLabel::PurelyShort);
    let is_plsm = !purely_long.is_empty() && !purely_short.is_empty();

    let master = if is_lfm && !is_ufm {
        Some(FactorizationRelation::from_kernel_vector(&orient_positive(
            &kernel.vectors()[0],
        ))?)
    } else {
        None
    };

    let mut witnesses = Vec::new();
    if let Some(b) = kernel.vectors().first() {
        witnesses.push(Witness::new(WitnessClaim::NotUnique, orient_positive(b), p)?);
    }
    if let Some(v) = balanced_lattice_vector(&kernel) {
        let v = smallest_balanced_witness(&m, &v)?.unwrap_or(v);
        witnesses.push(Witness::new(WitnessClaim::NotLengthFactorial, v, p)?);
    }
    if let Some(j) = sums.iter().position(|s| !s.is_zero()) {
        witnesses.push(Witness::new(
            WitnessClaim::NotHalfFactorial,
            orient_positive(&kernel.vectors()[j]),
            p,
        )?);
    }
    for (atom, a) in purity.iter().enumerate() {
        if a.label == AtomLabel::Prime {
            continue;
        }
        if let (Some(v), true) = (&a.not_long, a.label != AtomLabel::PurelyLong) {
            witnesses.push(Witness::new(WitnessClaim::NotPurelyLong { atom }, v.clone(), p)?);
        }
        if let (Some(v), true) = (&a.not_short, a.label != AtomLabel::PurelyShort) {
            witnesses.push(Witness::new(WitnessClaim::NotPurelyShort { atom }, v.clone(), p)?);
        }
    }

    Ok(ClassificationReport {
        label: p.label().map(str::to_owned),
        atom_count: k,
        kernel_rank: rank,
        kernel_basis: kernel.vectors().to_vec(),
        is_ufm,
        is_lfm,
        is_hfm,
        is_plsm,
        is_ffm: true,
        is_bfm: true,
        ffm_bfm_note: FFM_NOTE,
        labels,
        prime,
        purely_long,
        purely_short,
        master,
        witnesses,
    })
}

/// Classifies many presentations, in parallel when the `parallel` feature is on.
pub fn classify_batch(ps: &[MonoidPresentation]) -> Vec<Result<ClassificationReport>> {
    ps.par_iter().map(classify).collect()
}

/// Sequential counterpart of [`classify_batch`].
pub fn classify_batch_sequential(ps: &[MonoidPresentation]) -> Vec<Result<ClassificationReport>> {
    ps.iter().map(classify).collect()
}

/// Atoms whose multiplicity is constant on every fiber `Z(x)`.
pub fn prime_atoms(p: &MonoidPresentation) -> Result<BTreeSet<usize>> {
    normalized(p)?;
    let kernel = p.kernel();
    Ok((0..p.len())
        .filter(|&i| kernel.vectors().iter().all(|b| b[i].is_zero()))
        .collect())
}

pub fn pure_atom_labels(p: &MonoidPresentation) -> Result<Vec<AtomLabel>> {
    normalized(p)?;
    let kernel = p.kernel();
    Ok(labels_for_functional(&kernel, &coordinate_sum(p.len()))?
        .into_iter()
        .map(|a| a.label)
        .collect())
}

/// The unbalanced master relation, long side first, when `p` is a proper LFM.
pub fn master_relation(p: &MonoidPresentation) -> Result<Option<FactorizationRelation>> {
    normalized(p)?;
    let kernel = p.kernel();
    match kernel.vectors() {
        [b] if !apply_sum(b).is_zero() => {
            Ok(Some(FactorizationRelation::from_kernel_vector(&orient_positive(b))?))
        }
        _ => Ok(None),
    }
}

/// Every irredundant relation whose common element has grade `≤ bound`,
/// found by exhaustive enumeration rather than from the lattice. Each
/// relation appears once, longer side first (lexicographically larger side
/// first when balanced).
pub fn relation_evidence(p: &MonoidPresentation, bound: &Rational) -> Result<Vec<FactorizationRelation>> {
    let m = normalized(p)?;
    let table = FactorizationTable::build(&m, bound)?;
    let mut out = BTreeSet::new();
    for zs in table.fibers() {
        for (j, v) in zs.iter().enumerate() {
            for u in &zs[..j] {
                let rel = FactorizationRelation::from_kernel_vector(
                    &FactorizationRelation::new(v.clone(), u.clone()).difference(),
                )?;
                let rel = match rel.left.length().cmp(&rel.right.length()) {
                    std::cmp::Ordering::Less => rel.swapped(),
                    std::cmp::Ordering::Greater => rel,
                    std::cmp::Ordering::Equal if rel.left < rel.right => rel.swapped(),
                    std::cmp::Ordering::Equal => rel,
                };
                out.insert(rel);
            }
        }
    }
    Ok(out.into_iter().collect())
}
