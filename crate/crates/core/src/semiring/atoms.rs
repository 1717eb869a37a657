use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::{poly_divide_exact, poly_mul, CoeffDomain, ExponentMonoid, SemiringPolynomial};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::monoid::{Monoid, MonoidPresentation};

const SEARCH_LIMIT: u64 = 1 << 24;

/// Result of an irreducibility search in `ℕ₀[x;M]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtomTest {
    pub is_atom: bool,
    /// `(g, h)` with `g · h = f`, neither equal to 1
    pub factors: Option<(SemiringPolynomial, SemiringPolynomial)>,
    pub candidates_checked: u64,
}

/// Decides whether `f` is irreducible in the multiplicative monoid of
/// `ℕ₀[x;M]`.
///
/// All coefficients are nonnegative, so a factor `g` of `f` satisfies
/// `g_e ≤ max f` and one of the two factors has degree at most `deg f / 2`.
/// Candidates run over that box with the lowest exponent varying fastest.
pub fn natural_atom_test(f: &SemiringPolynomial) -> Result<AtomTest> {
    if f.domain() != CoeffDomain::Natural {
        return Err(Error::Domain("natural_atom_test needs natural coefficients".into()));
    }
    if f.is_zero() || f.is_one() {
        return Err(Error::Domain(format!("{f} is not a nonzero nonunit")));
    }
    let half = f.degree().expect("nonzero") / Rational::from_integer(2.into());
    let exps = f.monoid().elements_up_to(&half);
    let top = f
        .max_coefficient()
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::SearchTooLarge(format!("coefficients of {f}")))?;
    let space = (top + 1)
        .checked_pow(exps.len() as u32)
        .filter(|&s| s <= SEARCH_LIMIT)
        .ok_or_else(|| Error::SearchTooLarge(format!("{}^{} candidate factors", top + 1, exps.len())))?;
    let mut digits = vec![0u64; exps.len()];
    let mut checked = 0;
    for _ in 1..space {
        for d in digits.iter_mut() {
            if *d < top {
                *d += 1;
                break;
            }
            *d = 0;
        }
        let g = SemiringPolynomial::new(
            CoeffDomain::Natural,
            f.monoid().clone(),
            exps.iter()
                .zip(&digits)
                .map(|(e, &c)| (e.clone(), Rational::from_integer(c.into()))),
        )?;
        if g.is_one() {
            continue;
        }
        checked += 1;
        if let Some(h) = poly_divide_exact(f, &g)? {
            if !h.is_one() {
                return Ok(AtomTest {
                    is_atom: false,
                    factors: Some((g, h)),
                    candidates_checked: checked,
                });
            }
        }
    }
    Ok(AtomTest {
        is_atom: true,
        factors: None,
        candidates_checked: checked,
    })
}

/// Additive atoms of `ℕ₀[x;M]`: the monomials `x^m` with coefficient 1.
/// `ℚ[x;M]` has none.
pub fn is_additive_atom(f: &SemiringPolynomial) -> bool {
    f.domain() == CoeffDomain::Natural && f.term_count() == 1 && f.leading_coefficient().is_some_and(One::is_one)
}

/// For an additive atom `u`: `None` if `g` does not divide `u`, otherwise
/// whether `g` is again an additive atom.
pub fn additive_divisor_closed(u: &SemiringPolynomial, g: &SemiringPolynomial) -> Result<Option<bool>> {
    if !is_additive_atom(u) {
        return Err(Error::Domain(format!("{u} is not an additive atom")));
    }
    Ok(poly_divide_exact(u, g)?.map(|_| is_additive_atom(g)))
}

/// Two formal factorizations, each a list of irreducibles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyRelation {
    pub left: Vec<SemiringPolynomial>,
    pub right: Vec<SemiringPolynomial>,
}

fn product(fs: &[SemiringPolynomial]) -> Result<SemiringPolynomial> {
    let (first, rest) = fs
        .split_first()
        .ok_or_else(|| Error::Domain("empty factorization".into()))?;
    rest.iter().try_fold(first.clone(), |acc, f| poly_mul(&acc, f))
}

impl PolyRelation {
    pub fn new(left: Vec<SemiringPolynomial>, right: Vec<SemiringPolynomial>) -> Self {
        Self { left, right }
    }

    pub fn products(&self) -> Result<(SemiringPolynomial, SemiringPolynomial)> {
        Ok((product(&self.left)?, product(&self.right)?))
    }

    /// Whether both sides multiply to the same element.
    pub fn holds(&self) -> Result<bool> {
        let (l, r) = self.products()?;
        Ok(l == r)
    }

    pub fn is_balanced(&self) -> bool {
        self.left.len() == self.right.len()
    }

    /// No factor on one side is associate to a factor on the other.
    pub fn is_irredundant(&self) -> bool {
        !self
            .left
            .iter()
            .any(|f| self.right.iter().any(|g| f.is_associate(g)))
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.right.clone(), self.left.clone())
    }
}

#[derive(Debug, Clone)]
struct LedgerEntry {
    atom: SemiringPolynomial,
    not_long: bool,
    not_short: bool,
}

/// Tracks which irreducibles can still be purely long or purely short.
///
/// An atom on the longer side of an irredundant relation is not purely
/// short, one on the shorter side is not purely long, and both hold for an
/// atom in a balanced relation. Every pure irreducible appears in every
/// irredundant unbalanced relation, so atoms missing from one are out.
#[derive(Debug, Clone, Default)]
pub struct PurityLedger {
    entries: Vec<LedgerEntry>,
    support: Option<Vec<SemiringPolynomial>>,
}

impl PurityLedger {
    pub fn new() -> Self {
        Self::default()
    }

    fn entry(&mut self, atom: &SemiringPolynomial) -> &mut LedgerEntry {
        let i = match self.entries.iter().position(|e| e.atom.is_associate(atom)) {
            Some(i) => i,
            None => {
                self.entries.push(LedgerEntry {
                    atom: atom.normalized(),
                    not_long: false,
                    not_short: false,
                });
                self.entries.len() - 1
            }
        };
        &mut self.entries[i]
    }

    pub fn record(&mut self, rel: &PolyRelation) -> Result<()> {
        if !rel.is_irredundant() {
            return Err(Error::Domain("purity bookkeeping needs an irredundant relation".into()));
        }
        let balanced = rel.is_balanced();
        let (long, short) = if rel.left.len() >= rel.right.len() {
            (&rel.left, &rel.right)
        } else {
            (&rel.right, &rel.left)
        };
        for a in long {
            let e = self.entry(a);
            e.not_short = true;
            e.not_long |= balanced;
        }
        for a in short {
            let e = self.entry(a);
            e.not_long = true;
            e.not_short |= balanced;
        }
        if !balanced {
            let mentioned: Vec<SemiringPolynomial> = long.iter().chain(short).cloned().collect();
            self.support = Some(match self.support.take() {
                None => mentioned,
                Some(s) => s
                    .into_iter()
                    .filter(|a| mentioned.iter().any(|b| a.is_associate(b)))
                    .collect(),
            });
        }
        Ok(())
    }

    /// Recorded atoms that may still be purely long or purely short.
    pub fn candidates(&self) -> Vec<&SemiringPolynomial> {
        self.entries
            .iter()
            .filter(|e| !(e.not_long && e.not_short))
            .filter(|e| {
                self.support
                    .as_ref()
                    .is_none_or(|s| s.iter().any(|a| a.is_associate(&e.atom)))
            })
            .map(|e| &e.atom)
            .collect()
    }

    pub fn is_disqualified(&self, atom: &SemiringPolynomial) -> bool {
        !self.candidates().iter().any(|c| c.is_associate(atom))
    }
}

/// `(x^{aᵢ})^{n(aⱼ)d(aᵢ)}` against `(x^{aⱼ})^{n(aᵢ)d(aⱼ)}` in `ℚ[x;M]`; both
/// sides equal `x^{n(aᵢ)n(aⱼ)}`.
pub fn case1_relation(p: &MonoidPresentation, i: usize, j: usize) -> Result<PolyRelation> {
    let monoid = Monoid::new(p.clone())?;
    let k = monoid.atom_count();
    if i >= k || j >= k {
        return Err(Error::Domain(format!("atom index out of range for {k} atoms")));
    }
    if i == j {
        return Err(Error::Domain("case1_relation needs two distinct atoms".into()));
    }
    let exps = ExponentMonoid::puiseux(p)?;
    let ai = p.generators()[i][0].clone();
    let aj = p.generators()[j][0].clone();
    let copies = |n: &BigInt, d: &BigInt| -> Result<usize> {
        (n * d)
            .to_usize()
            .filter(|&c| c as u64 <= SEARCH_LIMIT)
            .ok_or_else(|| Error::SearchTooLarge(format!("{} copies", n * d)))
    };
    let mono = |e: &Rational| SemiringPolynomial::monomial(CoeffDomain::Rational, exps.clone(), e.clone(), Rational::one());
    let left = vec![mono(&ai)?; copies(aj.numer(), ai.denom())?];
    let right = vec![mono(&aj)?; copies(ai.numer(), aj.denom())?];
    Ok(PolyRelation::new(left, right))
}

/// `(x+1)(x³+x²+x+6) = (x+2)(x³+2x+3)` in `ℕ₀[x]`.
pub fn product_relation_fixture() -> PolyRelation {
    let n = SemiringPolynomial::natural;
    PolyRelation::new(vec![n(&[1, 1]), n(&[6, 1, 1, 1])], vec![n(&[2, 1]), n(&[3, 2, 0, 1])])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn fixture_polynomials_are_atoms() {
        let n = SemiringPolynomial::natural;
        for f in [n(&[1, 1]), n(&[2, 1]), n(&[3, 2, 0, 1]), n(&[6, 1, 1, 1]), n(&[2])] {
            assert!(natural_atom_test(&f).unwrap().is_atom, "{f}");
        }
    }

    #[test]
    fn reducible_witness_is_first_factor_found() {
        let t = natural_atom_test(&SemiringPolynomial::natural(&[6, 7, 2, 2, 1])).unwrap();
        assert!(!t.is_atom);
        let (g, h) = t.factors.unwrap();
        assert_eq!(g.to_string(), "x + 1");
        assert_eq!(h.to_string(), "x^3 + x^2 + x + 6");
    }

    #[test]
    fn constants() {
        let t = natural_atom_test(&SemiringPolynomial::natural(&[6])).unwrap();
        assert_eq!(t.factors.unwrap().0.to_string(), "2");
        assert!(natural_atom_test(&SemiringPolynomial::natural(&[1])).is_err());
        assert!(natural_atom_test(&SemiringPolynomial::natural(&[])).is_err());
    }

    #[test]
    fn additive_atoms() {
        let x = |e: i64, c: i64| {
            SemiringPolynomial::monomial(CoeffDomain::Natural, ExponentMonoid::Naturals, q(e), q(c)).unwrap()
        };
        assert!(is_additive_atom(&x(3, 1)));
        assert!(!is_additive_atom(&x(1, 2)));
        assert_eq!(additive_divisor_closed(&x(5, 1), &x(2, 1)).unwrap(), Some(true));
        assert_eq!(additive_divisor_closed(&x(5, 1), &x(6, 1)).unwrap(), None);
        assert!(additive_divisor_closed(&x(5, 2), &x(2, 1)).is_err());
    }

    #[test]
    fn case1_for_two_three() {
        let p = MonoidPresentation::puiseux(&[q(2), q(3)]).unwrap();
        let rel = case1_relation(&p, 0, 1).unwrap();
        assert_eq!((rel.left.len(), rel.right.len()), (3, 2));
        let (l, r) = rel.products().unwrap();
        assert_eq!((l.to_string(), r.to_string()), ("x^6".into(), "x^6".into()));
        assert!(rel.is_irredundant() && !rel.is_balanced());
        assert!(case1_relation(&p, 1, 1).is_err());
    }

    #[test]
    fn case1_for_fractions() {
        let half = Rational::new(1.into(), 2.into());
        let third = Rational::new(1.into(), 3.into());
        let p = MonoidPresentation::puiseux(&[half, third]).unwrap();
        let rel = case1_relation(&p, 0, 1).unwrap();
        assert_eq!((rel.left.len(), rel.right.len()), (2, 3));
        assert_eq!(rel.products().unwrap().0.to_string(), "x");
        assert!(rel.holds().unwrap());
    }

    #[test]
    fn three_case1_relations_leave_no_candidates() {
        let p = MonoidPresentation::puiseux(&[q(3), q(4), q(5)]).unwrap();
        let mut ledger = PurityLedger::new();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            ledger.record(&case1_relation(&p, i, j).unwrap()).unwrap();
        }
        assert!(ledger.candidates().is_empty());
    }

    #[test]
    fn balanced_fixture_disqualifies_all_four() {
        let rel = product_relation_fixture();
        assert!(rel.holds().unwrap() && rel.is_balanced() && rel.is_irredundant());
        let mut ledger = PurityLedger::new();
        ledger.record(&rel).unwrap();
        assert!(ledger.candidates().is_empty());
        for f in rel.left.iter().chain(&rel.right) {
            assert!(ledger.is_disqualified(f));
        }
    }
}
