use std::collections::{BTreeMap, BTreeSet};

use super::presentation::{Element, FactorizationVector, Grading, IntContext, Monoid, MonoidPresentation};
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// `Z(x)`: every exponent vector `z ≥ 0` with `Σ zᵢ gᵢ = x`, sorted
/// lexicographically. Empty exactly when `x` is not in the monoid.
pub fn enumerate_factorizations(
    p: &MonoidPresentation,
    x: &Element,
    h: &Grading,
) -> Result<Vec<FactorizationVector>> {
    if x.0.len() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: x.0.len(),
        });
    }
    IntContext::new(p, h)?.factorizations(x)
}

/// `L(x) = {|z| : z ∈ Z(x)}`.
pub fn length_set(m: &Monoid, x: &Element) -> Result<BTreeSet<u64>> {
    Ok(m.factorizations(x)?.iter().map(FactorizationVector::length).collect())
}

/// Indices of atoms occurring in some factorization of `x`.
pub fn atomic_divisors(m: &Monoid, x: &Element) -> Result<BTreeSet<usize>> {
    Ok(m
        .factorizations(x)?
        .iter()
        .flat_map(|z| z.support().collect::<Vec<_>>())
        .collect())
}

/// Every element of grade at most a bound, with its complete factorization
/// set. Complete because all factorizations of `x` have grade `h(x)`.
#[derive(Debug, Clone)]
pub struct FactorizationTable {
    entries: BTreeMap<Vec<i128>, Vec<FactorizationVector>>,
    weights: Vec<i128>,
    denominator: Rational,
}

impl FactorizationTable {
    pub fn build(m: &Monoid, bound: &Rational) -> Result<Self> {
        Ok(Self::build_with_limit(m, bound, usize::MAX)?.expect("unbounded build"))
    }

    /// Like [`FactorizationTable::build`], but gives up (returning `None`)
    /// after visiting `max_vectors` exponent vectors.
    pub fn build_with_limit(m: &Monoid, bound: &Rational, max_vectors: usize) -> Result<Option<Self>> {
        let ctx = m.ctx();
        let limit = ctx.grade_bound(bound)?;
        let mut entries: BTreeMap<Vec<i128>, Vec<FactorizationVector>> = BTreeMap::new();
        let mut visited = 0usize;
        let complete = ctx.for_each_vector_up_to(limit, |z, _| {
            visited += 1;
            if visited > max_vectors {
                return false;
            }
            entries
                .entry(ctx.evaluate(z))
                .or_default()
                .push(FactorizationVector(z.to_vec()));
            true
        });
        if !complete {
            return Ok(None);
        }
        for zs in entries.values_mut() {
            zs.sort();
        }
        Ok(Some(Self {
            entries,
            weights: ctx.weights.clone(),
            denominator: Rational::from_integer(ctx.denominator.clone()),
        }))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn element(&self, point: &[i128]) -> Element {
        Element(
            point
                .iter()
                .map(|&c| Rational::from_integer(c.into()) / &self.denominator)
                .collect(),
        )
    }

    /// `(x, Z(x))` pairs in lexicographic order of `x`.
    pub fn iter(&self) -> impl Iterator<Item = (Element, &[FactorizationVector])> + '_ {
        self.entries
            .iter()
            .map(move |(p, zs)| (self.element(p), zs.as_slice()))
    }

    /// `(x, Z(x))` pairs ordered by grade, then lexicographically by `x`.
    pub fn by_grade(&self) -> Vec<(Element, &[FactorizationVector])> {
        let mut keyed: Vec<(i128, &Vec<i128>, &Vec<FactorizationVector>)> = self
            .entries
            .iter()
            .map(|(p, zs)| (p.iter().zip(&self.weights).map(|(a, b)| a * b).sum(), p, zs))
            .collect();
        keyed.sort();
        keyed
            .into_iter()
            .map(|(_, p, zs)| (self.element(p), zs.as_slice()))
            .collect()
    }

    /// Factorization sets only, skipping the rational reconstruction of `x`.
    pub fn fibers(&self) -> impl Iterator<Item = &[FactorizationVector]> + '_ {
        self.entries.values().map(Vec::as_slice)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{validate_presentation, Monoid};

    fn fv(v: &[u64]) -> FactorizationVector {
        FactorizationVector(v.to_vec())
    }

    fn numerical(gens: &[i64]) -> Monoid {
        let rows: Vec<Vec<i64>> = gens.iter().map(|&g| vec![g]).collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        Monoid::new(MonoidPresentation::from_integers(&refs).unwrap()).unwrap()
    }

    #[test]
    fn factorizations_of_six_in_two_three() {
        let m = numerical(&[2, 3]);
        let z = m.factorizations(&Element::from_integers(&[6])).unwrap();
        assert_eq!(z, vec![fv(&[0, 2]), fv(&[3, 0])]);
        // exhaustive oracle with bound 3
        let mut brute = Vec::new();
        for a in 0..=3u64 {
            for b in 0..=3u64 {
                if 2 * a + 3 * b == 6 {
                    brute.push(fv(&[a, b]));
                }
            }
        }
        brute.sort();
        assert_eq!(z, brute);
    }

    #[test]
    fn one_is_not_in_three_four_five() {
        let m = numerical(&[3, 4, 5]);
        assert!(m.factorizations(&Element::from_integers(&[1])).unwrap().is_empty());
    }

    #[test]
    fn truncated_product_element_has_two_factorizations() {
        let p = MonoidPresentation::from_integers(&[
            &[2, 0, 0],
            &[3, 0, 0],
            &[0, 0, 1],
            &[0, 1, 1],
            &[0, 2, 1],
            &[0, 3, 1],
            &[0, 4, 1],
        ])
        .unwrap();
        let h = validate_presentation(&p).unwrap();
        let z = enumerate_factorizations(&p, &Element::from_integers(&[0, 2, 2]), &h).unwrap();
        assert_eq!(
            z,
            vec![fv(&[0, 0, 0, 2, 0, 0, 0]), fv(&[0, 0, 1, 0, 1, 0, 0])]
        );
    }

    #[test]
    fn length_sets() {
        let m = numerical(&[2, 3]);
        let l = |x| length_set(&m, &Element::from_integers(&[x])).unwrap();
        assert_eq!(l(6), BTreeSet::from([2, 3]));
        assert_eq!(l(2), BTreeSet::from([1]));
        assert_eq!(l(0), BTreeSet::from([0]));
        assert!(l(1).is_empty());
    }

    #[test]
    fn atomic_divisor_sets() {
        let m = numerical(&[2, 3]);
        let a = |x| atomic_divisors(&m, &Element::from_integers(&[x])).unwrap();
        assert_eq!(a(6), BTreeSet::from([0, 1]));
        assert_eq!(a(7), BTreeSet::from([0, 1]));
        assert!(a(0).is_empty());
        assert_eq!(a(4), BTreeSet::from([0]));
    }

    #[test]
    fn rational_generators() {
        let p = MonoidPresentation::puiseux(&[
            Rational::new(1.into(), 2.into()),
            Rational::new(1.into(), 3.into()),
        ])
        .unwrap();
        let m = Monoid::new(p).unwrap();
        let one = Element(vec![Rational::from_integer(1.into())]);
        assert_eq!(m.factorizations(&one).unwrap(), vec![fv(&[0, 3]), fv(&[2, 0])]);
        let off = Element(vec![Rational::new(1.into(), 5.into())]);
        assert!(m.factorizations(&off).unwrap().is_empty());
    }

    #[test]
    fn table_matches_direct_enumeration() {
        let m = numerical(&[3, 5, 7]);
        let t = FactorizationTable::build(&m, &Rational::from_integer(6.into())).unwrap();
        for (x, zs) in t.iter() {
            assert_eq!(m.factorizations(&x).unwrap(), zs);
        }
        // grades are x/3, so elements up to 18
        assert!(t.iter().any(|(x, _)| x == Element::from_integers(&[18])));
        assert!(!t.iter().any(|(x, _)| x == Element::from_integers(&[19])));
    }
}
