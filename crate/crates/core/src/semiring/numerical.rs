use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

const TABLE_LIMIT: u64 = 1 << 24;

/// A submonoid of `ℕ₀` with finite complement, stored as a membership table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NumericalMonoid {
    generators: Vec<u64>,
    #[serde(skip)]
    table: Vec<bool>,
}

impl NumericalMonoid {
    /// Generators must be positive with gcd 1. Membership is tabulated up to
    /// `min · max`, past the Frobenius number.
    pub fn new(generators: &[u64]) -> Result<Self> {
        if generators.is_empty() || generators.contains(&0) {
            return Err(Error::Domain("numerical monoid generators must be positive".into()));
        }
        if generators.iter().fold(0, |g, &x| g.gcd(&x)) != 1 {
            return Err(Error::Domain(format!("generators {generators:?} are not coprime")));
        }
        let mut gens = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let bound = gens[0]
            .checked_mul(*gens.last().unwrap())
            .filter(|&b| b <= TABLE_LIMIT)
            .ok_or_else(|| Error::SearchTooLarge(format!("membership table for {gens:?}")))?;
        let mut table = vec![false; bound as usize + 1];
        table[0] = true;
        for n in 1..table.len() {
            table[n] = gens.iter().any(|&g| g as usize <= n && table[n - g as usize]);
        }
        Ok(Self {
            generators: gens,
            table,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn contains(&self, n: i64) -> bool {
        match usize::try_from(n) {
            Err(_) => false,
            Ok(n) => self.table.get(n).copied().unwrap_or(true),
        }
    }

    /// Largest integer not in the monoid; `-1` for `ℕ₀` itself.
    pub fn frobenius(&self) -> i64 {
        self.table.iter().rposition(|&b| !b).map_or(-1, |n| n as i64)
    }

    /// Elements of `ℕ₀` outside the monoid.
    pub fn gaps(&self) -> Vec<u64> {
        (0..self.table.len() as u64).filter(|&n| !self.table[n as usize]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_three() {
        let m = NumericalMonoid::new(&[3, 2]).unwrap();
        assert_eq!(m.frobenius(), 1);
        assert_eq!(m.gaps(), vec![1]);
        assert!(!m.contains(-2) && m.contains(0) && m.contains(1000));
    }

    #[test]
    fn frobenius_of_two_generators() {
        for (a, b) in [(3u64, 5u64), (4, 7), (5, 9), (7, 8)] {
            let m = NumericalMonoid::new(&[a, b]).unwrap();
            assert_eq!(m.frobenius(), (a * b - a - b) as i64);
        }
        assert_eq!(NumericalMonoid::new(&[1, 5]).unwrap().frobenius(), -1);
    }

    #[test]
    fn rejects_non_coprime() {
        assert!(NumericalMonoid::new(&[2, 4]).is_err());
        assert!(NumericalMonoid::new(&[]).is_err());
    }
}
