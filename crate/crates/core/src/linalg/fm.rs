use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::kernel::LatticeBasis;
use super::rational::{common_denominator, dot, Rational};
use crate::error::{Error, Result};

/// `coeffs · x ≤ bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<Rational>,
    pub bound: Rational,
}

impl Inequality {
    pub fn new(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self { coeffs, bound }
    }

    fn holds(&self, x: &[Rational]) -> bool {
        dot(&self.coeffs, x) <= self.bound
    }
}

/// Scales each row so its first nonzero coefficient is ±1, keeps only the
/// tightest bound per direction and drops trivially true rows. `None` when a
/// row reads `0 ≤ c` with `c < 0`.
fn tidy(rows: Vec<Inequality>) -> Option<Vec<Inequality>> {
    let mut tightest: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
    for row in rows {
        let Some(lead) = row.coeffs.iter().find(|c| !c.is_zero()).map(Rational::abs) else {
            if row.bound.is_negative() {
                return None;
            }
            continue;
        };
        let coeffs: Vec<Rational> = row.coeffs.iter().map(|c| c / &lead).collect();
        let bound = &row.bound / &lead;
        tightest
            .entry(coeffs)
            .and_modify(|b| {
                if bound < *b {
                    *b = bound.clone();
                }
            })
            .or_insert(bound);
    }
    Some(
        tightest
            .into_iter()
            .map(|(coeffs, bound)| Inequality { coeffs, bound })
            .collect(),
    )
}

/// Exact Fourier–Motzkin solver for `{x ∈ ℚⁿ : rows}`.
///
/// Variables are eliminated in index order. On success a point is rebuilt by
/// back-substitution, taking each variable at its tightest lower bound, else
/// its tightest upper bound, else zero.
pub fn solve_inequalities(nvars: usize, rows: Vec<Inequality>) -> Result<Option<Vec<Rational>>> {
    if let Some(r) = rows.iter().find(|r| r.coeffs.len() != nvars) {
        return Err(Error::DimensionMismatch {
            expected: nvars,
            found: r.coeffs.len(),
        });
    }
    let original = rows.clone();
    let mut stages: Vec<Vec<Inequality>> = Vec::with_capacity(nvars);
    let mut current = rows;
    for j in 0..nvars {
        let Some(tidied) = tidy(current) else {
            return Ok(None);
        };
        let mut next = Vec::new();
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        for row in &tidied {
            let a = &row.coeffs[j];
            if a.is_positive() {
                upper.push(row);
            } else if a.is_negative() {
                lower.push(row);
            } else {
                next.push(row.clone());
            }
        }
        for u in &upper {
            for l in &lower {
                let su = Rational::one() / &u.coeffs[j];
                let sl = Rational::one() / -&l.coeffs[j];
                let coeffs = u
                    .coeffs
                    .iter()
                    .zip(&l.coeffs)
                    .map(|(a, b)| a * &su + b * &sl)
                    .collect();
                next.push(Inequality {
                    coeffs,
                    bound: &u.bound * &su + &l.bound * &sl,
                });
            }
        }
        stages.push(tidied);
        current = next;
    }
    if tidy(current).is_none() {
        return Ok(None);
    }

    let mut x = vec![Rational::zero(); nvars];
    for j in (0..nvars).rev() {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for row in &stages[j] {
            let a = &row.coeffs[j];
            if a.is_zero() {
                continue;
            }
            let rest: Rational = row.coeffs[j + 1..]
                .iter()
                .zip(&x[j + 1..])
                .fold(Rational::zero(), |acc, (c, v)| acc + c * v);
            let limit = (&row.bound - rest) / a;
            if a.is_positive() {
                if hi.as_ref().is_none_or(|h| limit < *h) {
                    hi = Some(limit);
                }
            } else if lo.as_ref().is_none_or(|l| limit > *l) {
                lo = Some(limit);
            }
        }
        x[j] = lo.or(hi).unwrap_or_else(Rational::zero);
    }
    if !original.iter().all(|r| r.holds(&x)) {
        return Err(Error::InternalContradiction(
            "Fourier–Motzkin back-substitution produced an infeasible point".into(),
        ));
    }
    Ok(Some(x))
}

fn apply(functional: &[Rational], v: &[BigInt]) -> Rational {
    functional
        .iter()
        .zip(v)
        .fold(Rational::zero(), |acc, (f, x)| acc + f * Rational::from_integer(x.clone()))
}

/// An integer lattice vector `z` with `strict(z) ≥ 1` and `f(z) ≤ 0` for every
/// `f` in `nonstrict`, or `None` when no such vector exists.
///
/// The system is homogeneous, so rational feasibility over the span and
/// integer feasibility over the lattice coincide: a rational certificate in
/// basis coordinates is scaled by the lcm of its denominators.
pub fn homogeneous_lp_witness(
    basis: &LatticeBasis,
    strict: &[Rational],
    nonstrict: &[Vec<Rational>],
) -> Result<Option<Vec<BigInt>>> {
    let k = basis.dim();
    for f in std::iter::once(strict).chain(nonstrict.iter().map(Vec::as_slice)) {
        if f.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: f.len(),
            });
        }
    }
    let r = basis.rank();
    let images = |f: &[Rational]| -> Vec<Rational> {
        basis.vectors().iter().map(|b| apply(f, b)).collect()
    };
    let mut rows = vec![Inequality::new(
        images(strict).into_iter().map(|c| -c).collect(),
        -Rational::one(),
    )];
    rows.extend(
        nonstrict
            .iter()
            .map(|f| Inequality::new(images(f), Rational::zero())),
    );
    let Some(t) = solve_inequalities(r, rows)? else {
        return Ok(None);
    };
    let scale = common_denominator(&t);
    let coeffs: Vec<BigInt> = t
        .iter()
        .map(|c| (c * Rational::from_integer(scale.clone())).to_integer())
        .collect();
    let z = basis.combination(&coeffs);
    let ok = apply(strict, &z) >= Rational::one()
        && nonstrict.iter().all(|f| !apply(f, &z).is_positive());
    if !ok {
        return Err(Error::InternalContradiction(
            "scaled lattice witness violates the homogeneous system".into(),
        ));
    }
    Ok(Some(z))
}

/// Whether some `z` in the rational span of `basis` has `strict(z) ≥ 1` and
/// `f(z) ≤ 0` for all `f` in `nonstrict`.
pub fn homogeneous_lp_feasible(
    basis: &LatticeBasis,
    strict: &[Rational],
    nonstrict: &[Vec<Rational>],
) -> Result<bool> {
    Ok(homogeneous_lp_witness(basis, strict, nonstrict)?.is_some())
}
