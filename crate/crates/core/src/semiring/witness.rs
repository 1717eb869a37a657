use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use super::{poly_divide_exact, poly_mul, CoeffDomain, ExponentMonoid, NumericalMonoid, SemiringPolynomial};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::par::*;

/// Two binomials of `ℚ[x;⟨a,b⟩]` and an equal-length relation between
/// factorizations that each contain one of the monomials `x^a`, `x^b` but
/// not the other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraWitness {
    pub a: i64,
    pub b: i64,
    pub p: i64,
    #[serde(rename = "Q")]
    pub q: i64,
    pub r: i64,
    #[serde(rename = "S")]
    pub s: i64,
    pub c: i64,
    /// `x^{rb} − x^{Sa}`
    pub a1: SemiringPolynomial,
    /// `x^{pa} − x^{Qb}`
    pub a2: SemiringPolynomial,
    pub f: SemiringPolynomial,
    pub z1: Vec<SemiringPolynomial>,
    pub z2: Vec<SemiringPolynomial>,
}

fn invalid(a: i64, b: i64, reason: &str) -> Error {
    Error::InvalidPair {
        a,
        b,
        reason: reason.into(),
    }
}

fn product(fs: &[SemiringPolynomial]) -> Result<SemiringPolynomial> {
    let one = SemiringPolynomial::one(fs[0].domain(), fs[0].monoid().clone());
    fs.iter().try_fold(one, |acc, f| poly_mul(&acc, f))
}

/// Smallest positive `t` with `t·x ≡ 1 (mod m)`.
fn min_inverse(x: i64, m: i64) -> i64 {
    (1..=m).find(|t| (t * x).mod_floor(&m) == 1 % m).expect("x is a unit mod m")
}

pub fn algebra_witness(a: i64, b: i64) -> Result<AlgebraWitness> {
    if a < 2 {
        return Err(invalid(a, b, "a must be at least 2"));
    }
    if a >= b {
        return Err(invalid(a, b, "a must be less than b"));
    }
    if a.gcd(&b) != 1 {
        return Err(invalid(a, b, "a and b are not coprime"));
    }
    let p = min_inverse(a, b);
    let q = (p * a - 1) / b;
    let r = min_inverse(b, a);
    let s = (r * b - 1) / a;

    let m = NumericalMonoid::new(&[a as u64, b as u64])?;
    for (what, v) in [("Qb - a", q * b - a), ("pa - b", p * a - b), ("Sa - b", s * a - b), ("rb - a", r * b - a)] {
        if m.contains(v) {
            return Err(Error::InternalContradiction(format!(
                "{what} = {v} lies in <{a},{b}>"
            )));
        }
    }

    let exps = ExponentMonoid::Numerical(m);
    let int = |n: i64| Rational::from_integer(n.into());
    let poly = |terms: &[(i64, i64)]| {
        SemiringPolynomial::new(
            CoeffDomain::Rational,
            exps.clone(),
            terms.iter().map(|&(e, c)| (int(e), int(c))),
        )
    };
    let a1 = poly(&[(r * b, 1), (s * a, -1)])?;
    let a2 = poly(&[(p * a, 1), (q * b, -1)])?;
    let xa = poly(&[(a, 1)])?;
    let xb = poly(&[(b, 1)])?;

    let diff = s * a - q * b;
    if diff == 0 {
        return Err(Error::DegenerateWitness(format!("Sa = Qb = {} for ({a}, {b})", s * a)));
    }
    let c = diff.abs();
    let (with_a, with_b) = if diff > 0 { (&a1, &a2) } else { (&a2, &a1) };
    let side = |mono: &SemiringPolynomial, bin: &SemiringPolynomial| {
        let mut z = vec![mono.clone(); c as usize];
        z.extend(std::iter::repeat_n(bin.clone(), (b - a) as usize));
        z
    };
    let z1 = side(&xa, with_a);
    let z2 = side(&xb, with_b);
    let f = product(&z1)?;
    if product(&z2)? != f {
        return Err(Error::InternalContradiction(format!(
            "the two factorizations for ({a}, {b}) have different products"
        )));
    }
    Ok(AlgebraWitness {
        a,
        b,
        p,
        q,
        r,
        s,
        c,
        a1,
        a2,
        f,
        z1,
        z2,
    })
}

impl AlgebraWitness {
    /// Rechecks the arithmetic identities, minimality of `p` and `r`, and
    /// the relation itself.
    pub fn verify(&self) -> Result<bool> {
        let (a, b) = (self.a, self.b);
        let arithmetic = self.p * a - self.q * b == 1
            && self.r * b - self.s * a == 1
            && self.p == min_inverse(a, b)
            && self.r == min_inverse(b, a)
            && self.c == (self.s * a - self.q * b).abs();
        let lengths = self.z1.len() == self.z2.len() && self.z1.len() as i64 == self.c + b - a;
        Ok(arithmetic && lengths && product(&self.z1)? == self.f && product(&self.z2)? == self.f)
    }
}

/// True iff neither `x^a` nor `x^b` divides `a1` or `a2` in `ℚ[x;M]`.
///
/// Each binomial is `x^k (x − 1)` in `ℚ[x]`, so once no monomial atom
/// divides it, it is irreducible in `ℚ[x;M]`.
pub fn binomial_irreducibility_check(w: &AlgebraWitness) -> Result<bool> {
    let m = w.a1.monoid().clone();
    let x = |e: i64| {
        SemiringPolynomial::monomial(CoeffDomain::Rational, m.clone(), Rational::from_integer(e.into()), Rational::one())
    };
    let monos = [x(w.a)?, x(w.b)?];
    for bin in [&w.a1, &w.a2] {
        for mono in &monos {
            if poly_divide_exact(bin, mono)?.is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Coprime pairs `2 ≤ a < b ≤ max`.
pub fn coprime_pairs(max: i64) -> Vec<(i64, i64)> {
    (2..=max)
        .flat_map(|b| (2..b).map(move |a| (a, b)))
        .filter(|(a, b)| a.gcd(b) == 1)
        .collect()
}

pub fn witness_sweep(pairs: &[(i64, i64)]) -> Vec<Result<AlgebraWitness>> {
    pairs.par_iter().map(|&(a, b)| algebra_witness(a, b)).collect()
}

pub fn witness_sweep_sequential(pairs: &[(i64, i64)]) -> Vec<Result<AlgebraWitness>> {
    pairs.iter().map(|&(a, b)| algebra_witness(a, b)).collect()
}
