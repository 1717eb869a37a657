use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{CoeffDomain, ExponentMonoid};
use crate::error::{Error, Result};
use crate::json::RationalText;
use crate::linalg::{format_rational, Rational};
use crate::monoid::MonoidPresentation;

/// A finite sum `Σ c_e x^e` with exponents in the exponent monoid.
///
/// Zero coefficients are never stored. Over `ℕ₀` every coefficient is a
/// positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct SemiringPolynomial {
    domain: CoeffDomain,
    monoid: ExponentMonoid,
    terms: BTreeMap<Rational, Rational>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MonoidJson {
    Symbol(String),
    Presentation(MonoidPresentation),
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    coeff_domain: CoeffDomain,
    monoid: MonoidJson,
    terms: Vec<(RationalText, RationalText)>,
}

impl TryFrom<PolyJson> for SemiringPolynomial {
    type Error = Error;

    fn try_from(j: PolyJson) -> Result<Self> {
        let monoid = match j.monoid {
            MonoidJson::Symbol(s) if s == "N0" => ExponentMonoid::Naturals,
            MonoidJson::Symbol(s) => return Err(Error::Parse(format!("unknown exponent monoid {s:?}"))),
            MonoidJson::Presentation(p) => ExponentMonoid::puiseux(&p)?,
        };
        let terms = j
            .terms
            .iter()
            .map(|(e, c)| Ok((e.parse()?, c.parse()?)))
            .collect::<Result<Vec<_>>>()?;
        SemiringPolynomial::new(j.coeff_domain, monoid, terms)
    }
}

impl From<SemiringPolynomial> for PolyJson {
    fn from(f: SemiringPolynomial) -> Self {
        let monoid = match f.monoid.presentation() {
            None => MonoidJson::Symbol("N0".into()),
            Some(p) => MonoidJson::Presentation(p),
        };
        PolyJson {
            coeff_domain: f.domain,
            monoid,
            terms: f
                .terms
                .iter()
                .map(|(e, c)| (RationalText::from(e), RationalText::from(c)))
                .collect(),
        }
    }
}

impl SemiringPolynomial {
    /// Sums repeated exponents, drops zero coefficients, and checks every
    /// exponent and coefficient against the domain.
    pub fn new(
        domain: CoeffDomain,
        monoid: ExponentMonoid,
        terms: impl IntoIterator<Item = (Rational, Rational)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (e, c) in terms {
            if !monoid.contains(&e) {
                return Err(Error::Domain(format!("exponent {e} is not in the exponent monoid")));
            }
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        if domain == CoeffDomain::Natural {
            if let Some((e, c)) = map.iter().find(|(_, c)| !(c.is_integer() && c.is_positive())) {
                return Err(Error::Domain(format!(
                    "coefficient {c} of x^{e} is not a natural number"
                )));
            }
        }
        Ok(Self {
            domain,
            monoid,
            terms: map,
        })
    }

    /// `Σ coeffs[i] xⁱ` in `ℕ₀[x]`.
    pub fn natural(coeffs: &[u64]) -> Self {
        let terms = coeffs.iter().enumerate().map(|(i, &c)| {
            (
                Rational::from_integer(i.into()),
                Rational::from_integer(c.into()),
            )
        });
        Self::new(CoeffDomain::Natural, ExponentMonoid::Naturals, terms).expect("valid by construction")
    }

    pub fn monomial(domain: CoeffDomain, monoid: ExponentMonoid, exponent: Rational, coeff: Rational) -> Result<Self> {
        Self::new(domain, monoid, [(exponent, coeff)])
    }

    pub fn one(domain: CoeffDomain, monoid: ExponentMonoid) -> Self {
        Self::new(domain, monoid, [(Rational::zero(), Rational::one())]).expect("0 is in every monoid")
    }

    fn with_terms(&self, terms: BTreeMap<Rational, Rational>) -> Self {
        Self {
            domain: self.domain,
            monoid: self.monoid.clone(),
            terms,
        }
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn monoid(&self) -> &ExponentMonoid {
        &self.monoid
    }

    /// `(exponent, coefficient)` pairs, exponents ascending.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Rational) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coefficient(&Rational::zero()).is_one()
    }

    /// Largest exponent; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<&Rational> {
        self.terms.keys().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    pub fn max_coefficient(&self) -> Rational {
        self.terms.values().max().cloned().unwrap_or_else(Rational::zero)
    }

    /// Over `ℚ`, the associate with leading coefficient 1; over `ℕ₀` the
    /// only unit is 1, so `self`.
    pub fn normalized(&self) -> Self {
        match (self.domain, self.leading_coefficient()) {
            (CoeffDomain::Rational, Some(lc)) => {
                let lc = lc.clone();
                self.with_terms(self.terms.iter().map(|(e, c)| (e.clone(), c / &lc)).collect())
            }
            _ => self.clone(),
        }
    }

    pub fn is_associate(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.domain != other.domain || self.monoid != other.monoid {
            return Err(Error::MixedDomains);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            *terms.entry(e.clone()).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(self.with_terms(terms))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.domain, self.monoid.clone());
        for _ in 0..n {
            acc = poly_mul(&acc, self).expect("same ring");
        }
        acc
    }
}

/// Convolution product.
pub fn poly_mul(f: &SemiringPolynomial, g: &SemiringPolynomial) -> Result<SemiringPolynomial> {
    f.check_compatible(g)?;
    let mut terms: BTreeMap<Rational, Rational> = BTreeMap::new();
    for (e1, c1) in &f.terms {
        for (e2, c2) in &g.terms {
            *terms.entry(e1 + e2).or_insert_with(Rational::zero) += c1 * c2;
        }
    }
    terms.retain(|_, c| !c.is_zero());
    Ok(f.with_terms(terms))
}

/// The `h` with `g · h = f`, if it exists in the same semiring.
///
/// Long division from the top exponent down. Each quotient term is forced,
/// so the first term with an exponent outside `M` (or, over `ℕ₀`, a
/// coefficient that is not a positive integer) rules out any quotient.
pub fn poly_divide_exact(f: &SemiringPolynomial, g: &SemiringPolynomial) -> Result<Option<SemiringPolynomial>> {
    f.check_compatible(g)?;
    let (eg, cg) = match g.terms.iter().next_back() {
        Some((e, c)) => (e.clone(), c.clone()),
        None => return Err(Error::Domain("division by the zero polynomial".into())),
    };
    let mut rem = f.terms.clone();
    let mut quot = BTreeMap::new();
    while let Some((er, cr)) = rem.iter().next_back() {
        let e = er - &eg;
        if !f.monoid.contains(&e) {
            return Ok(None);
        }
        let c = cr / &cg;
        if f.domain == CoeffDomain::Natural && !(c.is_integer() && c.is_positive()) {
            return Ok(None);
        }
        for (ge, gc) in &g.terms {
            let slot = rem.entry(&e + ge).or_insert_with(Rational::zero);
            *slot -= &c * gc;
            if slot.is_zero() {
                rem.remove(&(&e + ge));
            }
        }
        quot.insert(e, c);
    }
    Ok(Some(f.with_terms(quot)))
}

impl fmt::Display for SemiringPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let power = if e.is_zero() {
                String::new()
            } else if e.is_one() {
                "x".into()
            } else if e.is_integer() {
                format!("x^{e}")
            } else {
                format!("x^({})", format_rational(e))
            };
            if power.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{power}")?;
            } else {
                write!(f, "{}{power}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}
