use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::RationalText;
use crate::linalg::{
    common_denominator, dot, format_rational, homogeneous_lp_witness, integer_kernel,
    solve_inequalities, Inequality, IntMatrix, LatticeBasis, Rational,
};

/// Generators `g₁, …, g_k ∈ ℚᵈ` of a monoid `⟨g₁, …, g_k⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationJson", into = "PresentationJson")]
pub struct MonoidPresentation {
    dim: usize,
    generators: Vec<Vec<Rational>>,
    label: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PresentationJson {
    dim: usize,
    generators: Vec<Vec<RationalText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl TryFrom<PresentationJson> for MonoidPresentation {
    type Error = Error;

    fn try_from(j: PresentationJson) -> Result<Self> {
        let generators = j
            .generators
            .iter()
            .map(|g| g.iter().map(RationalText::parse).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        MonoidPresentation::new(j.dim, generators, j.label)
    }
}

impl From<MonoidPresentation> for PresentationJson {
    fn from(p: MonoidPresentation) -> Self {
        PresentationJson {
            dim: p.dim,
            generators: p
                .generators
                .iter()
                .map(|g| g.iter().map(RationalText::from).collect())
                .collect(),
            label: p.label,
        }
    }
}

impl MonoidPresentation {
    pub fn new(dim: usize, generators: Vec<Vec<Rational>>, label: Option<String>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("ambient dimension must be at least 1".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.len(),
            });
        }
        Ok(Self {
            dim,
            generators,
            label,
        })
    }

    /// Integer generators; all rows must share one length.
    pub fn from_integers(generators: &[&[i64]]) -> Result<Self> {
        let dim = generators.first().map_or(1, |g| g.len());
        let gens = generators
            .iter()
            .map(|g| g.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        Self::new(dim, gens, None)
    }

    /// A rank-one presentation `⟨q₁, …, q_k⟩ ⊂ ℚ`.
    pub fn puiseux(generators: &[Rational]) -> Result<Self> {
        Self::new(1, generators.iter().map(|g| vec![g.clone()]).collect(), None)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.generators
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Multiplies every generator by a positive rational.
    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        if !factor.is_positive() {
            return Err(Error::Domain("scaling factor must be positive".into()));
        }
        Ok(Self {
            dim: self.dim,
            generators: self
                .generators
                .iter()
                .map(|g| g.iter().map(|x| x * factor).collect())
                .collect(),
            label: self.label.clone(),
        })
    }

    /// Common denominator `D` of all coordinates.
    pub fn denominator(&self) -> BigInt {
        common_denominator(self.generators.iter().flatten())
    }

    /// The `d × k` integer matrix `D·[g₁ … g_k]`, columns are generators.
    pub fn generator_matrix(&self) -> IntMatrix {
        let den = Rational::from_integer(self.denominator());
        let mut m = IntMatrix::zeros(self.dim, self.len());
        for (j, g) in self.generators.iter().enumerate() {
            for (i, x) in g.iter().enumerate() {
                m.set(i, j, (x * &den).to_integer());
            }
        }
        m
    }

    /// Lattice of factorization relations `{z ∈ ℤᵏ : Σ zᵢ gᵢ = 0}`.
    pub fn kernel(&self) -> LatticeBasis {
        integer_kernel(&self.generator_matrix())
    }

    /// `Σ zᵢ gᵢ`.
    pub fn evaluate(&self, z: &FactorizationVector) -> Result<Element> {
        if z.0.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: z.0.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.dim];
        for (c, g) in z.0.iter().zip(&self.generators) {
            if *c == 0 {
                continue;
            }
            let c = Rational::from_integer((*c).into());
            for (o, x) in out.iter_mut().zip(g) {
                *o += &c * x;
            }
        }
        Ok(Element(out))
    }
}

impl fmt::Display for MonoidPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| {
                let parts: Vec<String> = g.iter().map(format_rational).collect();
                if parts.len() == 1 {
                    parts[0].clone()
                } else {
                    format!("({})", parts.join(","))
                }
            })
            .collect();
        write!(f, "⟨{}⟩", gens.join(", "))
    }
}

/// A point of `ℚᵈ`, usually an element of some monoid.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub Vec<Rational>);

impl Element {
    pub fn from_integers(coords: &[i64]) -> Self {
        Element(
            coords
                .iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Exponent vector over the generator list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FactorizationVector(pub Vec<u64>);

impl FactorizationVector {
    pub fn zero(k: usize) -> Self {
        Self(vec![0; k])
    }

    pub fn unit(k: usize, i: usize, count: u64) -> Self {
        let mut v = vec![0; k];
        v[i] = count;
        Self(v)
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.0
    }

    /// `|z|`, the number of atoms counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Indices with nonzero multiplicity.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, n: u64) -> Self {
        Self(self.0.iter().map(|a| a * n).collect())
    }

    /// Componentwise `self ≥ other`.
    pub fn dominates(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// Splits a signed integer vector into its positive and negative parts.
    pub fn split_signed(z: &[BigInt]) -> Result<(Self, Self)> {
        let to_u64 = |x: &BigInt| {
            x.to_u64()
                .ok_or_else(|| Error::Overflow(format!("relation coefficient {x}")))
        };
        let mut pos = Vec::with_capacity(z.len());
        let mut neg = Vec::with_capacity(z.len());
        for x in z {
            if x.is_positive() {
                pos.push(to_u64(x)?);
                neg.push(0);
            } else {
                pos.push(0);
                neg.push(to_u64(&-x)?);
            }
        }
        Ok((Self(pos), Self(neg)))
    }
}

/// Linear functional `h` with `h(gᵢ) > 0` for every generator, scaled so the
/// smallest generator grade is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    weights: Vec<Rational>,
}

impl Grading {
    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn grade(&self, x: &[Rational]) -> Rational {
        dot(&self.weights, x)
    }
}

/// Checks the presentation and returns a strictly positive grading.
///
/// Fails with [`Error::NotPointed`] when the kernel lattice holds a nonzero
/// nonnegative vector (some nonempty sum of generators is zero).
pub fn validate_presentation(p: &MonoidPresentation) -> Result<Grading> {
    if p.is_empty() {
        return Err(Error::Domain("presentation has no generators".into()));
    }
    if let Some(index) = p.generators().iter().position(|g| g.iter().all(Zero::is_zero)) {
        return Err(Error::InvalidGenerator { index });
    }
    let k = p.len();
    let kernel = p.kernel();
    let sum = vec![Rational::one(); k];
    let nonneg: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            let mut f = vec![Rational::zero(); k];
            f[i] = -Rational::one();
            f
        })
        .collect();
    if let Some(witness) = homogeneous_lp_witness(&kernel, &sum, &nonneg)? {
        return Err(Error::NotPointed { witness });
    }
    // h·gᵢ ≥ 1 for all i, solved over ℚᵈ
    let rows = p
        .generators()
        .iter()
        .map(|g| Inequality::new(g.iter().map(|x| -x).collect(), -Rational::one()))
        .collect();
    let h = solve_inequalities(p.dim(), rows)?.ok_or_else(|| {
        Error::InternalContradiction("pointed presentation without a positive grading".into())
    })?;
    let min = p
        .generators()
        .iter()
        .map(|g| dot(&h, g))
        .min()
        .expect("nonempty presentation");
    Ok(Grading {
        weights: h.iter().map(|w| w / &min).collect(),
    })
}

/// What [`normalize_atoms`] does with duplicates and reducible generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalizeMode {
    Reject,
    AutoReduce,
}

/// Ensures every generator is an atom and no two generators coincide.
pub fn normalize_atoms(p: &MonoidPresentation, mode: NormalizeMode) -> Result<MonoidPresentation> {
    let grading = validate_presentation(p)?;
    let mut kept: Vec<Vec<Rational>> = Vec::with_capacity(p.len());
    for (index, g) in p.generators().iter().enumerate() {
        if let Some(first) = kept.iter().position(|h| h == g) {
            if mode == NormalizeMode::Reject {
                return Err(Error::DuplicateGenerator { index, first });
            }
            continue;
        }
        kept.push(g.clone());
    }
    let deduped = MonoidPresentation::new(p.dim(), kept, p.label.clone())?;
    let ctx = IntContext::new(&deduped, &grading)?;
    let mut atoms = Vec::with_capacity(deduped.len());
    for (index, g) in deduped.generators().iter().enumerate() {
        let reducible = ctx
            .factorizations(&Element(g.clone()))?
            .into_iter()
            .find(|z| z.length() >= 2);
        match (reducible, mode) {
            (None, _) => atoms.push(g.clone()),
            (Some(z), NormalizeMode::Reject) => {
                return Err(Error::NotAnAtom {
                    index,
                    witness: z.0,
                })
            }
            (Some(_), NormalizeMode::AutoReduce) => {}
        }
    }
    MonoidPresentation::new(p.dim(), atoms, p.label.clone())
}

/// Integer image of a graded presentation: generators scaled by the common
/// denominator and an integral positive weight vector.
#[derive(Debug, Clone)]
pub(crate) struct IntContext {
    pub(crate) denominator: BigInt,
    pub(crate) gens: Vec<Vec<i128>>,
    pub(crate) weights: Vec<i128>,
    pub(crate) gen_grades: Vec<i128>,
    /// integer grade units per unit of the rational grading
    pub(crate) grade_scale: Rational,
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128()
        .ok_or_else(|| Error::Overflow(format!("coordinate {x}")))
}

impl IntContext {
    pub(crate) fn new(p: &MonoidPresentation, h: &Grading) -> Result<Self> {
        if h.weights.len() != p.dim() {
            return Err(Error::DimensionMismatch {
                expected: p.dim(),
                found: h.weights.len(),
            });
        }
        let denominator = p.denominator();
        let m = p.generator_matrix();
        let gens = (0..p.len())
            .map(|j| m.column(j).iter().map(to_i128).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let wden = common_denominator(&h.weights);
        let weights = h
            .weights
            .iter()
            .map(|w| to_i128(&(w * Rational::from_integer(wden.clone())).to_integer()))
            .collect::<Result<Vec<_>>>()?;
        let gen_grades: Vec<i128> = gens
            .iter()
            .map(|g| g.iter().zip(&weights).map(|(a, b)| a * b).sum())
            .collect();
        if let Some(i) = gen_grades.iter().position(|&g| g <= 0) {
            return Err(Error::Domain(format!(
                "grading is not positive on generator {i}"
            )));
        }
        Ok(Self {
            grade_scale: Rational::from_integer(&denominator * &wden),
            denominator,
            gens,
            weights,
            gen_grades,
        })
    }

    pub(crate) fn k(&self) -> usize {
        self.gens.len()
    }

    /// Integer coordinates of `x`, or `None` when `x` is off the lattice.
    pub(crate) fn integer_point(&self, x: &Element) -> Result<Option<Vec<i128>>> {
        let den = Rational::from_integer(self.denominator.clone());
        let mut out = Vec::with_capacity(x.0.len());
        for c in &x.0 {
            let s = c * &den;
            if !s.is_integer() {
                return Ok(None);
            }
            out.push(to_i128(&s.to_integer())?);
        }
        Ok(Some(out))
    }

    pub(crate) fn grade_of_point(&self, x: &[i128]) -> i128 {
        x.iter().zip(&self.weights).map(|(a, b)| a * b).sum()
    }

    /// Integer grade bound corresponding to a rational grade bound.
    pub(crate) fn grade_bound(&self, bound: &Rational) -> Result<i128> {
        to_i128(&(bound * &self.grade_scale).floor().to_integer())
    }

    pub(crate) fn evaluate(&self, z: &[u64]) -> Vec<i128> {
        let d = self.gens.first().map_or(0, Vec::len);
        let mut out = vec![0i128; d];
        for (c, g) in z.iter().zip(&self.gens) {
            if *c == 0 {
                continue;
            }
            for (o, x) in out.iter_mut().zip(g) {
                *o += *c as i128 * x;
            }
        }
        out
    }

    pub(crate) fn factorizations(&self, x: &Element) -> Result<Vec<FactorizationVector>> {
        let Some(point) = self.integer_point(x)? else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        if self.k() == 0 {
            if point.iter().all(|&c| c == 0) {
                out.push(FactorizationVector(Vec::new()));
            }
            return Ok(out);
        }
        let grade = self.grade_of_point(&point);
        if grade < 0 {
            return Ok(out);
        }
        let mut cur = vec![0u64; self.k()];
        let mut rem = point;
        self.descend(0, &mut rem, grade, &mut cur, &mut out);
        out.sort();
        Ok(out)
    }

    // depth-first by atom index, multiplicities descending
    fn descend(
        &self,
        i: usize,
        rem: &mut Vec<i128>,
        rem_grade: i128,
        cur: &mut Vec<u64>,
        out: &mut Vec<FactorizationVector>,
    ) {
        let w = self.gen_grades[i];
        let g = &self.gens[i];
        if i + 1 == self.k() {
            if rem_grade % w != 0 {
                return;
            }
            let c = rem_grade / w;
            if rem.iter().zip(g).all(|(r, x)| *r == c * x) {
                cur[i] = c as u64;
                out.push(FactorizationVector(cur.clone()));
                cur[i] = 0;
            }
            return;
        }
        let max = rem_grade / w;
        for (r, x) in rem.iter_mut().zip(g) {
            *r -= max * x;
        }
        let mut c = max;
        loop {
            cur[i] = c as u64;
            self.descend(i + 1, rem, rem_grade - c * w, cur, out);
            if c == 0 {
                break;
            }
            c -= 1;
            for (r, x) in rem.iter_mut().zip(g) {
                *r += x;
            }
        }
        cur[i] = 0;
    }

    /// Calls `visit` for every exponent vector of integer grade `≤ bound`,
    /// stopping early once `visit` returns `false`. Returns whether the walk
    /// ran to completion.
    pub(crate) fn for_each_vector_up_to(
        &self,
        bound: i128,
        mut visit: impl FnMut(&[u64], i128) -> bool,
    ) -> bool {
        if self.k() == 0 || bound < 0 {
            return true;
        }
        let mut cur = vec![0u64; self.k()];
        self.walk(0, bound, 0, &mut cur, &mut visit)
    }

    fn walk(
        &self,
        i: usize,
        bound: i128,
        used: i128,
        cur: &mut Vec<u64>,
        visit: &mut impl FnMut(&[u64], i128) -> bool,
    ) -> bool {
        if i == self.k() {
            return visit(cur, used);
        }
        let w = self.gen_grades[i];
        let mut c = 0i128;
        while used + c * w <= bound {
            cur[i] = c as u64;
            if !self.walk(i + 1, bound, used + c * w, cur, visit) {
                cur[i] = 0;
                return false;
            }
            c += 1;
        }
        cur[i] = 0;
        true
    }
}

/// A validated, normalized presentation together with its grading.
#[derive(Debug, Clone)]
pub struct Monoid {
    presentation: MonoidPresentation,
    grading: Grading,
    ctx: IntContext,
}

impl Monoid {
    /// Validates `p` and requires every generator to be a distinct atom.
    pub fn new(p: MonoidPresentation) -> Result<Self> {
        let grading = validate_presentation(&p)?;
        let normalized = normalize_atoms(&p, NormalizeMode::Reject)?;
        debug_assert_eq!(normalized, p);
        Self::with_grading(p, grading)
    }

    /// Validates and auto-reduces `p`.
    pub fn reduced(p: &MonoidPresentation) -> Result<Self> {
        let normalized = normalize_atoms(p, NormalizeMode::AutoReduce)?;
        let grading = validate_presentation(&normalized)?;
        Self::with_grading(normalized, grading)
    }

    fn with_grading(presentation: MonoidPresentation, grading: Grading) -> Result<Self> {
        let ctx = IntContext::new(&presentation, &grading)?;
        Ok(Self {
            presentation,
            grading,
            ctx,
        })
    }

    pub fn presentation(&self) -> &MonoidPresentation {
        &self.presentation
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    /// Number of atoms.
    pub fn atom_count(&self) -> usize {
        self.presentation.len()
    }

    pub(crate) fn ctx(&self) -> &IntContext {
        &self.ctx
    }

    pub fn grade(&self, x: &Element) -> Rational {
        self.grading.grade(&x.0)
    }

    pub fn evaluate(&self, z: &FactorizationVector) -> Result<Element> {
        self.presentation.evaluate(z)
    }

    /// `Z(x)`, sorted lexicographically.
    pub fn factorizations(&self, x: &Element) -> Result<Vec<FactorizationVector>> {
        if x.0.len() != self.presentation.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.presentation.dim(),
                found: x.0.len(),
            });
        }
        self.ctx.factorizations(x)
    }

    pub fn contains(&self, x: &Element) -> Result<bool> {
        Ok(!self.factorizations(x)?.is_empty())
    }
}
