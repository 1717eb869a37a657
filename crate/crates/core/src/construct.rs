//! Constructions: monoids with a prescribed master relation, monoids with a
//! prescribed number of purely long and purely short atoms, and the gallery
//! of worked examples with their expected verdicts.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use crate::classify::{classify, ClassificationReport, FactorizationRelation};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::monoid::{Element, FactorizationVector, Monoid, MonoidPresentation};
use crate::par::*;

/// Coefficients of a relation `Σ aᵢαᵢ = Σ bⱼβⱼ` with the long side first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MasterSpec {
    a: Vec<u64>,
    b: Vec<u64>,
}

impl MasterSpec {
    pub fn new(a: Vec<u64>, b: Vec<u64>) -> Result<Self> {
        let bad = |why: &str| Err(Error::InvalidMasterSpec(why.to_owned()));
        if a.is_empty() || b.is_empty() {
            return bad("both sides must be nonempty (m, n >= 1)");
        }
        if a.iter().chain(&b).any(|&x| x == 0) {
            return bad("all coefficients must be positive");
        }
        if a.iter().chain(&b).fold(0u64, |g, &x| g.gcd(&x)) != 1 {
            return bad("the coefficients must have no common divisor greater than 1");
        }
        if a == [1] {
            return bad("m = 1 requires a_1 != 1");
        }
        if b == [1] {
            return bad("n = 1 requires b_1 != 1");
        }
        if a.iter().sum::<u64>() <= b.iter().sum::<u64>() {
            return bad("sum of a must exceed sum of b");
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    /// `(Σ aᵢαᵢ, Σ bⱼβⱼ)` over the generators of [`build_master_monoid`].
    pub fn relation(&self) -> FactorizationRelation {
        let (m, n) = (self.a.len(), self.b.len());
        let mut left = vec![0; m + n];
        let mut right = vec![0; m + n];
        left[..m].copy_from_slice(&self.a);
        right[m..].copy_from_slice(&self.b);
        FactorizationRelation::new(FactorizationVector(left), FactorizationVector(right))
    }
}

/// Generators `α₁..α_m, β₁..β_n` in `ℚ^{m+n-1}`: the `αᵢ` and `β₁..β_{n-1}` are
/// standard basis vectors and `β_n = (Σ aᵢαᵢ − Σ_{j<n} bⱼβⱼ) / b_n`, so the
/// kernel lattice is spanned by `(a, −b)` alone.
pub fn build_master_monoid(spec: &MasterSpec) -> MonoidPresentation {
    let (m, n) = (spec.a.len(), spec.b.len());
    let dim = m + n - 1;
    let unit = |i: usize| -> Vec<Rational> {
        (0..dim)
            .map(|j| Rational::from_integer(((i == j) as i64).into()))
            .collect()
    };
    let mut gens: Vec<Vec<Rational>> = (0..dim).map(unit).collect();
    let bn = Rational::from_integer(spec.b[n - 1].into());
    let last: Vec<Rational> = (0..dim)
        .map(|j| {
            let c: i64 = if j < m {
                spec.a[j] as i64
            } else {
                -(spec.b[j - m] as i64)
            };
            Rational::from_integer(c.into()) / &bn
        })
        .collect();
    gens.push(last);
    let fmt = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    MonoidPresentation::new(dim, gens, Some(format!("master a=({}) b=({})", fmt(&spec.a), fmt(&spec.b))))
        .expect("dimensions agree by construction")
}

/// The spec used by [`pls_example`]: the lexicographically smallest valid
/// `b`, then the smallest valid `a`. That is `b = (1,…,1)` for `n ≥ 2` or
/// `b = (2)`, and `a = (1,…,1,t)` with `t` as small as `Σa > Σb` allows.
pub fn pls_spec(m: usize, n: usize) -> Result<MasterSpec> {
    if m == 0 || n == 0 {
        return Err(Error::Domain("pls_example needs m, n >= 1".into()));
    }
    let b: Vec<u64> = if n == 1 { vec![2] } else { vec![1; n] };
    let sb: u64 = b.iter().sum();
    let mut a = vec![1u64; m];
    a[m - 1] = (sb + 1).saturating_sub(m as u64 - 1).max(1);
    MasterSpec::new(a, b)
}

/// A monoid with exactly `m` purely long and `n` purely short atoms.
pub fn pls_example(m: usize, n: usize) -> Result<MonoidPresentation> {
    Ok(build_master_monoid(&pls_spec(m, n)?))
}

/// Every valid spec with `1 ≤ m, n ≤ max_len` and entries in `1..=max_entry`.
pub fn valid_master_specs(max_len: usize, max_entry: u64) -> Vec<MasterSpec> {
    fn tuples(len: usize, max: u64) -> Vec<Vec<u64>> {
        (0..len).fold(vec![Vec::new()], |acc, _| {
            acc.into_iter()
                .flat_map(|t| {
                    (1..=max).map(move |x| {
                        let mut t = t.clone();
                        t.push(x);
                        t
                    })
                })
                .collect()
        })
    }
    let mut out = Vec::new();
    for m in 1..=max_len {
        for a in tuples(m, max_entry) {
            for n in 1..=max_len {
                for b in tuples(n, max_entry) {
                    if let Ok(spec) = MasterSpec::new(a.clone(), b) {
                        out.push(spec);
                    }
                }
            }
        }
    }
    out
}

/// Outcome of classifying a constructed master monoid.
#[derive(Debug, Clone, Serialize)]
pub struct RoundTrip {
    pub spec: MasterSpec,
    pub failures: Vec<String>,
}

impl RoundTrip {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Builds, classifies and compares against the guaranteed shape: proper
/// LFM, `𝓛 = {αᵢ}`, `𝓢 = {βⱼ}`, master relation `(Σaᵢαᵢ, Σbⱼβⱼ)`.
pub fn verify_master_spec(spec: &MasterSpec) -> RoundTrip {
    let m = spec.a.len();
    let k = m + spec.b.len();
    let mut failures = Vec::new();
    match classify(&build_master_monoid(spec)) {
        Err(e) => failures.push(format!("classification failed: {e}")),
        Ok(r) => {
            if !r.is_proper_lfm() {
                failures.push("not a proper LFM".into());
            }
            if r.purely_long != (0..m).collect::<BTreeSet<_>>() {
                failures.push(format!("purely long atoms {:?}", r.purely_long));
            }
            if r.purely_short != (m..k).collect::<BTreeSet<_>>() {
                failures.push(format!("purely short atoms {:?}", r.purely_short));
            }
            let want = spec.relation();
            if r.master.as_ref() != Some(&want) && r.master.as_ref() != Some(&want.swapped()) {
                failures.push(format!("master relation {:?}", r.master));
            }
        }
    }
    RoundTrip {
        spec: spec.clone(),
        failures,
    }
}

pub fn master_sweep(specs: &[MasterSpec]) -> Vec<RoundTrip> {
    specs.par_iter().map(verify_master_spec).collect()
}

pub fn master_sweep_sequential(specs: &[MasterSpec]) -> Vec<RoundTrip> {
    specs.iter().map(verify_master_spec).collect()
}

pub const DEFAULT_TRUNCATION: i64 = 4;

/// Expected (partial) classification of a fixture.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Expectation {
    #[serde(rename = "is_UFM", skip_serializing_if = "Option::is_none")]
    pub is_ufm: Option<bool>,
    #[serde(rename = "is_LFM", skip_serializing_if = "Option::is_none")]
    pub is_lfm: Option<bool>,
    #[serde(rename = "is_HFM", skip_serializing_if = "Option::is_none")]
    pub is_hfm: Option<bool>,
    #[serde(rename = "is_PLSM", skip_serializing_if = "Option::is_none")]
    pub is_plsm: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub purely_long: Option<BTreeSet<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub purely_short: Option<BTreeSet<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub master: Option<FactorizationRelation>,
    /// an element whose factorizations include two distinct ones of this length
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_equal_length")]
    pub equal_length_pair: Option<(Element, u64)>,
    /// an element together with its exact set of atomic divisors
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_divisors")]
    pub atomic_divisors: Option<(Element, BTreeSet<usize>)>,
}

fn ser_equal_length<S: serde::Serializer>(
    v: &Option<(Element, u64)>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let (x, len) = v.as_ref().expect("skipped when None");
    let mut map = s.serialize_map(Some(2))?;
    map.serialize_entry("element", &x.0.iter().map(crate::linalg::format_rational).collect::<Vec<_>>())?;
    map.serialize_entry("length", len)?;
    map.end()
}

fn ser_divisors<S: serde::Serializer>(
    v: &Option<(Element, BTreeSet<usize>)>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let (x, atoms) = v.as_ref().expect("skipped when None");
    let mut map = s.serialize_map(Some(2))?;
    map.serialize_entry("element", &x.0.iter().map(crate::linalg::format_rational).collect::<Vec<_>>())?;
    map.serialize_entry("atoms", atoms)?;
    map.end()
}

/// A named presentation with expected verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct Fixture {
    pub name: String,
    #[serde(flatten)]
    pub presentation: MonoidPresentation,
    pub expected: Expectation,
}

impl Fixture {
    /// Mismatches between the expectation and a fresh classification.
    pub fn check(&self, report: &ClassificationReport) -> Result<Vec<String>> {
        let e = &self.expected;
        let mut out = Vec::new();
        let mut flag = |name: &str, want: Option<bool>, got: bool| {
            if let Some(w) = want {
                if w != got {
                    out.push(format!("{name}: expected {w}, got {got}"));
                }
            }
        };
        flag("is_UFM", e.is_ufm, report.is_ufm);
        flag("is_LFM", e.is_lfm, report.is_lfm);
        flag("is_HFM", e.is_hfm, report.is_hfm);
        flag("is_PLSM", e.is_plsm, report.is_plsm);
        if let Some(l) = &e.purely_long {
            if *l != report.purely_long {
                out.push(format!("purely_long: expected {l:?}, got {:?}", report.purely_long));
            }
        }
        if let Some(s) = &e.purely_short {
            if *s != report.purely_short {
                out.push(format!("purely_short: expected {s:?}, got {:?}", report.purely_short));
            }
        }
        if let Some(m) = &e.master {
            if report.master.as_ref() != Some(m) {
                out.push(format!("master: expected {m:?}, got {:?}", report.master));
            }
        }
        if e.equal_length_pair.is_some() || e.atomic_divisors.is_some() {
            let monoid = Monoid::new(self.presentation.clone())?;
            if let Some((x, len)) = &e.equal_length_pair {
                let n = monoid
                    .factorizations(x)?
                    .iter()
                    .filter(|z| z.length() == *len)
                    .count();
                if n < 2 {
                    out.push(format!("{x} has {n} factorizations of length {len}, expected at least 2"));
                }
            }
            if let Some((x, atoms)) = &e.atomic_divisors {
                let got = crate::monoid::atomic_divisors(&monoid, x)?;
                if got != *atoms {
                    out.push(format!("atomic divisors of {x}: expected {atoms:?}, got {got:?}"));
                }
            }
        }
        Ok(out)
    }
}

fn numerical(gens: &[i64], label: &str) -> MonoidPresentation {
    let rows: Vec<Vec<i64>> = gens.iter().map(|&g| vec![g]).collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    MonoidPresentation::from_integers(&refs)
        .expect("uniform rows")
        .with_label(label)
}

/// `(ℕ₀∖{1}) × N_K` with `N_K = ⟨(n, 1) : n ∈ range⟩`, generators ordered
/// `(2|0,0), (3|0,0), (0|n,1)…`.
pub fn truncated_product(range: impl Iterator<Item = i64>, label: &str) -> MonoidPresentation {
    let mut rows = vec![vec![2, 0, 0], vec![3, 0, 0]];
    rows.extend(range.map(|n| vec![0, n, 1]));
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    MonoidPresentation::from_integers(&refs)
        .expect("uniform rows")
        .with_label(label)
}

fn set(v: impl IntoIterator<Item = usize>) -> Option<BTreeSet<usize>> {
    Some(v.into_iter().collect())
}

/// Worked examples with their expected verdicts, truncated at `k ≥ 2`.
///
/// The product examples stand in for monoids with infinitely many atoms;
/// only the truncations are computed. The untruncated integer version is a
/// PLSM that is not an FFM, which no finite truncation can exhibit; the
/// truncation instead shows every `(0|n,1)` dividing `(0|0,2)`.
pub fn fixture_gallery(k: i64) -> Result<Vec<Fixture>> {
    if k < 2 {
        return Err(Error::InvalidTruncation(k));
    }
    let fv = |v: Vec<u64>| FactorizationVector(v);
    let mut out = Vec::new();

    out.push(Fixture {
        name: "two-three".into(),
        presentation: numerical(&[2, 3], "<2,3>"),
        expected: Expectation {
            is_ufm: Some(false),
            is_lfm: Some(true),
            is_hfm: Some(false),
            is_plsm: Some(true),
            purely_long: set([0]),
            purely_short: set([1]),
            master: Some(FactorizationRelation::new(fv(vec![3, 0]), fv(vec![0, 2]))),
            ..Default::default()
        },
    });

    out.push(Fixture {
        name: "three-four-five".into(),
        presentation: numerical(&[3, 4, 5], "<3,4,5>"),
        expected: Expectation {
            is_lfm: Some(false),
            is_hfm: Some(false),
            is_plsm: Some(false),
            purely_long: set([]),
            purely_short: set([]),
            equal_length_pair: Some((Element::from_integers(&[8]), 2)),
            ..Default::default()
        },
    });

    out.push(Fixture {
        name: "product-truncated".into(),
        presentation: truncated_product(0..=k, &format!("(N0 minus 1) x N, n in [0,{k}]")),
        expected: Expectation {
            is_lfm: Some(false),
            is_hfm: Some(false),
            is_plsm: Some(true),
            purely_long: set([0]),
            purely_short: set([1]),
            equal_length_pair: Some((Element::from_integers(&[0, 2, 2]), 2)),
            atomic_divisors: Some((Element::from_integers(&[0, 2, 2]), [2, 3, 4].into_iter().collect())),
            ..Default::default()
        },
    });

    let all_n = 2..(2 + 2 * k as usize + 1);
    out.push(Fixture {
        name: "product-integers-truncated".into(),
        presentation: truncated_product(-k..=k, &format!("(N0 minus 1) x N, n in [-{k},{k}]")),
        expected: Expectation {
            is_lfm: Some(false),
            is_hfm: Some(false),
            is_plsm: Some(true),
            purely_long: set([0]),
            purely_short: set([1]),
            atomic_divisors: Some((Element::from_integers(&[0, 0, 2]), all_n.collect())),
            ..Default::default()
        },
    });

    let rows: Vec<Vec<i64>> = (0..=k).map(|n| vec![n, 1]).collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    out.push(Fixture {
        name: "n-truncated".into(),
        presentation: MonoidPresentation::from_integers(&refs)?
            .with_label(format!("N, n in [0,{k}]")),
        expected: Expectation {
            is_ufm: Some(false),
            is_lfm: Some(false),
            is_hfm: Some(true),
            is_plsm: Some(false),
            purely_long: set([]),
            purely_short: set([]),
            atomic_divisors: Some((Element::from_integers(&[k, 2]), set(0..=k as usize).unwrap())),
            ..Default::default()
        },
    });

    let x = Rational::new(2.into(), 3.into());
    let scaled = MonoidPresentation::puiseux(&[
        Rational::from_integer(3.into()) * &x,
        Rational::from_integer(4.into()) * &x,
        Rational::from_integer(5.into()) * &x,
    ])?
    .with_label("<3x,4x,5x>, x = 2/3");
    out.push(Fixture {
        name: "three-four-five-scaled".into(),
        presentation: scaled,
        expected: Expectation {
            is_lfm: Some(false),
            is_plsm: Some(false),
            purely_long: set([]),
            purely_short: set([]),
            ..Default::default()
        },
    });

    let spec = MasterSpec::new(vec![2, 1], vec![1, 1])?;
    out.push(Fixture {
        name: "master-2-1-vs-1-1".into(),
        presentation: build_master_monoid(&spec),
        expected: Expectation {
            is_ufm: Some(false),
            is_lfm: Some(true),
            is_plsm: Some(true),
            purely_long: set([0, 1]),
            purely_short: set([2, 3]),
            master: Some(spec.relation()),
            ..Default::default()
        },
    });

    Ok(out)
}

/// A fixture run: the classification and any mismatches against expectations.
#[derive(Debug, Clone, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub passed: bool,
    pub mismatches: Vec<String>,
    pub report: Option<ClassificationReport>,
}

fn run_fixture(f: &Fixture) -> FixtureOutcome {
    let (mismatches, report) = match classify(&f.presentation) {
        Err(e) => (vec![format!("classification failed: {e}")], None),
        Ok(r) => match f.check(&r) {
            Ok(m) => (m, Some(r)),
            Err(e) => (vec![format!("check failed: {e}")], Some(r)),
        },
    };
    FixtureOutcome {
        name: f.name.clone(),
        passed: mismatches.is_empty(),
        mismatches,
        report,
    }
}

/// Classifies every fixture and diffs against its expectations.
pub fn run_gallery(fixtures: &[Fixture]) -> Vec<FixtureOutcome> {
    fixtures.par_iter().map(run_fixture).collect()
}

pub fn run_gallery_sequential(fixtures: &[Fixture]) -> Vec<FixtureOutcome> {
    fixtures.iter().map(run_fixture).collect()
}

/// Whether `r` and `s` give identical verdicts and labels.
pub fn same_verdicts(r: &ClassificationReport, s: &ClassificationReport) -> bool {
    r.is_ufm == s.is_ufm
        && r.is_lfm == s.is_lfm
        && r.is_hfm == s.is_hfm
        && r.is_plsm == s.is_plsm
        && r.labels == s.labels
        && r.master == s.master
}
