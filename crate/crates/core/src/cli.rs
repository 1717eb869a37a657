//! The `factolab` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{classify, ClassificationReport, FactorizationRelation};
use crate::construct::{
    build_master_monoid, fixture_gallery, pls_spec, run_gallery, MasterSpec, DEFAULT_TRUNCATION,
};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational};
use crate::monoid::{normalize_atoms, Element, Monoid, MonoidPresentation, NormalizeMode};
use crate::semiring::{
    algebra_witness, binomial_irreducibility_check, case1_relation, is_additive_atom, natural_atom_test,
    PolyRelation, SemiringPolynomial,
};

pub const TRUNCATION_ENV: &str = "FACTOLAB_TRUNCATION_K";

#[derive(Debug, Parser)]
#[command(name = "factolab", version, about = "Factorization invariants of finitely generated monoids")]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a presentation
    Analyze {
        file: PathBuf,
        /// Drop duplicate and non-atom generators instead of rejecting them
        #[arg(long)]
        auto_reduce: bool,
    },
    /// List the factorizations and lengths of an element
    Factorize {
        file: PathBuf,
        /// Comma-separated coordinates, e.g. "0,2,2" or "3/2"
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long)]
        auto_reduce: bool,
    },
    /// Build the monoid whose master relation has the given coefficients
    ConstructMaster {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u64>,
    },
    /// A monoid with m purely long and n purely short atoms
    PlsExample { m: usize, n: usize },
    /// Run the fixture gallery and compare with expected verdicts
    Gallery {
        /// Truncation parameter (default 4, or $FACTOLAB_TRUNCATION_K)
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        /// Print the fixtures with their expectations instead of running them
        #[arg(long)]
        export: bool,
    },
    /// Irreducibility of a polynomial in N0[x;M]
    SemiringAtom { file: PathBuf },
    /// Binomial witnesses in Q[x;<a,b>]
    AlgebraWitness {
        #[arg(allow_hyphen_values = true)]
        a: i64,
        #[arg(allow_hyphen_values = true)]
        b: i64,
    },
    /// Monomial relation between two atoms of a rank-one monoid
    Case1 { file: PathBuf, i: usize, j: usize },
}

/// Result of a command: the report and the exit status it implies.
struct Output {
    json: Value,
    text: String,
    code: i32,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Self { json, text, code: 0 }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code: 0 on success, 1 on input errors, 2 when the gallery disagrees
/// with its expectations.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(o) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&o.json).expect("values serialize"),
                Format::Text => o.text.trim_end().to_owned(),
            };
            let _ = writeln!(out, "{body}");
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_presentation(path: &Path, auto_reduce: bool) -> Result<MonoidPresentation> {
    let p: MonoidPresentation = read_json(path)?;
    if auto_reduce {
        normalize_atoms(&p, NormalizeMode::AutoReduce)
    } else {
        Ok(p)
    }
}

fn execute(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Analyze { file, auto_reduce } => {
            let p = load_presentation(file, *auto_reduce)?;
            let r = classify(&p)?;
            Ok(Output::ok(to_value(&r), report_text(&p, &r)))
        }
        Command::Factorize {
            file,
            element,
            auto_reduce,
        } => {
            let m = Monoid::new(load_presentation(file, *auto_reduce)?)?;
            let x = Element(
                element
                    .split(',')
                    .map(parse_rational)
                    .collect::<Result<Vec<_>>>()?,
            );
            let zs = m.factorizations(&x)?;
            let lengths: std::collections::BTreeSet<u64> = zs.iter().map(|z| z.length()).collect();
            let mut text = format!("element {x} in {}\n", m.presentation());
            let _ = writeln!(text, "{} factorizations, lengths {lengths:?}", zs.len());
            for z in &zs {
                let _ = writeln!(text, "  {:?} (length {})", z.multiplicities(), z.length());
            }
            let json = json!({
                "element": x.0.iter().map(format_rational).collect::<Vec<_>>(),
                "factorizations": zs,
                "lengths": lengths,
            });
            Ok(Output::ok(json, text))
        }
        Command::ConstructMaster { a, b } => construction(MasterSpec::new(a.clone(), b.clone())?),
        Command::PlsExample { m, n } => construction(pls_spec(*m, *n)?),
        Command::Gallery { k, export } => gallery(*k, *export),
        Command::SemiringAtom { file } => {
            let f: SemiringPolynomial = read_json(file)?;
            let t = natural_atom_test(&f)?;
            let additive = is_additive_atom(&f);
            let mut text = format!("{f}: ");
            match &t.factors {
                None => text.push_str("irreducible"),
                Some((g, h)) => {
                    let _ = write!(text, "reducible as ({g}) * ({h})");
                }
            }
            let _ = write!(
                text,
                "\nadditive atom: {additive}\ncandidate factors checked: {}",
                t.candidates_checked
            );
            let json = json!({
                "polynomial": f.to_string(),
                "is_atom": t.is_atom,
                "factors": t.factors.as_ref().map(|(g, h)| [g.to_string(), h.to_string()]),
                "is_additive_atom": additive,
                "candidates_checked": t.candidates_checked,
            });
            Ok(Output::ok(json, text))
        }
        Command::AlgebraWitness { a, b } => {
            let w = algebra_witness(*a, *b)?;
            let irreducible = binomial_irreducibility_check(&w)?;
            let verified = w.verify()?;
            let names = |z: &[SemiringPolynomial]| z.iter().map(ToString::to_string).collect::<Vec<_>>();
            let mut text = format!(
                "a = {}, b = {}: p = {}, Q = {}, r = {}, S = {}, c = {}\n",
                w.a, w.b, w.p, w.q, w.r, w.s, w.c
            );
            let _ = writeln!(text, "a1 = {}\na2 = {}", w.a1, w.a2);
            let _ = writeln!(text, "z1 = {{{}}}", names(&w.z1).join(", "));
            let _ = writeln!(text, "z2 = {{{}}}", names(&w.z2).join(", "));
            let _ = writeln!(text, "product = {}", w.f);
            let _ = writeln!(text, "binomials irreducible: {irreducible}\nverified: {verified}");
            let json = json!({
                "a": w.a, "b": w.b, "p": w.p, "Q": w.q, "r": w.r, "S": w.s, "c": w.c,
                "a1": w.a1.to_string(),
                "a2": w.a2.to_string(),
                "z1": names(&w.z1),
                "z2": names(&w.z2),
                "product": w.f.to_string(),
                "length": w.z1.len(),
                "binomials_irreducible": irreducible,
                "verified": verified,
            });
            Ok(Output::ok(json, text))
        }
        Command::Case1 { file, i, j } => {
            let p: MonoidPresentation = read_json(file)?;
            let rel = case1_relation(&p, *i, *j)?;
            Ok(poly_relation_output(&rel)?)
        }
    }
}

fn poly_relation_output(rel: &PolyRelation) -> Result<Output> {
    let (l, r) = rel.products()?;
    let names = |z: &[SemiringPolynomial]| z.iter().map(ToString::to_string).collect::<Vec<_>>();
    let text = format!(
        "left:  {} factors of product {l}\nright: {} factors of product {r}\nbalanced: {}, irredundant: {}\n",
        rel.left.len(),
        rel.right.len(),
        rel.is_balanced(),
        rel.is_irredundant()
    );
    let json = json!({
        "left": names(&rel.left),
        "right": names(&rel.right),
        "left_product": l.to_string(),
        "right_product": r.to_string(),
        "holds": l == r,
        "balanced": rel.is_balanced(),
        "irredundant": rel.is_irredundant(),
    });
    Ok(Output::ok(json, text))
}

fn construction(spec: MasterSpec) -> Result<Output> {
    let p = build_master_monoid(&spec);
    let r = classify(&p)?;
    let text = format!("a = {:?}, b = {:?}\n{}", spec.a(), spec.b(), report_text(&p, &r));
    let json = json!({
        "spec": to_value(&spec),
        "presentation": to_value(&p),
        "report": to_value(&r),
    });
    Ok(Output::ok(json, text))
}

fn truncation(k: Option<i64>) -> Result<i64> {
    if let Some(k) = k {
        return Ok(k);
    }
    match std::env::var(TRUNCATION_ENV) {
        Err(_) => Ok(DEFAULT_TRUNCATION),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{TRUNCATION_ENV}={v:?} is not an integer"))),
    }
}

fn gallery(k: Option<i64>, export: bool) -> Result<Output> {
    let k = truncation(k)?;
    let fixtures = fixture_gallery(k)?;
    if export {
        let text = fixtures
            .iter()
            .map(|f| format!("{}: {}", f.name, f.presentation))
            .collect::<Vec<_>>()
            .join("\n");
        return Ok(Output::ok(to_value(&fixtures), text));
    }
    let outcomes = run_gallery(&fixtures);
    let passed = outcomes.iter().all(|o| o.passed);
    let mut text = format!("gallery with K = {k}\n");
    for o in &outcomes {
        let _ = writeln!(text, "{} {}", if o.passed { "PASS" } else { "FAIL" }, o.name);
        for m in &o.mismatches {
            let _ = writeln!(text, "    {m}");
        }
    }
    let json = json!({
        "k": k,
        "passed": passed,
        "fixtures": outcomes
            .iter()
            .map(|o| json!({"name": o.name, "passed": o.passed, "mismatches": o.mismatches}))
            .collect::<Vec<_>>(),
    });
    Ok(Output {
        json,
        text,
        code: if passed { 0 } else { 2 },
    })
}

fn relation_text(r: &FactorizationRelation) -> String {
    format!("{:?} = {:?}", r.left.multiplicities(), r.right.multiplicities())
}

/// Plain-text rendering of a classification.
pub fn report_text(p: &MonoidPresentation, r: &ClassificationReport) -> String {
    let mut s = String::new();
    if let Some(label) = &r.label {
        let _ = writeln!(s, "{label}");
    }
    let _ = writeln!(s, "monoid {p}: {} atoms, kernel rank {}", r.atom_count, r.kernel_rank);
    for b in &r.kernel_basis {
        let parts: Vec<String> = b.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "  kernel vector ({})", parts.join(","));
    }
    let _ = writeln!(
        s,
        "UFM {}  LFM {}  HFM {}  PLSM {}",
        r.is_ufm, r.is_lfm, r.is_hfm, r.is_plsm
    );
    let _ = writeln!(
        s,
        "prime {:?}  purely long {:?}  purely short {:?}",
        r.prime, r.purely_long, r.purely_short
    );
    if let Some(m) = &r.master {
        let _ = writeln!(s, "master relation {}", relation_text(m));
    }
    for w in &r.witnesses {
        let _ = writeln!(s, "witness {:?}: {} at {}", w.claim, relation_text(&w.relation), w.element);
    }
    s
}
