#![allow(dead_code)]

use std::collections::HashMap;

use factolab::classify::{relation_evidence, FactorizationRelation};
use factolab::{normalize_atoms, validate_presentation, MonoidPresentation, NormalizeMode, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn presentation(rows: &[Vec<i64>]) -> MonoidPresentation {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    MonoidPresentation::from_integers(&refs).unwrap()
}

pub fn numerical(gens: &[i64]) -> MonoidPresentation {
    presentation(&gens.iter().map(|&g| vec![g]).collect::<Vec<_>>())
}

/// Integer rows of a presentation whose generators are all integral.
pub fn integer_rows(p: &MonoidPresentation) -> Vec<Vec<i64>> {
    p.generators()
        .iter()
        .map(|g| {
            g.iter()
                .map(|c| {
                    assert!(c.is_integer());
                    i64::try_from(c.to_integer()).unwrap()
                })
                .collect()
        })
        .collect()
}

/// A pointed presentation with `2..=max_atoms` integer generators in
/// dimension `1..=max_dim`, entries in `lo..=hi`, auto-reduced to its atoms.
pub fn random_presentation(rng: &mut ChaCha8Rng, max_dim: usize, max_atoms: usize, lo: i64, hi: i64) -> MonoidPresentation {
    loop {
        let d = rng.gen_range(1..=max_dim);
        let k = rng.gen_range(2..=max_atoms);
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..d).map(|_| rng.gen_range(lo..=hi)).collect())
            .collect();
        if rows.iter().any(|r| r.iter().all(|&x| x == 0)) {
            continue;
        }
        let p = presentation(&rows);
        if validate_presentation(&p).is_err() {
            continue;
        }
        if let Ok(reduced) = normalize_atoms(&p, NormalizeMode::AutoReduce) {
            return reduced;
        }
    }
}

/// Every exponent vector of length at most `max_len`, grouped by the element
/// it evaluates to.
pub fn naive_fibers(rows: &[Vec<i64>], max_len: u64) -> HashMap<Vec<i64>, Vec<Vec<u64>>> {
    fn go(
        rows: &[Vec<i64>],
        i: usize,
        left: u64,
        z: &mut Vec<u64>,
        x: &mut Vec<i64>,
        out: &mut HashMap<Vec<i64>, Vec<Vec<u64>>>,
    ) {
        if i == rows.len() {
            out.entry(x.clone()).or_default().push(z.clone());
            return;
        }
        for c in 0..=left {
            z.push(c);
            go(rows, i + 1, left - c, z, x, out);
            z.pop();
            for (xj, r) in x.iter_mut().zip(&rows[i]) {
                *xj += r;
            }
        }
        for (xj, r) in x.iter_mut().zip(&rows[i]) {
            *xj -= r * (left as i64 + 1);
        }
    }
    let mut out = HashMap::new();
    let d = rows.first().map_or(0, Vec::len);
    go(rows, 0, max_len, &mut Vec::new(), &mut vec![0; d], &mut out);
    out
}

/// What exhaustive enumeration up to a grade bound says about a monoid.
#[derive(Debug, Default)]
pub struct BruteEvidence {
    pub any_relation: bool,
    pub balanced: bool,
    pub unbalanced: bool,
    pub mentioned: Vec<bool>,
    pub not_long: Vec<bool>,
    pub not_short: Vec<bool>,
    pub relations: Vec<FactorizationRelation>,
}

pub fn brute_evidence(p: &MonoidPresentation, grade: i64) -> BruteEvidence {
    let k = p.len();
    let relations = relation_evidence(p, &q(grade)).unwrap();
    let mut e = BruteEvidence {
        mentioned: vec![false; k],
        not_long: vec![false; k],
        not_short: vec![false; k],
        ..Default::default()
    };
    for r in &relations {
        let (l, s) = (r.left.length(), r.right.length());
        assert!(l >= s, "evidence lists the longer side first");
        e.any_relation = true;
        let balanced = l == s;
        e.balanced |= balanced;
        e.unbalanced |= !balanced;
        for i in 0..k {
            let on_long = r.left.multiplicities()[i] > 0;
            let on_short = r.right.multiplicities()[i] > 0;
            e.mentioned[i] |= on_long || on_short;
            e.not_short[i] |= on_long || (balanced && on_short);
            e.not_long[i] |= on_short || (balanced && on_long);
        }
    }
    e.relations = relations;
    e
}

/// Integer division of dense polynomials, `None` unless exact.
pub fn dense_divide(f: &[i64], g: &[i64]) -> Option<Vec<i64>> {
    let dg = g.iter().rposition(|&c| c != 0)?;
    let df = match f.iter().rposition(|&c| c != 0) {
        None => return Some(vec![]),
        Some(d) => d,
    };
    if df < dg {
        return None;
    }
    let mut r = f[..=df].to_vec();
    let mut quot = vec![0; df - dg + 1];
    for i in (0..=df - dg).rev() {
        let lead = r[i + dg];
        if lead % g[dg] != 0 {
            return None;
        }
        let c = lead / g[dg];
        quot[i] = c;
        for (j, gj) in g[..=dg].iter().enumerate() {
            r[i + j] -= c * gj;
        }
    }
    r.iter().all(|&c| c == 0).then_some(quot)
}

pub fn dense_mul(f: &[i64], g: &[i64]) -> Vec<i64> {
    if f.is_empty() || g.is_empty() {
        return vec![];
    }
    let mut out = vec![0; f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// All dense coefficient vectors of the given length with entries in `0..=max`.
pub fn dense_polys(len: usize, max: i64) -> Vec<Vec<i64>> {
    (0..len).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|v| {
                (0..=max).map(move |c| {
                    let mut v = v.clone();
                    v.push(c);
                    v
                })
            })
            .collect()
    })
}

/// Exhaustive check for a factorization `f = g·h` in `ℕ₀[x]` with `g, h ≠ 1`.
pub fn dense_is_reducible(f: &[i64]) -> bool {
    let max = *f.iter().max().unwrap();
    let deg = f.iter().rposition(|&c| c != 0).unwrap();
    dense_polys(deg + 1, max).into_iter().any(|g| {
        let nonzero = g.iter().any(|&c| c != 0);
        let is_one = g[0] == 1 && g[1..].iter().all(|&c| c == 0);
        nonzero
            && !is_one
            && dense_divide(f, &g).is_some_and(|h| {
                h.iter().all(|&c| c >= 0) && !(h.first() == Some(&1) && h[1..].iter().all(|&c| c == 0))
            })
    })
}

fn kernel_i64(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = factolab::linalg::IntMatrix::from_rows(a).unwrap();
    factolab::linalg::integer_kernel(&m)
        .vectors()
        .iter()
        .map(|v| v.iter().map(|x| i64::try_from(x).unwrap()).collect())
        .collect()
}

fn apply(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

fn rational_rank(a: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rational>> = a.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != q(0)) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && m[i][c] != q(0) {
                let f = &m[i][c] / &m[rank][c];
                let pivot = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Calls `visit` on every vector of `[-r, r]^n`.
pub fn for_each_in_box(n: usize, r: i64, mut visit: impl FnMut(&[i64])) {
    let mut v = vec![-r; n];
    loop {
        visit(&v);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if v[i] < r {
                v[i] += 1;
                break;
            }
            v[i] = -r;
            i += 1;
        }
    }
}

/// Coordinates of `v` in an echelon basis, if `v` is an integer combination.
fn echelon_coordinates(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let mut rest = v.to_vec();
    let mut coeffs = Vec::new();
    for b in basis {
        let p = b.iter().position(|&x| x != 0)?;
        if rest[p] % b[p] != 0 {
            return None;
        }
        let c = rest[p] / b[p];
        for (r, x) in rest.iter_mut().zip(b) {
            *r -= c * x;
        }
        coeffs.push(c);
    }
    rest.iter().all(|&x| x == 0).then_some(coeffs)
}

/// Random `rows × cols` matrices with entries in `[-5, 5]`: the kernel basis
/// is in echelon form, lies in the kernel, has rank `cols − rank(A)`, and
/// generates every kernel vector in `[-8, 8]^cols`.
pub fn saturation_check(rng: &mut ChaCha8Rng, samples: usize, rows: usize, cols: usize) -> Result<(), String> {
    for _ in 0..samples {
        let a: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-5..=5)).collect())
            .collect();
        let basis = kernel_i64(&a);
        if basis.len() != cols - rational_rank(&a) {
            return Err(format!("{a:?}: kernel rank {}", basis.len()));
        }
        let pivots: Vec<usize> = basis.iter().map(|b| b.iter().position(|&x| x != 0).unwrap()).collect();
        if pivots.windows(2).any(|w| w[0] >= w[1]) {
            return Err(format!("{a:?}: basis {basis:?} is not in echelon form"));
        }
        if let Some(b) = basis.iter().find(|b| apply(&a, b).iter().any(|&x| x != 0)) {
            return Err(format!("{a:?}: {b:?} is not in the kernel"));
        }
        let mut missing = None;
        for_each_in_box(cols, 8, |v| {
            if missing.is_none() && apply(&a, v).iter().all(|&x| x == 0) && echelon_coordinates(&basis, v).is_none() {
                missing = Some(v.to_vec());
            }
        });
        if let Some(v) = missing {
            return Err(format!("{a:?}: kernel vector {v:?} is not generated by {basis:?}"));
        }
    }
    Ok(())
}

/// Random kernels of `1..=2 × 4` matrices: every LP witness for "`zᵢ ≥ 1`,
/// `±σ(z) ≤ 0`" satisfies the system and lies in the lattice, and every
/// infeasible verdict is consistent with a search of `[-6, 6]^4`.
pub fn lp_witness_check(rng: &mut ChaCha8Rng, samples: usize) -> Result<(), String> {
    use factolab::linalg::{homogeneous_lp_witness, integer_kernel, IntMatrix};
    for _ in 0..samples {
        let rows = rng.gen_range(1..=2);
        let a: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..4).map(|_| rng.gen_range(-5..=5)).collect())
            .collect();
        let kernel = integer_kernel(&IntMatrix::from_rows(&a).unwrap());
        let lattice: Vec<Vec<i64>> = {
            let mut pts = Vec::new();
            for_each_in_box(4, 6, |v| {
                if apply(&a, v).iter().all(|&x| x == 0) {
                    pts.push(v.to_vec());
                }
            });
            pts
        };
        for i in 0..4 {
            for sign in [1i64, -1] {
                let mut e = vec![q(0); 4];
                e[i] = q(1);
                let f = vec![q(sign); 4];
                let w = homogeneous_lp_witness(&kernel, &e, std::slice::from_ref(&f)).map_err(|e| e.to_string())?;
                let ok = |z: &[i64]| z[i] >= 1 && sign * z.iter().sum::<i64>() <= 0;
                match w {
                    Some(z) => {
                        let z: Vec<i64> = z.iter().map(|x| i64::try_from(x).unwrap()).collect();
                        if !ok(&z) || apply(&a, &z).iter().any(|&x| x != 0) {
                            return Err(format!("{a:?}: bad witness {z:?} for atom {i}, sign {sign}"));
                        }
                    }
                    None => {
                        if let Some(z) = lattice.iter().find(|z| ok(z)) {
                            return Err(format!("{a:?}: infeasible verdict refuted by {z:?}"));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
