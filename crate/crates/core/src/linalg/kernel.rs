use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Basis of an integer lattice inside `ℤ^dim`.
///
/// Bases returned by [`integer_kernel`] are saturated and in canonical
/// (centered Hermite) form, so equal lattices give equal bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    dim: usize,
    vectors: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn new(dim: usize, vectors: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        Ok(Self { dim, vectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }

    /// `Σ coeffs[j] · vectors[j]`.
    pub fn combination(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim];
        for (c, v) in coeffs.iter().zip(&self.vectors) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(v) {
                *o += c * x;
            }
        }
        out
    }
}

fn sub_scaled_row(rows: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < source {
        let (lo, hi) = rows.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t.iter_mut().zip(s) {
        *x -= q * y;
    }
}

/// Euclidean elimination on columns `0..ncols` of `rows`, starting at row
/// `start`. Returns the index of the first row below the echelon part and the
/// pivot columns found.
fn echelonize(rows: &mut [Vec<BigInt>], ncols: usize) -> (usize, Vec<usize>) {
    let mut pivot = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        if pivot == rows.len() {
            break;
        }
        loop {
            let best = (pivot..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()));
            let Some(best) = best else { break };
            rows.swap(pivot, best);
            let mut cleared = true;
            for i in pivot + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[pivot][c]);
                sub_scaled_row(rows, i, pivot, &q);
                if !rows[i][c].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                pivots.push(c);
                pivot += 1;
                break;
            }
        }
    }
    (pivot, pivots)
}

/// Row Hermite form with positive pivots and entries above each pivot reduced
/// into the centered range `[-p/2, p/2)`. Zero rows are dropped.
pub fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let (rank, pivots) = echelonize(&mut rows, ncols);
    rows.truncate(rank);
    for (r, &c) in pivots.iter().enumerate() {
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        let p = rows[r][c].clone();
        let two_p: BigInt = &p * BigInt::from(2);
        for i in 0..r {
            // q = floor((2e + p) / 2p) leaves e - qp in [-p/2, p/2)
            let q: BigInt = (&rows[i][c] * BigInt::from(2) + &p).div_floor(&two_p);
            sub_scaled_row(&mut rows, i, r, &q);
        }
    }
    rows
}

/// Saturated basis of `{z ∈ ℤ^k : A·z = 0}`.
///
/// Column-style Hermite reduction of `A` with an accumulated unimodular
/// transform: the transform rows whose image vanishes span the kernel.
pub fn integer_kernel(a: &IntMatrix) -> LatticeBasis {
    let (r, k) = (a.rows(), a.cols());
    let mut work: Vec<Vec<BigInt>> = (0..k)
        .map(|j| {
            let mut row = a.column(j);
            row.extend((0..k).map(|l| if l == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let (rank, _) = echelonize(&mut work, r);
    let kernel: Vec<Vec<BigInt>> = work.drain(rank..).map(|row| row[r..].to_vec()).collect();
    LatticeBasis {
        dim: k,
        vectors: hermite_rows(kernel),
    }
}
