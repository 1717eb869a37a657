//! Exact integer and rational linear algebra: integer kernels via Hermite
//! reduction and homogeneous feasibility via Fourier–Motzkin elimination.

mod fm;
mod kernel;
mod matrix;
mod rational;

pub use fm::{homogeneous_lp_feasible, homogeneous_lp_witness, solve_inequalities, Inequality};
pub use kernel::{hermite_rows, integer_kernel, LatticeBasis};
pub use matrix::IntMatrix;
pub use rational::{
    common_denominator, dot, format_rational, parse_rational, rational_num_den, Rational,
};
