//! Exact integer and rational linear algebra.
//!
//! Everything here is exact: big integers, big rationals, Smith and Hermite
//! normal forms, Gaussian elimination over the rationals and Fourier–Motzkin
//! elimination for systems mixing strict and non-strict inequalities. No
//! floating point is used anywhere in the crate's kernel.

mod fm;
mod hermite;
mod linalg;
mod matrix;
mod rat;
mod snf;

pub use fm::{feasible_point, integer_points, Constraint, FmError, FourierMotzkin, Relation};
pub use hermite::Lattice;
pub use linalg::{determinant, int_determinant, rank_and_kernel, rref, solve_linear};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use rat::{ceil_rat, floor_rat, parse_rat, rat, rat_frac, rat_to_string, to_i64, Rat};
pub use snf::{smith_normal_form, SnfResult};
