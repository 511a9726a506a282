//! Exact scalar arithmetic over ℚ(i) and dense linear algebra on top of it.

mod gq;
mod matrix;

pub use gq::{
    binomial, gq_arith, gq_conjugate, int, parse_rational_str, rat, rational_to_f64, ArithOp,
    GaussianRational, Gq, Rational,
};
pub use matrix::{mat_det, mat_rref, mat_solve, Matrix, Rref, Solution};
