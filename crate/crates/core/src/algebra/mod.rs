//! Exact arithmetic: integer polynomials in `d`, reduced rational functions,
//! and dense linear algebra over exact fields.

mod matrix;
mod poly;
mod ratfun;

pub use matrix::{Field, Matrix};
pub use poly::{render_ascending, Poly};
pub use ratfun::{double_factorial_odd, factorial, RationalFunction};
