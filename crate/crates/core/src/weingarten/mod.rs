//! Weingarten functions of `U(d)`, `O(d)` and `Sp(2d)` as exact rational
//! functions of `d`, with per-`(group, n, d)` caching.
//!
//! Each function is a character sum: unitary over `χ_λ`, orthogonal over
//! zonal spherical functions and symplectic over twisted ones. The
//! symplectic denominators are `Π_{(i,j) ∈ λ} (2d + (j-1) - 2(i-1))`, which
//! makes the table the inverse of the `Sp(2d)` Gram matrix; equivalently
//! `W^Sp(ρ; d) = (-1)^n W^O(ρ; -2d)`.

mod store;
mod table;

pub use store::TableStore;
pub use table::{
    build_table, cached_table, weingarten_orthogonal, weingarten_symplectic, weingarten_unitary, WeingartenTable,
    MAX_TABLE_N,
};
