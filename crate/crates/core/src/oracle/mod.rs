//! Reference computations that share as little as possible with the
//! integrator: Gram matrices by explicit index contraction and their exact
//! (pseudo-)inverses, exhaustive class counts over all matchings or
//! permutations, rational interpolation, and Haar Monte Carlo.

mod brute;
mod gram;
mod interpolate;
mod monte_carlo;

pub use brute::{brute_force_class_counts, BRUTE_BUDGET};
pub use gram::{contracted_gram, gram_inverse_weingarten, gram_matrix, GramMatrix, Representative, CONTRACTION_BUDGET};
pub use interpolate::interpolate_rational;
pub use monte_carlo::{monte_carlo_moment, sample_haar, HaarSample, MonteCarlo};
