use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::combinatorics::{coset_type_of_partners, cycle_type_of, Partition};
use crate::counts::ClassCounts;
use crate::error::HaarError;
use crate::group::Group;

use super::cosets::{stabilizer_cosets, stabilizer_count, CosetElement};
use super::spec::MomentSpec;

/// Largest `|S_I| * |S_J|` the exhaustive double sum will enumerate.
pub const DIRECT_BUDGET: u64 = 100_000_000;

/// Histogram of the types of `σ^{-1}τ` over `σ ∈ σ_I S_I`, `τ ∈ τ_J S_J`:
/// cycle types for U, coset types for O and Sp. Symplectic pairs carry the
/// weight `δ_I(σ) sgn(σ) δ_J(τ) sgn(τ)`.
///
/// The integral is `Σ_ρ count(ρ) W(ρ)`. A spec whose degree forces zero
/// gives an empty histogram with `n = 0`.
pub fn type_histogram(spec: &MomentSpec) -> Result<ClassCounts, HaarError> {
    let Some(n) = spec.order() else {
        return Ok(ClassCounts::new(0));
    };
    let group = spec.group();
    let size = stabilizer_count(group, spec.i(), spec.i_bar()) * stabilizer_count(group, spec.j(), spec.j_bar());
    if size > BigInt::from(DIRECT_BUDGET) {
        return Err(HaarError::Budget(format!(
            "direct summation over {size} pairs exceeds {DIRECT_BUDGET}"
        )));
    }
    let left = stabilizer_cosets(group, spec.i(), spec.i_bar());
    let right = stabilizer_cosets(group, spec.j(), spec.j_bar());
    Ok(pair_histogram(group, n, left.elements(), right.elements()))
}

pub(crate) fn pair_histogram(group: Group, n: usize, left: &[CosetElement], right: &[CosetElement]) -> ClassCounts {
    let merged = left
        .par_iter()
        .fold(HashMap::<Partition, i64>::new, |mut acc, s| {
            for t in right {
                let (ty, w) = pair_type(group, s, t);
                *acc.entry(ty).or_insert(0) += w;
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut out = ClassCounts::new(n);
    for (ty, c) in merged {
        out.add(ty, c);
    }
    out
}

/// Type of `σ^{-1}τ` and the weight the pair contributes.
pub(crate) fn pair_type(group: Group, s: &CosetElement, t: &CosetElement) -> (Partition, i64) {
    match group {
        Group::Unitary => {
            let (a, b) = (s.images(), t.images());
            let mut inv = vec![0; a.len()];
            for (k, &v) in a.iter().enumerate() {
                inv[v] = k;
            }
            let composed: Vec<usize> = b.iter().map(|&v| inv[v]).collect();
            (cycle_type_of(&composed), 1)
        }
        Group::Orthogonal => (coset_type_of_partners(s.images(), t.images()), 1),
        Group::Symplectic => {
            let w = s.delta() * s.sign() * t.delta() * t.sign();
            (coset_type_of_partners(s.images(), t.images()), w as i64)
        }
    }
}
