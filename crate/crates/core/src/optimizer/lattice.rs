use std::collections::HashMap;
use std::sync::{Arc, LazyLock};

use num_bigint::BigInt;
use num_integer::Integer;

use crate::algebra::factorial;
use crate::cache::OnceMap;
use crate::combinatorics::{partitions_of, Partition};
use crate::counts::ClassCounts;

static SIZES: LazyLock<OnceMap<usize, ClassCounts>> = LazyLock::new(OnceMap::new);

/// `C(λ)` for every `λ ⊢ n`: the number of matchings in `M_{2n}` of coset
/// type `λ`, by summing weighted paths in Young's lattice.
///
/// Adding a box to the row of length `r` of `μ` has weight `2 r m_r(μ)`;
/// opening a new row has weight 1.
pub fn coset_class_sizes(n: usize) -> Arc<ClassCounts> {
    SIZES.get_or_build(&n, || {
        let mut level: HashMap<Partition, BigInt> = HashMap::from([(Partition::empty(), BigInt::from(1))]);
        for k in 1..=n {
            let mut next = HashMap::new();
            for lambda in partitions_of(k, None) {
                let c: BigInt = lambda
                    .young_predecessors()
                    .into_iter()
                    .map(|(mu, w)| &level[&mu] * w)
                    .sum();
                next.insert(lambda, c);
            }
            level = next;
        }
        let mut out = ClassCounts::new(n);
        for (l, c) in level {
            out.add(l, c);
        }
        out
    })
}

/// The closed form `C(λ) = |H_n| / (2^{ℓ(λ)} z_λ)` with `|H_n| = 2^n n!`.
pub fn coset_class_sizes_closed(n: usize) -> ClassCounts {
    let h = BigInt::from(2).pow(n as u32) * factorial(n as u64);
    let mut out = ClassCounts::new(n);
    for l in partitions_of(n, None) {
        let den = BigInt::from(2).pow(l.len() as u32) * l.z();
        let (q, r) = h.div_rem(&den);
        assert!(r == BigInt::from(0), "|H_n| is divisible by 2^l z_λ");
        out.add(l, q);
    }
    out
}

/// The weighted Young lattice on levels `1..=n`.
#[derive(Clone, Debug)]
pub struct YoungLattice {
    /// Each node with its `C(λ)`, level by level.
    pub nodes: Vec<(Partition, BigInt)>,
    /// `(μ, λ, weight)` for each box added to `μ`, on levels `1..n`.
    pub edges: Vec<(Partition, Partition, u64)>,
}

pub fn young_lattice(n: usize) -> YoungLattice {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for k in 1..=n {
        let sizes = coset_class_sizes(k);
        for lambda in partitions_of(k, None) {
            nodes.push((lambda.clone(), sizes.get(&lambda)));
            if k > 1 {
                for (mu, w) in lambda.young_predecessors() {
                    edges.push((mu, lambda.clone(), w));
                }
            }
        }
    }
    YoungLattice { nodes, edges }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_levels() {
        let l = young_lattice(4);
        let values: Vec<i64> = l.nodes.iter().map(|(_, c)| c.try_into().unwrap()).collect();
        assert_eq!(values, vec![1, 2, 1, 8, 6, 1, 48, 32, 12, 12, 1]);
        assert_eq!(l.edges.len(), 13);
    }

    #[test]
    fn recursion_matches_closed_form() {
        for n in 1..=8 {
            assert_eq!(*coset_class_sizes(n), coset_class_sizes_closed(n), "n = {n}");
            assert_eq!(coset_class_sizes(n).total(), crate::algebra::double_factorial_odd(2 * n as u64 - 1));
        }
    }
}
