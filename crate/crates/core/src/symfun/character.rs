use std::collections::HashMap;
use std::sync::{Arc, LazyLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::cache::OnceMap;
use crate::combinatorics::{partitions_of, Partition};
use crate::error::HaarError;

/// Irreducible characters of `S_n`, indexed by partitions in the order of
/// [`partitions_of`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    // values[irrep][class]
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// `χ_λ(μ)`; panics if either is not a partition of `n`.
    pub fn value(&self, lambda: &Partition, mu: &Partition) -> i64 {
        self.values[self.index[lambda]][self.index[mu]]
    }

    pub fn row(&self, lambda: &Partition) -> &[i64] {
        &self.values[self.index[lambda]]
    }

    pub(crate) fn from_values(n: usize, values: Vec<Vec<i64>>) -> Self {
        let partitions = partitions_of(n, None);
        let index = partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        CharacterTable {
            n,
            partitions,
            index,
            values,
        }
    }
}

static TABLES: LazyLock<OnceMap<usize, CharacterTable>> = LazyLock::new(OnceMap::new);

/// The cached character table of `S_n`.
pub fn character_table(n: usize) -> Arc<CharacterTable> {
    TABLES.get_or_build(&n, || {
        let parts = partitions_of(n, None);
        let mut memo = HashMap::new();
        let values = parts
            .iter()
            .map(|l| parts.iter().map(|m| mn(l, m.parts(), &mut memo)).collect())
            .collect();
        CharacterTable::from_values(n, values)
    })
}

/// `χ_λ(μ)` by the Murnaghan-Nakayama rule.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64, HaarError> {
    if lambda.weight() != mu.weight() {
        return Err(HaarError::WeightMismatch(lambda.weight(), mu.weight()));
    }
    Ok(character_table(lambda.weight()).value(lambda, mu))
}

/// `χ_λ(1) = n!/H(λ)`.
pub fn dimension(lambda: &Partition) -> BigInt {
    crate::algebra::factorial(lambda.weight() as u64) / hook_product(lambda)
}

/// Product of all hook lengths of `λ`.
pub fn hook_product(lambda: &Partition) -> BigInt {
    let conj = lambda.conjugate();
    let mut acc = BigInt::one();
    for (i, j) in lambda.cells() {
        let arm = lambda.parts()[i] - j - 1;
        let leg = conj.parts()[j] - i - 1;
        acc *= arm + leg + 1;
    }
    acc
}

// Rim hooks are removed through beta-sets: with β_i = λ_i + ℓ - 1 - i, a rim
// hook of length r is a bead moving from b to b - r onto an empty position,
// with sign (-1)^(beads jumped over).
fn mn(lambda: &Partition, mu: &[usize], memo: &mut HashMap<(Partition, Vec<usize>), i64>) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let key = (lambda.clone(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let l = lambda.len();
    let beta: Vec<usize> = lambda.parts().iter().enumerate().map(|(i, &p)| p + l - 1 - i).collect();
    let mut total = 0;
    for (k, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let jumped = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut next = beta.clone();
        next[k] = b - r;
        next.sort_unstable_by(|x, y| y.cmp(x));
        let parts = next.iter().enumerate().map(|(i, &x)| x - (l - 1 - i)).collect();
        let smaller = Partition::from_unsorted(parts);
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&smaller, rest, memo);
    }
    memo.insert(key, total);
    total
}
