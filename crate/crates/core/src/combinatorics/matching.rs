use std::fmt;

use crate::error::HaarError;

use super::partition::Partition;
use super::permutation::Permutation;

/// A perfect matching of `{1..2n}`, stored canonically: each pair as
/// `(a, b)` with `a < b`, pairs sorted by `a`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairPartition {
    pairs: Vec<(usize, usize)>,
}

impl PairPartition {
    /// Canonicalizes and validates 1-based pairs.
    pub fn new(pairs: &[(usize, usize)]) -> Result<Self, HaarError> {
        let m = 2 * pairs.len();
        let mut seen = vec![false; m];
        let mut canon = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            let (a, b) = (a.min(b), a.max(b));
            for x in [a, b] {
                if x == 0 || x > m || seen[x - 1] {
                    return Err(HaarError::InvalidMatching(format!("{pairs:?} is not a perfect matching")));
                }
                seen[x - 1] = true;
            }
            canon.push((a, b));
        }
        canon.sort_unstable();
        Ok(PairPartition { pairs: canon })
    }

    /// Builds from a 0-based partner array (`partner[partner[i]] == i`).
    pub(crate) fn from_partners(partner: &[usize]) -> Self {
        let mut pairs: Vec<(usize, usize)> = partner
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i < j)
            .map(|(i, &j)| (i + 1, j + 1))
            .collect();
        pairs.sort_unstable();
        PairPartition { pairs }
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// 0-based partner array.
    pub fn partners(&self) -> Vec<usize> {
        let mut p = vec![0; 2 * self.pairs.len()];
        for &(a, b) in &self.pairs {
            p[a - 1] = b - 1;
            p[b - 1] = a - 1;
        }
        p
    }

    /// The permutation with one-line form `a_1 b_1 a_2 b_2 ... a_n b_n`.
    pub fn to_permutation(&self) -> Permutation {
        let images = self.pairs.iter().flat_map(|&(a, b)| [a - 1, b - 1]).collect();
        Permutation::from_zero_based(images)
    }

    /// Sign of [`PairPartition::to_permutation`].
    pub fn sign(&self) -> i32 {
        // parity of inversions in a_1 b_1 ... a_n b_n
        let line: Vec<usize> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        let mut inversions = 0usize;
        for i in 0..line.len() {
            for j in i + 1..line.len() {
                if line[i] > line[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Coset type of `σ^{-1} τ` for the permutations of `self` and `other`.
    pub fn coset_type_with(&self, other: &PairPartition) -> Partition {
        coset_type_of_partners(&self.partners(), &other.partners())
    }
}

/// Loop structure of the union of two matchings given as partner arrays:
/// each loop through `2k` points contributes the part `k`.
pub fn coset_type_of_partners(a: &[usize], b: &[usize]) -> Partition {
    let m = a.len();
    let mut seen = vec![false; m];
    let mut parts = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        loop {
            seen[x] = true;
            let y = a[x];
            seen[y] = true;
            len += 2;
            x = b[y];
            if x == start {
                break;
            }
        }
        parts.push(len / 2);
    }
    Partition::from_unsorted(parts)
}

/// All `(2n-1)!!` perfect matchings of `{1..2n}`, lexicographic on the
/// one-line form.
pub fn enumerate_matchings(n: usize) -> Vec<PairPartition> {
    let points: Vec<usize> = (0..2 * n).collect();
    let mut out = Vec::new();
    for_each_matching_of(&points, &mut |partner_pairs| {
        let mut pairs: Vec<(usize, usize)> = partner_pairs.iter().map(|&(a, b)| (a + 1, b + 1)).collect();
        pairs.sort_unstable();
        out.push(PairPartition { pairs });
    });
    out
}

/// Calls `f` with every perfect matching of the given (sorted, 0-based)
/// points, as pairs `(a, b)` with `a < b`. Points are paired smallest-first,
/// so the order is lexicographic on the one-line form.
pub fn for_each_matching_of(points: &[usize], f: &mut dyn FnMut(&[(usize, usize)])) {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, f: &mut dyn FnMut(&[(usize, usize)])) {
        if rest.is_empty() {
            f(cur);
            return;
        }
        let a = rest.remove(0);
        for k in 0..rest.len() {
            let b = rest.remove(k);
            cur.push((a, b));
            go(rest, cur, f);
            cur.pop();
            rest.insert(k, b);
        }
        rest.insert(0, a);
    }
    if points.len() % 2 == 1 {
        return;
    }
    go(&mut points.to_vec(), &mut Vec::new(), f);
}

impl fmt::Display for PairPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.pairs.iter().map(|(a, b)| format!("{{{a},{b}}}")).collect();
        write!(f, "{{{}}}", body.join(","))
    }
}

impl fmt::Debug for PairPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
