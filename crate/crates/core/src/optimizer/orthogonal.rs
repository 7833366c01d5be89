use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{double_factorial_odd, factorial};
use crate::combinatorics::{coset_type_of_partners, Partition};
use crate::counts::ClassCounts;
use crate::group::Group;
use crate::integrator::{stabilizer_cosets, MomentSpec};

use super::graph::{canonical_key, GraphKey};
use super::lattice::coset_class_sizes;
use super::normalize::multiplicity_partition;

/// `Π_v (m(v) - 1)!!` over the multiplicities of `list`, or zero when one
/// is odd.
pub(crate) fn matching_count(list: &[i64]) -> BigInt {
    multiplicity_partition(list)
        .parts()
        .iter()
        .map(|&m| {
            if m % 2 == 1 {
                BigInt::zero()
            } else {
                double_factorial_odd(m as u64 - 1)
            }
        })
        .product()
}

/// Class counts for a row list with one value: `Π (μ_i - 1)!! C(λ)` where
/// `μ` is the multiplicity partition of the column list. Empty when some
/// `μ_i` is odd.
pub fn one_row_counts(j: &[i64]) -> ClassCounts {
    let n = j.len() / 2;
    let prefactor = matching_count(j);
    if j.len() % 2 == 1 || prefactor.is_zero() {
        return ClassCounts::new(n);
    }
    coset_class_sizes(n).scaled(&prefactor)
}

/// Class counts when the column values of each row block appear in no other
/// block: `Π_{i,j} (m_{ij} - 1)!!` times the `∪`-convolution of the `C`
/// tables of the blocks. `None` when the blocks share a column value.
pub fn independent_blocks_counts(spec: &MomentSpec) -> Option<ClassCounts> {
    let mut blocks: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for (&a, &b) in spec.i().iter().zip(spec.j()) {
        blocks.entry(a).or_default().push(b);
    }
    let mut owner: HashMap<i64, i64> = HashMap::new();
    for (&row, cols) in &blocks {
        for &c in cols {
            if *owner.entry(c).or_insert(row) != row {
                return None;
            }
        }
    }
    let n = spec.i().len() / 2;
    let mut total = ClassCounts::new(0);
    total.add(Partition::empty(), 1);
    let mut prefactor = BigInt::one();
    for cols in blocks.values() {
        prefactor *= matching_count(cols);
        if prefactor.is_zero() {
            return Some(ClassCounts::new(n));
        }
        total = total.union_product(&coset_class_sizes(cols.len() / 2));
    }
    Some(total.scaled(&prefactor))
}

/// `C_I(λ)`: coset types of the matchings that fix `rows`, measured against
/// `{1,2}, {3,4}, ...` (the stabilizer of `J = (1,1,2,2,...)`).
pub fn one_list_counts(rows: &[i64]) -> ClassCounts {
    let n = rows.len() / 2;
    let base: Vec<usize> = (0..rows.len()).map(|k| k ^ 1).collect();
    pairing_counts(rows, &base, n)
}

/// Coset types of `σ` against one fixed matching `tau` (a partner array),
/// over all matchings `σ` fixing `rows`.
pub(crate) fn pairing_counts(rows: &[i64], tau: &[usize], n: usize) -> ClassCounts {
    let cosets = stabilizer_cosets(Group::Orthogonal, rows, &[]);
    let merged = cosets
        .elements()
        .par_iter()
        .fold(HashMap::<Partition, i64>::new, |mut acc, s| {
            *acc.entry(coset_type_of_partners(s.images(), tau)).or_insert(0) += 1;
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

/// The graph of a row list read in blocks `(i_1, i_2), (i_3, i_4), ...`:
/// one vertex per value, colored by its multiplicity, and an edge
/// `{α, β}` weighted by the number of blocks holding `α` and `β`.
pub fn one_list_key(rows: &[i64]) -> GraphKey {
    let mut values: Vec<i64> = rows.to_vec();
    values.sort_unstable();
    values.dedup();
    let index = |v: i64| values.binary_search(&v).unwrap();
    let mut colors = vec![0u64; values.len()];
    for &v in rows {
        colors[index(v)] += 1;
    }
    let mut w = vec![vec![0u64; values.len()]; values.len()];
    for pair in rows.chunks(2) {
        let (a, b) = (index(pair[0]), index(pair[1]));
        w[a][b] += 1;
        if a != b {
            w[b][a] += 1;
        }
    }
    canonical_key(&colors, &w)
}

/// One class of column matchings, up to matchings fixing the rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedList {
    /// The representative matching as a list: positions in the same pair
    /// share a label, and labels are numbered by column value, then by
    /// first position.
    pub pairing: Vec<i64>,
    /// The row list reordered so that the representative becomes
    /// `{1,2}, {3,4}, ...`; its one-list counts are this class's `C_{I_σ}`.
    pub rows: Vec<i64>,
    /// Number of column matchings in the class.
    pub multiplicity: BigInt,
    /// The class invariant: row-value pairs of the representative, sorted.
    pub label_pairs: Vec<(i64, i64)>,
}

/// Splits the matchings fixing the column list into classes of matchings
/// that agree up to a permutation fixing the row list.
///
/// For each column value the row labels at its positions are paired in
/// every distinct way; a class's size is the product over pairs of
/// `m_a m_b` (distinct labels) or `m_a (m_a - 1) / 2` (equal labels),
/// taking the counts left after earlier pairs, divided by the factorial of
/// each repeated pair's count. Classes from different column values are
/// combined by product and merged when their label pairs agree. Then
/// `C_{I,J}(λ) = Σ m_σ C_{I_σ}(λ)`.
pub fn orthogonal_list_reduction(spec: &MomentSpec) -> Vec<ReducedList> {
    let (i, j) = (spec.i(), spec.j());
    let mut columns: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (pos, &v) in j.iter().enumerate() {
        columns.entry(v).or_default().push(pos);
    }
    if columns.values().any(|p| p.len() % 2 == 1) {
        return Vec::new();
    }
    let per_value: Vec<(Vec<usize>, Vec<(Vec<(i64, i64)>, BigInt)>)> = columns
        .into_values()
        .map(|positions| {
            let labels: Vec<i64> = positions.iter().map(|&p| i[p]).collect();
            let classes = label_pairings(&labels);
            (positions, classes)
        })
        .collect();

    let mut merged: Vec<(Vec<(i64, i64)>, BigInt, Vec<usize>)> = Vec::new();
    let mut index: HashMap<Vec<(i64, i64)>, usize> = HashMap::new();
    let mut choice = vec![0usize; per_value.len()];
    loop {
        let mut pairs = Vec::new();
        let mut mult = BigInt::one();
        for (k, (_, classes)) in per_value.iter().enumerate() {
            let (p, m) = &classes[choice[k]];
            pairs.extend_from_slice(p);
            mult *= m;
        }
        pairs.sort_unstable();
        match index.get(&pairs) {
            Some(&at) => merged[at].1 += mult,
            None => {
                index.insert(pairs.clone(), merged.len());
                merged.push((pairs, mult, choice.clone()));
            }
        }
        // odometer with the first column value varying slowest
        let mut k = per_value.len();
        loop {
            if k == 0 {
                return merged
                    .into_iter()
                    .map(|(label_pairs, multiplicity, choice)| {
                        let (pairing, rows) = representative(i, &per_value, &choice);
                        ReducedList {
                            pairing,
                            rows,
                            multiplicity,
                            label_pairs,
                        }
                    })
                    .collect();
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < per_value[k].1.len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// Realizes a choice of label pairings on actual positions, taking the
/// first unused position with each label.
fn representative(
    rows: &[i64],
    per_value: &[(Vec<usize>, Vec<(Vec<(i64, i64)>, BigInt)>)],
    choice: &[usize],
) -> (Vec<i64>, Vec<i64>) {
    let mut pairing = vec![0i64; rows.len()];
    let mut pairs_at: Vec<(usize, usize)> = Vec::new();
    for ((positions, classes), &c) in per_value.iter().zip(choice) {
        let mut used = vec![false; positions.len()];
        let mut take = |label: i64| {
            let k = (0..positions.len())
                .find(|&k| !used[k] && rows[positions[k]] == label)
                .expect("class pairs use available labels");
            used[k] = true;
            positions[k]
        };
        let mut local: Vec<(usize, usize)> = classes[c].0.iter().map(|&(a, b)| (take(a), take(b))).collect();
        for p in &mut local {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        local.sort_unstable();
        pairs_at.extend(local);
    }
    let mut reordered = Vec::with_capacity(rows.len());
    for (label, &(a, b)) in pairs_at.iter().enumerate() {
        pairing[a] = label as i64 + 1;
        pairing[b] = label as i64 + 1;
        reordered.push(rows[a]);
        reordered.push(rows[b]);
    }
    (pairing, reordered)
}

/// Distinct ways to pair up a multiset of labels, each with the number of
/// position matchings realizing it.
pub(crate) fn label_pairings(labels: &[i64]) -> Vec<(Vec<(i64, i64)>, BigInt)> {
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &l in labels {
        *counts.entry(l).or_insert(0) += 1;
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    pairings_rec(&mut counts, &mut cur, &mut |pairs| {
        let m = class_multiplicity(labels, pairs);
        out.push((pairs.to_vec(), m));
    });
    out
}

fn pairings_rec(counts: &mut BTreeMap<i64, usize>, cur: &mut Vec<(i64, i64)>, f: &mut dyn FnMut(&[(i64, i64)])) {
    let Some((&a, _)) = counts.iter().find(|(_, &c)| c > 0) else {
        f(cur);
        return;
    };
    // partners of repeated `a` never decrease, so each multiset appears once
    let floor = match cur.last() {
        Some(&(x, y)) if x == a => y,
        _ => a,
    };
    let partners: Vec<i64> = counts
        .iter()
        .filter(|&(&b, &c)| b >= floor && (if b == a { c >= 2 } else { c >= 1 }))
        .map(|(&b, _)| b)
        .collect();
    for b in partners {
        *counts.get_mut(&a).unwrap() -= 1;
        *counts.get_mut(&b).unwrap() -= 1;
        cur.push((a, b));
        pairings_rec(counts, cur, f);
        cur.pop();
        *counts.get_mut(&a).unwrap() += 1;
        *counts.get_mut(&b).unwrap() += 1;
    }
}

/// Size of one label-pairing class: the sequential pair rule followed by
/// division by the factorials of repeated pair counts.
pub(crate) fn class_multiplicity(labels: &[i64], pairs: &[(i64, i64)]) -> BigInt {
    let mut left: HashMap<i64, i64> = HashMap::new();
    for &l in labels {
        *left.entry(l).or_insert(0) += 1;
    }
    let mut m = BigInt::one();
    for (k, &(a, b)) in pairs.iter().enumerate() {
        if a == b {
            let more = pairs[k + 1..].iter().any(|&(x, y)| x == a || y == a);
            if more {
                let c = left[&a];
                m *= BigInt::from(c * (c - 1) / 2);
            }
            *left.get_mut(&a).unwrap() -= 2;
        } else {
            m *= BigInt::from(left[&a] * left[&b]);
            *left.get_mut(&a).unwrap() -= 1;
            *left.get_mut(&b).unwrap() -= 1;
        }
    }
    let mut repeats: HashMap<(i64, i64), u64> = HashMap::new();
    for &p in pairs {
        *repeats.entry(p).or_insert(0) += 1;
    }
    let over: BigInt = repeats.values().map(|&c| factorial(c)).product();
    m / over
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_pairings_of_a_column() {
        let classes = label_pairings(&[1, 1, 2, 2, 2, 3]);
        let mults: Vec<i64> = classes.iter().map(|(_, m)| m.try_into().unwrap()).collect();
        assert_eq!(mults, vec![3, 6, 6]);
        let classes = label_pairings(&[1, 1, 2, 3]);
        let mults: Vec<i64> = classes.iter().map(|(_, m)| m.try_into().unwrap()).collect();
        assert_eq!(mults, vec![1, 2]);
    }

    #[test]
    fn closed_count_agrees() {
        // Π m_a! / (Π_a 2^{c_aa} c_aa! Π_{a<b} c_ab!)
        for labels in [vec![1, 1, 1, 1, 2, 2, 3, 3], vec![1, 1, 1, 2, 2, 2], vec![1, 2, 3, 4, 1, 2]] {
            let mut total = BigInt::zero();
            for (pairs, m) in label_pairings(&labels) {
                let mut num = BigInt::one();
                let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
                for &l in &labels {
                    *counts.entry(l).or_insert(0) += 1;
                }
                for &c in counts.values() {
                    num *= factorial(c);
                }
                let mut den = BigInt::one();
                let mut reps: BTreeMap<(i64, i64), u64> = BTreeMap::new();
                for &p in &pairs {
                    *reps.entry(p).or_insert(0) += 1;
                }
                for (&(a, b), &c) in &reps {
                    den *= factorial(c);
                    if a == b {
                        den *= BigInt::from(2).pow(c as u32);
                    }
                }
                assert_eq!(m, num / den, "{pairs:?}");
                total += m;
            }
            assert_eq!(total, double_factorial_odd(labels.len() as u64 - 1));
        }
    }
}
