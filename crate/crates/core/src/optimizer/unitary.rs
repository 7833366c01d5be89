use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::combinatorics::{cycle_type_of, Partition, Permutation};
use crate::counts::ClassCounts;
use crate::error::HaarError;
use crate::group::Group;
use crate::integrator::{stabilizer_cosets, MomentSpec};

use super::graph::{canonical_key, GraphKey};

/// Largest `|S_I| * |S_J|` that [`parabolic_character_sums`] enumerates.
pub const PARABOLIC_BUDGET: u64 = 100_000_000;

/// Splits a unitary moment into moments whose row list has distinct values.
///
/// Take the first row value `x` that repeats in `I`, at position `a`. For
/// each position `p` with `i'_p = x` the matchings sending `a` to `p` give
/// the moment with `i_a` and `i'_p` both replaced by an unused value. The
/// integrals of the pieces sum to the original; a moment whose row
/// multisets differ splits into nothing.
pub fn unitary_list_reduction(spec: &MomentSpec) -> Vec<MomentSpec> {
    assert_eq!(spec.group(), Group::Unitary, "unitary moments only");
    let (i, ib) = (spec.i(), spec.i_bar());
    let mut a = i.to_vec();
    let mut b = ib.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut stack = vec![(i.to_vec(), ib.to_vec())];
    while let Some((rows, bar)) = stack.pop() {
        let repeated = (0..rows.len()).find(|&k| rows.iter().filter(|&&v| v == rows[k]).count() > 1);
        let Some(at) = repeated else {
            out.push(MomentSpec::from_lists_unchecked(
                Group::Unitary,
                rows,
                spec.j().to_vec(),
                bar,
                spec.j_bar().to_vec(),
            ));
            continue;
        };
        let x = rows[at];
        let fresh = rows.iter().chain(&bar).max().copied().unwrap_or(0) + 1;
        // push in reverse so pieces come out in order of p
        for p in (0..bar.len()).rev().filter(|&p| bar[p] == x) {
            let mut r = rows.clone();
            let mut q = bar.clone();
            r[at] = fresh;
            q[p] = fresh;
            stack.push((r, q));
        }
    }
    out
}

/// For a moment with distinct row values: the column list `J` and the
/// conjugate column list `J'` reordered so that `I' = I`.
pub(crate) fn aligned_columns(spec: &MomentSpec) -> (Vec<i64>, Vec<i64>) {
    let pos: HashMap<i64, usize> = spec.i_bar().iter().enumerate().map(|(p, &v)| (v, p)).collect();
    let aligned = spec.i().iter().map(|v| spec.j_bar()[pos[v]]).collect();
    (spec.j().to_vec(), aligned)
}

/// Key of a moment with distinct row values: the directed multigraph with
/// an edge `j_k -> j'_{σ(k)}` per factor, where `σ` is the unique row
/// matching. Equal keys give equal integrals.
pub fn unitary_graph_key(spec: &MomentSpec) -> GraphKey {
    let (j, aligned) = aligned_columns(spec);
    let mut values: Vec<i64> = j.iter().chain(&aligned).copied().collect();
    values.sort_unstable();
    values.dedup();
    let index = |v: i64| values.binary_search(&v).unwrap();
    let mut w = vec![vec![0u64; values.len()]; values.len()];
    for (&a, &b) in j.iter().zip(&aligned) {
        w[index(a)][index(b)] += 1;
    }
    canonical_key(&vec![0; values.len()], &w)
}

/// Counts the cycle types of `σ γ τ` over `σ` fixing `left` and `τ` fixing
/// `right` (permutations that preserve the list values).
///
/// With `I = I'` sorted and `γ` any column matching (`j_k = j'_{γ(k)}`),
/// the moment is `Σ_μ count(μ) W(μ)`.
pub fn parabolic_character_sums(left: &[i64], gamma: &Permutation, right: &[i64]) -> Result<ClassCounts, HaarError> {
    let n = gamma.degree();
    assert!(left.len() == n && right.len() == n, "lists must match the permutation degree");
    let sl = stabilizer_cosets(Group::Unitary, left, left);
    let sr = stabilizer_cosets(Group::Unitary, right, right);
    let size = sl.len() as u128 * sr.len() as u128;
    if size > PARABOLIC_BUDGET as u128 {
        return Err(HaarError::Budget(format!(
            "parabolic sum over {size} pairs exceeds {PARABOLIC_BUDGET}"
        )));
    }
    let g: Vec<usize> = gamma.one_line().iter().map(|&x| x - 1).collect();
    let merged = sl
        .elements()
        .par_iter()
        .fold(HashMap::<Partition, i64>::new, |mut acc, s| {
            let s = s.images();
            let sg: Vec<usize> = g.iter().map(|&x| s[x]).collect();
            let mut composed = vec![0; n];
            for t in sr.elements() {
                for (k, &tk) in t.images().iter().enumerate() {
                    composed[k] = sg[tk];
                }
                *acc.entry(cycle_type_of(&composed)).or_insert(0) += 1;
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
    Ok(out)
}

/// Any column matching `γ` with `j_k = j'_{γ(k)}`, if one exists.
pub(crate) fn column_matching(j: &[i64], j_bar: &[i64]) -> Option<Permutation> {
    let mut free: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (p, &v) in j_bar.iter().enumerate().rev() {
        free.entry(v).or_default().push(p);
    }
    let images: Option<Vec<usize>> = j.iter().map(|v| free.get_mut(v).and_then(|s| s.pop())).collect();
    let images = images?;
    Some(Permutation::from_one_line(&images.iter().map(|x| x + 1).collect::<Vec<_>>()).expect("bijection"))
}

/// Counts for a moment with distinct row values.
pub(crate) fn leaf_counts(spec: &MomentSpec) -> Result<ClassCounts, HaarError> {
    let (j, aligned) = aligned_columns(spec);
    let n = j.len();
    match column_matching(&j, &aligned) {
        Some(gamma) => {
            let distinct: Vec<i64> = (0..n as i64).collect();
            parabolic_character_sums(&distinct, &gamma, &j)
        }
        None => Ok(ClassCounts::new(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(pairs: &[(&[usize], i64)]) -> ClassCounts {
        let n = pairs[0].0.iter().sum();
        let mut out = ClassCounts::new(n);
        for (p, v) in pairs {
            out.add(Partition::new(p.to_vec()).unwrap(), *v);
        }
        out
    }

    #[test]
    fn parabolic_small_cases() {
        let e = Permutation::identity(2);
        assert_eq!(
            parabolic_character_sums(&[1, 1], &e, &[1, 1]).unwrap(),
            c(&[(&[1, 1], 2), (&[2], 2)])
        );
        let g = Permutation::from_one_line(&[2, 3, 1]).unwrap();
        assert_eq!(parabolic_character_sums(&[1, 2, 3], &g, &[1, 2, 3]).unwrap(), c(&[(&[3], 1)]));
    }

    #[test]
    fn reduction_gives_distinct_rows() {
        let s = MomentSpec::unitary(vec![1, 1, 2], vec![1, 2, 3], vec![2, 1, 1], vec![3, 1, 2]).unwrap();
        let parts = unitary_list_reduction(&s);
        assert_eq!(parts.len(), 2);
        for p in &parts {
            let mut r = p.i().to_vec();
            r.sort_unstable();
            r.dedup();
            assert_eq!(r.len(), 3);
        }
        let already = MomentSpec::unitary(vec![1, 2], vec![1, 1], vec![2, 1], vec![1, 1]).unwrap();
        assert_eq!(unitary_list_reduction(&already), vec![already]);
    }
}
