use std::collections::HashMap;

use crate::combinatorics::Partition;
use crate::group::Group;
use crate::integrator::MomentSpec;

/// Sorted multiplicities of the values in a list.
pub fn multiplicity_partition(list: &[i64]) -> Partition {
    let mut counts: HashMap<i64, usize> = HashMap::new();
    for &v in list {
        *counts.entry(v).or_insert(0) += 1;
    }
    Partition::from_unsorted(counts.into_values().collect())
}

/// A moment in canonical form, with the same integral as its source.
///
/// Row values are `1..ℓ` in order of decreasing multiplicity (ties by first
/// occurrence), factors are sorted by `(i, j)`, and column values are
/// relabeled the same way in the sorted order. Symplectic values are
/// relabeled by absolute value and keep their signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedMoment {
    spec: MomentSpec,
    transposed: bool,
    row_partition: Partition,
    blocks: Vec<Vec<i64>>,
}

impl NormalizedMoment {
    pub fn spec(&self) -> &MomentSpec {
        &self.spec
    }

    /// Whether rows and columns were exchanged.
    pub fn transposed(&self) -> bool {
        self.transposed
    }

    /// Multiplicity partition of the row list `I`.
    pub fn row_partition(&self) -> &Partition {
        &self.row_partition
    }

    /// The column entries `J^1, J^2, ...` of the factors sharing each row value.
    pub fn blocks(&self) -> &[Vec<i64>] {
        &self.blocks
    }

    /// Multiplicity partition of each block.
    pub fn block_partitions(&self) -> Vec<Partition> {
        self.blocks.iter().map(|b| multiplicity_partition(b)).collect()
    }
}

fn key(v: i64) -> (i64, bool) {
    (v.abs(), v < 0)
}

/// Map sending values (absolute values for Sp) to `1, 2, ...` by decreasing
/// multiplicity in `primary`, then first occurrence; values only in
/// `secondary` come after.
fn relabeling(group: Group, primary: &[i64], secondary: &[i64]) -> HashMap<i64, i64> {
    let fold = |v: i64| if group == Group::Symplectic { v.abs() } else { v };
    let mut stats: HashMap<i64, (usize, usize)> = HashMap::new();
    for (pos, &v) in primary.iter().chain(secondary).enumerate() {
        let e = stats.entry(fold(v)).or_insert((0, pos));
        if pos < primary.len() {
            e.0 += 1;
        }
    }
    let mut order: Vec<(i64, (usize, usize))> = stats.into_iter().collect();
    order.sort_by_key(|&(_, (count, first))| (std::cmp::Reverse(count), first));
    order.into_iter().enumerate().map(|(k, (v, _))| (v, k as i64 + 1)).collect()
}

fn apply(group: Group, map: &HashMap<i64, i64>, v: i64) -> i64 {
    if group == Group::Symplectic {
        map[&v.abs()] * v.signum()
    } else {
        map[&v]
    }
}

/// Longest prefix on which `a_i >= b_i`.
fn dominating_prefix(a: &Partition, b: &Partition) -> usize {
    (0..b.len())
        .take_while(|&i| a.parts().get(i).is_some_and(|&x| x >= b.parts()[i]))
        .count()
}

/// Brings a moment into canonical form.
///
/// For O and Sp the rows and columns are exchanged when that lengthens the
/// prefix on which the row multiplicities dominate the column ones; ties go
/// to the lexicographically larger row multiplicity partition. The unitary
/// orientation is kept.
pub fn normalize(spec: &MomentSpec) -> NormalizedMoment {
    let group = spec.group();
    let fold = |l: &[i64]| -> Vec<i64> {
        if group == Group::Symplectic {
            l.iter().map(|v| v.abs()).collect()
        } else {
            l.to_vec()
        }
    };
    let mut transposed = false;
    let mut s = spec.clone();
    if group != Group::Unitary {
        let lam = multiplicity_partition(&fold(spec.i()));
        let mu = multiplicity_partition(&fold(spec.j()));
        let (keep, swap) = (dominating_prefix(&lam, &mu), dominating_prefix(&mu, &lam));
        if swap > keep || (swap == keep && mu.parts() > lam.parts()) {
            s = spec.transposed();
            transposed = true;
        }
    }

    let rows = relabeling(group, s.i(), s.i_bar());
    let i: Vec<i64> = s.i().iter().map(|&v| apply(group, &rows, v)).collect();
    let i_bar: Vec<i64> = s.i_bar().iter().map(|&v| apply(group, &rows, v)).collect();
    let mut unbarred: Vec<(i64, i64)> = i.into_iter().zip(s.j().iter().copied()).collect();
    unbarred.sort_by_key(|&(a, _)| key(a));
    let mut barred: Vec<(i64, i64)> = i_bar.into_iter().zip(s.j_bar().iter().copied()).collect();
    barred.sort_by_key(|&(a, _)| key(a));

    let j_sorted: Vec<i64> = unbarred.iter().map(|p| p.1).collect();
    let j_bar_sorted: Vec<i64> = barred.iter().map(|p| p.1).collect();
    let cols = relabeling(group, &j_sorted, &j_bar_sorted);
    for p in unbarred.iter_mut().chain(barred.iter_mut()) {
        p.1 = apply(group, &cols, p.1);
    }
    unbarred.sort_by_key(|&(a, b)| (key(a), key(b)));
    barred.sort_by_key(|&(a, b)| (key(a), key(b)));

    let (i, j): (Vec<i64>, Vec<i64>) = unbarred.into_iter().unzip();
    let (i_bar, j_bar): (Vec<i64>, Vec<i64>) = barred.into_iter().unzip();
    let mut blocks: Vec<Vec<i64>> = Vec::new();
    for (k, (&a, &b)) in i.iter().zip(&j).enumerate() {
        if k == 0 || i[k - 1] != a {
            blocks.push(Vec::new());
        }
        blocks.last_mut().unwrap().push(b);
    }
    let row_partition = multiplicity_partition(&fold(&i));
    let spec = MomentSpec::from_lists_unchecked(group, i, j, i_bar, j_bar);
    NormalizedMoment {
        spec,
        transposed,
        row_partition,
        blocks,
    }
}
