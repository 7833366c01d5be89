use num_bigint::BigInt;

use crate::combinatorics::{enumerate_matchings, PairPartition, Permutation};
use crate::counts::ClassCounts;
use crate::error::HaarError;
use crate::group::Group;
use crate::integrator::MomentSpec;

/// Bound on the pairs `(σ, τ)` a brute-force count may visit.
pub const BRUTE_BUDGET: u64 = 50_000_000;

/// Exhaustive class counts: every matching of `{1..2n}` (or permutation of
/// `{1..n}` for U) is tested against `I` and `J`, and every surviving pair
/// contributes its type. Sp pairs carry the weight
/// `δ_I(σ) sgn(σ) δ_J(τ) sgn(τ)`.
pub fn brute_force_class_counts(spec: &MomentSpec) -> Result<ClassCounts, HaarError> {
    let Some(n) = spec.order() else {
        return Ok(ClassCounts::new(0));
    };
    let group = spec.group();
    let mut counts = ClassCounts::new(n);
    match group {
        Group::Unitary => {
            if n > 9 {
                return Err(HaarError::Budget(format!("{n}! permutations")));
            }
            let all = permutations(n);
            let left: Vec<&Permutation> = all.iter().filter(|s| fixes(spec.i(), spec.i_bar(), s)).collect();
            let right: Vec<&Permutation> = all.iter().filter(|t| fixes(spec.j(), spec.j_bar(), t)).collect();
            check_budget(left.len(), right.len())?;
            for s in &left {
                let si = s.inverse();
                for t in &right {
                    counts.add(si.compose(t).cycle_type(), 1);
                }
            }
        }
        _ => {
            if n > 8 {
                return Err(HaarError::Budget(format!("matchings of {} points", 2 * n)));
            }
            let all = enumerate_matchings(n);
            let weigh = |list: &[i64]| -> Vec<(Permutation, i64)> {
                all.iter()
                    .filter_map(|m| {
                        let w = weight(group, list, m);
                        (w != 0).then(|| (m.to_permutation(), w))
                    })
                    .collect()
            };
            let left = weigh(spec.i());
            let right = weigh(spec.j());
            check_budget(left.len(), right.len())?;
            for (s, ws) in &left {
                let si = s.inverse();
                for (t, wt) in &right {
                    let ty = si.compose(t).coset_type().expect("even degree");
                    counts.add(ty, BigInt::from(ws * wt));
                }
            }
        }
    }
    Ok(counts)
}

fn check_budget(a: usize, b: usize) -> Result<(), HaarError> {
    if (a as u64).saturating_mul(b as u64) > BRUTE_BUDGET {
        return Err(HaarError::Budget(format!("{a} x {b} pairs")));
    }
    Ok(())
}

fn fixes(i: &[i64], i_bar: &[i64], s: &Permutation) -> bool {
    (0..i.len()).all(|k| i[k] == i_bar[s.apply(k + 1) - 1])
}

fn weight(group: Group, list: &[i64], m: &PairPartition) -> i64 {
    let mut w = 1;
    for &(a, b) in m.pairs() {
        let (x, y) = (list[a - 1], list[b - 1]);
        if group == Group::Symplectic {
            if x != -y {
                return 0;
            }
            if x < 0 {
                w = -w;
            }
        } else if x != y {
            return 0;
        }
    }
    if group == Group::Symplectic {
        w * m.sign() as i64
    } else {
        w
    }
}

fn permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut line: Vec<usize> = (1..=n).collect();
    heap(n, &mut line, &mut out);
    out
}

fn heap(k: usize, line: &mut Vec<usize>, out: &mut Vec<Permutation>) {
    if k <= 1 {
        out.push(Permutation::from_one_line(line).expect("bijection"));
        return;
    }
    for i in 0..k - 1 {
        heap(k - 1, line, out);
        if k % 2 == 0 {
            line.swap(i, k - 1);
        } else {
            line.swap(0, k - 1);
        }
    }
    heap(k - 1, line, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Partition;

    #[test]
    fn heap_enumerates_every_permutation_once() {
        let mut all: Vec<Vec<usize>> = permutations(4).iter().map(|p| p.one_line()).collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 24);
    }

    #[test]
    fn worked_example_has_225_pairs() {
        let spec = MomentSpec::orthogonal(vec![1, 1, 1, 1, 1, 1, 2, 2], vec![1, 1, 1, 1, 1, 2, 1, 2]).unwrap();
        let c = brute_force_class_counts(&spec).unwrap();
        assert_eq!(c.total(), BigInt::from(225));
    }

    #[test]
    fn unitary_two() {
        let spec = MomentSpec::unitary(vec![1, 1], vec![1, 1], vec![1, 1], vec![1, 1]).unwrap();
        let c = brute_force_class_counts(&spec).unwrap();
        assert_eq!(c.get(&Partition::ones(2)), BigInt::from(2));
        assert_eq!(c.get(&Partition::row(2)), BigInt::from(2));
    }
}
