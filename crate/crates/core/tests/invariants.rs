use std::collections::HashMap;

use haar_core::algebra::double_factorial_odd;
use haar_core::integrator::{stabilizer_count, type_histogram, MomentSpec};
use haar_core::optimizer::{
    multiplicity_partition, normalize, one_list_counts, one_list_key, orthogonal_list_reduction, unitary_graph_key,
    unitary_list_reduction,
};
use haar_core::{ClassCounts, Group};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::strategy::ValueTree;

fn paired(n: usize, max: i64, negate: bool) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(1..=max, n).prop_flat_map(move |v| {
        let partner: Vec<i64> = v.iter().map(|x| if negate { -x } else { *x }).collect();
        Just([v, partner].concat()).prop_shuffle()
    })
}

fn orthogonal_spec(max_n: usize) -> impl Strategy<Value = MomentSpec> {
    (1..=max_n)
        .prop_flat_map(|n| (paired(n, 3, false), paired(n, 3, false)))
        .prop_map(|(i, j)| MomentSpec::orthogonal(i, j).unwrap())
}

fn unitary_spec(max_n: usize) -> impl Strategy<Value = MomentSpec> {
    (1..=max_n)
        .prop_flat_map(|n| (proptest::collection::vec(1i64..=3, n), proptest::collection::vec(1i64..=3, n)))
        .prop_flat_map(|(i, j)| (Just(i.clone()), Just(j.clone()), Just(i).prop_shuffle(), Just(j).prop_shuffle()))
        .prop_map(|(i, j, ib, jb)| MomentSpec::unitary(i, j, ib, jb).unwrap())
}

fn any_spec() -> impl Strategy<Value = MomentSpec> {
    prop_oneof![
        orthogonal_spec(4),
        unitary_spec(4),
        (1usize..=4)
            .prop_flat_map(|n| (paired(n, 3, true), paired(n, 3, true)))
            .prop_map(|(i, j)| MomentSpec::symplectic(i, j).unwrap()),
    ]
}

fn value_bijection(shift: i64, flip: bool) -> impl Fn(i64) -> i64 {
    move |v: i64| {
        let a = v.abs();
        let moved = if flip { 20 - a } else { a + shift };
        moved * v.signum()
    }
}

proptest! {
    #[test]
    fn normalization_is_idempotent(spec in any_spec()) {
        let once = normalize(&spec);
        let twice = normalize(once.spec());
        prop_assert_eq!(once.spec(), twice.spec());
        prop_assert!(!twice.transposed());
    }

    #[test]
    fn normalization_forgets_the_labels(spec in any_spec(), shift in 0i64..5, flip_rows: bool, flip_cols: bool) {
        let moved = spec.relabeled(&value_bijection(shift, flip_rows), &value_bijection(shift + 1, flip_cols));
        prop_assert_eq!(normalize(&moved).spec().clone(), normalize(&spec).spec().clone());
    }

    #[test]
    fn reduction_multiplicities_fill_the_column_stabilizer(spec in orthogonal_spec(5)) {
        let s = normalize(&spec).spec().clone();
        let total: BigInt = orthogonal_list_reduction(&s).iter().map(|c| c.multiplicity.clone()).sum();
        let mut counts: HashMap<i64, u64> = HashMap::new();
        for &v in s.j() {
            *counts.entry(v).or_default() += 1;
        }
        let closed: BigInt = counts.values().map(|&m| double_factorial_odd(m - 1)).product();
        prop_assert_eq!(&total, &closed);
        prop_assert_eq!(total, stabilizer_count(Group::Orthogonal, s.j(), &[]));
    }

    #[test]
    fn reduced_classes_rebuild_the_class_counts(spec in orthogonal_spec(4)) {
        let s = normalize(&spec).spec().clone();
        let mut total = ClassCounts::new(s.order().unwrap());
        for c in orthogonal_list_reduction(&s) {
            total.add_scaled(&one_list_counts(&c.rows), &c.multiplicity);
        }
        prop_assert_eq!(total, type_histogram(&s).unwrap());
    }

    #[test]
    fn unitary_leaves_rebuild_the_class_counts(spec in unitary_spec(4)) {
        let s = normalize(&spec).spec().clone();
        let mut total = ClassCounts::new(s.order().unwrap());
        for leaf in unitary_list_reduction(&s) {
            total.add_scaled(&type_histogram(&leaf).unwrap(), &BigInt::from(1));
        }
        prop_assert_eq!(total, type_histogram(&s).unwrap());
    }
}

/// Every key collision in a corpus of one-list rows must come with equal
/// counts, and rows with different multiplicity partitions never collide.
#[test]
fn orthogonal_key_collisions_have_equal_counts() {
    let mut seen: HashMap<_, (Vec<i64>, ClassCounts)> = HashMap::new();
    let mut collisions = 0;
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for _ in 0..3000 {
        let rows = (1usize..=5)
            .prop_flat_map(|n| proptest::collection::vec(1i64..=4, 2 * n))
            .new_tree(&mut runner)
            .unwrap()
            .current();
        let key = one_list_key(&rows);
        let counts = one_list_counts(&rows);
        match seen.get(&key) {
            Some((other, c)) => {
                assert_eq!(c, &counts, "{rows:?} vs {other:?}");
                if other.len() == rows.len() {
                    assert_eq!(multiplicity_partition(other), multiplicity_partition(&rows));
                }
                collisions += 1;
            }
            None => {
                seen.insert(key, (rows, counts));
            }
        }
    }
    assert!(collisions > 100, "corpus too sparse: {collisions} collisions");
}

#[test]
fn unitary_key_collisions_have_equal_counts() {
    let mut seen: HashMap<_, (MomentSpec, ClassCounts)> = HashMap::new();
    let mut collisions = 0;
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for _ in 0..1000 {
        let spec = unitary_spec(5).new_tree(&mut runner).unwrap().current();
        for leaf in unitary_list_reduction(&normalize(&spec).spec().clone()) {
            let key = unitary_graph_key(&leaf);
            let counts = type_histogram(&leaf).unwrap();
            match seen.get(&key) {
                Some((other, c)) => {
                    assert_eq!(c, &counts, "{leaf} vs {other}");
                    collisions += 1;
                }
                None => {
                    seen.insert(key, (leaf, counts));
                }
            }
        }
    }
    assert!(collisions > 100, "corpus too sparse: {collisions} collisions");
}
