use haar_core::algebra::{Matrix, RationalFunction};
use haar_core::combinatorics::partitions_of;
use haar_core::integrator::{integrate_monomial, MomentSpec};
use haar_core::optimizer::one_list_counts;
use haar_core::oracle::{
    brute_force_class_counts, contracted_gram, gram_inverse_weingarten, gram_matrix, monte_carlo_moment,
};
use haar_core::weingarten::build_table;
use haar_core::{Dim, Group};
use num_rational::BigRational;
use proptest::prelude::*;

const GROUPS: [Group; 3] = [Group::Unitary, Group::Orthogonal, Group::Symplectic];

#[test]
fn gram_times_weingarten_is_identity() {
    for group in [Group::Unitary, Group::Orthogonal] {
        for n in 1..=3 {
            let g = gram_matrix(group, n, Dim::Symbolic).unwrap();
            let t = build_table(group, n, Dim::Symbolic).unwrap();
            let reps = g.representatives();
            let w = Matrix::from_fn(g.size(), g.size(), |a, b| t.get(&reps[a].type_with(&reps[b])).clone());
            assert!(g.entries().mul(&w).is_identity(), "{group} n={n}");
        }
    }
}

#[test]
fn fixed_dimension_tables_match_the_truncated_sum() {
    for group in GROUPS {
        for n in 1..=3 {
            for d in 1..=4u32 {
                let oracle = gram_inverse_weingarten(group, n, Dim::Fixed(d)).unwrap();
                let table = build_table(group, n, Dim::Fixed(d)).unwrap();
                for p in partitions_of(n, None) {
                    assert_eq!(oracle.get(&p), table.get(&p), "{group} n={n} d={d} {p}");
                }
            }
        }
    }
}

#[test]
fn pseudo_inverse_laws_below_the_order() {
    let g = contracted_gram(Group::Orthogonal, 3, 2).unwrap();
    assert!(g.inverse().is_none());
    let p = g.pseudo_inverse();
    assert_eq!(g.mul(&p).mul(&g), g);
    assert_eq!(p.mul(&g).mul(&p), p);
    let gp = g.mul(&p);
    assert_eq!(gp.transpose(), gp);
}

#[test]
fn brute_force_one_list_counts_agree() {
    let rows: [&[i64]; 3] = [&[1, 1, 1, 1, 2, 2], &[1, 2, 1, 2, 3, 3], &[1, 1, 1, 2, 1, 2, 3, 3]];
    for r in rows {
        let n = r.len() / 2;
        let j: Vec<i64> = (1..=n as i64).flat_map(|v| [v, v]).collect();
        let spec = MomentSpec::orthogonal(r.to_vec(), j).unwrap();
        assert_eq!(brute_force_class_counts(&spec).unwrap(), one_list_counts(r), "{r:?}");
    }
}

#[test]
fn monte_carlo_matches_small_moments() {
    let o = MomentSpec::orthogonal(vec![1, 1, 1, 1], vec![1, 1, 1, 1]).unwrap();
    let mc = monte_carlo_moment(&o, 3, 40_000, 5).unwrap();
    assert!(mc.agrees_with(0.2, 4.0), "{mc:?}");
    let sp = MomentSpec::symplectic(vec![1, -1], vec![-1, 1]).unwrap();
    let exact = integrate_monomial(&sp, Dim::Fixed(2)).unwrap().as_constant().unwrap();
    assert_eq!(exact, BigRational::new((-1).into(), 4.into()));
    let mc = monte_carlo_moment(&sp, 2, 40_000, 5).unwrap();
    assert!(mc.agrees_with(-0.25, 4.0), "{mc:?}");
}

fn to_f64(q: &BigRational) -> f64 {
    let n: f64 = q.numer().to_string().parse().unwrap();
    let d: f64 = q.denom().to_string().parse().unwrap();
    n / d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn brute_force_matches_the_integral(i in proptest::collection::vec(1i64..=2, 2).prop_flat_map(|v| Just([v.clone(), v].concat()).prop_shuffle()),
                                        j in proptest::collection::vec(1i64..=2, 2).prop_flat_map(|v| Just([v.clone(), v].concat()).prop_shuffle())) {
        let spec = MomentSpec::orthogonal(i, j).unwrap();
        let counts = brute_force_class_counts(&spec).unwrap();
        let table = build_table(Group::Orthogonal, 2, Dim::Symbolic).unwrap();
        let via_counts: RationalFunction = counts.contract(|p| table.get(p).clone());
        prop_assert_eq!(via_counts, integrate_monomial(&spec, Dim::Symbolic).unwrap());
    }

    #[test]
    fn unitary_monte_carlo_is_unbiased(a in 1i64..=2, b in 1i64..=2, seed in 0u64..1000) {
        let spec = MomentSpec::unitary(vec![a, 1], vec![b, 2], vec![a, 1], vec![b, 2]).unwrap();
        let exact = integrate_monomial(&spec, Dim::Fixed(2)).unwrap().as_constant().unwrap();
        let mc = monte_carlo_moment(&spec, 2, 20_000, seed).unwrap();
        // 5 standard errors: 32 cases at 4 would fail now and then
        prop_assert!(mc.agrees_with(to_f64(&exact), 5.0), "{:?} vs {}", mc, exact);
    }
}
