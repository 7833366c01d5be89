use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{double_factorial_odd, factorial};
use crate::combinatorics::{PairPartition, Permutation};
use crate::group::Group;

/// `δ_I(σ)` for a matching: 0 unless every pair of `σ` joins matching
/// entries of `list`.
///
/// Orthogonal: a pair `{a, b}` matches when `i_a = i_b`, and the value is 1.
/// Symplectic: `{a, b}` (with `a < b`) matches when `i_a = -i_b`, and the
/// value is `(-1)^neg` where `neg` counts pairs with `i_a < 0`.
pub fn delta_matching(group: Group, list: &[i64], sigma: &PairPartition) -> i32 {
    assert_eq!(list.len(), 2 * sigma.n(), "list length must be twice the matching size");
    let mut sign = 1;
    for &(a, b) in sigma.pairs() {
        let (x, y) = (list[a - 1], list[b - 1]);
        match group {
            Group::Orthogonal => {
                if x != y {
                    return 0;
                }
            }
            Group::Symplectic => {
                if x != -y {
                    return 0;
                }
                if x < 0 {
                    sign = -sign;
                }
            }
            Group::Unitary => panic!("unitary deltas act on permutations"),
        }
    }
    sign
}

/// Unitary `δ`: 1 if `i_k = i'_{σ(k)}` for every `k`, else 0.
pub fn delta_unitary(i: &[i64], i_bar: &[i64], sigma: &Permutation) -> i32 {
    let ok = i.len() == i_bar.len()
        && i.len() == sigma.degree()
        && (0..i.len()).all(|k| i[k] == i_bar[sigma.apply(k + 1) - 1]);
    ok as i32
}

/// One element of a stabilizer coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetElement {
    // unitary: 0-based images of σ; otherwise the 0-based partner array
    images: Vec<usize>,
    delta: i32,
    sign: i32,
}

impl CosetElement {
    /// `δ_I` of this element: always ±1.
    pub fn delta(&self) -> i32 {
        self.delta
    }

    /// Sign of the element's one-line permutation (used by `Sp`).
    pub fn sign(&self) -> i32 {
        self.sign
    }

    pub(crate) fn images(&self) -> &[usize] {
        &self.images
    }
}

/// The elements `σ` with `δ_I(σ) != 0`: a coset `σ_I S_I` of the
/// stabilizer of the list.
#[derive(Clone, Debug)]
pub struct StabilizerCosets {
    group: Group,
    elements: Vec<CosetElement>,
}

impl StabilizerCosets {
    pub fn group(&self) -> Group {
        self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CosetElement] {
        &self.elements
    }

    /// The elements as matchings (orthogonal and symplectic).
    pub fn matchings(&self) -> Vec<PairPartition> {
        assert!(self.group != Group::Unitary, "unitary cosets hold permutations");
        self.elements.iter().map(|e| PairPartition::from_partners(&e.images)).collect()
    }

    /// The elements as permutations (unitary).
    pub fn permutations(&self) -> Vec<Permutation> {
        assert!(self.group == Group::Unitary, "real cosets hold matchings");
        self.elements
            .iter()
            .map(|e| Permutation::from_zero_based(e.images.clone()))
            .collect()
    }
}

fn positions_by_value(list: &[i64]) -> BTreeMap<i64, Vec<usize>> {
    let mut m: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, &v) in list.iter().enumerate() {
        m.entry(v).or_default().push(k);
    }
    m
}

/// Enumerates the coset. For the unitary group `list` is `I` and `conj` is
/// `I'`; the other groups ignore `conj`.
pub fn stabilizer_cosets(group: Group, list: &[i64], conj: &[i64]) -> StabilizerCosets {
    let mut elements = Vec::new();
    match group {
        Group::Unitary => {
            if list.len() == conj.len() {
                let left = positions_by_value(list);
                let right = positions_by_value(conj);
                let blocks: Option<Vec<(Vec<usize>, Vec<usize>)>> = left
                    .iter()
                    .map(|(v, ps)| right.get(v).filter(|qs| qs.len() == ps.len()).map(|qs| (ps.clone(), qs.clone())))
                    .collect();
                if let Some(blocks) = blocks.filter(|b| b.len() == right.len()) {
                    let mut images = vec![0; list.len()];
                    bijections(&blocks, 0, &mut images, &mut |img| {
                        elements.push(CosetElement {
                            images: img.to_vec(),
                            delta: 1,
                            sign: 1,
                        })
                    });
                }
            }
        }
        Group::Orthogonal => {
            let classes = positions_by_value(list);
            if list.len() % 2 == 0 && classes.values().all(|ps| ps.len() % 2 == 0) {
                let blocks: Vec<Vec<usize>> = classes.into_values().collect();
                let mut partner = vec![0; list.len()];
                matchings_within(&blocks, 0, &mut partner, &mut |p| {
                    let sign = partner_sign(p);
                    elements.push(CosetElement {
                        images: p.to_vec(),
                        delta: 1,
                        sign,
                    })
                });
            }
        }
        Group::Symplectic => {
            let classes = positions_by_value(list);
            let balanced = classes
                .iter()
                .all(|(v, ps)| classes.get(&-v).map(|qs| qs.len()) == Some(ps.len()));
            if list.len() % 2 == 0 && balanced {
                let blocks: Vec<(Vec<usize>, Vec<usize>)> = classes
                    .iter()
                    .filter(|(v, _)| **v > 0)
                    .map(|(v, ps)| (ps.clone(), classes[&-v].clone()))
                    .collect();
                let mut images = vec![0; list.len()];
                bijections(&blocks, 0, &mut images, &mut |img| {
                    // img sends each +v position to a -v position
                    let mut partner = vec![usize::MAX; list.len()];
                    for (ps, _) in &blocks {
                        for &p in ps {
                            partner[p] = img[p];
                            partner[img[p]] = p;
                        }
                    }
                    let matching = PairPartition::from_partners(&partner);
                    let delta = delta_matching(Group::Symplectic, list, &matching);
                    elements.push(CosetElement {
                        images: partner,
                        delta,
                        sign: matching.sign(),
                    })
                });
            }
        }
    }
    StabilizerCosets { group, elements }
}

fn partner_sign(partner: &[usize]) -> i32 {
    PairPartition::from_partners(partner).sign()
}

fn bijections(
    blocks: &[(Vec<usize>, Vec<usize>)],
    k: usize,
    images: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    let Some((from, to)) = blocks.get(k) else {
        f(images);
        return;
    };
    let mut targets = to.clone();
    permutations_of(&mut targets, 0, &mut |t| {
        for (a, b) in from.iter().zip(t) {
            images[*a] = *b;
        }
        bijections(blocks, k + 1, images, f);
    });
}

fn permutations_of(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations_of(v, k + 1, f);
        v.swap(k, i);
    }
}

fn matchings_within(blocks: &[Vec<usize>], k: usize, partner: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    let Some(points) = blocks.get(k) else {
        f(partner);
        return;
    };
    crate::combinatorics::for_each_matching_of(points, &mut |pairs| {
        for &(a, b) in pairs {
            partner[a] = b;
            partner[b] = a;
        }
        matchings_within(blocks, k + 1, partner, f);
    });
}

/// Closed-form `|S_I|`: `Π m(v)!` for U (zero unless `I` and `I'` agree as
/// multisets), `Π (m(v)-1)!!` for O (zero if some `m(v)` is odd), and
/// `Π_{v>0} m(v)!` for Sp (zero unless `m(v) = m(-v)`).
pub fn stabilizer_count(group: Group, list: &[i64], conj: &[i64]) -> BigInt {
    let m = super::spec::counts(list);
    match group {
        Group::Unitary => {
            if super::spec::counts(conj) != m {
                return BigInt::zero();
            }
            m.values().map(|&c| factorial(c as u64)).product()
        }
        Group::Orthogonal => {
            if m.values().any(|c| c % 2 == 1) {
                return BigInt::zero();
            }
            m.values().map(|&c| double_factorial_odd(c as u64 - 1)).product()
        }
        Group::Symplectic => {
            let mut acc = BigInt::one();
            for (&v, &c) in &m {
                if m.get(&-v) != Some(&c) {
                    return BigInt::zero();
                }
                if v > 0 {
                    acc *= factorial(c as u64);
                }
            }
            acc
        }
    }
}
