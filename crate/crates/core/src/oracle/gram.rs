use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{Field, Matrix, RationalFunction};
use crate::combinatorics::{enumerate_matchings, partitions_of, PairPartition, Partition, Permutation};
use crate::dim::Dim;
use crate::error::HaarError;
use crate::group::Group;
use crate::weingarten::WeingartenTable;

use super::interpolate::interpolate_rational;

/// Bound on `(index lists) x (representatives)` for one contraction.
pub const CONTRACTION_BUDGET: u64 = 50_000_000;

/// A spanning element of the centralizer algebra: a permutation of `{1..n}`
/// for U, a perfect matching of `{1..2n}` for O and Sp.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representative {
    Permutation(Permutation),
    Matching(PairPartition),
}

impl Representative {
    /// `δ` of the representative against an index list. For U the list is
    /// `I` followed by `I'`.
    fn delta(&self, list: &[i64], group: Group) -> i64 {
        match self {
            Representative::Permutation(s) => {
                let n = s.degree();
                (0..n).all(|k| list[k] == list[n + s.apply(k + 1) - 1]) as i64
            }
            Representative::Matching(m) => {
                let mut value = 1;
                for &(a, b) in m.pairs() {
                    let (x, y) = (list[a - 1], list[b - 1]);
                    match group {
                        Group::Symplectic => {
                            if x != -y {
                                return 0;
                            }
                            if x < 0 {
                                value = -value;
                            }
                        }
                        _ => {
                            if x != y {
                                return 0;
                            }
                        }
                    }
                }
                value
            }
        }
    }

    fn sign(&self, group: Group) -> i64 {
        match self {
            Representative::Matching(m) if group == Group::Symplectic => m.sign() as i64,
            _ => 1,
        }
    }

    /// Cycle type of `σ^{-1} τ` (U) or coset type of `σ^{-1} τ` (O, Sp).
    pub fn type_with(&self, other: &Representative) -> Partition {
        match (self, other) {
            (Representative::Permutation(s), Representative::Permutation(t)) => s.inverse().compose(t).cycle_type(),
            (Representative::Matching(s), Representative::Matching(t)) => s
                .to_permutation()
                .inverse()
                .compose(&t.to_permutation())
                .coset_type()
                .expect("even degree"),
            _ => panic!("representatives of different groups"),
        }
    }
}

impl std::fmt::Display for Representative {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Representative::Permutation(p) => write!(f, "{p}"),
            Representative::Matching(m) => write!(f, "{m}"),
        }
    }
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if prefix.len() == used.len() {
            out.push(Permutation::from_one_line(prefix).expect("bijection"));
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x + 1);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The representatives in a fixed order whose first element is the identity.
pub(crate) fn representatives(group: Group, n: usize) -> Vec<Representative> {
    match group {
        Group::Unitary => all_permutations(n).into_iter().map(Representative::Permutation).collect(),
        _ => enumerate_matchings(n).into_iter().map(Representative::Matching).collect(),
    }
}

/// The Gram matrix of the representatives.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    group: Group,
    n: usize,
    dim: Dim,
    representatives: Vec<Representative>,
    entries: Matrix<RationalFunction>,
}

impl GramMatrix {
    pub fn group(&self) -> Group {
        self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Representative] {
        &self.representatives
    }

    pub fn entries(&self) -> &Matrix<RationalFunction> {
        &self.entries
    }

    pub fn entry(&self, a: usize, b: usize) -> &RationalFunction {
        &self.entries[(a, b)]
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries == self.entries.transpose()
    }
}

fn alphabet(group: Group, d: u32) -> Vec<i64> {
    let d = d as i64;
    match group {
        Group::Symplectic => (1..=d).chain((1..=d).map(|v| -v)).collect(),
        _ => (1..=d).collect(),
    }
}

fn contraction_cost(group: Group, n: usize, d: u32) -> Option<u64> {
    let letters = alphabet(group, d).len() as u64;
    let lists = letters.checked_pow(2 * n as u32)?;
    let reps = representatives(group, n).len() as u64;
    lists.checked_mul(reps).filter(|&c| c <= CONTRACTION_BUDGET)
}

/// `Φ(σ, τ) = Σ_I w_I(σ) w_I(τ)` at a numeric dimension, summing over every
/// index list (`I I'` for U). For Sp the weight is `δ_I(σ) sgn(σ)`.
pub fn contracted_gram(group: Group, n: usize, d: u32) -> Result<Matrix<BigRational>, HaarError> {
    if contraction_cost(group, n, d).is_none() {
        return Err(HaarError::Budget(format!("contraction for {group} n={n} d={d}")));
    }
    let reps = representatives(group, n);
    let letters = alphabet(group, d);
    let len = 2 * n;
    let mut totals = vec![vec![0i64; reps.len()]; reps.len()];
    let mut digits = vec![0usize; len];
    let mut list = vec![letters[0]; len];
    loop {
        let weights: Vec<(usize, i64)> = reps
            .iter()
            .enumerate()
            .map(|(k, r)| (k, r.delta(&list, group) * r.sign(group)))
            .filter(|&(_, w)| w != 0)
            .collect();
        for &(a, wa) in &weights {
            for &(b, wb) in &weights {
                totals[a][b] += wa * wb;
            }
        }
        // odometer over the alphabet
        let mut k = 0;
        loop {
            if k == len {
                return Ok(Matrix::from_ints(reps.len(), reps.len(), |a, b| totals[a][b]));
            }
            digits[k] += 1;
            if digits[k] < letters.len() {
                list[k] = letters[digits[k]];
                break;
            }
            digits[k] = 0;
            list[k] = letters[0];
            k += 1;
        }
    }
}

fn power(base: &RationalFunction, e: usize) -> RationalFunction {
    (0..e).fold(RationalFunction::one(), |acc, _| &acc * base)
}

/// The closed pattern: `d^ℓ` for U and O, `(-1)^{n-ℓ} (2d)^ℓ` for Sp, with
/// `ℓ` the length of the cycle or coset type.
fn pattern(group: Group, n: usize, dim: Dim, reps: &[Representative]) -> Matrix<RationalFunction> {
    let d = dim.as_rf();
    let base = match group {
        Group::Symplectic => &RationalFunction::from_int(2) * &d,
        _ => d,
    };
    Matrix::from_fn(reps.len(), reps.len(), |a, b| {
        let l = reps[a].type_with(&reps[b]).len();
        let v = power(&base, l);
        if group == Group::Symplectic && (n - l) % 2 == 1 {
            -v
        } else {
            v
        }
    })
}

fn verify_pattern(group: Group, n: usize, reps: &[Representative]) -> Result<(), HaarError> {
    let mut checked = 0;
    for d in 1..=4u32 {
        if contraction_cost(group, n, d).is_none() {
            continue;
        }
        let numeric = contracted_gram(group, n, d)?;
        let expected = pattern(group, n, Dim::Fixed(d), reps);
        for a in 0..reps.len() {
            for b in 0..reps.len() {
                let want = expected[(a, b)].as_constant().expect("constant at fixed d");
                if numeric[(a, b)] != want {
                    return Err(HaarError::Inconsistent(format!(
                        "{group} n={n} d={d}: contraction {} but pattern {want} at ({a},{b})",
                        numeric[(a, b)]
                    )));
                }
            }
        }
        checked += 1;
    }
    if checked < 2 {
        return Err(HaarError::Budget(format!("too few contractions to confirm the {group} n={n} pattern")));
    }
    Ok(())
}

/// The Gram matrix. At a fixed dimension it comes from the explicit
/// contraction when that is within [`CONTRACTION_BUDGET`]; otherwise (and
/// for symbolic `d`) from the closed pattern after the pattern has been
/// confirmed by contraction at several small dimensions.
pub fn gram_matrix(group: Group, n: usize, dim: Dim) -> Result<GramMatrix, HaarError> {
    let reps = representatives(group, n);
    let entries = match dim.fixed() {
        Some(d) if contraction_cost(group, n, d).is_some() => {
            let m = contracted_gram(group, n, d)?;
            Matrix::from_fn(reps.len(), reps.len(), |a, b| RationalFunction::from_rational(&m[(a, b)]))
        }
        _ => {
            verify_pattern(group, n, &reps)?;
            pattern(group, n, dim, &reps)
        }
    };
    Ok(GramMatrix {
        group,
        n,
        dim,
        representatives: reps,
        entries,
    })
}

/// Reads the table off the first row of an inverse and checks that every
/// entry depends only on the type of the pair.
fn table_from_inverse<F: Field>(
    reps: &[Representative],
    inverse: &Matrix<F>,
    n: usize,
) -> Result<BTreeMap<Partition, F>, HaarError> {
    let mut values: BTreeMap<Partition, F> = BTreeMap::new();
    for b in 0..reps.len() {
        values.entry(reps[0].type_with(&reps[b])).or_insert_with(|| inverse[(0, b)].clone());
    }
    for a in 0..reps.len() {
        for b in 0..reps.len() {
            let ty = reps[a].type_with(&reps[b]);
            if values[&ty] != inverse[(a, b)] {
                return Err(HaarError::Inconsistent(format!("inverse entry ({a},{b}) is not a function of {ty}")));
            }
        }
    }
    for p in partitions_of(n, None) {
        values.entry(p).or_insert_with(F::zero);
    }
    Ok(values)
}

fn numeric_inverse(group: Group, n: usize, d: u32, reps: &[Representative]) -> Result<Matrix<BigRational>, HaarError> {
    let m = if contraction_cost(group, n, d).is_some() {
        contracted_gram(group, n, d)?
    } else {
        let p = pattern(group, n, Dim::Fixed(d), reps);
        Matrix::from_fn(reps.len(), reps.len(), |a, b| p[(a, b)].as_constant().expect("constant"))
    };
    Ok(m.inverse().unwrap_or_else(|| m.pseudo_inverse()))
}

/// The Weingarten table as the (pseudo-)inverse of the Gram matrix.
///
/// Symbolic U and O invert over rational functions. Symbolic Sp inverts at
/// `3n + 4` integer dimensions `d >= n` and reconstructs each value by
/// rational interpolation (numerator degree at most `n`, denominator at
/// most `2n`). A fixed `d` inverts exactly over the rationals, using the
/// Moore-Penrose pseudo-inverse when the Gram matrix is singular.
pub fn gram_inverse_weingarten(group: Group, n: usize, dim: Dim) -> Result<WeingartenTable, HaarError> {
    let reps = representatives(group, n);
    let values: BTreeMap<Partition, RationalFunction> = match (dim, group) {
        (Dim::Fixed(d), _) => {
            let inv = numeric_inverse(group, n, d, &reps)?;
            table_from_inverse(&reps, &inv, n)?
                .into_iter()
                .map(|(p, v)| (p, RationalFunction::from_rational(&v)))
                .collect()
        }
        (Dim::Symbolic, Group::Symplectic) => {
            verify_pattern(group, n, &reps)?;
            let start = n.max(1) as u32;
            let mut samples: BTreeMap<Partition, Vec<(BigRational, BigRational)>> = BTreeMap::new();
            for d in start..start + 3 * n as u32 + 4 {
                let inv = numeric_inverse(group, n, d, &reps)?;
                let x = BigRational::from_integer(BigInt::from(d));
                for (p, v) in table_from_inverse(&reps, &inv, n)? {
                    samples.entry(p).or_default().push((x.clone(), v));
                }
            }
            let mut out = BTreeMap::new();
            for (p, pts) in samples {
                let f = interpolate_rational(&pts, n, 2 * n)
                    .ok_or_else(|| HaarError::Inconsistent(format!("no rational fit for Sp {p}")))?;
                out.insert(p, f);
            }
            out
        }
        (Dim::Symbolic, _) => {
            let gram = gram_matrix(group, n, dim)?;
            let inv = gram
                .entries
                .inverse()
                .ok_or_else(|| HaarError::Inconsistent(format!("symbolic {group} Gram matrix is singular")))?;
            table_from_inverse(&reps, &inv, n)?
        }
    };
    Ok(WeingartenTable::from_parts(group, n, dim, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_i64s(num), Poly::from_i64s(den))
    }

    #[test]
    fn small_gram_matrices() {
        let u = gram_matrix(Group::Unitary, 1, Dim::Symbolic).unwrap();
        assert_eq!(u.size(), 1);
        assert_eq!(u.entry(0, 0), &RationalFunction::var());
        let sp = gram_matrix(Group::Symplectic, 1, Dim::Symbolic).unwrap();
        assert_eq!(sp.entry(0, 0), &rf(&[0, 2], &[1]));
        let o = gram_matrix(Group::Orthogonal, 2, Dim::Symbolic).unwrap();
        assert_eq!(o.size(), 3);
        assert!(o.is_symmetric());
        for a in 0..3 {
            for b in 0..3 {
                let want = if a == b { rf(&[0, 0, 1], &[1]) } else { RationalFunction::var() };
                assert_eq!(o.entry(a, b), &want);
            }
        }
    }

    #[test]
    fn contraction_matches_pattern_at_small_d() {
        for group in [Group::Unitary, Group::Orthogonal, Group::Symplectic] {
            for n in 1..=3 {
                gram_matrix(group, n, Dim::Symbolic).unwrap();
            }
        }
        // d = 2 < 3: the contraction at the fixed dimension is singular
        let g = contracted_gram(Group::Unitary, 3, 2).unwrap();
        assert_eq!(g.rank(), 5);
        assert_eq!(g[(0, 0)], BigRational::from_integer(8.into()));
    }

    #[test]
    fn unitary_two_inverse() {
        let t = gram_inverse_weingarten(Group::Unitary, 2, Dim::Symbolic).unwrap();
        let one = Partition::ones(2);
        let two = Partition::row(2);
        assert_eq!(t.get(&one), &rf(&[1], &[-1, 0, 1]));
        assert_eq!(t.get(&two), &rf(&[-1], &[0, -1, 0, 1]));
    }

    #[test]
    fn pseudo_inverse_when_truncated() {
        let t = gram_inverse_weingarten(Group::Unitary, 2, Dim::Fixed(1)).unwrap();
        // Φ = [[1,1],[1,1]], Φ+ = Φ/4
        let q = RationalFunction::from_rational(&BigRational::new(1.into(), 4.into()));
        assert_eq!(t.get(&Partition::ones(2)), &q);
        assert_eq!(t.get(&Partition::row(2)), &q);
    }
}
