use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::algebra::Matrix;
use crate::cache::OnceMap;
use crate::combinatorics::{partitions_of, Partition};

/// A homogeneous symmetric function of degree `n` in the power-sum basis.
/// Absent keys have coefficient zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumExpansion {
    n: usize,
    coeffs: BTreeMap<Partition, BigRational>,
}

impl PowerSumExpansion {
    pub fn new(n: usize) -> Self {
        PowerSumExpansion {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    /// The single power sum `p_μ`.
    pub fn power_sum(mu: &Partition) -> Self {
        let mut e = PowerSumExpansion::new(mu.weight());
        e.coeffs.insert(mu.clone(), BigRational::one());
        e
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn coefficient(&self, mu: &Partition) -> BigRational {
        self.coeffs.get(mu).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, mu: &Partition, c: &BigRational) {
        assert_eq!(mu.weight(), self.n, "term of the wrong degree");
        let entry = self.coeffs.entry(mu.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(mu);
        }
    }

    /// `<f, g>_α` with `<p_λ, p_μ>_α = α^{ℓ(λ)} z_λ δ_{λμ}`.
    pub fn inner(&self, other: &PowerSumExpansion, alpha: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .filter_map(|(mu, a)| other.coeffs.get(mu).map(|b| power_sum_norm(mu, alpha) * a * b))
            .sum()
    }

    /// Coefficients in the monomial basis.
    pub fn to_monomials(&self) -> BTreeMap<Partition, BigRational> {
        let t = transition(self.n);
        let mut out = BTreeMap::new();
        for (mu, c) in &self.coeffs {
            let row = t.index[mu];
            for (col, nu) in t.partitions.iter().enumerate() {
                let r = &t.p_to_m[(row, col)];
                if !r.is_zero() {
                    *out.entry(nu.clone()).or_insert_with(BigRational::zero) += c * r;
                }
            }
        }
        out.retain(|_, v: &mut BigRational| !v.is_zero());
        out
    }
}

fn power_sum_norm(mu: &Partition, alpha: &BigRational) -> BigRational {
    Pow::pow(alpha, mu.len() as u32) * BigRational::from_integer(mu.z())
}

struct Transition {
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    // p_μ = Σ_ν p_to_m[μ][ν] m_ν
    p_to_m: Matrix<BigRational>,
    // m_ν = Σ_μ m_to_p[ν][μ] p_μ
    m_to_p: Matrix<BigRational>,
}

static TRANSITIONS: LazyLock<OnceMap<usize, Transition>> = LazyLock::new(OnceMap::new);

fn transition(n: usize) -> Arc<Transition> {
    TRANSITIONS.get_or_build(&n, || {
        let partitions = partitions_of(n, None);
        let index = partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let size = partitions.len();
        let p_to_m = Matrix::from_fn(size, size, |i, j| {
            BigRational::from_integer(BigInt::from(monomial_coefficient(&partitions[i], &partitions[j])))
        });
        let m_to_p = p_to_m.inverse().expect("power sums form a basis");
        Transition {
            partitions,
            index,
            p_to_m,
            m_to_p,
        }
    })
}

/// Coefficient of `x^ν` in `p_μ`: the number of ways to send each part of
/// `μ` to a variable so that variable `j` receives total degree `ν_j`.
fn monomial_coefficient(mu: &Partition, nu: &Partition) -> u64 {
    fn go(parts: &[usize], room: &mut [usize]) -> u64 {
        let Some((&p, rest)) = parts.split_first() else {
            return room.iter().all(|&r| r == 0) as u64;
        };
        let mut count = 0;
        for j in 0..room.len() {
            if room[j] >= p {
                room[j] -= p;
                count += go(rest, room);
                room[j] += p;
            }
        }
        count
    }
    go(mu.parts(), &mut nu.parts().to_vec())
}

/// The monomial symmetric function `m_ν` in power sums.
pub fn monomial_in_powersums(nu: &Partition) -> PowerSumExpansion {
    let t = transition(nu.weight());
    let row = t.index[nu];
    let mut e = PowerSumExpansion::new(nu.weight());
    for (col, mu) in t.partitions.iter().enumerate() {
        let c = &t.m_to_p[(row, col)];
        if !c.is_zero() {
            e.add_term(mu, c);
        }
    }
    e
}

static JACKS: LazyLock<OnceMap<(usize, BigRational), HashMap<Partition, PowerSumExpansion>>> =
    LazyLock::new(OnceMap::new);

/// The Jack polynomial `P_λ^{(α)}` in power sums, normalized to be monic on
/// `m_λ`.
///
/// Built by Gram-Schmidt over the monomial basis in increasing lexicographic
/// order, a linear extension of dominance; the result is triangular in
/// dominance regardless of the extension chosen.
pub fn jack_in_powersums(lambda: &Partition, alpha: &BigRational) -> PowerSumExpansion {
    let n = lambda.weight();
    let all = JACKS.get_or_build(&(n, alpha.clone()), || {
        let mut basis: Vec<(Partition, PowerSumExpansion, BigRational)> = Vec::new();
        for nu in partitions_of(n, None).into_iter().rev() {
            let mut v = monomial_in_powersums(&nu);
            for (_, prev, norm) in &basis {
                let c = v.inner(prev, alpha) / norm;
                if !c.is_zero() {
                    for (mu, a) in prev.terms() {
                        v.add_term(mu, &(-(&c * a)));
                    }
                }
            }
            let norm = v.inner(&v, alpha);
            basis.push((nu, v, norm));
        }
        basis.into_iter().map(|(nu, v, _)| (nu, v)).collect()
    });
    all[lambda].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn first_jacks() {
        let j1 = jack_in_powersums(&p(&[1]), &q(2, 1));
        assert_eq!(j1, PowerSumExpansion::power_sum(&p(&[1])));
        // P_(2)^(α) = (p_1^2 + α p_2) / (1 + α)
        for alpha in [q(2, 1), q(1, 2), q(1, 1)] {
            let j2 = jack_in_powersums(&p(&[2]), &alpha);
            let s = BigRational::one() + &alpha;
            assert_eq!(j2.coefficient(&p(&[1, 1])), BigRational::one() / &s);
            assert_eq!(j2.coefficient(&p(&[2])), &alpha / &s);
        }
    }

    #[test]
    fn monomial_transition() {
        assert_eq!(monomial_coefficient(&p(&[1, 1]), &p(&[1, 1])), 2);
        assert_eq!(monomial_coefficient(&p(&[1, 1]), &p(&[2])), 1);
        assert_eq!(monomial_coefficient(&p(&[2]), &p(&[1, 1])), 0);
        // m_(1,1) = (p_1^2 - p_2)/2
        let m11 = monomial_in_powersums(&p(&[1, 1]));
        assert_eq!(m11.coefficient(&p(&[1, 1])), q(1, 2));
        assert_eq!(m11.coefficient(&p(&[2])), q(-1, 2));
    }

    #[test]
    fn orthogonal_and_triangular() {
        for alpha in [q(2, 1), q(1, 2), q(1, 1), q(3, 1)] {
            for n in 1..=5 {
                let parts = partitions_of(n, None);
                for a in &parts {
                    let ja = jack_in_powersums(a, &alpha);
                    let mono = ja.to_monomials();
                    assert_eq!(mono[a], BigRational::one());
                    for mu in mono.keys() {
                        assert!(mu.dominance_leq(a).unwrap(), "{mu} not below {a}");
                    }
                    for b in &parts {
                        if a != b {
                            assert!(ja.inner(&jack_in_powersums(b, &alpha), &alpha).is_zero());
                        }
                    }
                }
            }
        }
    }
}
