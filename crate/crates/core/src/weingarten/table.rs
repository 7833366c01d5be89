use std::collections::BTreeMap;
use std::sync::{Arc, LazyLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{factorial, Poly, RationalFunction};
use crate::cache::OnceMap;
use crate::combinatorics::{partitions_of, Partition};
use crate::dim::Dim;
use crate::error::HaarError;
use crate::group::Group;
use crate::symfun::{dimension, principal_specialization, schur_at_one, spherical_table, Alpha};

/// Largest `n` for which tables are built.
pub const MAX_TABLE_N: usize = 12;

/// Weingarten values for every type partition of `n`.
///
/// The keys are cycle types for the unitary group and coset types for the
/// orthogonal and symplectic groups. With a fixed `d < n` the values are the
/// pseudo-inverse of the Gram matrix (the character sum restricted to
/// `ℓ(λ) <= d`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeingartenTable {
    group: Group,
    n: usize,
    dim: Dim,
    values: BTreeMap<Partition, RationalFunction>,
}

impl WeingartenTable {
    pub fn group(&self) -> Group {
        self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn get(&self, ty: &Partition) -> &RationalFunction {
        &self.values[ty]
    }

    /// Entries in the order of [`partitions_of`].
    pub fn entries(&self) -> Vec<(Partition, RationalFunction)> {
        partitions_of(self.n, None)
            .into_iter()
            .map(|p| {
                let v = self.values[&p].clone();
                (p, v)
            })
            .collect()
    }

    pub(crate) fn from_parts(group: Group, n: usize, dim: Dim, values: BTreeMap<Partition, RationalFunction>) -> Self {
        WeingartenTable { group, n, dim, values }
    }

    /// Text form:
    ///
    /// ```text
    /// #weingarten v1
    /// O 2 d
    /// 2 : -1 / 0 -2 1 1
    /// 1,1 : 1 1 / 0 -2 1 1
    /// ```
    ///
    /// The second line is `group n dim`; each entry line is
    /// `partition : numerator / denominator` with coefficients in ascending
    /// degree.
    pub fn to_text(&self) -> String {
        let mut out = format!("#weingarten v1\n{} {} {}\n", self.group, self.n, self.dim);
        for (p, v) in self.entries() {
            out.push_str(&format!(
                "{} : {} / {}\n",
                p.label(),
                join_coeffs(v.numerator()),
                join_coeffs(v.denominator())
            ));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, HaarError> {
        let bad = |m: &str| HaarError::CacheFormat(m.to_string());
        let mut lines = text.lines();
        if lines.next() != Some("#weingarten v1") {
            return Err(bad("missing weingarten header"));
        }
        let head = lines.next().ok_or_else(|| bad("missing table line"))?;
        let fields: Vec<&str> = head.split_whitespace().collect();
        let [g, n, d] = fields[..] else {
            return Err(bad(head));
        };
        let group: Group = g.parse()?;
        let n: usize = n.parse().map_err(|_| bad(head))?;
        let dim: Dim = d.parse()?;
        let mut values = BTreeMap::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let (p, rest) = line.split_once(':').ok_or_else(|| bad(line))?;
            let (num, den) = rest.split_once('/').ok_or_else(|| bad(line))?;
            let p: Partition = p.trim().parse()?;
            let num = parse_coeffs(num).ok_or_else(|| bad(line))?;
            let den = parse_coeffs(den).ok_or_else(|| bad(line))?;
            if den.is_zero() || p.weight() != n {
                return Err(bad(line));
            }
            values.insert(p, RationalFunction::new(num, den));
        }
        if values.len() != partitions_of(n, None).len() {
            return Err(bad("incomplete weingarten table"));
        }
        Ok(WeingartenTable { group, n, dim, values })
    }
}

fn join_coeffs(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn parse_coeffs(s: &str) -> Option<Poly> {
    let coeffs: Option<Vec<BigInt>> = s.split_whitespace().map(|t| t.parse().ok()).collect();
    Some(Poly::from_coeffs(coeffs?))
}

static TABLES: LazyLock<OnceMap<(Group, usize, Dim), WeingartenTable>> = LazyLock::new(OnceMap::new);

/// The cached table for `(group, n, d)`, built on first use.
pub fn build_table(group: Group, n: usize, dim: Dim) -> Result<Arc<WeingartenTable>, HaarError> {
    if n == 0 || n > MAX_TABLE_N {
        return Err(HaarError::Budget(format!(
            "Weingarten tables are available for 1 <= n <= {MAX_TABLE_N}, got {n}"
        )));
    }
    Ok(TABLES.get_or_build(&(group, n, dim), || compute_table(group, n, dim)))
}

/// Returns the cached table if it has already been built or loaded.
pub fn cached_table(group: Group, n: usize, dim: Dim) -> Option<Arc<WeingartenTable>> {
    TABLES.get(&(group, n, dim))
}

pub(crate) fn seed_table(table: WeingartenTable) -> Arc<WeingartenTable> {
    TABLES.insert((table.group, table.n, table.dim), table)
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn compute_table(group: Group, n: usize, dim: Dim) -> WeingartenTable {
    let types = partitions_of(n, None);
    // ℓ(λ) <= d when d is fixed; the symbolic table is valid for d >= n
    let irreps = partitions_of(n, dim.fixed().map(|d| d as usize));
    let mut values = BTreeMap::new();
    match group {
        Group::Unitary => {
            let table = crate::symfun::character_table(n);
            let nf = factorial(n as u64);
            let weights: Vec<RationalFunction> = irreps
                .iter()
                .map(|l| {
                    let c = dimension(l);
                    schur_at_one(l, dim).recip().scale(&ratio(&c * &c, &nf * &nf))
                })
                .collect();
            for mu in &types {
                let total = irreps
                    .iter()
                    .zip(&weights)
                    .map(|(l, w)| w.scale(&BigRational::from_integer(table.value(l, mu).into())))
                    .sum();
                values.insert(mu.clone(), total);
            }
        }
        Group::Orthogonal | Group::Symplectic => {
            let prefactor = ratio(BigInt::from(2).pow(n as u32) * factorial(n as u64), factorial(2 * n as u64));
            let alpha = if group == Group::Orthogonal {
                Alpha::Two
            } else {
                Alpha::Half
            };
            let spherical = spherical_table(n, alpha);
            let weights: Vec<RationalFunction> = irreps
                .iter()
                .map(|l| {
                    let (chi1, spec) = match group {
                        // J^{(2)}_λ(1^d) = Π (d + 2(j-1) - (i-1))
                        Group::Orthogonal => (dimension(&l.doubled()), principal_specialization(l, &Alpha::Two.value(), dim)),
                        // 2^n J^{(1/2)}_λ(1^d) = Π (2d + (j-1) - 2(i-1)), the Sp(2d) specialization
                        _ => (
                            dimension(&l.repeated()),
                            principal_specialization(l, &Alpha::Half.value(), dim)
                                .scale(&BigRational::from_integer(BigInt::from(2).pow(n as u32))),
                        ),
                    };
                    spec.recip().scale(&(&prefactor * BigRational::from_integer(chi1)))
                })
                .collect();
            for rho in &types {
                let total = irreps
                    .iter()
                    .zip(&weights)
                    .map(|(l, w)| w.scale(spherical.value(l, rho)))
                    .sum();
                values.insert(rho.clone(), total);
            }
        }
    }
    WeingartenTable { group, n, dim, values }
}

fn lookup(group: Group, ty: &Partition, dim: Dim) -> Result<RationalFunction, HaarError> {
    Ok(build_table(group, ty.weight(), dim)?.get(ty).clone())
}

/// `W^U(μ; d)` on permutations of cycle type `μ`.
pub fn weingarten_unitary(mu: &Partition, dim: Dim) -> Result<RationalFunction, HaarError> {
    lookup(Group::Unitary, mu, dim)
}

/// `W^O(ρ; d)` on matchings of coset type `ρ`.
pub fn weingarten_orthogonal(rho: &Partition, dim: Dim) -> Result<RationalFunction, HaarError> {
    lookup(Group::Orthogonal, rho, dim)
}

/// `W^Sp(ρ; d)` for `Sp(2d)` on matchings of coset type `ρ`. Sign-free; the
/// signs of the symplectic form are applied by the integrator.
pub fn weingarten_symplectic(rho: &Partition, dim: Dim) -> Result<RationalFunction, HaarError> {
    lookup(Group::Symplectic, rho, dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_i64s(n), Poly::from_i64s(d))
    }

    #[test]
    fn unitary_small() {
        assert_eq!(weingarten_unitary(&p(&[1]), Dim::Symbolic).unwrap(), rf(&[1], &[0, 1]));
        assert_eq!(weingarten_unitary(&p(&[1, 1]), Dim::Symbolic).unwrap(), rf(&[1], &[-1, 0, 1]));
        assert_eq!(weingarten_unitary(&p(&[2]), Dim::Symbolic).unwrap(), rf(&[-1], &[0, -1, 0, 1]));
        assert_eq!(weingarten_unitary(&p(&[1]), Dim::Fixed(1)).unwrap(), RationalFunction::one());
    }

    #[test]
    fn orthogonal_small() {
        let den = [0, -2, 1, 1];
        assert_eq!(weingarten_orthogonal(&p(&[1]), Dim::Symbolic).unwrap(), rf(&[1], &[0, 1]));
        assert_eq!(weingarten_orthogonal(&p(&[1, 1]), Dim::Symbolic).unwrap(), rf(&[1, 1], &den));
        assert_eq!(weingarten_orthogonal(&p(&[2]), Dim::Symbolic).unwrap(), rf(&[-1], &den));
        assert_eq!(weingarten_orthogonal(&p(&[1]), Dim::Fixed(1)).unwrap(), RationalFunction::one());
    }

    #[test]
    fn symplectic_small() {
        assert_eq!(weingarten_symplectic(&p(&[1]), Dim::Symbolic).unwrap(), rf(&[1], &[0, 2]));
        // 4d(d-1)(2d+1) = -4d - 4d^2 + 8d^3
        let den = [0, -4, -4, 8];
        assert_eq!(weingarten_symplectic(&p(&[1, 1]), Dim::Symbolic).unwrap(), rf(&[-1, 2], &den));
        assert_eq!(weingarten_symplectic(&p(&[2]), Dim::Symbolic).unwrap(), rf(&[1], &den));
    }

    #[test]
    fn symplectic_is_orthogonal_at_minus_two_d() {
        for n in 1..=5 {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            for rho in partitions_of(n, None) {
                let sp = weingarten_symplectic(&rho, Dim::Symbolic).unwrap();
                let o = weingarten_orthogonal(&rho, Dim::Symbolic).unwrap().substitute_affine(-2, 0);
                assert_eq!(sp, o.scale(&BigRational::from_integer(sign.into())), "{rho}");
            }
        }
    }

    #[test]
    fn truncated_table_uses_short_irreps() {
        // at d = 2 only λ = (3), (2,1) contribute; the values stay finite
        let t = build_table(Group::Unitary, 3, Dim::Fixed(2)).unwrap();
        for (_, v) in t.entries() {
            assert!(v.is_constant());
        }
        assert!(build_table(Group::Unitary, 0, Dim::Symbolic).is_err());
    }

    #[test]
    fn text_round_trip() {
        for g in Group::ALL {
            let t = build_table(g, 3, Dim::Symbolic).unwrap();
            assert_eq!(&WeingartenTable::from_text(&t.to_text()).unwrap(), t.as_ref());
        }
        let t = build_table(Group::Orthogonal, 2, Dim::Symbolic).unwrap();
        assert_eq!(t.to_text(), "#weingarten v1\nO 2 d\n2 : -1 / 0 -2 1 1\n1,1 : 1 1 / 0 -2 1 1\n");
        assert!(WeingartenTable::from_text("#weingarten v1\nO 2 d\n2 : 1 / 0\n").is_err());
    }
}
