use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cache::OnceMap;
use crate::combinatorics::{enumerate_matchings, partitions_of, Partition, Permutation};
use crate::error::HaarError;

use super::character::character_table;
use super::jack::jack_in_powersums;

/// Which spherical functions: zonal (`α = 2`, orthogonal group) or twisted
/// by the sign character (`α = 1/2`, symplectic group).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alpha {
    Two,
    Half,
}

impl Alpha {
    pub fn value(self) -> BigRational {
        match self {
            Alpha::Two => BigRational::from_integer(2.into()),
            Alpha::Half => BigRational::new(1.into(), 2.into()),
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alpha::Two => "2",
            Alpha::Half => "1/2",
        })
    }
}

/// Spherical function values `ω_λ(ρ)` for all `λ, ρ ⊢ n`, normalized to 1
/// at the identity coset `ρ = (1^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalTable {
    n: usize,
    alpha: Alpha,
    values: HashMap<(Partition, Partition), BigRational>,
}

impl SphericalTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    pub fn value(&self, lambda: &Partition, rho: &Partition) -> &BigRational {
        &self.values[&(lambda.clone(), rho.clone())]
    }

    /// Text form: a header line, then `λ | ρ : value` lines in table order.
    pub fn to_text(&self) -> String {
        let mut out = format!("#spherical v1\n{} {}\n", self.n, self.alpha);
        let parts = partitions_of(self.n, None);
        for l in &parts {
            for r in &parts {
                out.push_str(&format!("{} | {} : {}\n", l.label(), r.label(), self.value(l, r)));
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, HaarError> {
        let bad = |m: &str| HaarError::CacheFormat(m.to_string());
        let mut lines = text.lines();
        if lines.next() != Some("#spherical v1") {
            return Err(bad("missing spherical header"));
        }
        let head = lines.next().ok_or_else(|| bad("missing size line"))?;
        let (n, alpha) = head.split_once(' ').ok_or_else(|| bad(head))?;
        let n: usize = n.parse().map_err(|_| bad(head))?;
        let alpha = match alpha {
            "2" => Alpha::Two,
            "1/2" => Alpha::Half,
            _ => return Err(bad(head)),
        };
        let mut values = HashMap::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let (keys, v) = line.split_once(':').ok_or_else(|| bad(line))?;
            let (l, r) = keys.split_once('|').ok_or_else(|| bad(line))?;
            let l: Partition = l.trim().parse()?;
            let r: Partition = r.trim().parse()?;
            let v: BigRational = v.trim().parse().map_err(|_| bad(line))?;
            values.insert((l, r), v);
        }
        let expected = partitions_of(n, None).len().pow(2);
        if values.len() != expected {
            return Err(bad("incomplete spherical table"));
        }
        Ok(SphericalTable { n, alpha, values })
    }
}

static TABLES: LazyLock<OnceMap<(usize, Alpha), SphericalTable>> = LazyLock::new(OnceMap::new);

/// Cached spherical table, extracted from Jack polynomials.
///
/// For `α = 2` the zonal polynomial's power-sum coefficients satisfy
/// `ω_λ(ρ) ∝ 2^{ℓ(ρ)} z_ρ [p_ρ] P_λ^{(2)}`. For `α = 1/2` the twisted value
/// is `(-1)^{n-ℓ(ρ)} z_ρ [p_ρ] P_λ^{(1/2)}` up to scale. Both are rescaled to
/// 1 at `(1^n)`. The twisted value is the sign-free function
/// `sgn(g) ω(g)` of the coset type, so it does not depend on a representative.
pub fn spherical_table(n: usize, alpha: Alpha) -> Arc<SphericalTable> {
    TABLES.get_or_build(&(n, alpha), || {
        let parts = partitions_of(n, None);
        let mut values = HashMap::new();
        for lambda in &parts {
            let jack = jack_in_powersums(lambda, &alpha.value());
            let raw = |rho: &Partition| -> BigRational {
                let w = match alpha {
                    Alpha::Two => BigRational::from_integer(BigInt::from(2).pow(rho.len() as u32)),
                    Alpha::Half if (n - rho.len()) % 2 == 0 => BigRational::one(),
                    Alpha::Half => -BigRational::one(),
                };
                w * BigRational::from_integer(rho.z()) * jack.coefficient(rho)
            };
            let base = raw(&Partition::ones(n));
            for rho in &parts {
                values.insert((lambda.clone(), rho.clone()), raw(rho) / &base);
            }
        }
        SphericalTable { n, alpha, values }
    })
}

pub(crate) fn seed_spherical_table(table: SphericalTable) -> Arc<SphericalTable> {
    TABLES.insert((table.n, table.alpha), table)
}

/// `ω_λ(ρ)` for the given family, normalized to 1 at `(1^n)`.
pub fn spherical_value(lambda: &Partition, rho: &Partition, alpha: Alpha) -> Result<BigRational, HaarError> {
    if lambda.weight() != rho.weight() {
        return Err(HaarError::WeightMismatch(lambda.weight(), rho.weight()));
    }
    Ok(spherical_table(lambda.weight(), alpha).value(lambda, rho).clone())
}

/// Elements of the hyperoctahedral group `H_n ⊂ S_{2n}`, the centralizer of
/// `(1 2)(3 4)...(2n-1 2n)`.
pub fn hyperoctahedral_elements(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permute_all(&mut perm, 0, &mut |pi| {
        for flips in 0..(1u32 << n) {
            let mut images = vec![0; 2 * n];
            for i in 0..n {
                let (mut x, mut y) = (2 * pi[i], 2 * pi[i] + 1);
                if flips >> i & 1 == 1 {
                    std::mem::swap(&mut x, &mut y);
                }
                images[2 * i] = x;
                images[2 * i + 1] = y;
            }
            out.push(Permutation::from_zero_based(images));
        }
    });
    out
}

fn permute_all(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute_all(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Spherical values by direct summation over `H_n`:
/// `ω_λ(g) = |H_n|^{-1} Σ_h φ(h) χ(g h)` with `χ = χ_{2λ}, φ = 1` for `α = 2`
/// and `χ = χ_{λ∪λ}, φ = sgn` for `α = 1/2` (then multiplied by `sgn(g)`).
/// Enumerates `2^n n!` elements per coset, so it is gated to `n <= 4`.
pub fn spherical_value_direct(lambda: &Partition, rho: &Partition, alpha: Alpha) -> Result<BigRational, HaarError> {
    let n = lambda.weight();
    if rho.weight() != n {
        return Err(HaarError::WeightMismatch(n, rho.weight()));
    }
    if n > 4 {
        return Err(HaarError::Budget(format!("direct spherical sum needs n <= 4, got {n}")));
    }
    let g = enumerate_matchings(n)
        .into_iter()
        .map(|m| m.to_permutation())
        .find(|p| p.coset_type().map(|t| &t == rho).unwrap_or(false))
        .expect("every partition is a coset type");
    let (big, twisted) = match alpha {
        Alpha::Two => (lambda.doubled(), false),
        Alpha::Half => (lambda.repeated(), true),
    };
    let table = character_table(2 * n);
    let hs = hyperoctahedral_elements(n);
    let mut total = BigInt::zero();
    for h in &hs {
        let chi = table.value(&big, &g.compose(h).cycle_type());
        let phi: i64 = if twisted { h.sign() as i64 } else { 1 };
        total += chi * phi;
    }
    let mut v = BigRational::new(total, BigInt::from(hs.len()));
    if twisted && g.sign() < 0 {
        v = -v;
    }
    Ok(v)
}
