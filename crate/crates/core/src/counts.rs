use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebra::RationalFunction;
use crate::combinatorics::{partitions_of, Partition};

/// Integer weights indexed by partitions of `n`: coset-class sizes `C(λ)`,
/// `C_I(λ)`, `C_{I,J}(λ)`, or a signed histogram of types.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClassCounts {
    n: usize,
    counts: BTreeMap<Partition, BigInt>,
}

impl ClassCounts {
    pub fn new(n: usize) -> Self {
        ClassCounts {
            n,
            counts: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Count of `λ`; zero when absent.
    pub fn get(&self, lambda: &Partition) -> BigInt {
        self.counts.get(lambda).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, lambda: Partition, c: impl Into<BigInt>) {
        assert_eq!(lambda.weight(), self.n, "partition of the wrong weight");
        let c = c.into();
        if c.is_zero() {
            return;
        }
        let e = self.counts.entry(lambda.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.counts.remove(&lambda);
        }
    }

    /// Adds `factor * other` entrywise.
    pub fn add_scaled(&mut self, other: &ClassCounts, factor: &BigInt) {
        assert_eq!(self.n, other.n);
        for (l, c) in &other.counts {
            self.add(l.clone(), c * factor);
        }
    }

    pub fn scaled(&self, factor: &BigInt) -> ClassCounts {
        let mut out = ClassCounts::new(self.n);
        out.add_scaled(self, factor);
        out
    }

    /// Nonzero entries in increasing partition order.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.counts.iter()
    }

    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    /// Sum of absolute values; the number of pairs behind a signed histogram.
    pub fn total_abs(&self) -> BigInt {
        self.counts.values().map(|c| c.abs()).sum()
    }

    /// All partitions of `n` in [`partitions_of`] order with their counts.
    pub fn row(&self) -> Vec<(Partition, BigInt)> {
        partitions_of(self.n, None)
            .into_iter()
            .map(|p| {
                let c = self.get(&p);
                (p, c)
            })
            .collect()
    }

    /// The convolution `Σ_{λ, μ} a(λ) b(μ) [λ ∪ μ]`.
    pub fn union_product(&self, other: &ClassCounts) -> ClassCounts {
        let mut out = ClassCounts::new(self.n + other.n);
        for (a, x) in &self.counts {
            for (b, y) in &other.counts {
                out.add(a.union(b), x * y);
            }
        }
        out
    }

    /// `Σ_λ count(λ) · f(λ)`.
    pub fn contract(&self, mut f: impl FnMut(&Partition) -> RationalFunction) -> RationalFunction {
        self.counts
            .iter()
            .map(|(l, c)| f(l).scale(&BigRational::from_integer(c.clone())))
            .sum()
    }
}

impl fmt::Display for ClassCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.row().iter().map(|(p, c)| format!("{p}={c}")).collect();
        f.write_str(&cells.join(" "))
    }
}

impl fmt::Debug for ClassCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
