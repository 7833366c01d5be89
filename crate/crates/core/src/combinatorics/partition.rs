use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::factorial;
use crate::error::HaarError;

/// An integer partition, stored as weakly decreasing positive parts.
///
/// The empty partition is a valid value of weight 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates that `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> Result<Self, HaarError> {
        if parts.contains(&0) {
            return Err(HaarError::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(HaarError::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary positive parts into a partition; zeros are dropped.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `(1^n)`.
    pub fn ones(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// `(n)`, or the empty partition for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// `z_λ = Π i^{m_i} m_i!`, the centralizer order of the class `λ`.
    pub fn z(&self) -> BigInt {
        let mut acc = BigInt::one();
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let m = self.parts[i..].iter().take_while(|&&q| q == p).count();
            acc *= BigInt::from(p).pow(m as u32) * factorial(m as u64);
            i += m;
        }
        acc
    }

    /// Every part doubled: `2λ`.
    pub fn doubled(&self) -> Partition {
        Partition {
            parts: self.parts.iter().map(|p| 2 * p).collect(),
        }
    }

    /// Every part repeated: `λ ∪ λ`.
    pub fn repeated(&self) -> Partition {
        Partition {
            parts: self.parts.iter().flat_map(|&p| [p, p]).collect(),
        }
    }

    /// Union of the parts of both partitions.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::from_unsorted(parts)
    }

    /// Cells `(i, j)`, both 0-based, in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }

    /// Dominance order `self ≤ other`.
    pub fn dominance_leq(&self, other: &Partition) -> Result<bool, HaarError> {
        if self.weight() != other.weight() {
            return Err(HaarError::WeightMismatch(self.weight(), other.weight()));
        }
        let mut a = 0;
        let mut b = 0;
        for k in 0..self.len().max(other.len()) {
            a += self.parts.get(k).copied().unwrap_or(0);
            b += other.parts.get(k).copied().unwrap_or(0);
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Partitions obtained by removing one corner box, each paired with the
    /// edge weight of the weighted Young lattice: `2 μ_- m_{μ_-}(μ)` where
    /// `μ_-` is the part of `μ` that grows back into `λ`, or `1` when the
    /// removed box was a whole row.
    pub fn young_predecessors(&self) -> Vec<(Partition, u64)> {
        let mut out = Vec::new();
        for i in 0..self.parts.len() {
            let last_of_run = i + 1 == self.parts.len() || self.parts[i + 1] < self.parts[i];
            if !last_of_run {
                continue;
            }
            let mut parts = self.parts.clone();
            parts[i] -= 1;
            let grown = parts[i];
            if grown == 0 {
                parts.pop();
            }
            let mu = Partition { parts };
            let w = if grown == 0 {
                1
            } else {
                2 * grown as u64 * mu.multiplicity(grown) as u64
            };
            out.push((mu, w));
        }
        out
    }

    /// Compact label used in tables, e.g. `2,1,1`. The empty partition is `-`.
    pub fn label(&self) -> String {
        if self.parts.is_empty() {
            return "-".to_string();
        }
        self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// All partitions of `n` with at most `max_length` parts, in reverse
/// lexicographic order: `(n)` first, `(1^n)` last.
pub fn partitions_of(n: usize, max_length: Option<usize>) -> Vec<Partition> {
    fn go(rest: usize, cap: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_length.unwrap_or(n), &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `2,1,1`, `(2,1,1)`, `2 1 1` and exponent shorthand `2,1^2`.
impl FromStr for Partition {
    type Err = HaarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = Vec::new();
        for tok in inner.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let bad = || HaarError::InvalidPartition(s.to_string());
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<usize>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let base = base.parse::<usize>().map_err(|_| bad())?;
            parts.extend(std::iter::repeat_n(base, exp));
        }
        Partition::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn conjugates() {
        assert_eq!(p(&[4, 3, 1]).conjugate(), p(&[3, 2, 2, 1]));
        assert_eq!(p(&[1, 1, 1]).conjugate(), p(&[3]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn z_values() {
        assert_eq!(p(&[1, 1, 1]).z(), BigInt::from(6));
        assert_eq!(p(&[2]).z(), BigInt::from(2));
        assert_eq!(p(&[3, 2, 2, 1, 1]).z(), BigInt::from(48));
    }

    #[test]
    fn dominance() {
        assert!(p(&[1, 1]).dominance_leq(&p(&[2])).unwrap());
        assert!(p(&[2, 2]).dominance_leq(&p(&[3, 1])).unwrap());
        assert!(!p(&[3, 1]).dominance_leq(&p(&[2, 2])).unwrap());
        assert!(p(&[3]).dominance_leq(&p(&[2])).is_err());
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(partitions_of(4, None).len(), 5);
        assert_eq!(partitions_of(5, None).len(), 7);
        assert_eq!(partitions_of(5, Some(2)), vec![p(&[5]), p(&[4, 1]), p(&[3, 2])]);
        let five: Vec<String> = partitions_of(5, None).iter().map(|l| l.label()).collect();
        assert_eq!(five, ["5", "4,1", "3,2", "3,1,1", "2,2,1", "2,1,1,1", "1,1,1,1,1"]);
        assert_eq!(partitions_of(0, None), vec![Partition::empty()]);
    }

    #[test]
    fn predecessor_weights() {
        let preds = p(&[2, 1]).young_predecessors();
        assert_eq!(preds, vec![(p(&[1, 1]), 4), (p(&[2]), 1)]);
        assert_eq!(p(&[1]).young_predecessors(), vec![(Partition::empty(), 1)]);
        assert_eq!(p(&[3]).young_predecessors(), vec![(p(&[2]), 4)]);
    }

    #[test]
    fn parsing() {
        assert_eq!("(2,1,1)".parse::<Partition>().unwrap(), p(&[2, 1, 1]));
        assert_eq!("2,1^2".parse::<Partition>().unwrap(), p(&[2, 1, 1]));
        assert_eq!("1^10".parse::<Partition>().unwrap(), Partition::ones(10));
        assert!("1,2".parse::<Partition>().is_err());
        assert!("x".parse::<Partition>().is_err());
    }

    #[test]
    fn doubled_and_repeated() {
        assert_eq!(p(&[2, 1]).doubled(), p(&[4, 2]));
        assert_eq!(p(&[2, 1]).repeated(), p(&[2, 2, 1, 1]));
    }
}
