use std::fmt;

use crate::error::HaarError;

use super::partition::Partition;

/// A permutation of `{1..m}` in one-line form.
///
/// Composition is right-to-left: `a.compose(&b)` maps `x` to `a(b(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (0..m).collect(),
        }
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self, HaarError> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in images {
            if x == 0 || x > m || seen[x - 1] {
                return Err(HaarError::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|x| x - 1).collect(),
        })
    }

    /// From 1-based disjoint cycles on `{1..m}`; unmentioned points are fixed.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Result<Self, HaarError> {
        let mut images: Vec<usize> = (0..m).collect();
        let mut seen = vec![false; m];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > m || seen[x - 1] {
                    return Err(HaarError::InvalidPermutation(format!("bad cycle {cycle:?} in S_{m}")));
                }
                seen[x - 1] = true;
                images[x - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| i == x)
        });
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] + 1
    }

    /// 1-based one-line form.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// Disjoint cycles, 1-based, each starting at its least element,
    /// fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        cycle_type_of(&self.images)
    }

    pub fn sign(&self) -> i32 {
        let even_cycles = self.cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Coset type: half the sizes of the connected components of the graph
    /// on `{1..2n}` with edges `{2i-1, 2i}` and `{σ(2i-1), σ(2i)}`.
    pub fn coset_type(&self) -> Result<Partition, HaarError> {
        let m = self.images.len();
        if m % 2 == 1 {
            return Err(HaarError::OddDegree(m));
        }
        let mut uf = UnionFind::new(m);
        for i in (0..m).step_by(2) {
            uf.union(i, i + 1);
            uf.union(self.images[i], self.images[i + 1]);
        }
        let mut sizes = vec![0usize; m];
        for v in 0..m {
            sizes[uf.find(v)] += 1;
        }
        let parts = sizes
            .into_iter()
            .filter(|&s| s > 0)
            .map(|s| {
                assert!(s % 2 == 0, "component of odd size in coset graph");
                s / 2
            })
            .collect();
        Ok(Partition::from_unsorted(parts))
    }
}

pub(crate) fn cycle_type_of(images: &[usize]) -> Partition {
    let mut seen = vec![false; images.len()];
    let mut parts = Vec::new();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = images[x];
        }
        parts.push(len);
    }
    Partition::from_unsorted(parts)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles().iter().filter(|c| c.len() > 1) {
            write!(f, "({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))?;
        }
        if self.cycles().iter().all(|c| c.len() == 1) {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.one_line())
    }
}
