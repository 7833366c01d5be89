use std::collections::HashMap;
use std::fmt;

use crate::error::HaarError;
use crate::group::Group;

/// One monomial in matrix entries.
///
/// Unitary: `Π_k g_{i_k j_k} Π_k conj(g_{i'_k j'_k})` with separate lists
/// `I, J` and `I', J'`. Orthogonal and symplectic: `Π_k g_{i_k j_k}`, with
/// symplectic indices in `{±1..±d}` (the basis `e_1..e_d, e_{-1}..e_{-d}`).
///
/// Degree mismatches (`m != n` for U, odd degree for O and Sp) are valid
/// specs whose integral is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MomentSpec {
    group: Group,
    i: Vec<i64>,
    j: Vec<i64>,
    i_bar: Vec<i64>,
    j_bar: Vec<i64>,
}

impl MomentSpec {
    pub fn unitary(i: Vec<i64>, j: Vec<i64>, i_bar: Vec<i64>, j_bar: Vec<i64>) -> Result<Self, HaarError> {
        if i.len() != j.len() || i_bar.len() != j_bar.len() {
            return Err(HaarError::InvalidSpec("row and column lists differ in length".into()));
        }
        if i.iter().chain(&j).chain(&i_bar).chain(&j_bar).any(|&v| v < 1) {
            return Err(HaarError::InvalidSpec("unitary indices must be positive".into()));
        }
        Ok(MomentSpec {
            group: Group::Unitary,
            i,
            j,
            i_bar,
            j_bar,
        })
    }

    pub fn orthogonal(i: Vec<i64>, j: Vec<i64>) -> Result<Self, HaarError> {
        if i.len() != j.len() {
            return Err(HaarError::InvalidSpec("row and column lists differ in length".into()));
        }
        if i.iter().chain(&j).any(|&v| v < 1) {
            return Err(HaarError::InvalidSpec("orthogonal indices must be positive".into()));
        }
        Ok(MomentSpec {
            group: Group::Orthogonal,
            i,
            j,
            i_bar: Vec::new(),
            j_bar: Vec::new(),
        })
    }

    pub fn symplectic(i: Vec<i64>, j: Vec<i64>) -> Result<Self, HaarError> {
        if i.len() != j.len() {
            return Err(HaarError::InvalidSpec("row and column lists differ in length".into()));
        }
        if i.iter().chain(&j).any(|&v| v == 0) {
            return Err(HaarError::InvalidSpec("symplectic indices must be nonzero".into()));
        }
        Ok(MomentSpec {
            group: Group::Symplectic,
            i,
            j,
            i_bar: Vec::new(),
            j_bar: Vec::new(),
        })
    }

    /// Orthogonal or symplectic spec from lists; unitary specs need
    /// [`MomentSpec::unitary`].
    pub fn real(group: Group, i: Vec<i64>, j: Vec<i64>) -> Result<Self, HaarError> {
        match group {
            Group::Orthogonal => MomentSpec::orthogonal(i, j),
            Group::Symplectic => MomentSpec::symplectic(i, j),
            Group::Unitary => Err(HaarError::InvalidSpec("unitary specs need conjugate lists".into())),
        }
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn i(&self) -> &[i64] {
        &self.i
    }

    pub fn j(&self) -> &[i64] {
        &self.j
    }

    pub fn i_bar(&self) -> &[i64] {
        &self.i_bar
    }

    pub fn j_bar(&self) -> &[i64] {
        &self.j_bar
    }

    /// Total number of matrix-entry factors.
    pub fn degree(&self) -> usize {
        self.i.len() + self.i_bar.len()
    }

    /// The Weingarten order `n`, or `None` when the degree alone forces the
    /// integral to vanish.
    pub fn order(&self) -> Option<usize> {
        match self.group {
            Group::Unitary => (self.i.len() == self.i_bar.len()).then_some(self.i.len()),
            _ => (self.i.len() % 2 == 0).then_some(self.i.len() / 2),
        }
    }

    /// Largest absolute index; a fixed dimension must be at least this.
    pub fn max_index(&self) -> i64 {
        self.i
            .iter()
            .chain(&self.j)
            .chain(&self.i_bar)
            .chain(&self.j_bar)
            .map(|v| v.abs())
            .max()
            .unwrap_or(0)
    }

    /// Renames row values through `rows` and column values through `cols`.
    /// Symplectic maps must commute with negation.
    pub fn relabeled(&self, rows: &dyn Fn(i64) -> i64, cols: &dyn Fn(i64) -> i64) -> MomentSpec {
        MomentSpec {
            group: self.group,
            i: self.i.iter().map(|&v| rows(v)).collect(),
            j: self.j.iter().map(|&v| cols(v)).collect(),
            i_bar: self.i_bar.iter().map(|&v| rows(v)).collect(),
            j_bar: self.j_bar.iter().map(|&v| cols(v)).collect(),
        }
    }

    /// Exchanges rows and columns (the integral of `g^T` equals that of `g`).
    pub fn transposed(&self) -> MomentSpec {
        MomentSpec {
            group: self.group,
            i: self.j.clone(),
            j: self.i.clone(),
            i_bar: self.j_bar.clone(),
            j_bar: self.i_bar.clone(),
        }
    }

    pub(crate) fn from_lists_unchecked(
        group: Group,
        i: Vec<i64>,
        j: Vec<i64>,
        i_bar: Vec<i64>,
        j_bar: Vec<i64>,
    ) -> MomentSpec {
        MomentSpec {
            group,
            i,
            j,
            i_bar,
            j_bar,
        }
    }
}

/// Multiplicity of each value in a list.
pub(crate) fn counts(list: &[i64]) -> HashMap<i64, usize> {
    let mut m = HashMap::new();
    for &v in list {
        *m.entry(v).or_insert(0) += 1;
    }
    m
}

impl fmt::Display for MomentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |l: &[i64]| l.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        match self.group {
            Group::Unitary => write!(
                f,
                "U I=({}) J=({}) I'=({}) J'=({})",
                show(&self.i),
                show(&self.j),
                show(&self.i_bar),
                show(&self.j_bar)
            ),
            g => write!(f, "{g} I=({}) J=({})", show(&self.i), show(&self.j)),
        }
    }
}

impl fmt::Debug for MomentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
