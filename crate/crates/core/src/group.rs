use std::fmt;
use std::str::FromStr;

use crate::error::HaarError;

/// The compact group being integrated over: `U(d)`, `O(d)` or `Sp(2d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    Unitary,
    Orthogonal,
    Symplectic,
}

impl Group {
    pub const ALL: [Group; 3] = [Group::Unitary, Group::Orthogonal, Group::Symplectic];

    pub fn tag(self) -> &'static str {
        match self {
            Group::Unitary => "U",
            Group::Orthogonal => "O",
            Group::Symplectic => "Sp",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Group {
    type Err = HaarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "u" | "unitary" => Ok(Group::Unitary),
            "o" | "orthogonal" => Ok(Group::Orthogonal),
            "sp" | "symplectic" => Ok(Group::Symplectic),
            _ => Err(HaarError::InvalidGroup(s.to_string())),
        }
    }
}
