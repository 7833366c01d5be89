use std::fmt;

use crate::dim::Dim;
use crate::group::Group;

/// How a moment was evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// The degree or the index multisets force zero.
    Vanish,
    /// Both stabilizers are trivial: a single Weingarten value.
    Single,
    /// Orthogonal, one row index: `Π (μ_i - 1)!! Σ C(λ) W(λ)`.
    OneRow,
    /// Orthogonal, blocks with disjoint column values.
    IndependentBlocks,
    /// Orthogonal reduction of the column stabilizer to one-list counts.
    OrthogonalReduction,
    /// Unitary reduction to distinct row indices.
    UnitaryReduction,
    /// Unitary cycle-type counts over `S_I γ S_J`, regrouped by characters.
    Parabolic,
    /// Exhaustive double sum over both stabilizer cosets.
    Direct,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Vanish => "vanish",
            Strategy::Single => "single",
            Strategy::OneRow => "one-row",
            Strategy::IndependentBlocks => "independent-blocks",
            Strategy::OrthogonalReduction => "orthogonal-reduction",
            Strategy::UnitaryReduction => "unitary-reduction",
            Strategy::Parabolic => "parabolic",
            Strategy::Direct => "direct",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One step of an evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    Input(String),
    Normalized(String),
    Strategy(Strategy),
    Vanish(String),
    Reduction { items: usize, classes: usize },
    MemoHit(String),
    MemoMiss(String),
    TableFetch { group: Group, n: usize, dim: Dim },
}

/// Ordered record of an evaluation, rendered for `--explain`.
///
/// Text form, one event per line:
///
/// ```text
/// input O I=(1,1,1,1) J=(1,1,1,1)
/// strategy one-row
/// table O 2 d
/// ```
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    events: Vec<TraceEvent>,
}

impl Trace {
    pub fn new() -> Self {
        Trace::default()
    }

    pub fn push(&mut self, e: TraceEvent) {
        self.events.push(e);
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    /// The last strategy recorded.
    pub fn strategy(&self) -> Option<Strategy> {
        self.events.iter().rev().find_map(|e| match e {
            TraceEvent::Strategy(s) => Some(*s),
            _ => None,
        })
    }

    pub fn fetched_tables(&self) -> bool {
        self.events.iter().any(|e| matches!(e, TraceEvent::TableFetch { .. }))
    }

    pub fn extend(&mut self, other: Trace) {
        self.events.extend(other.events);
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::Input(s) => write!(f, "input {s}"),
            TraceEvent::Normalized(s) => write!(f, "normalized {s}"),
            TraceEvent::Strategy(s) => write!(f, "strategy {s}"),
            TraceEvent::Vanish(why) => write!(f, "vanish {why}"),
            TraceEvent::Reduction { items, classes } => write!(f, "reduce items={items} classes={classes}"),
            TraceEvent::MemoHit(k) => write!(f, "memo hit {k}"),
            TraceEvent::MemoMiss(k) => write!(f, "memo miss {k}"),
            TraceEvent::TableFetch { group, n, dim } => write!(f, "table {group} {n} {dim}"),
        }
    }
}
