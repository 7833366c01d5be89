//! Strategy selection for moments: normalization, closed forms, list
//! reductions and the shared count cache.

mod dispatch;
mod graph;
mod lattice;
mod memo;
mod normalize;
mod orthogonal;
mod trace;
mod unitary;

pub use dispatch::{dispatch, multiplicity_partitions, regroup_by_characters, Evaluation};
pub use graph::{canonical_key, GraphKey, TIE_BREAK_LIMIT};
pub use lattice::{coset_class_sizes, coset_class_sizes_closed, young_lattice, YoungLattice};
pub use memo::{clear_memo, MEMO_CAPACITY};
pub use normalize::{multiplicity_partition, normalize, NormalizedMoment};
pub use orthogonal::{
    independent_blocks_counts, one_list_counts, one_list_key, one_row_counts, orthogonal_list_reduction, ReducedList,
};
pub use trace::{Strategy, Trace, TraceEvent};
pub use unitary::{parabolic_character_sums, unitary_graph_key, unitary_list_reduction, PARABOLIC_BUDGET};
