//! Partitions, permutations and perfect matchings, with the cycle-type and
//! coset-type maps that index Weingarten functions.

mod matching;
mod partition;
mod permutation;

pub use matching::{coset_type_of_partners, enumerate_matchings, for_each_matching_of, PairPartition};
pub use partition::{partitions_of, Partition};
pub use permutation::Permutation;
pub(crate) use permutation::cycle_type_of;
