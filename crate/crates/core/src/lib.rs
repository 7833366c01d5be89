pub mod algebra;
mod cache;
pub mod combinatorics;
mod counts;
mod dim;
mod error;
pub mod expr;
mod group;
pub mod integrator;
pub mod optimizer;
pub mod oracle;
pub mod symfun;
pub mod weingarten;

pub use counts::ClassCounts;
pub use dim::Dim;
pub use error::HaarError;
pub use group::Group;
