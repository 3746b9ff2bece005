//! Truncated power series in one variable and value semigroups of subrings.

pub mod semigroup;
pub mod trunc;

pub use semigroup::{semigroup_of_subring, SemigroupData};
pub use trunc::{substitute, TruncSeries};
