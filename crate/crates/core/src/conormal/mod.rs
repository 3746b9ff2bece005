//! Conormals: the parametric lift `p = ẏ/ẋ` of plane branches and the
//! relative conormal ideal of a family of hypersurfaces by elimination.

pub mod legendrian;
pub mod relative;

pub use legendrian::{
    conormal_of, conormal_of_to, generic_position, BranchPosition, LegendrianBranch, LegendrianCurve, PositionReport,
};
pub use relative::{relative_conormal_ideal, saturate, scale_invariance_check, RelConormalIdeal};
