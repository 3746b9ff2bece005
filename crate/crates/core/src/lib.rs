//! Exact computations on conormals of plane curve singularities and on
//! their equisingular deformations up to contact equivalence.

pub mod cli;
pub mod conormal;
pub mod contact;
pub mod curve;
pub mod deform;
pub mod error;
pub mod exactalg;
pub mod series;

pub use error::{Error, Result};
