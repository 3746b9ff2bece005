//! Plane curve germs: branches, Newton diagrams, classification,
//! genericity and equisingularity invariants.

pub mod branch;
pub mod invariants;
pub mod newton;
pub mod plane;
pub mod puiseux;

pub use branch::{Branch, DEFAULT_TRUNCATION};
pub use invariants::{
    branch_invariants, equisingular_equal, implicit_equation, intersection_multiplicity, BranchInvariants,
    EquisingClass,
};
pub use newton::{classify, face_polynomial, newton_diagram, Classification, Face, NewtonDiagram};
pub use plane::{is_generic, normalize_tangent, GenericReport, PlaneCurve, TangentChange};
pub use puiseux::branches_from_equation;
