//! Contact transformations of `(x, y, p)`-space for the form `dy − p dx`
//! and their action on conormals, exactly or to first order over `T_ε`.

pub mod action;
pub mod infinitesimal;
pub mod transform;

pub use action::{
    act_on_legendrian, equisingularity_preservation_test, implicitize, plane_action, plane_action_to,
    PreservationReport,
};
pub use infinitesimal::{make_infinitesimal, EpsDeformation, InfinitesimalContact};
pub use transform::{pullback, verify_contact, ContactCheck, ContactTransform, PulledForm, XYP};
