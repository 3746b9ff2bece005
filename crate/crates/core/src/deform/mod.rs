//! First-order equisingular deformations up to contact equivalence, in the
//! jet model `ℚ[x, y]/𝔪^N`: the correction elements `h_ℓ`, the ideals
//! `I_f^μ ⊆ I_f`, the quotient basis and the first-order contact action.

pub mod hseries;
pub mod ideals;
pub mod model;

pub use hseries::{compute_h, ihat_generators, matching_bounds, HSeries, HSolver};
pub use ideals::{ideal_es_nnd, ideal_es_nnd_at, jet_bound, w0_generators, EsIdeal};
pub use model::{
    act_first_order, es_arrow_basis, ideal_mu, is_trivial_first_order, quotient_basis, xy_monomial, DeformationModel,
    EquisingIdealPair, MuIdeal, SemiuniversalDeformation,
};
