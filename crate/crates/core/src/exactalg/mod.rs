//! Exact arithmetic over ℚ: polynomials, monomial orders, Gröbner bases and
//! jet-space linear algebra.

pub mod groebner;
pub mod jets;
pub mod order;
pub mod parse;
pub mod poly;
pub mod rational;

pub use groebner::{eliminate, groebner, normal_form, reduced_groebner, standard_monomials, IdealBasis};
pub use jets::{jet_quotient_basis, JetSpace, JetSpan, QuotientBasis};
pub use order::{Monomial, MonomialOrder};
pub use parse::{parse_constant, parse_poly, parse_poly_in};
pub use poly::MultiPoly;
pub use rational::{fmt_rational, int, rat, Rational};
