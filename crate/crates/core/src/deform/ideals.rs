use num_traits::One;

use crate::curve::{classify, newton_diagram, Classification, Face};
use crate::error::{Error, Result};
use crate::exactalg::groebner::monomials_of_degree;
use crate::exactalg::jets::{JetSpace, JetSpan};
use crate::exactalg::poly::MultiPoly;
use crate::exactalg::rational::Rational;

/// Largest jet bound tried before giving up (non-isolated singularities).
pub const MAX_JET_BOUND: u32 = 120;

fn xy() -> [&'static str; 2] {
    ["x", "y"]
}

/// `f, x·f_x, y·f_x, x²·f_y, y·f_y`.
pub fn w0_generators(f: &MultiPoly) -> Result<Vec<MultiPoly>> {
    let f = f.with_vars(&xy())?;
    let x = MultiPoly::var(&xy(), "x");
    let y = MultiPoly::var(&xy(), "y");
    let fx = f.derivative("x");
    let fy = f.derivative("y");
    Ok(vec![f.clone(), &x * &fx, &y * &fx, &(&x * &x) * &fy, &y * &fy])
}

/// Smallest `N` with `𝔪^N` inside the ideal of [`w0_generators`]: every
/// degree-`N` monomial lies in the span modulo `𝔪^{N+1}` (then Nakayama).
pub fn jet_bound(f: &MultiPoly) -> Result<u32> {
    let gens = w0_generators(f)?;
    let start = f.with_vars(&xy())?.ord().ok_or_else(|| Error::pre("f = 0"))?.max(1);
    for n in start..=MAX_JET_BOUND {
        let span = JetSpan::of_ideal(&JetSpace::plane(n + 1), &gens)?;
        if span.missing_monomial_of_degree(n).is_none() {
            return Ok(n);
        }
    }
    Err(Error::pre(format!("no jet bound up to {MAX_JET_BOUND}: the singularity is not isolated or too large")))
}

/// The equisingularity ideal from the Newton diagram, truncated below
/// degree `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EsIdeal {
    pub generators: Vec<MultiPoly>,
    /// One linear condition `u·i + v·j ≥ d` per compact face.
    pub faces: Vec<Face>,
    pub jet_bound: u32,
}

impl EsIdeal {
    pub fn conditions(&self) -> Vec<String> {
        self.faces.iter().map(|f| format!("{}*i + {}*j >= {}", f.u, f.v, f.d)).collect()
    }

    /// Exponents `(i, j)` of the monomial generators, after `x²f_y, y f_x`.
    pub fn monomials(&self) -> Vec<(u32, u32)> {
        self.generators[2..].iter().filter_map(|g| g.terms().next().map(|(m, _)| (m[0], m[1]))).collect()
    }
}

/// `{x²f_y, y f_x}` and the monomials `x^i y^j` of degree `< N` on or above
/// every Newton face line; only for SQH/NND `f`.
pub fn ideal_es_nnd(f: &MultiPoly) -> Result<EsIdeal> {
    ideal_es_nnd_at(f, jet_bound(f)?)
}

pub fn ideal_es_nnd_at(f: &MultiPoly, n: u32) -> Result<EsIdeal> {
    let f = f.with_vars(&xy())?;
    if let Classification::Degenerate { reason, .. } = classify(&f)? {
        return Err(Error::pre(format!("f is Newton degenerate: {reason}")));
    }
    let nd = newton_diagram(&f)?;
    let x = MultiPoly::var(&xy(), "x");
    let y = MultiPoly::var(&xy(), "y");
    let mut generators = vec![&(&x * &x) * &f.derivative("y"), &y * &f.derivative("x")];
    for d in 0..n {
        for m in monomials_of_degree(2, d) {
            if nd.on_or_above(m[0], m[1]) {
                generators.push(MultiPoly::monomial(&xy(), &m, Rational::one()));
            }
        }
    }
    Ok(EsIdeal { generators, faces: nd.faces.clone(), jet_bound: n })
}
