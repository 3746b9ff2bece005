use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::One;
use serde_json::{json, Value};

use super::hseries::{matching_bounds, HSeries, HSolver};
use super::ideals::{ideal_es_nnd_at, jet_bound, w0_generators, EsIdeal};
use crate::conormal::{conormal_of_to, LegendrianCurve};
use crate::contact::InfinitesimalContact;
use crate::curve::{is_generic, PlaneCurve, DEFAULT_TRUNCATION};
use crate::error::{Error, Result};
use crate::exactalg::jets::{is_quotient_basis, quotient_of_spans, JetSpace, JetSpan, QuotientBasis};
use crate::exactalg::order::{self, Monomial};
use crate::exactalg::poly::MultiPoly;
use crate::exactalg::rational::Rational;

const MAX_TRUNCATION: usize = 4096;
const MAX_L: u32 = 10_000;

/// `I_f^μ`: the generators of `W0` followed by the nonzero `h_ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuIdeal {
    pub generators: Vec<MultiPoly>,
    pub hs: Vec<HSeries>,
    /// First `ℓ` whose target lies past every matching bound; `hs` holds
    /// `h_1 … h_{l_max − 1}`.
    pub l_max: u32,
    pub jet_bound: u32,
}

/// Generators of both ideals over a common jet bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquisingIdealPair {
    pub i_mu: Vec<MultiPoly>,
    pub i_es: Vec<MultiPoly>,
    pub jet_bound: u32,
}

/// `G = f + Σ s_i g_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiuniversalDeformation {
    pub base: MultiPoly,
    pub base_dim: usize,
    pub basis: Vec<MultiPoly>,
    pub equation: MultiPoly,
    pub jet_bound: u32,
}

impl SemiuniversalDeformation {
    fn build(f: &MultiPoly, basis: Vec<MultiPoly>, jet_bound: u32) -> Self {
        let mut vars = vec!["x".to_string(), "y".to_string()];
        vars.extend((1..=basis.len()).map(|i| format!("s{i}")));
        let mut g = f.with_vars(&vars).unwrap();
        for (i, b) in basis.iter().enumerate() {
            let s = MultiPoly::var(&vars, &format!("s{}", i + 1));
            g = &g + &(&s * &b.with_vars(&vars).unwrap());
        }
        SemiuniversalDeformation { base: f.clone(), base_dim: basis.len(), basis, equation: g, jet_bound }
    }

    /// `f + s1*g1 + …` with `f` printed first.
    pub fn display(&self) -> String {
        let mut s = self.base.to_text();
        for (i, b) in self.basis.iter().enumerate() {
            let t = b.to_text();
            if b.num_terms() == 1 {
                s.push_str(&format!(" + s{}*{}", i + 1, t));
            } else {
                s.push_str(&format!(" + s{}*({})", i + 1, t));
            }
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dimension": self.base_dim,
            "basis": self.basis.iter().map(|b| b.to_text()).collect::<Vec<_>>(),
            "G": self.display(),
            "jet_bound": self.jet_bound,
        })
    }
}

/// All jet-space data of a generic plane curve `f`: jet bound, conormal,
/// `h_ℓ`, and the spans of `W0`, `I_f^μ` and (for SQH/NND `f`) `I_f`.
pub struct DeformationModel {
    f: MultiPoly,
    jets: JetSpace,
    conormal: LegendrianCurve,
    mu: MuIdeal,
    w0_span: JetSpan,
    mu_span: JetSpan,
    f_span: JetSpan,
    es: Option<(EsIdeal, JetSpan)>,
    es_error: Option<Error>,
}

fn by_y_then_x(a: &Monomial, b: &Monomial) -> Ordering {
    (a[1], a[0]).cmp(&(b[1], b[0]))
}

fn by_degree_then_y(a: &Monomial, b: &Monomial) -> Ordering {
    (order::degree(a), a[1]).cmp(&(order::degree(b), b[1]))
}

impl DeformationModel {
    pub fn new(f: &MultiPoly) -> Result<Self> {
        let f = f.with_vars(&["x", "y"])?;
        let curve = PlaneCurve::from_equation(f.clone())?;
        if f.ord().unwrap() < 2 {
            return Err(Error::pre(format!("{} is smooth; a singular germ is required", f.to_text())));
        }
        let report = is_generic(&curve)?;
        if !report.generic {
            return Err(Error::pre(format!("f is not generic: {}", report.witness)));
        }
        let n = jet_bound(&f)?;
        let branches = curve.branches_or_compute(DEFAULT_TRUNCATION)?;
        let max_b = matching_bounds(&branches, n)?.into_iter().max().unwrap_or(0);
        let max_k = branches.iter().filter_map(|b| b.ord_x()).max().unwrap_or(0);
        let mut to = DEFAULT_TRUNCATION.max(max_b + max_k + 8);
        let solver = loop {
            let conormal = conormal_of_to(&curve, to)?;
            match HSolver::new(&f, &conormal, n) {
                Ok(s) => break s,
                Err(Error::Precision(_)) if to < MAX_TRUNCATION => to *= 2,
                Err(e) => return Err(e),
            }
        };
        let mut hs = Vec::new();
        let mut l = 1;
        let l_max = loop {
            if solver.beyond_bounds(l) {
                break l;
            }
            hs.push(solver.solve(l)?);
            l += 1;
            if l > MAX_L {
                return Err(Error::Inconsistent("h_l never leaves the matching window".into()));
            }
        };
        let mut generators = w0_generators(&f)?;
        generators.extend(hs.iter().map(|h| h.representative.clone()).filter(|h| !h.is_zero()));
        let jets = JetSpace::plane(n);
        let w0_span = JetSpan::of_ideal(&jets, &w0_generators(&f)?)?;
        let mu_span = JetSpan::of_ideal(&jets, &generators)?;
        let f_span = JetSpan::of_ideal(&jets, std::slice::from_ref(&f))?;
        let (es, es_error) = match ideal_es_nnd_at(&f, n) {
            Ok(e) => {
                let span = JetSpan::of_ideal(&jets, &e.generators)?;
                if !span.contains_span(&mu_span) {
                    return Err(Error::Inconsistent("I_f^mu is not contained in I_f in the jet space".into()));
                }
                (Some((e, span)), None)
            }
            Err(e @ Error::Precondition(_)) => (None, Some(e)),
            Err(e) => return Err(e),
        };
        Ok(DeformationModel {
            f,
            jets,
            conormal: solver.conormal().clone(),
            mu: MuIdeal { generators, hs, l_max, jet_bound: n },
            w0_span,
            mu_span,
            f_span,
            es,
            es_error,
        })
    }

    pub fn equation(&self) -> &MultiPoly {
        &self.f
    }

    pub fn jet_bound(&self) -> u32 {
        self.jets.degree_bound()
    }

    pub fn jets(&self) -> &JetSpace {
        &self.jets
    }

    pub fn conormal(&self) -> &LegendrianCurve {
        &self.conormal
    }

    pub fn mu(&self) -> &MuIdeal {
        &self.mu
    }

    pub fn mu_span(&self) -> &JetSpan {
        &self.mu_span
    }

    pub fn w0_span(&self) -> &JetSpan {
        &self.w0_span
    }

    fn es(&self) -> Result<&(EsIdeal, JetSpan)> {
        self.es.as_ref().ok_or_else(|| self.es_error.clone().unwrap())
    }

    pub fn es_ideal(&self) -> Result<&EsIdeal> {
        Ok(&self.es()?.0)
    }

    pub fn es_span(&self) -> Result<&JetSpan> {
        Ok(&self.es()?.1)
    }

    pub fn pair(&self) -> Result<EquisingIdealPair> {
        Ok(EquisingIdealPair {
            i_mu: self.mu.generators.clone(),
            i_es: self.es_ideal()?.generators.clone(),
            jet_bound: self.jet_bound(),
        })
    }

    /// `h_ℓ` in jet normal form; zero once absorbed.
    pub fn h(&self, l: u32) -> MultiPoly {
        if l >= 1 && (l as usize) <= self.mu.hs.len() {
            self.mu.hs[l as usize - 1].representative.clone()
        } else {
            MultiPoly::zero(&["x", "y"])
        }
    }

    /// Normal form modulo `⟨f⟩ + 𝔪^N`.
    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly> {
        self.f_span.reduce(p)
    }

    /// Quotient `I_f / ⟨W0⟩`, greedy over Newton-region monomials by
    /// increasing `y`-exponent, then `x`-exponent.
    pub fn es_arrow_basis(&self) -> Result<QuotientBasis> {
        let (es, span) = self.es()?;
        let region: BTreeSet<(u32, u32)> = es.monomials().into_iter().collect();
        let outside = |m: &Monomial| !region.contains(&(m[0], m[1]));
        quotient_of_spans(&self.w0_span, span, |a, b| outside(a).cmp(&outside(b)).then_with(|| by_y_then_x(a, b)))
    }

    /// Quotient `I_f / I_f^μ`; candidates are the [`Self::es_arrow_basis`]
    /// monomials by increasing degree, then `y`-exponent, followed by the
    /// other monomials of `I_f` in the same order.
    pub fn quotient_basis(&self) -> Result<SemiuniversalDeformation> {
        let arrow = self.es_arrow_basis()?;
        let first: Vec<Monomial> = {
            let mut v = arrow.monomials.clone();
            v.sort_by(by_degree_then_y);
            v
        };
        let rank = |m: &Monomial| first.iter().position(|c| c == m).unwrap_or(usize::MAX);
        let q = quotient_of_spans(&self.mu_span, self.es_span()?, |a, b| {
            rank(a).cmp(&rank(b)).then_with(|| by_degree_then_y(a, b))
        })?;
        Ok(SemiuniversalDeformation::build(&self.f, q.representatives, self.jet_bound()))
    }

    /// Whether `candidates` map to a basis of `I_f / I_f^μ`.
    pub fn is_mu_quotient_basis(&self, candidates: &[MultiPoly]) -> Result<bool> {
        is_quotient_basis(&self.mu_span, self.es_span()?, candidates)
    }

    /// `g + α₀f_x + β₀f_y + Σ_{k≥1} α_k·h_k/(k+1)` in jet normal form.
    pub fn act_first_order(&self, g: &MultiPoly, t: &InfinitesimalContact) -> Result<MultiPoly> {
        let g = g.with_vars(&["x", "y"])?;
        let fx = self.f.derivative("x");
        let fy = self.f.derivative("y");
        let parts = t.alpha_parts();
        let mut acc = &(&g + &(&parts[0] * &fx)) + &(&t.beta0 * &fy);
        for (k, ak) in parts.iter().enumerate().skip(1) {
            if ak.is_zero() {
                continue;
            }
            let h = self.h(k as u32);
            let c = Rational::new(1.into(), (k as i64 + 1).into());
            acc = &acc + &(ak * &h).scale(&c);
        }
        self.normal_form(&acc.truncate_degree(self.jet_bound()))
    }

    /// `g ∈ I_f^μ` in the jet model.
    pub fn is_trivial_first_order(&self, g: &MultiPoly) -> Result<bool> {
        self.mu_span.contains(g)
    }

    /// `g ∈ I_f` in the jet model.
    pub fn is_equisingular_first_order(&self, g: &MultiPoly) -> Result<bool> {
        self.es_span()?.contains(g)
    }
}

pub fn ideal_mu(f: &MultiPoly) -> Result<MuIdeal> {
    Ok(DeformationModel::new(f)?.mu)
}

pub fn quotient_basis(f: &MultiPoly) -> Result<SemiuniversalDeformation> {
    DeformationModel::new(f)?.quotient_basis()
}

pub fn es_arrow_basis(f: &MultiPoly) -> Result<Vec<MultiPoly>> {
    Ok(DeformationModel::new(f)?.es_arrow_basis()?.representatives)
}

pub fn act_first_order(f: &MultiPoly, g: &MultiPoly, t: &InfinitesimalContact) -> Result<MultiPoly> {
    DeformationModel::new(f)?.act_first_order(g, t)
}

pub fn is_trivial_first_order(f: &MultiPoly, g: &MultiPoly) -> Result<bool> {
    DeformationModel::new(f)?.is_trivial_first_order(g)
}

/// The monomial `x^i y^j` as a polynomial in `x, y`.
pub fn xy_monomial(i: u32, j: u32) -> MultiPoly {
    MultiPoly::monomial(&["x", "y"], &[i, j], Rational::one())
}
