use num_traits::Zero;

use super::transform::{pullback, XYP};
use crate::error::{Error, Result};
use crate::exactalg::poly::MultiPoly;
use crate::exactalg::rational::Rational;

const XYPE: [&str; 4] = ["x", "y", "p", "eps"];

/// A relative contact transformation over `T_ε`,
/// `(x + εα, y + εβ, p + εγ)` with `ε² = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinitesimalContact {
    pub alpha: MultiPoly,
    pub beta0: MultiPoly,
    pub beta: MultiPoly,
    pub gamma: MultiPoly,
}

/// Builds the transformation determined by `α` and `β₀`: `β = β₀ + ∫ p·∂α/∂p dp`
/// and `γ = β_x − pα_x + p(β_y − pα_y)`.
pub fn make_infinitesimal(alpha: &MultiPoly, beta0: &MultiPoly) -> Result<InfinitesimalContact> {
    let alpha = alpha.with_vars(&XYP)?;
    let beta0 =
        beta0.with_vars(&["x", "y"]).map_err(|_| Error::pre(format!("β₀ = {} must not involve p", beta0.to_text())))?;
    if !alpha.constant_term().is_zero() {
        return Err(Error::pre(format!("α = {} has a constant term", alpha.to_text())));
    }
    if !beta0.constant_term().is_zero() {
        return Err(Error::pre(format!("β₀ = {} has a constant term", beta0.to_text())));
    }
    let ip = alpha.var_index("p").unwrap();
    let mut beta = beta0.with_vars(&XYP)?;
    for (m, c) in alpha.terms() {
        let k = m[ip];
        if k == 0 {
            continue;
        }
        // p·∂(c·p^k)/∂p = k·c·p^k integrates to k/(k+1)·c·p^{k+1}
        let mut e = m.clone();
        e[ip] += 1;
        beta.add_term(e, c * Rational::new(k.into(), (k + 1).into()));
    }
    let p = MultiPoly::var(&XYP, "p");
    let bx = &beta.derivative("x") - &(&p * &alpha.derivative("x"));
    let by = &beta.derivative("y") - &(&p * &alpha.derivative("y"));
    let gamma = &bx + &(&p * &by);
    let t = InfinitesimalContact { alpha, beta0, beta, gamma };
    if !t.verify_first_order() {
        return Err(Error::Inconsistent("first-order pullback check failed".into()));
    }
    Ok(t)
}

impl InfinitesimalContact {
    /// `(x + εα, y + εβ, p + εγ)` over `(x, y, p, eps)`.
    pub fn first_order_components(&self) -> [MultiPoly; 3] {
        let eps = MultiPoly::var(&XYPE, "eps");
        let lift = |v: &str, q: &MultiPoly| &MultiPoly::var(&XYPE, v) + &(&eps * &q.with_vars(&XYPE).unwrap());
        [lift("x", &self.alpha), lift("y", &self.beta), lift("p", &self.gamma)]
    }

    /// The pullback of `dy − p dx` is `u·(dy − p dx)` modulo `ε²`.
    pub fn verify_first_order(&self) -> bool {
        let form = pullback(&self.first_order_components());
        let p = MultiPoly::var(&XYPE, "p");
        let dp = mod_eps2(&form.dp);
        let mismatch = mod_eps2(&(&form.dx + &(&p * &form.dy)));
        dp.is_zero() && mismatch.is_zero() && !form.dy.constant_term().is_zero()
    }

    /// `β₀` has no term `c·x`; only then is the action of `T` on `f + ε·0`
    /// guaranteed to land in `I_f^μ`.
    pub fn satisfies_ccond(&self) -> bool {
        self.beta0.terms().all(|(m, _)| !(m[0] == 1 && m[1] == 0))
    }

    /// `α = Σ_k α_k(x, y)·p^k`; entry `k` is `α_k`.
    pub fn alpha_parts(&self) -> Vec<MultiPoly> {
        self.alpha
            .coefficients_in("p")
            .into_iter()
            .map(|c| c.with_vars(&["x", "y"]).expect("p-free coefficient"))
            .collect()
    }
}

fn mod_eps2(q: &MultiPoly) -> MultiPoly {
    let ie = q.var_index("eps").unwrap();
    MultiPoly::from_terms(q.vars(), q.terms().filter(|(m, _)| m[ie] < 2).map(|(m, c)| (m.clone(), c.clone())))
}

/// The first-order deformation `f + εg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsDeformation {
    pub base: MultiPoly,
    pub first_order: MultiPoly,
}

impl EpsDeformation {
    pub fn new(base: &MultiPoly, first_order: &MultiPoly) -> Result<Self> {
        Ok(EpsDeformation { base: base.with_vars(&["x", "y"])?, first_order: first_order.with_vars(&["x", "y"])? })
    }

    /// A section through the origin stays trivial only if `g(0) = 0`.
    pub fn has_trivial_section(&self) -> bool {
        self.first_order.constant_term().is_zero()
    }

    /// `f + eps·g` over `(x, y, eps)`.
    pub fn total(&self) -> MultiPoly {
        let v = ["x", "y", "eps"];
        let eps = MultiPoly::var(&v, "eps");
        &self.base.with_vars(&v).unwrap() + &(&eps * &self.first_order.with_vars(&v).unwrap())
    }

    pub fn to_text(&self) -> String {
        format!("{} + eps*({})", self.base.to_text(), self.first_order.to_text())
    }
}
