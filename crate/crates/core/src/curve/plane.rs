use num_traits::{One, Zero};

use super::branch::{Branch, DEFAULT_TRUNCATION};
use super::invariants::EquisingClass;
use super::puiseux::branches_from_equation;
use crate::error::{Error, Result};
use crate::exactalg::groebner::{normal_form, IdealBasis};
use crate::exactalg::order::MonomialOrder;
use crate::exactalg::poly::MultiPoly;
use crate::exactalg::rational::Rational;
use crate::series::substitute;

/// A plane curve germ at the origin, by equation, by branches, or both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    equation: Option<MultiPoly>,
    branches: Option<Vec<Branch>>,
    consistency_checked: bool,
}

impl PlaneCurve {
    pub fn from_equation(f: MultiPoly) -> Result<Self> {
        let f = f.with_vars(&["x", "y"])?;
        if f.is_zero() || !f.constant_term().is_zero() {
            return Err(Error::pre("the equation must be nonzero and vanish at the origin"));
        }
        Ok(PlaneCurve { equation: Some(f), branches: None, consistency_checked: false })
    }

    pub fn from_branches(bs: Vec<Branch>) -> Result<Self> {
        if bs.is_empty() {
            return Err(Error::pre("a curve needs at least one branch"));
        }
        Ok(PlaneCurve { equation: None, branches: Some(bs), consistency_checked: false })
    }

    /// Both representations; the equation must vanish on every branch to
    /// the known order.
    pub fn with_both(f: MultiPoly, bs: Vec<Branch>) -> Result<Self> {
        let c = PlaneCurve::from_equation(f)?;
        let f = c.equation.clone().unwrap();
        for b in &bs {
            let r = substitute(&f, &[("x", b.x()), ("y", b.y())])?;
            if !r.is_zero_known() {
                return Err(Error::Inconsistent(format!("equation does not vanish on branch {b}: residual {r}")));
            }
        }
        Ok(PlaneCurve { equation: Some(f), branches: Some(bs), consistency_checked: true })
    }

    pub fn equation(&self) -> Option<&MultiPoly> {
        self.equation.as_ref()
    }

    pub fn branches(&self) -> Option<&[Branch]> {
        self.branches.as_deref()
    }

    pub fn consistency_checked(&self) -> bool {
        self.consistency_checked
    }

    /// Given branches, or branches computed from the equation.
    pub fn branches_or_compute(&self, to: usize) -> Result<Vec<Branch>> {
        match (&self.branches, &self.equation) {
            (Some(bs), _) => Ok(bs.clone()),
            (None, Some(f)) => branches_from_equation(f, to),
            (None, None) => unreachable!(),
        }
    }

    /// Attaches computed branches to an equation-only curve.
    pub fn with_computed_branches(&self, to: usize) -> Result<PlaneCurve> {
        if self.branches.is_some() {
            return Ok(self.clone());
        }
        let bs = self.branches_or_compute(to)?;
        match &self.equation {
            Some(f) => PlaneCurve::with_both(f.clone(), bs),
            None => unreachable!(),
        }
    }

    pub fn equising_class(&self) -> Result<EquisingClass> {
        EquisingClass::of_branches(&self.branches_or_compute(DEFAULT_TRUNCATION)?)
    }

    pub fn multiplicity(&self) -> Result<usize> {
        if let Some(f) = &self.equation {
            return Ok(f.ord().unwrap() as usize);
        }
        Ok(self.branches.as_ref().unwrap().iter().map(|b| b.multiplicity()).sum())
    }
}

/// Outcome of the genericity test with the criteria that could be run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericReport {
    pub generic: bool,
    /// `f ∈ (x², y)^k`, when an equation is known.
    pub criterion_c: Option<bool>,
    /// `ord y ≥ 2·ord x` on every branch, when branches are known.
    pub criterion_d: Option<bool>,
    pub witness: String,
}

/// The ideal `(x², y)^k`.
pub fn x2y_power(k: u32) -> IdealBasis {
    let vars = ["x", "y"];
    let gens = (0..=k).map(|a| MultiPoly::monomial(&vars, &[2 * a, k - a], Rational::one())).collect();
    IdealBasis::new(&vars, gens, MonomialOrder::DegRevLex).unwrap().with_groebner()
}

/// Lowest-degree homogeneous part of `f` must be `c·y^m`.
fn check_tangent_cone(f: &MultiPoly) -> Result<u32> {
    let m = f.ord().unwrap();
    let cone = f.homogeneous_part(m);
    if cone.num_terms() != 1 || cone.coeff(&[0, m]).is_zero() {
        return Err(Error::pre(format!("tangent cone {} is not {{y = 0}}", cone.to_text())));
    }
    Ok(m)
}

/// Genericity: every branch has `ord y ≥ 2·ord x`, equivalently
/// `f ∈ (x², y)^k` with `k` the multiplicity. Runs every criterion the data
/// allows and fails if they disagree.
pub fn is_generic(c: &PlaneCurve) -> Result<GenericReport> {
    let mut criterion_c = None;
    let mut witness = Vec::new();
    if let Some(f) = c.equation() {
        let m = check_tangent_cone(f)?;
        let nf = normal_form(f, &x2y_power(m))?;
        criterion_c = Some(nf.is_zero());
        if !nf.is_zero() {
            witness.push(format!("f ∉ (x^2, y)^{m}: remainder {}", nf.to_text()));
        }
    }
    let branches = match c.branches() {
        Some(bs) => Some(bs.to_vec()),
        None => match c.branches_or_compute(DEFAULT_TRUNCATION) {
            Ok(bs) => Some(bs),
            Err(Error::Unsupported(_)) => None,
            Err(e) => return Err(e),
        },
    };
    let mut criterion_d = None;
    if let Some(bs) = &branches {
        let mut ok = true;
        for b in bs {
            let ox = b.ord_x().ok_or_else(|| Error::pre("a branch lies on x = 0; tangent cone is not {y = 0}"))?;
            match b.ord_y() {
                Some(oy) if oy <= ox => {
                    return Err(Error::pre(format!("branch {b} is not tangent to y = 0")));
                }
                Some(oy) if oy < 2 * ox => {
                    ok = false;
                    witness.push(format!("branch {b}: ord y = {oy} < 2·ord x = {}", 2 * ox));
                }
                _ => {}
            }
        }
        criterion_d = Some(ok);
    }
    let generic = match (criterion_c, criterion_d) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::Inconsistent(format!("genericity criteria disagree: (c) {a}, (d) {b}")))
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => unreachable!(),
    };
    Ok(GenericReport { generic, criterion_c, criterion_d, witness: witness.join("; ") })
}

/// A linear coordinate change applied to move a single-line tangent cone to
/// `{y = 0}`: the new curve is `f(x, y − r·x)` (or `f(y, x)` when the
/// tangent is `x = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TangentChange {
    Identity,
    Shear(Rational),
    Swap,
}

impl TangentChange {
    pub fn describe(&self) -> String {
        match self {
            TangentChange::Identity => "identity".into(),
            TangentChange::Shear(r) => format!("y -> y - ({})*x", crate::exactalg::rational::fmt_rational(r)),
            TangentChange::Swap => "x <-> y".into(),
        }
    }
}

/// Moves a tangent cone `c·ℓ^m` (ℓ a rational line) to `{y = 0}`.
pub fn normalize_tangent(f: &MultiPoly) -> Result<(MultiPoly, TangentChange)> {
    let vars = ["x", "y"];
    let f = f.with_vars(&vars)?;
    let m = f.ord().ok_or_else(|| Error::pre("zero polynomial"))?;
    let cone = f.homogeneous_part(m);
    let cy = cone.coeff(&[0, m]);
    let x = MultiPoly::var(&vars, "x");
    let y = MultiPoly::var(&vars, "y");
    if cy.is_zero() {
        if cone.num_terms() == 1 && !cone.coeff(&[m, 0]).is_zero() {
            let g = f.compose(&[("x".into(), y.clone()), ("y".into(), x.clone())]);
            return Ok((g, TangentChange::Swap));
        }
        return Err(Error::pre(format!("tangent cone {} is not a single line", cone.to_text())));
    }
    // ℓ = y + r x with r = coeff(x y^{m-1}) / (m · coeff(y^m))
    let r = cone.coeff(&[1, m - 1]) / (Rational::from_integer((m as i64).into()) * &cy);
    let ell = &y + &x.scale(&r);
    if cone != ell.pow(m).scale(&cy) {
        return Err(Error::pre(format!("tangent cone {} is not a single rational line", cone.to_text())));
    }
    if r.is_zero() {
        return Ok((f, TangentChange::Identity));
    }
    let g = f.substitute("y", &(&y - &x.scale(&r)));
    Ok((g, TangentChange::Shear(r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_poly_in;

    fn curve(s: &str) -> PlaneCurve {
        PlaneCurve::from_equation(parse_poly_in(s, &["x", "y"]).unwrap()).unwrap()
    }

    #[test]
    fn generic_examples() {
        let r = is_generic(&curve("y^2 - x^5")).unwrap();
        assert!(r.generic);
        assert_eq!((r.criterion_c, r.criterion_d), (Some(true), Some(true)));
        let r = is_generic(&curve("y^2 - x^3")).unwrap();
        assert!(!r.generic);
        assert_eq!((r.criterion_c, r.criterion_d), (Some(false), Some(false)));
        assert!(is_generic(&curve("y^3 - x^10")).unwrap().generic);
        assert!(is_generic(&curve("x^2 - y^5")).is_err());
        assert!(is_generic(&curve("y^2 - x^2")).is_err());
    }

    #[test]
    fn branch_only_curves() {
        let c = PlaneCurve::from_branches(vec![Branch::parse("t^3", "t^7", None).unwrap()]).unwrap();
        let r = is_generic(&c).unwrap();
        assert!(r.generic);
        assert_eq!(r.criterion_c, None);
    }

    #[test]
    fn consistency_is_checked() {
        let f = parse_poly_in("y^2 - x^3", &["x", "y"]).unwrap();
        assert!(PlaneCurve::with_both(f.clone(), vec![Branch::parse("t^2", "t^3", None).unwrap()]).is_ok());
        assert!(PlaneCurve::with_both(f, vec![Branch::parse("t^2", "t^4", None).unwrap()]).is_err());
    }

    #[test]
    fn tangent_normalization() {
        let f = parse_poly_in("(y - x)^2 - x^5", &["x", "y"]).unwrap();
        let (g, ch) = normalize_tangent(&f).unwrap();
        assert_eq!(ch, TangentChange::Shear(Rational::from_integer((-1).into())));
        assert_eq!(g, parse_poly_in("y^2 - x^5", &["x", "y"]).unwrap());
        let (g, ch) = normalize_tangent(&parse_poly_in("x^2 - y^5", &["x", "y"]).unwrap()).unwrap();
        assert_eq!(ch, TangentChange::Swap);
        assert_eq!(g, parse_poly_in("y^2 - x^5", &["x", "y"]).unwrap());
        assert!(normalize_tangent(&parse_poly_in("y^2 - x^2", &["x", "y"]).unwrap()).is_err());
    }
}
