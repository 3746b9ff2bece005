use std::fmt;

use num_traits::Zero;

use crate::curve::{Branch, PlaneCurve, DEFAULT_TRUNCATION};
use crate::error::{Error, Result};
use crate::exactalg::rational::Rational;
use crate::series::TruncSeries;

/// One branch `t ↦ (x, y, p)` of a Legendrian curve for `dy − p dx`.
#[derive(Clone, PartialEq, Eq)]
pub struct LegendrianBranch {
    pub x: TruncSeries,
    pub y: TruncSeries,
    pub p: TruncSeries,
}

impl LegendrianBranch {
    /// `ẏ − p·ẋ`, which must vanish to the known order.
    pub fn residual(&self) -> TruncSeries {
        &self.y.derivative() - &(&self.p * &self.x.derivative())
    }

    pub fn plane_branch(&self) -> Result<Branch> {
        Branch::new(self.x.clone(), self.y.clone())
    }

    /// Builds the lift `p = ẏ/ẋ` of a plane branch.
    pub fn lift(b: &Branch, to: usize) -> Result<Self> {
        let dx = b.x().derivative();
        if dx.is_zero_known() {
            return Err(Error::pre(format!("branch {b} has constant x; its conormal is a fiber")));
        }
        let dy = b.y().derivative();
        let p = if dy.is_zero_known() && dy.is_exact() { TruncSeries::zero() } else { dy.div(&dx, to)? };
        Ok(LegendrianBranch { x: b.x().clone(), y: b.y().clone(), p })
    }
}

impl fmt::Debug for LegendrianBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x = {}, y = {}, p = {})", self.x, self.y, self.p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendrianCurve {
    branches: Vec<LegendrianBranch>,
}

impl LegendrianCurve {
    /// Checks the Legendrian identity on every branch.
    pub fn new(branches: Vec<LegendrianBranch>) -> Result<Self> {
        for (i, b) in branches.iter().enumerate() {
            let r = b.residual();
            if !r.is_zero_known() {
                return Err(Error::Inconsistent(format!("branch {i} is not Legendrian: y' - p x' = {r}")));
            }
        }
        Ok(LegendrianCurve { branches })
    }

    pub fn branches(&self) -> &[LegendrianBranch] {
        &self.branches
    }

    pub fn plane_curve(&self) -> Result<PlaneCurve> {
        PlaneCurve::from_branches(self.branches.iter().map(|b| b.plane_branch()).collect::<Result<_>>()?)
    }
}

/// Parametric conormal `t ↦ (x, y, ẏ/ẋ)` of each branch.
pub fn conormal_of(c: &PlaneCurve) -> Result<LegendrianCurve> {
    conormal_of_to(c, DEFAULT_TRUNCATION)
}

pub fn conormal_of_to(c: &PlaneCurve, to: usize) -> Result<LegendrianCurve> {
    let bs = c.branches_or_compute(to)?;
    LegendrianCurve::new(bs.iter().map(|b| LegendrianBranch::lift(b, to)).collect::<Result<_>>()?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchPosition {
    pub ord_x: Option<usize>,
    pub ord_y: Option<usize>,
    pub ord_p: Option<usize>,
    pub generic: bool,
    /// `ord y ≥ 2·ord x + 1`: the tangent cone is `{y = p = 0}`.
    pub strict: bool,
    /// `ψ(0)` when `ord y = 2·ord x`: the tangent cone is `{y = p − ψ(0)x = 0}`.
    pub slope: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionReport {
    pub generic: bool,
    pub branches: Vec<BranchPosition>,
}

fn ge(a: Option<usize>, b: usize) -> bool {
    a.is_none_or(|a| a >= b)
}

/// Generic position: `ord y ≥ 2·ord x` and `ord p ≥ ord x` on every branch.
pub fn generic_position(l: &LegendrianCurve) -> PositionReport {
    let branches: Vec<BranchPosition> = l
        .branches
        .iter()
        .map(|b| {
            let (ox, oy, op) = (b.x.ord(), b.y.ord(), b.p.ord());
            match ox {
                None => BranchPosition { ord_x: ox, ord_y: oy, ord_p: op, generic: false, strict: false, slope: None },
                Some(k) => {
                    let generic = ge(oy, 2 * k) && ge(op, k);
                    let strict = generic && ge(oy, 2 * k + 1);
                    let slope = if generic && !strict {
                        let s = b.p.coeff(k) / b.x.coeff(k);
                        (!s.is_zero()).then_some(s)
                    } else {
                        None
                    };
                    BranchPosition { ord_x: ox, ord_y: oy, ord_p: op, generic, strict, slope }
                }
            }
        })
        .collect();
    PositionReport { generic: branches.iter().all(|b| b.generic), branches }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_poly_in;
    use crate::exactalg::rational::{int, rat};

    fn curve(s: &str) -> PlaneCurve {
        PlaneCurve::from_equation(parse_poly_in(s, &["x", "y"]).unwrap()).unwrap()
    }

    #[test]
    fn conormals() {
        let l = conormal_of(&curve("y^3 - x^10")).unwrap();
        assert_eq!(l.branches()[0].p, TruncSeries::monomial(rat(10, 3), 7));
        let l = conormal_of(&curve("y^2 - x^5")).unwrap();
        assert_eq!(l.branches()[0].p, TruncSeries::monomial(rat(5, 2), 3));
        for (k, n) in [(2, 7), (3, 5), (4, 9)] {
            let l = conormal_of(&curve(&format!("y^{k} - x^{n}"))).unwrap();
            assert_eq!(l.branches()[0].p, TruncSeries::monomial(rat(n, k), (n - k) as usize));
        }
    }

    #[test]
    fn fiber_is_rejected() {
        let c = PlaneCurve::from_branches(vec![Branch::parse("0", "t", None).unwrap()]).unwrap();
        assert!(conormal_of(&c).is_err());
    }

    #[test]
    fn positions() {
        let r = generic_position(&conormal_of(&curve("y^2 - x^5")).unwrap());
        assert!(r.generic && r.branches[0].strict);
        assert!(!generic_position(&conormal_of(&curve("y^2 - x^3")).unwrap()).generic);
        let c = PlaneCurve::from_branches(vec![Branch::parse("t", "t^2", None).unwrap()]).unwrap();
        let l = conormal_of(&c).unwrap();
        assert_eq!(l.branches()[0].p, TruncSeries::monomial(int(2), 1));
        let r = generic_position(&l);
        assert!(r.generic && !r.branches[0].strict);
        assert_eq!(r.branches[0].slope, Some(int(2)));
    }
}
