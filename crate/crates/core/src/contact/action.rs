use num_traits::{One, Zero};

use super::transform::ContactTransform;
use crate::conormal::{conormal_of_to, generic_position, LegendrianBranch, LegendrianCurve};
use crate::curve::{equisingular_equal, Branch, EquisingClass, PlaneCurve, DEFAULT_TRUNCATION};
use crate::error::{Error, Result};
use crate::exactalg::groebner::{eliminate, IdealBasis};
use crate::exactalg::order::MonomialOrder;
use crate::exactalg::poly::MultiPoly;
use crate::series::substitute;

/// Composes `T` with every branch and re-checks the Legendrian identity.
pub fn act_on_legendrian(t: &ContactTransform, l: &LegendrianCurve) -> Result<LegendrianCurve> {
    let [xc, yc, pc] = t.components();
    let mut out = Vec::with_capacity(l.branches().len());
    for (i, b) in l.branches().iter().enumerate() {
        let at = [("x", &b.x), ("y", &b.y), ("p", &b.p)];
        let x = substitute(&xc, &at)?;
        let y = substitute(&yc, &at)?;
        let p = substitute(&pc, &at)?;
        if x.derivative().is_zero_known() {
            return Err(Error::pre(format!("image of branch {i} collapses into a fiber: x = {x}")));
        }
        out.push(LegendrianBranch { x, y, p });
    }
    LegendrianCurve::new(out)
}

/// Kernel of `ℚ[x, y] → ℚ[t]`, `x ↦ X(t)`, `y ↦ Y(t)`, for polynomial
/// components: eliminates `t` from `⟨x − X(t), y − Y(t)⟩`.
pub fn implicitize(b: &Branch) -> Result<MultiPoly> {
    if !b.is_exact() {
        return Err(Error::pre("implicitization needs polynomial components"));
    }
    let ring = ["t", "x", "y"];
    let xt = b.x().to_poly("t").with_vars(&ring)?;
    let yt = b.y().to_poly("t").with_vars(&ring)?;
    let gens = vec![&MultiPoly::var(&ring, "x") - &xt, &MultiPoly::var(&ring, "y") - &yt];
    let ideal = IdealBasis::new(&ring, gens, MonomialOrder::DegRevLex)?;
    let kernel = eliminate(&ideal, &["t"])?;
    // a curve: the kernel is principal, its reduced basis a single element
    match kernel.generators() {
        [g] => Ok(g.monic(&MonomialOrder::DegRevLex)),
        gs => Err(Error::Inconsistent(format!("expected a principal kernel, got {} generators", gs.len()))),
    }
}

/// `π(T(L))` for the conormal `L` of `c`. When every image branch is
/// polynomial the image also carries an implicit equation.
pub fn plane_action(t: &ContactTransform, c: &PlaneCurve) -> Result<PlaneCurve> {
    plane_action_to(t, c, DEFAULT_TRUNCATION)
}

pub fn plane_action_to(t: &ContactTransform, c: &PlaneCurve, to: usize) -> Result<PlaneCurve> {
    let image = act_on_legendrian(t, &conormal_of_to(c, to)?)?;
    let bs: Vec<Branch> = image.branches().iter().map(|b| b.plane_branch()).collect::<Result<_>>()?;
    if bs.iter().all(|b| b.is_exact()) {
        let mut f = MultiPoly::one(&["x", "y"]);
        for b in &bs {
            f = &f * &implicitize(b)?;
        }
        return PlaneCurve::with_both(f, bs);
    }
    PlaneCurve::from_branches(bs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationReport {
    /// `None` when the test was skipped; see `skip_reason`.
    pub preserved: Option<bool>,
    pub skip_reason: Option<String>,
    pub before: Option<EquisingClass>,
    pub after: Option<EquisingClass>,
    pub image: Option<PlaneCurve>,
}

impl PreservationReport {
    fn skipped(reason: String, image: Option<PlaneCurve>) -> Self {
        PreservationReport { preserved: None, skip_reason: Some(reason), before: None, after: None, image }
    }
}

/// Compares equisingularity classes of `c` and its image when both the
/// conormal and its image are in generic position; skips otherwise.
pub fn equisingularity_preservation_test(t: &ContactTransform, c: &PlaneCurve) -> Result<PreservationReport> {
    let l = conormal_of_to(c, DEFAULT_TRUNCATION)?;
    let image = match act_on_legendrian(t, &l) {
        Ok(m) => m,
        Err(Error::Precondition(msg)) => return Ok(PreservationReport::skipped(msg, None)),
        Err(e) => return Err(e),
    };
    let source_pos = generic_position(&l);
    let image_pos = generic_position(&image);
    let image_curve = image.plane_curve()?;
    let mut reasons = Vec::new();
    if !source_pos.generic {
        reasons.push("source conormal is not in generic position");
    }
    if !image_pos.generic {
        reasons.push("image is not in generic position");
    }
    if !reasons.is_empty() {
        return Ok(PreservationReport::skipped(reasons.join("; "), Some(image_curve)));
    }
    let before = EquisingClass::of_branches(&l.plane_curve()?.branches_or_compute(DEFAULT_TRUNCATION)?)?;
    let after = EquisingClass::of_branches(image_curve.branches().unwrap())?;
    let preserved = equisingular_equal(&before, &after);
    Ok(PreservationReport {
        preserved: Some(preserved),
        skip_reason: None,
        before: Some(before),
        after: Some(after),
        image: Some(image_curve),
    })
}

/// `T` fixes the origin of `(x, y, p)`.
pub fn fixes_origin(t: &ContactTransform) -> bool {
    t.components().iter().all(|c| c.constant_term().is_zero())
}

/// `u(0) = 1` for the contact cofactor, i.e. `T` preserves `dy − p dx` at
/// the origin exactly.
pub fn is_strict_at_origin(t: &ContactTransform) -> bool {
    super::verify_contact(t).cofactor.is_some_and(|u| u.constant_term().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conormal::conormal_of;
    use crate::exactalg::parse::parse_poly_in;
    use crate::exactalg::rational::{int, rat};
    use crate::series::TruncSeries;

    fn curve(s: &str) -> PlaneCurve {
        PlaneCurve::from_equation(parse_poly_in(s, &["x", "y"]).unwrap()).unwrap()
    }

    fn xyp(s: &str) -> MultiPoly {
        parse_poly_in(s, &super::super::transform::XYP).unwrap()
    }

    fn ser(s: &str) -> TruncSeries {
        TruncSeries::parse(s, "t", None).unwrap()
    }

    #[test]
    fn legendre_on_monomial_curves() {
        for (k, n) in [(2, 5), (3, 7), (3, 10)] {
            let l = conormal_of(&curve(&format!("y^{k} - x^{n}"))).unwrap();
            let m = act_on_legendrian(&ContactTransform::legendre(), &l).unwrap();
            let b = &m.branches()[0];
            assert_eq!(b.x, TruncSeries::monomial(rat(n, k), (n - k) as usize));
            assert_eq!(b.y, TruncSeries::monomial(rat(k - n, k), n as usize));
            assert_eq!(b.p, TruncSeries::monomial(int(-1), k as usize));
        }
    }

    #[test]
    fn vertical_example() {
        let t = ContactTransform::vertical(&xyp("p"), &xyp("p^2/2"), &xyp("0")).unwrap();
        let c = curve("y^3 - x^7");
        let img = plane_action(&t, &c).unwrap();
        let b = &img.branches().unwrap()[0];
        assert_eq!(b.x(), &ser("t^3 + 7/3*t^4"));
        assert_eq!(b.y(), &ser("t^7 + 49/18*t^8"));
        assert!(img.equation().is_some());
        let r = equisingularity_preservation_test(&t, &c).unwrap();
        assert_eq!(r.preserved, Some(true));
        assert_eq!(r.after.unwrap().char_exponents(), vec![vec![3, 7]]);
    }

    #[test]
    fn rho_and_legendre_images() {
        let c = PlaneCurve::from_branches(vec![Branch::parse("t", "t^2", None).unwrap()]).unwrap();
        let img = plane_action(&ContactTransform::rho(int(1)), &c).unwrap();
        let b = &img.branches().unwrap()[0];
        assert_eq!((b.x(), b.y()), (&ser("t"), &ser("1/2*t^2")));
        let img = plane_action(&ContactTransform::legendre(), &curve("y^2 - x^3")).unwrap();
        let b = &img.branches().unwrap()[0];
        assert_eq!((b.x(), b.y()), (&ser("3/2*t"), &ser("-1/2*t^3")));
        assert_eq!(b.multiplicity(), 1);
    }

    #[test]
    fn identity_and_involution() {
        let c = curve("y^2 - x^5");
        let l = conormal_of(&c).unwrap();
        assert_eq!(act_on_legendrian(&ContactTransform::identity(), &l).unwrap(), l);
        let twice = ContactTransform::legendre().then(ContactTransform::legendre());
        let img = plane_action(&twice, &c).unwrap();
        assert_eq!(img.equation().unwrap(), &parse_poly_in("y^2 + x^5", &["x", "y"]).unwrap());
    }

    #[test]
    fn skips() {
        let r = equisingularity_preservation_test(&ContactTransform::legendre(), &curve("y^2 - x^3")).unwrap();
        assert!(r.preserved.is_none() && r.skip_reason.is_some());
        let s = ContactTransform::scaling(int(2), rat(-1, 3)).unwrap();
        let r = equisingularity_preservation_test(&s, &curve("y^2 - x^5")).unwrap();
        assert_eq!(r.preserved, Some(true));
        assert!(fixes_origin(&s) && !is_strict_at_origin(&s));
    }

    #[test]
    fn implicit_equations() {
        let b = Branch::parse("t^2", "t^3", None).unwrap();
        assert_eq!(
            implicitize(&b).unwrap(),
            parse_poly_in("x^3 - y^2", &["x", "y"]).unwrap().monic(&MonomialOrder::DegRevLex)
        );
    }
}
