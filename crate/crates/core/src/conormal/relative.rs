use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::groebner::{eliminate, normal_form, IdealBasis};
use crate::exactalg::order::MonomialOrder;
use crate::exactalg::poly::MultiPoly;
use crate::exactalg::rational::Rational;

/// The relative conormal ideal of a family of hypersurfaces `F(x; s) = 0`
/// in the ring `ℚ[ξ, x, s]`.
#[derive(Clone, Debug)]
pub struct RelConormalIdeal {
    pub space_vars: Vec<String>,
    pub xi_vars: Vec<String>,
    pub params: Vec<String>,
    pub equation: MultiPoly,
    pub ideal: IdealBasis,
}

impl RelConormalIdeal {
    pub fn generators(&self) -> &[MultiPoly] {
        self.ideal.generators()
    }

    pub fn ring_vars(&self) -> Vec<String> {
        self.ideal.vars().to_vec()
    }

    /// Text in the shape of a Singular session.
    pub fn to_singular(&self) -> String {
        let mut vars = vec!["c".to_string()];
        vars.extend(self.xi_vars.iter().cloned());
        vars.extend(self.space_vars.iter().cloned());
        vars.extend(self.params.iter().cloned());
        let parts: Vec<String> =
            self.xi_vars.iter().zip(&self.space_vars).map(|(xi, x)| format!("{xi}-c*diff(F,{x})")).collect();
        let gens: Vec<String> = self.generators().iter().map(|g| g.to_singular()).collect();
        format!(
            "ring r=0,({}),dp;\npoly F={};\nideal I=F,{};\nideal J={};\n",
            vars.join(","),
            self.equation.to_singular(),
            parts.join(","),
            gens.join(",")
        )
    }

    /// Each generator is homogeneous in the ξ block.
    pub fn is_xi_homogeneous(&self) -> bool {
        let vars = self.ideal.vars();
        let idx: Vec<usize> = self.xi_vars.iter().map(|v| vars.iter().position(|w| w == v).unwrap()).collect();
        self.generators().iter().all(|g| {
            let mut degs = g.terms().map(|(m, _)| idx.iter().map(|&i| m[i]).sum::<u32>());
            let first = degs.next();
            degs.all(|d| Some(d) == first)
        })
    }
}

/// Default dual variable names: `u, v, w` for `x, y, z`, otherwise `xi_<var>`.
pub fn default_xi_names(space_vars: &[String]) -> Vec<String> {
    let xyz = ["x", "y", "z"];
    let uvw = ["u", "v", "w"];
    let clash = |n: &str| space_vars.iter().any(|v| v == n);
    if space_vars.iter().enumerate().all(|(i, v)| i < 3 && v == xyz[i])
        && !uvw.iter().take(space_vars.len()).any(|n| clash(n))
    {
        uvw.iter().take(space_vars.len()).map(|s| s.to_string()).collect()
    } else {
        space_vars.iter().map(|v| format!("xi_{v}")).collect()
    }
}

/// Eliminates `c` from `⟨F, ξ_i − c·∂F/∂x_i⟩` with `c` in front of the ring
/// `(c, ξ…, x…, s…)`.
pub fn relative_conormal_ideal<S: AsRef<str>>(
    f: &MultiPoly,
    space_vars: &[S],
    params: &[S],
    xi_names: Option<&[String]>,
) -> Result<RelConormalIdeal> {
    let space: Vec<String> = space_vars.iter().map(|s| s.as_ref().to_string()).collect();
    let params: Vec<String> = params.iter().map(|s| s.as_ref().to_string()).collect();
    let xi: Vec<String> = match xi_names {
        Some(n) => n.to_vec(),
        None => default_xi_names(&space),
    };
    if xi.len() != space.len() {
        return Err(Error::pre("one dual variable per space variable is needed"));
    }
    let mut ring = vec!["c".to_string()];
    ring.extend(xi.iter().cloned());
    ring.extend(space.iter().cloned());
    ring.extend(params.iter().cloned());
    let mut seen = BTreeSet::new();
    if !ring.iter().all(|v| seen.insert(v.clone())) {
        return Err(Error::pre(format!("variable names clash in ring {ring:?}")));
    }
    let f = f.with_vars(&ring)?;
    if f.is_zero() {
        return Err(Error::pre("F must be nonzero"));
    }
    let origin: Vec<(String, MultiPoly)> = space.iter().map(|v| (v.clone(), MultiPoly::zero(&ring))).collect();
    let at_origin = f.compose(&origin);
    if !at_origin.is_zero() {
        return Err(Error::pre(format!("F(0; s) = {} is not zero", at_origin.to_text())));
    }
    let c = MultiPoly::var(&ring, "c");
    let mut gens = vec![f.clone()];
    for (xv, x) in xi.iter().zip(&space) {
        gens.push(&MultiPoly::var(&ring, xv) - &(&c * &f.derivative(x)));
    }
    let gens: Vec<MultiPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    let ideal = IdealBasis::new(&ring, gens, MonomialOrder::DegRevLex)?;
    let j = eliminate(&ideal, &["c"])?.with_groebner();
    let rest: Vec<String> = ring[1..].to_vec();
    Ok(RelConormalIdeal { space_vars: space, xi_vars: xi, params, equation: f.with_vars(&rest)?, ideal: j })
}

/// `I : u^∞`, via elimination of `z` from `I + ⟨1 − z·u⟩`.
pub fn saturate(ideal: &IdealBasis, unit: &MultiPoly) -> Result<IdealBasis> {
    let mut ring = vec!["sat_z".to_string()];
    ring.extend(ideal.vars().iter().cloned());
    let z = MultiPoly::var(&ring, "sat_z");
    let u = unit.with_vars(&ring)?;
    let mut gens: Vec<MultiPoly> = ideal.generators().iter().map(|g| g.with_vars(&ring)).collect::<Result<_>>()?;
    gens.push(&MultiPoly::one(&ring) - &(&z * &u));
    let b = IdealBasis::new(&ring, gens, MonomialOrder::DegRevLex)?;
    Ok(eliminate(&b, &["sat_z"])?.with_groebner())
}

fn same_ideal(a: &IdealBasis, b: &IdealBasis) -> Result<bool> {
    for g in a.generators() {
        if !normal_form(g, b)?.is_zero() {
            return Ok(false);
        }
    }
    for g in b.generators() {
        if !normal_form(g, a)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `F` and `unit·F` have the same relative conormal near the origin:
/// both ideals are saturated by `unit` and compared by mutual reduction.
pub fn scale_invariance_check<S: AsRef<str>>(
    f: &MultiPoly,
    unit: &MultiPoly,
    space_vars: &[S],
    params: &[S],
) -> Result<bool> {
    let space: Vec<String> = space_vars.iter().map(|s| s.as_ref().to_string()).collect();
    let vars_f: Vec<String> = f.vars().to_vec();
    let unit_full = unit.with_vars(&vars_f).or_else(|_| unit.with_vars(&space))?;
    let origin: Vec<(String, Rational)> = unit_full.vars().iter().map(|v| (v.clone(), Rational::zero())).collect();
    if unit_full.eval(&origin)?.is_zero() {
        return Err(Error::pre("the multiplier is not a unit at the origin"));
    }
    let k1 = relative_conormal_ideal(f, space_vars, params, None)?;
    let k2 = relative_conormal_ideal(&(f * &unit_full), space_vars, params, None)?;
    let s1 = saturate(&k1.ideal, &unit_full)?;
    let s2 = saturate(&k2.ideal, &unit_full)?;
    same_ideal(&s1, &s2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_poly_in;
    use crate::exactalg::rational::int;

    #[test]
    fn smooth_hypersurface() {
        let vars = ["x1", "x2", "x3"];
        let f = parse_poly_in("x1", &vars).unwrap();
        let k = relative_conormal_ideal(&f, &vars, &[], None).unwrap();
        for g in ["x1", "xi_x2", "xi_x3"] {
            let p = parse_poly_in(g, &k.ring_vars()).unwrap();
            assert!(normal_form(&p, &k.ideal).unwrap().is_zero(), "{g}");
        }
        assert!(k.is_xi_homogeneous());
    }

    #[test]
    fn cusp_conormal_vanishes_on_parametrization() {
        let f = parse_poly_in("y^2 - x^3", &["x", "y"]).unwrap();
        let k = relative_conormal_ideal(&f, &["x", "y"], &[], None).unwrap();
        assert!(k.is_xi_homogeneous());
        for (t, c) in [(1, 1), (2, -3), (-5, 7), (3, 2), (-1, -4)] {
            let (t, c) = (int(t), int(c));
            // (x, y) = (t^2, t^3); (u, v) = c·(−3x^2, 2y)
            let x = &t * &t;
            let y = &x * &t;
            let u = -int(3) * &x * &x * &c;
            let v = int(2) * &y * &c;
            let pt: Vec<(String, Rational)> = vec![("u".into(), u), ("v".into(), v), ("x".into(), x), ("y".into(), y)];
            for g in k.generators() {
                assert!(g.eval(&pt).unwrap().is_zero(), "{g}");
            }
        }
    }

    #[test]
    fn singular_text() {
        let vars = ["x", "y", "z"];
        let f = parse_poly_in("z^2+y^3+s*x^4", &["x", "y", "z", "s"]).unwrap();
        let k = relative_conormal_ideal(&f, &vars, &["s"], None).unwrap();
        let txt = k.to_singular();
        assert!(txt.starts_with("ring r=0,(c,u,v,w,x,y,z,s),dp;\n"));
        assert!(txt.contains("ideal I=F,u-c*diff(F,x),v-c*diff(F,y),w-c*diff(F,z);"));
    }

    #[test]
    fn scale_invariance() {
        let v = ["x", "y"];
        let none: [&str; 0] = [];
        let f = parse_poly_in("y^2 - x^3", &v).unwrap();
        let one = parse_poly_in("1", &v).unwrap();
        let nosp: Vec<&str> = none.to_vec();
        assert!(scale_invariance_check(&f, &one, &v, &nosp).unwrap());
        assert!(scale_invariance_check(&f, &parse_poly_in("1 + x", &v).unwrap(), &v, &nosp).unwrap());
        let g = parse_poly_in("y^2 - x^5", &v).unwrap();
        assert!(scale_invariance_check(&g, &parse_poly_in("2 + y", &v).unwrap(), &v, &nosp).unwrap());
    }
}
