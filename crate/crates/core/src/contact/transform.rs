use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::parse::parse_poly_in;
use crate::exactalg::poly::MultiPoly;
use crate::exactalg::rational::{fmt_rational, int, parse_rational, rat, Rational};

/// Coordinates of the contact space, in ring order.
pub const XYP: [&str; 3] = ["x", "y", "p"];

/// A germ of contact transformation of `(ℂ³, dy − p dx)` in one of the
/// structured shapes, or a composite applied left to right.
#[derive(Clone, PartialEq, Eq)]
pub enum ContactTransform {
    /// `(λx, λμy, μp)`.
    Scaling { lambda: Rational, mu: Rational },
    /// `(ax + bp, y + (ac/2)x² + (bd/2)p² + bcxp, cx + dp)` with `ad − bc = 1`.
    Paraboloidal { a: Rational, b: Rational, c: Rational, d: Rational },
    /// `ρ_λ = (x, y − λx²/2, p − λx)`.
    RhoLambda { lambda: Rational },
    /// `(x + α, y + β, p + γ)`.
    Vertical { alpha: MultiPoly, beta: MultiPoly, gamma: MultiPoly },
    /// `parts[0]` first, then `parts[1]`, …
    Composite(Vec<ContactTransform>),
}

impl ContactTransform {
    pub fn identity() -> Self {
        ContactTransform::Composite(Vec::new())
    }

    pub fn scaling(lambda: Rational, mu: Rational) -> Result<Self> {
        if lambda.is_zero() || mu.is_zero() {
            return Err(Error::pre("scaling factors must be nonzero"));
        }
        Ok(ContactTransform::Scaling { lambda, mu })
    }

    pub fn paraboloidal(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(Error::pre(format!("ad - bc = {} must be 1", fmt_rational(&det))));
        }
        Ok(ContactTransform::Paraboloidal { a, b, c, d })
    }

    pub fn rho(lambda: Rational) -> Self {
        ContactTransform::RhoLambda { lambda }
    }

    /// The Legendre transform `(p, y − xp, −x)`.
    pub fn legendre() -> Self {
        ContactTransform::Paraboloidal { a: int(0), b: int(1), c: int(-1), d: int(0) }
    }

    pub fn vertical(alpha: &MultiPoly, beta: &MultiPoly, gamma: &MultiPoly) -> Result<Self> {
        Ok(ContactTransform::Vertical {
            alpha: alpha.with_vars(&XYP)?,
            beta: beta.with_vars(&XYP)?,
            gamma: gamma.with_vars(&XYP)?,
        })
    }

    pub fn then(self, next: ContactTransform) -> Self {
        match self {
            ContactTransform::Composite(mut v) => {
                v.push(next);
                ContactTransform::Composite(v)
            }
            t => ContactTransform::Composite(vec![t, next]),
        }
    }

    /// `(X, Y, P)` as polynomials in `x, y, p`.
    pub fn components(&self) -> [MultiPoly; 3] {
        let x = MultiPoly::var(&XYP, "x");
        let y = MultiPoly::var(&XYP, "y");
        let p = MultiPoly::var(&XYP, "p");
        let half = rat(1, 2);
        match self {
            ContactTransform::Scaling { lambda, mu } => [x.scale(lambda), y.scale(&(lambda * mu)), p.scale(mu)],
            ContactTransform::Paraboloidal { a, b, c, d } => {
                let xx = &x * &x;
                let pp = &p * &p;
                let xp = &x * &p;
                let yy = &(&(&y + &xx.scale(&(a * c * &half))) + &pp.scale(&(b * d * &half))) + &xp.scale(&(b * c));
                [&x.scale(a) + &p.scale(b), yy, &x.scale(c) + &p.scale(d)]
            }
            ContactTransform::RhoLambda { lambda } => {
                let xx = &x * &x;
                [x.clone(), &y - &xx.scale(&(lambda * &half)), &p - &x.scale(lambda)]
            }
            ContactTransform::Vertical { alpha, beta, gamma } => [&x + alpha, &y + beta, &p + gamma],
            ContactTransform::Composite(parts) => {
                let mut acc = [x, y, p];
                for t in parts {
                    let sub: Vec<(String, MultiPoly)> =
                        XYP.iter().zip(acc.iter()).map(|(v, c)| (v.to_string(), c.clone())).collect();
                    acc = t.components().map(|c| c.compose(&sub));
                }
                acc
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let r = |q: &Rational| Value::String(fmt_rational(q));
        match self {
            ContactTransform::Scaling { lambda, mu } => json!({"kind": "scaling", "lambda": r(lambda), "mu": r(mu)}),
            ContactTransform::Paraboloidal { a, b, c, d } => {
                json!({"kind": "paraboloidal", "a": r(a), "b": r(b), "c": r(c), "d": r(d)})
            }
            ContactTransform::RhoLambda { lambda } => json!({"kind": "rho", "lambda": r(lambda)}),
            ContactTransform::Vertical { alpha, beta, gamma } => json!({
                "kind": "vertical",
                "alpha": alpha.to_text(),
                "beta": beta.to_text(),
                "gamma": gamma.to_text(),
            }),
            ContactTransform::Composite(parts) => {
                json!({"kind": "composite", "parts": parts.iter().map(|t| t.to_json()).collect::<Vec<_>>()})
            }
        }
    }

    /// Reads `{"kind": ..., ...}`; rationals and polynomials are strings
    /// (bare JSON numbers are accepted for rationals).
    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |name: &str| -> Result<&Value> {
            v.get(name).ok_or_else(|| Error::Parse(format!("transform is missing field `{name}`")))
        };
        let q = |name: &str| -> Result<Rational> {
            match field(name)? {
                Value::String(s) => parse_rational(s),
                Value::Number(n) => parse_rational(&n.to_string()),
                _ => Err(Error::Parse(format!("field `{name}` must be a rational string"))),
            }
        };
        let poly = |name: &str| -> Result<MultiPoly> {
            match v.get(name) {
                None => Ok(MultiPoly::zero(&XYP)),
                Some(Value::String(s)) => parse_poly_in(s, &XYP),
                Some(_) => Err(Error::Parse(format!("field `{name}` must be a polynomial string"))),
            }
        };
        let kind = field("kind")?.as_str().ok_or_else(|| Error::Parse("`kind` must be a string".into()))?;
        match kind {
            "scaling" => ContactTransform::scaling(q("lambda")?, q("mu")?),
            "paraboloidal" => ContactTransform::paraboloidal(q("a")?, q("b")?, q("c")?, q("d")?),
            "rho" => Ok(ContactTransform::rho(q("lambda")?)),
            "legendre" => Ok(ContactTransform::legendre()),
            "identity" => Ok(ContactTransform::identity()),
            "vertical" => ContactTransform::vertical(&poly("alpha")?, &poly("beta")?, &poly("gamma")?),
            "composite" => {
                let parts =
                    field("parts")?.as_array().ok_or_else(|| Error::Parse("`parts` must be an array".into()))?;
                Ok(ContactTransform::Composite(parts.iter().map(ContactTransform::from_json).collect::<Result<_>>()?))
            }
            other => Err(Error::Parse(format!("unknown transform kind `{other}`"))),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("transform JSON: {e}")))?;
        ContactTransform::from_json(&v)
    }
}

impl fmt::Display for ContactTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, p] = self.components();
        write!(f, "({}, {}, {})", x.to_text(), y.to_text(), p.to_text())
    }
}

impl fmt::Debug for ContactTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

/// The pullback `dY − P dX = A dx + B dy + C dp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PulledForm {
    pub dx: MultiPoly,
    pub dy: MultiPoly,
    pub dp: MultiPoly,
}

/// Pulls `dy − p dx` back along a map given by its `(X, Y, P)` components.
/// Extra ring variables (e.g. parameters) are treated as constants.
pub fn pullback(components: &[MultiPoly; 3]) -> PulledForm {
    let [xc, yc, pc] = components;
    let part = |v: &str| &yc.derivative(v) - &(pc * &xc.derivative(v));
    PulledForm { dx: part("x"), dy: part("y"), dp: part("p") }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactCheck {
    pub is_contact: bool,
    /// `u` with `T*(dy − p dx) = u·(dy − p dx)`, when the pullback has that shape.
    pub cofactor: Option<MultiPoly>,
    /// `u(0) ≠ 0`.
    pub unit: bool,
    pub witness: String,
}

/// Checks `T*(dy − p dx) = u·(dy − p dx)` with `u` a unit at the origin.
pub fn verify_contact(t: &ContactTransform) -> ContactCheck {
    let form = pullback(&t.components());
    let p = MultiPoly::var(&XYP, "p");
    if !form.dp.is_zero() {
        return ContactCheck {
            is_contact: false,
            cofactor: None,
            unit: false,
            witness: format!("dp coefficient {} is not zero", form.dp.to_text()),
        };
    }
    let mismatch = &form.dx + &(&p * &form.dy);
    if !mismatch.is_zero() {
        return ContactCheck {
            is_contact: false,
            cofactor: None,
            unit: false,
            witness: format!("dx coefficient differs from -p times dy coefficient by {}", mismatch.to_text()),
        };
    }
    let unit = !form.dy.constant_term().is_zero();
    let witness = if unit { String::new() } else { format!("cofactor {} vanishes at the origin", form.dy.to_text()) };
    ContactCheck { is_contact: unit, cofactor: Some(form.dy), unit, witness }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyp(s: &str) -> MultiPoly {
        parse_poly_in(s, &XYP).unwrap()
    }

    #[test]
    fn generator_cofactors() {
        let c = verify_contact(&ContactTransform::rho(rat(3, 2)));
        assert!(c.is_contact);
        assert_eq!(c.cofactor, Some(xyp("1")));
        let c = verify_contact(&ContactTransform::legendre());
        assert!(c.is_contact);
        assert_eq!(c.cofactor, Some(xyp("1")));
        let c = verify_contact(&ContactTransform::scaling(int(2), rat(-1, 3)).unwrap());
        assert_eq!(c.cofactor, Some(xyp("-2/3")));
        let c = verify_contact(&ContactTransform::paraboloidal(int(2), int(1), int(3), int(2)).unwrap());
        assert!(c.is_contact);
        assert!(ContactTransform::paraboloidal(int(1), int(1), int(1), int(1)).is_err());
    }

    #[test]
    fn legendre_components() {
        let [x, y, p] = ContactTransform::legendre().components();
        assert_eq!((x, y, p), (xyp("p"), xyp("y - x*p"), xyp("-x")));
        let twice = ContactTransform::legendre().then(ContactTransform::legendre());
        assert_eq!(twice.components(), [xyp("-x"), xyp("y"), xyp("-p")]);
    }

    #[test]
    fn vertical_examples() {
        let t = ContactTransform::vertical(&xyp("p"), &xyp("p^2/2"), &xyp("0")).unwrap();
        assert!(verify_contact(&t).is_contact);
        let bad = ContactTransform::vertical(&xyp("p"), &xyp("0"), &xyp("0")).unwrap();
        let c = verify_contact(&bad);
        assert!(!c.is_contact && c.cofactor.is_none());
    }

    #[test]
    fn composition_cofactor() {
        let t1 = ContactTransform::scaling(int(2), int(3)).unwrap();
        let t2 = ContactTransform::vertical(&xyp("0"), &xyp("x*y"), &xyp("y + x*p")).unwrap();
        // (x, y + xy, p + y + xp) is contact with u = 1 + x
        let u2 = verify_contact(&t2).cofactor.unwrap();
        assert_eq!(u2, xyp("1 + x"));
        let u1 = verify_contact(&t1).cofactor.unwrap();
        let sub: Vec<(String, MultiPoly)> = XYP.iter().zip(t1.components()).map(|(v, c)| (v.to_string(), c)).collect();
        let expected = &u2.compose(&sub) * &u1;
        assert_eq!(verify_contact(&t1.then(t2)).cofactor, Some(expected));
    }

    #[test]
    fn json_roundtrip() {
        let t = ContactTransform::legendre()
            .then(ContactTransform::rho(rat(1, 2)))
            .then(ContactTransform::vertical(&xyp("p"), &xyp("p^2/2"), &xyp("0")).unwrap());
        assert_eq!(ContactTransform::from_json(&t.to_json()).unwrap(), t);
        assert!(ContactTransform::parse(r#"{"kind":"scaling","lambda":"0","mu":"1"}"#).is_err());
        assert!(matches!(ContactTransform::parse("{"), Err(Error::Parse(_))));
    }
}
