//! Branches of a plane curve from its equation, for curves whose Newton
//! faces split into distinct rational binomial factors `y^u − c·x^v`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::branch::Branch;
use super::newton::{newton_diagram, Face};
use crate::error::{Error, Result};
use crate::exactalg::poly::MultiPoly;
use crate::exactalg::rational::{rational_powi, rational_root, Rational};
use crate::series::{substitute, TruncSeries};

fn eval(coeffs: &[Rational], z: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * z + c)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let small = n
        .to_u64()
        .filter(|&v| v <= 1_000_000_000_000)
        .ok_or_else(|| Error::Unsupported("coefficient too large for rational root search".into()))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d * d != small {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

/// Distinct rational roots of `Σ c_i z^i`, each with its multiplicity.
pub fn rational_roots(coeffs: &[Rational]) -> Result<Vec<(Rational, usize)>> {
    let mut c: Vec<Rational> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut roots = Vec::new();
    // z = 0 roots
    let mut zero_mult = 0;
    while c[0].is_zero() {
        c.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
    }
    let den = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = c.iter().map(|q| (q * Rational::from_integer(den.clone())).to_integer()).collect();
    let ps = divisors(&ints[0])?;
    let qs = divisors(ints.last().unwrap())?;
    let mut cands: Vec<Rational> = Vec::new();
    for p in &ps {
        for q in &qs {
            for s in [1, -1] {
                let r = Rational::new(p * s, q.clone());
                if !cands.contains(&r) {
                    cands.push(r);
                }
            }
        }
    }
    cands.sort();
    for r in cands {
        let mut m = 0;
        let mut poly = c.clone();
        while poly.len() > 1 && eval(&poly, &r).is_zero() {
            poly = deflate(&poly, &r);
            m += 1;
        }
        if m > 0 {
            roots.push((r, m));
        }
    }
    Ok(roots)
}

/// Quotient of `Σ c_i z^i` by `z − r` (exact division assumed).
fn deflate(c: &[Rational], r: &Rational) -> Vec<Rational> {
    let n = c.len() - 1;
    let mut q = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for i in (0..n).rev() {
        carry = &c[i + 1] + &carry * r;
        q[i] = carry.clone();
    }
    q
}

/// `(α, β)` with `u·β − v·α = 1`.
fn bezout(u: u32, v: u32) -> (i64, i64) {
    let e = (u as i64).extended_gcd(&(v as i64));
    // e.x·u + e.y·v = 1  ⇒  β = e.x, α = −e.y
    (-e.y, e.x)
}

/// Rational leading coefficients `(a, b)` of a branch `x = a t^u, y = b t^v`
/// on `y^u = c·x^v`.
fn leading_coefficients(u: u32, v: u32, c: &Rational) -> (Rational, Rational) {
    if let Some(b) = rational_root(c, u) {
        return (Rational::one(), b);
    }
    let (alpha, beta) = bezout(u, v);
    (rational_powi(c, alpha), rational_powi(c, beta))
}

/// `Q(z) = Σ a_k z^{K−k}` for a face, with `z = y^u / x^v`.
fn face_equation(f: &MultiPoly, face: &Face) -> Vec<Rational> {
    let k_len = face.length() as usize;
    let mut q = vec![Rational::zero(); k_len + 1];
    for k in 0..=k_len {
        let i = face.start.0 + face.v * k as u32;
        let j = face.start.1 - face.u * k as u32;
        q[k_len - k] = f.coeff(&[i, j]);
    }
    q
}

/// Refines `x = a t^u, y = b t^v + …` to a solution of `f = 0` known modulo
/// `t^to`, or exactly when the polynomial iterate already solves `f`.
fn refine(f: &MultiPoly, face: &Face, a: &Rational, b: &Rational, to: usize) -> Result<Branch> {
    let (u, v, d) = (face.u as usize, face.v as usize, face.d as usize);
    let x = TruncSeries::monomial(a.clone(), u);
    let mut y = TruncSeries::monomial(b.clone(), v);
    let fy = f.derivative("y");
    let lead = substitute(&fy, &[("x", &x), ("y", &y)])?.coeff(d - v);
    if lead.is_zero() {
        return Err(Error::Unsupported("multiple root on a Newton face; supply branches explicitly".into()));
    }
    let to = to.max(v + 1);
    let exact_zero = |y: &TruncSeries| -> Result<bool> { Ok(substitute(f, &[("x", &x), ("y", y)])?.is_zero_known()) };
    if exact_zero(&y)? {
        return Branch::new(x, y);
    }
    for n in v + 1..to {
        let cap = d - v + n + 1;
        let r = substitute(f, &[("x", &x.truncate(cap)), ("y", &y.truncate(cap))])?;
        let coef = r.coeff(d - v + n);
        if !coef.is_zero() {
            y = &y + &TruncSeries::monomial(-coef / &lead, n);
        }
    }
    if exact_zero(&y)? {
        return Branch::new(x, y);
    }
    Branch::new(x, y.truncate(to))
}

/// Branches of `f = 0` at the origin. Coordinate axes dividing `f` give the
/// branches `(0, t)` and `(t, 0)`; each remaining Newton face must split
/// into distinct rational factors `y^u − c·x^v`.
pub fn branches_from_equation(f: &MultiPoly, to: usize) -> Result<Vec<Branch>> {
    let mut f = f.with_vars(&["x", "y"])?;
    if f.is_zero() || !f.constant_term().is_zero() {
        return Err(Error::pre("f must vanish at the origin and be nonzero"));
    }
    let ax = f.terms().map(|(m, _)| m[0]).min().unwrap();
    let ay = f.terms().map(|(m, _)| m[1]).min().unwrap();
    if ax >= 2 || ay >= 2 {
        return Err(Error::pre("f is not reduced: a coordinate axis divides it twice"));
    }
    let mut out = Vec::new();
    if ax == 1 {
        out.push(Branch::new(TruncSeries::zero(), TruncSeries::t())?);
    }
    if ay == 1 {
        out.push(Branch::new(TruncSeries::t(), TruncSeries::zero())?);
    }
    if ax + ay > 0 {
        f = MultiPoly::from_terms(&["x", "y"], f.terms().map(|(m, c)| (vec![m[0] - ax, m[1] - ay], c.clone())));
    }
    if !f.constant_term().is_zero() {
        return Ok(out);
    }
    let nd = newton_diagram(&f)?;
    for face in &nd.faces {
        let q = face_equation(&f, face);
        let roots = rational_roots(&q)?;
        let simple: usize = roots.iter().filter(|(_, m)| *m == 1).count();
        if simple != face.length() as usize {
            return Err(Error::Unsupported(format!(
                "Newton face {face} does not split into distinct rational factors; supply branches explicitly"
            )));
        }
        for (c, _) in roots {
            let (a, b) = leading_coefficients(face.u, face.v, &c);
            out.push(refine(&f, face, &a, &b, to)?);
        }
    }
    Ok(out)
}
