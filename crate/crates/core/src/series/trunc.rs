use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::parse::parse_poly_in;
use crate::exactalg::poly::MultiPoly;
use crate::exactalg::rational::{fmt_rational, rational_root, Rational};

const EXACT: usize = usize::MAX;

/// Univariate power series over ℚ known modulo `t^prec`. `prec == None`
/// marks an exact polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
    prec: Option<usize>,
}

fn cap(p: usize) -> Option<usize> {
    if p == EXACT {
        None
    } else {
        Some(p)
    }
}

impl TruncSeries {
    pub fn new(coeffs: Vec<Rational>, prec: Option<usize>) -> Self {
        let mut s = TruncSeries { coeffs, prec };
        s.normalize();
        s
    }

    pub fn exact(coeffs: Vec<Rational>) -> Self {
        TruncSeries::new(coeffs, None)
    }

    pub fn zero() -> Self {
        TruncSeries::exact(Vec::new())
    }

    pub fn one() -> Self {
        TruncSeries::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        TruncSeries::exact(vec![c])
    }

    /// `c·t^k`, exact.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        TruncSeries::exact(v)
    }

    /// The series `t`.
    pub fn t() -> Self {
        TruncSeries::monomial(Rational::one(), 1)
    }

    fn normalize(&mut self) {
        if let Some(p) = self.prec {
            self.coeffs.truncate(p);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn p(&self) -> usize {
        self.prec.unwrap_or(EXACT)
    }

    /// Exclusive bound on the known coefficients; `None` if exact.
    pub fn prec(&self) -> Option<usize> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    /// Known coefficients (possibly with trailing terms omitted when zero).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Order of the lowest nonzero known coefficient.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Leading coefficient at `ord`.
    pub fn leading_coeff(&self) -> Option<Rational> {
        self.ord().map(|o| self.coeffs[o].clone())
    }

    /// Certified lower bound for the order: `ord`, or the precision when no
    /// nonzero coefficient is known.
    fn val(&self) -> usize {
        self.ord().unwrap_or(self.p())
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero_known(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncate(&self, n: usize) -> Self {
        TruncSeries::new(self.coeffs.clone(), Some(self.p().min(n)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return TruncSeries::new(Vec::new(), self.prec);
        }
        TruncSeries::new(self.coeffs.iter().map(|a| a * c).collect(), self.prec)
    }

    /// `t^k · self`.
    pub fn shift(&self, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        TruncSeries::new(v, self.prec.map(|p| p + k))
    }

    pub fn derivative(&self) -> Self {
        let v = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect();
        TruncSeries::new(v, self.prec.map(|p| p.saturating_sub(1)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = TruncSeries::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a series with nonzero constant term, to at most `to` terms
    /// when `self` is exact.
    pub fn recip_unit(&self, to: usize) -> Result<Self> {
        let u0 = self.coeff(0);
        if u0.is_zero() {
            return Err(Error::pre("reciprocal of a non-unit series"));
        }
        if self.coeffs.len() == 1 && self.is_exact() {
            return Ok(TruncSeries::constant(u0.recip()));
        }
        let p = self.p().min(to);
        let inv0 = u0.recip();
        let mut w: Vec<Rational> = vec![inv0.clone()];
        for n in 1..p {
            let mut s = Rational::zero();
            for j in 1..=n.min(self.coeffs.len().saturating_sub(1)) {
                s += &self.coeffs[j] * &w[n - j];
            }
            w.push(-s * &inv0);
        }
        Ok(TruncSeries::new(w, Some(p)))
    }

    /// `self / other` where `ord(other) ≤ ord(self)`. Exact monomial
    /// divisors keep exactness; otherwise the result has at most `to` terms.
    pub fn div(&self, other: &TruncSeries, to: usize) -> Result<Self> {
        let ob = other.ord().ok_or_else(|| Error::pre("division by a series with no known nonzero term"))?;
        let oa = self.ord().unwrap_or(self.p());
        if oa < ob {
            return Err(Error::pre(format!("division would create a pole (ord {oa} < {ob})")));
        }
        let a = TruncSeries::new(self.coeffs.iter().skip(ob).cloned().collect(), self.prec.map(|p| p - ob));
        let b = TruncSeries::new(other.coeffs.iter().skip(ob).cloned().collect(), other.prec.map(|p| p - ob));
        if b.is_exact() && b.coeffs.len() == 1 {
            return Ok(a.scale(&b.coeffs[0].recip()));
        }
        let inv = b.recip_unit(to)?;
        let q = &a * &inv;
        Ok(if q.is_exact() { q.truncate(to) } else { q })
    }

    /// `self ∘ g`, requiring `ord(g) ≥ 1`.
    pub fn compose(&self, g: &TruncSeries) -> Result<Self> {
        let vg = g.val();
        if vg == 0 {
            return Err(Error::pre("compose needs ord(g) >= 1"));
        }
        let limit = self.p().saturating_mul(vg);
        let mut acc = TruncSeries::new(Vec::new(), cap(limit));
        let mut gp = TruncSeries::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                gp = &gp * g;
                if let Some(p) = cap(limit) {
                    gp = gp.truncate(p);
                }
            }
            if !c.is_zero() {
                acc = &acc + &gp.scale(c);
            }
        }
        Ok(acc)
    }

    /// Compositional inverse of a series of order 1.
    pub fn invert_reparam(&self, to: usize) -> Result<Self> {
        if self.ord() != Some(1) {
            return Err(Error::pre(format!("invert_reparam needs ord 1, got {:?}", self.ord())));
        }
        let p = self.p().min(to);
        // Lagrange: h_n = (1/n) [s^{n-1}] (s/g)^n
        let g_over_s = TruncSeries::new(self.coeffs[1..].to_vec(), self.prec.map(|q| q - 1));
        let q = g_over_s.recip_unit(p.saturating_sub(1))?;
        let mut h = vec![Rational::zero()];
        let mut qn = TruncSeries::one();
        for n in 1..p {
            qn = (&qn * &q).truncate(p - 1);
            h.push(qn.coeff(n - 1) / Rational::from_integer(n.into()));
        }
        Ok(TruncSeries::new(h, Some(p)))
    }

    /// `v` with `v^k = self`, for a unit series whose constant term has a
    /// rational `k`-th root.
    pub fn kth_root_unit(&self, k: u32, to: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::pre("k must be positive"));
        }
        let u0 = self.coeff(0);
        if u0.is_zero() {
            return Err(Error::pre("kth_root_unit needs a unit series"));
        }
        let r = rational_root(&u0, k).ok_or_else(|| {
            Error::Unsupported(format!("irrational root: {} has no rational {k}-th root", fmt_rational(&u0)))
        })?;
        if self.coeffs.len() == 1 && self.is_exact() {
            return Ok(TruncSeries::constant(r));
        }
        let p = self.p().min(to);
        let u = self.scale(&u0.recip());
        let alpha = Rational::new(1.into(), k.into());
        let mut w = vec![Rational::one()];
        for n in 1..p {
            let mut s = Rational::zero();
            for j in 1..=n.min(u.coeffs.len().saturating_sub(1)) {
                let f = &alpha * Rational::from_integer(j.into()) - Rational::from_integer((n - j).into());
                s += f * &u.coeffs[j] * &w[n - j];
            }
            w.push(s / Rational::from_integer(n.into()));
        }
        Ok(TruncSeries::new(w, Some(p)).scale(&r))
    }

    /// Builds from a polynomial in one variable (others must not occur).
    pub fn from_poly(p: &MultiPoly, var: &str, prec: Option<usize>) -> Result<Self> {
        let q = p.with_vars(&[var])?;
        let deg = q.total_degree().unwrap_or(0) as usize;
        let mut v = vec![Rational::zero(); deg + 1];
        for (m, c) in q.terms() {
            v[m[0] as usize] = c.clone();
        }
        Ok(TruncSeries::new(v, prec))
    }

    /// Parses a polynomial string in `var`, e.g. `t^10 + t^11`.
    pub fn parse(s: &str, var: &str, prec: Option<usize>) -> Result<Self> {
        TruncSeries::from_poly(&parse_poly_in(s, &[var])?, var, prec)
    }

    /// Known part as a polynomial in `var`.
    pub fn to_poly(&self, var: &str) -> MultiPoly {
        MultiPoly::from_terms(
            &[var],
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (vec![i as u32], c.clone())),
        )
    }

    pub fn to_text(&self, var: &str) -> String {
        let body = if self.coeffs.is_empty() {
            String::new()
        } else {
            let p = self.to_poly(var);
            let mut terms: Vec<_> = p.terms().map(|(m, c)| (m[0], c.clone())).collect();
            terms.sort_by_key(|(e, _)| *e);
            let mut s = String::new();
            for (k, (e, c)) in terms.into_iter().enumerate() {
                let neg = c < Rational::zero();
                let a = if neg { -c } else { c };
                if k == 0 {
                    if neg {
                        s.push('-');
                    }
                } else {
                    s.push_str(if neg { " - " } else { " + " });
                }
                let mono = match e {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{e}"),
                };
                if mono.is_empty() {
                    s.push_str(&fmt_rational(&a));
                } else if a.is_one() {
                    s.push_str(&mono);
                } else {
                    s.push_str(&format!("{}*{mono}", fmt_rational(&a)));
                }
            }
            s
        };
        match (self.prec, body.is_empty()) {
            (None, true) => "0".into(),
            (None, false) => body,
            (Some(p), true) => format!("O({var}^{p})"),
            (Some(p), false) => format!("{body} + O({var}^{p})"),
        }
    }

    /// Equality of the coefficients below `n`.
    pub fn agrees_below(&self, other: &TruncSeries, n: usize) -> bool {
        (0..n).all(|i| self.coeff(i) == other.coeff(i))
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("t"))
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries({})", self.to_text("t"))
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, o: &TruncSeries) -> TruncSeries {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        TruncSeries::new(v, cap(self.p().min(o.p())))
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, o: &TruncSeries) -> TruncSeries {
        self + &(-o)
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries::new(self.coeffs.iter().map(|c| -c).collect(), self.prec)
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, o: &TruncSeries) -> TruncSeries {
        let p = self.p().saturating_add(o.val()).min(o.p().saturating_add(self.val()));
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return TruncSeries::new(Vec::new(), cap(p));
        }
        let n = (self.coeffs.len() + o.coeffs.len() - 1).min(p);
        let mut v = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= n {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        TruncSeries::new(v, cap(p))
    }
}

/// Evaluates `p` at the given series assignment; every variable of `p` must
/// be assigned.
pub fn substitute(p: &MultiPoly, assignment: &[(&str, &TruncSeries)]) -> Result<TruncSeries> {
    let idx: Vec<&TruncSeries> = p
        .vars()
        .iter()
        .map(|v| {
            assignment
                .iter()
                .find(|(n, _)| n == v)
                .map(|(_, s)| *s)
                .ok_or_else(|| Error::pre(format!("variable `{v}` not assigned")))
        })
        .collect::<Result<_>>()?;
    let mut powers: Vec<Vec<TruncSeries>> = idx.iter().map(|s| vec![TruncSeries::one(), (*s).clone()]).collect();
    let mut acc = TruncSeries::zero();
    for (m, c) in p.terms() {
        let mut term = TruncSeries::constant(c.clone());
        for (i, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = powers[i].last().unwrap() * idx[i];
                powers[i].push(next);
            }
            term = &term * &powers[i][e as usize];
        }
        acc = &acc + &term;
    }
    Ok(acc)
}
