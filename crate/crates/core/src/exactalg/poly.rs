use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::order::{self, Monomial, MonomialOrder};
use super::rational::{fmt_rational, Rational};
use crate::error::{Error, Result};

/// Multivariate polynomial over ℚ with named indeterminates.
///
/// Terms are kept in a map from dense exponent vectors to nonzero
/// coefficients. Binary operations on polynomials over different variable
/// lists first embed both into the union of the lists (left operand's
/// variables first).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        MultiPoly { vars: vars.iter().map(|v| v.as_ref().to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        let n = p.vars.len();
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The indeterminate `name`; panics if it is not among `vars`.
    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> Self {
        let mut p = Self::zero(vars);
        let i = p.var_index(name).unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut e = vec![0; p.vars.len()];
        e[i] = 1;
        p.add_term(e, Rational::one());
        p
    }

    pub fn monomial<S: AsRef<str>>(vars: &[S], exps: &[u32], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        assert_eq!(exps.len(), p.vars.len());
        p.add_term(exps.to_vec(), c);
        p
    }

    pub fn from_terms<S: AsRef<str>>(vars: &[S], terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.len(), p.vars.len());
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// Highest total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| order::degree(m)).max()
    }

    /// Lowest total degree of a term (the order at the origin).
    pub fn ord(&self) -> Option<u32> {
        self.terms.keys().map(|m| order::degree(m)).min()
    }

    pub fn degree_in(&self, var: &str) -> Option<u32> {
        let i = self.var_index(var)?;
        self.terms.keys().map(|m| m[i]).max()
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<String> {
        (0..self.vars.len()).filter(|&i| self.terms.keys().any(|m| m[i] > 0)).map(|i| self.vars[i].clone()).collect()
    }

    /// Re-expresses the polynomial over `vars`. Fails if a variable that
    /// occurs in `self` is missing from `vars`.
    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> Result<Self> {
        let new_vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let map: Vec<Option<usize>> = self.vars.iter().map(|v| new_vars.iter().position(|w| w == v)).collect();
        let mut out = MultiPoly { vars: new_vars, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            let mut e = vec![0; out.vars.len()];
            for (i, &k) in m.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] = k,
                    None => {
                        return Err(Error::pre(format!(
                            "variable `{}` of {} not in ring ({})",
                            self.vars[i],
                            self,
                            out.vars.join(",")
                        )))
                    }
                }
            }
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    fn union_vars(&self, other: &Self) -> Vec<String> {
        let mut v = self.vars.clone();
        for w in &other.vars {
            if !v.contains(w) {
                v.push(w.clone());
            }
        }
        v
    }

    fn aligned(&self, other: &Self) -> (MultiPoly, MultiPoly) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let u = self.union_vars(other);
        (self.with_vars(&u).unwrap(), other.with_vars(&u).unwrap())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &[u32], c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (order::mul(e, m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative; the zero polynomial if `var` is not in the ring.
    pub fn derivative(&self, var: &str) -> Self {
        let mut out = Self::zero(&self.vars);
        let Some(i) = self.var_index(var) else { return out };
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut e = m.clone();
            e[i] -= 1;
            out.add_term(e, c * Rational::from_integer(m[i].into()));
        }
        out
    }

    /// Replaces every occurrence of `var` by `value`. The result lives over
    /// the union of the remaining variables and those of `value`.
    pub fn substitute(&self, var: &str, value: &MultiPoly) -> Self {
        let Some(i) = self.var_index(var) else { return self.clone() };
        let (me, val) = self.aligned(value);
        let maxe = self.terms.keys().map(|m| m[i]).max().unwrap_or(0);
        let mut powers = vec![MultiPoly::one(&me.vars)];
        for k in 1..=maxe {
            let next = &powers[k as usize - 1] * &val;
            powers.push(next);
        }
        let mut out = MultiPoly::zero(&me.vars);
        for (m, c) in &me.terms {
            let mut e = m.clone();
            let k = e[i];
            e[i] = 0;
            let t = powers[k as usize].mul_monomial(&e, c);
            out = &out + &t;
        }
        out
    }

    /// Simultaneous substitution of all variables (missing ones are kept).
    pub fn compose(&self, values: &[(String, MultiPoly)]) -> Self {
        let mut target_vars: Vec<String> =
            self.vars.iter().filter(|v| !values.iter().any(|(w, _)| w == *v)).cloned().collect();
        for (_, p) in values {
            for v in p.vars() {
                if !target_vars.contains(v) {
                    target_vars.push(v.clone());
                }
            }
        }
        let images: Vec<MultiPoly> = self
            .vars
            .iter()
            .map(|v| match values.iter().find(|(w, _)| w == v) {
                Some((_, p)) => p.with_vars(&target_vars).unwrap(),
                None => MultiPoly::var(&target_vars, v),
            })
            .collect();
        let mut cache: Vec<Vec<MultiPoly>> =
            images.iter().map(|p| vec![MultiPoly::one(&target_vars), p.clone()]).collect();
        let mut out = MultiPoly::zero(&target_vars);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target_vars, c.clone());
            for (i, &k) in m.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap() * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][k as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Evaluates at rational values for every variable.
    pub fn eval(&self, point: &[(String, Rational)]) -> Result<Rational> {
        let vals: Vec<Rational> = self
            .vars
            .iter()
            .map(|v| {
                point
                    .iter()
                    .find(|(w, _)| w == v)
                    .map(|(_, q)| q.clone())
                    .ok_or_else(|| Error::pre(format!("no value for `{v}`")))
            })
            .collect::<Result<_>>()?;
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in m.iter().enumerate() {
                if k > 0 {
                    t *= num_traits::pow(vals[i].clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Drops all terms of total degree `>= bound`.
    pub fn truncate_degree(&self, bound: u32) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| order::degree(m) < bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| order::degree(m) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Writes `self = Σ_k c_k · var^k` and returns the `c_k` (still over
    /// the full ring, with `var` absent).
    pub fn coefficients_in(&self, var: &str) -> Vec<MultiPoly> {
        let Some(i) = self.var_index(var) else { return vec![self.clone()] };
        let maxe = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(&self.vars); maxe + 1];
        for (m, c) in &self.terms {
            let mut e = m.clone();
            let k = e[i] as usize;
            e[i] = 0;
            out[k].add_term(e, c.clone());
        }
        out
    }

    pub fn leading_term(&self, ord: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| ord.cmp(a.0, b.0))
    }

    /// Divides by the leading coefficient w.r.t. `ord`.
    pub fn monic(&self, ord: &MonomialOrder) -> Self {
        match self.leading_term(ord) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Terms sorted by decreasing `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(Monomial, Rational)> {
        let mut v: Vec<(Monomial, Rational)> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        v
    }

    fn fmt_monomial(&self, m: &[u32]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars[i].clone()),
                _ => parts.push(format!("{}^{}", self.vars[i], e)),
            }
        }
        parts.join("*")
    }

    /// Text form in the project grammar, terms by decreasing degrevlex.
    pub fn to_text(&self) -> String {
        self.to_text_with(&MonomialOrder::DegRevLex)
    }

    pub fn to_text_with(&self, ord: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.sorted_terms(ord).iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.fmt_monomial(m);
            if mono.is_empty() {
                s.push_str(&fmt_rational(&a));
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&fmt_rational(&a));
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }

    /// Singular-style text (`3*x^2*y-y^3`), used by the `singular` output format.
    pub fn to_singular(&self) -> String {
        self.to_text().replace(' ', "")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.vars.join(","), self.to_text())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut a, b) = self.aligned(rhs);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut a, b) = self.aligned(rhs);
        for (m, c) in b.terms {
            a.add_term(m, -c);
        }
        a
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let (a, b) = self.aligned(rhs);
        let mut out = MultiPoly::zero(&a.vars);
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                out.add_term(order::mul(m1, m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
