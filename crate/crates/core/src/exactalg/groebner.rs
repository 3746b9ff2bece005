//! Buchberger's algorithm over ℚ with the sugar selection strategy, the
//! product criterion and the Gebauer–Möller chain criterion.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::order::{self, Monomial, MonomialOrder};
use super::poly::MultiPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Polynomial with terms sorted by decreasing monomial order.
#[derive(Clone, Debug)]
struct SPoly {
    terms: Vec<(Monomial, Rational)>,
    sugar: u32,
}

impl SPoly {
    fn from_poly(p: &MultiPoly, ord: &MonomialOrder) -> Self {
        SPoly { terms: p.sorted_terms(ord), sugar: p.total_degree().unwrap_or(0) }
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.recip();
                for t in &mut self.terms {
                    t.1 *= &inv;
                }
            }
        }
    }

    /// `self - c * m * other`, merging in order.
    fn sub_scaled(&self, c: &Rational, m: &[u32], other: &SPoly, ord: &MonomialOrder) -> SPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted: Vec<(Monomial, Rational)> = other.terms.iter().map(|(e, v)| (order::mul(e, m), v * c)).collect();
        while i < self.terms.len() || j < shifted.len() {
            if j == shifted.len() {
                out.push(self.terms[i].clone());
                i += 1;
            } else if i == self.terms.len() {
                out.push((shifted[j].0.clone(), -shifted[j].1.clone()));
                j += 1;
            } else {
                match ord.cmp(&self.terms[i].0, &shifted[j].0) {
                    Ordering::Greater => {
                        out.push(self.terms[i].clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push((shifted[j].0.clone(), -shifted[j].1.clone()));
                        j += 1;
                    }
                    Ordering::Equal => {
                        let v = &self.terms[i].1 - &shifted[j].1;
                        if !v.is_zero() {
                            out.push((self.terms[i].0.clone(), v));
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        let sugar = self.sugar.max(other.sugar + order::degree(m));
        SPoly { terms: out, sugar }
    }

    fn to_poly(&self, vars: &[String]) -> MultiPoly {
        MultiPoly::from_terms(vars, self.terms.iter().cloned())
    }
}

/// Full reduction of `p` by `basis` (all terms, not just the head).
fn reduce(p: &SPoly, basis: &[SPoly], ord: &MonomialOrder) -> SPoly {
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    let mut cur = p.clone();
    while !cur.is_zero() {
        let (lm, lc) = cur.terms[0].clone();
        match basis.iter().find(|g| order::divides(g.lm(), &lm)) {
            Some(g) => {
                let m = order::quo(&lm, g.lm());
                let c = &lc / &g.terms[0].1;
                cur = cur.sub_scaled(&c, &m, g, ord);
            }
            None => {
                rem.push((lm, lc));
                cur.terms.remove(0);
            }
        }
    }
    SPoly { terms: rem, sugar: cur.sugar.max(p.sugar) }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn s_poly(a: &SPoly, b: &SPoly, lcm: &[u32], ord: &MonomialOrder) -> SPoly {
    let ma = order::quo(lcm, a.lm());
    let mb = order::quo(lcm, b.lm());
    let ca = a.terms[0].1.recip();
    let cb = b.terms[0].1.recip();
    let mut left = SPoly {
        terms: a.terms.iter().map(|(e, v)| (order::mul(e, &ma), v * &ca)).collect(),
        sugar: a.sugar + order::degree(&ma),
    };
    left.terms.sort_by(|x, y| ord.cmp(&y.0, &x.0));
    left.sub_scaled(&cb, &mb, b, ord)
}

fn pair_sugar(g: &[SPoly], i: usize, j: usize, lcm: &[u32]) -> u32 {
    let d = order::degree(lcm);
    let si = g[i].sugar + d - order::degree(g[i].lm());
    let sj = g[j].sugar + d - order::degree(g[j].lm());
    si.max(sj)
}

/// Gebauer–Möller update: adds pairs for the new element `h = g[k]`.
fn update(pairs: &mut Vec<Pair>, g: &[SPoly], alive: &[bool], k: usize) {
    let lm_h = g[k].lm().clone();
    // Chain criterion on existing pairs.
    pairs.retain(|p| {
        let li = order::lcm(g[p.i].lm(), &lm_h);
        let lj = order::lcm(g[p.j].lm(), &lm_h);
        !(order::divides(&lm_h, &p.lcm) && li != p.lcm && lj != p.lcm)
    });
    let mut cand: Vec<Pair> = (0..k)
        .filter(|&i| alive[i])
        .map(|i| {
            let lcm = order::lcm(g[i].lm(), &lm_h);
            let sugar = pair_sugar(g, i, k, &lcm);
            Pair { i, j: k, lcm, sugar }
        })
        .collect();
    // Among new pairs with the same lcm, or lcm divisible by another's, keep one.
    let mut keep = vec![true; cand.len()];
    for a in 0..cand.len() {
        for b in 0..cand.len() {
            if a == b || !keep[b] || !keep[a] {
                continue;
            }
            if order::divides(&cand[b].lcm, &cand[a].lcm) && (cand[b].lcm != cand[a].lcm || b < a) {
                keep[a] = false;
            }
        }
    }
    let mut idx = 0;
    cand.retain(|_| {
        let k = keep[idx];
        idx += 1;
        k
    });
    // Product criterion.
    cand.retain(|p| !order::coprime(g[p.i].lm(), &lm_h) || p.lcm != order::mul(g[p.i].lm(), &lm_h));
    pairs.extend(cand);
}

fn select(pairs: &mut Vec<Pair>, ord: &MonomialOrder) -> Pair {
    let mut best = 0;
    for k in 1..pairs.len() {
        let (a, b) = (&pairs[k], &pairs[best]);
        let better = a.sugar < b.sugar
            || (a.sugar == b.sugar && ord.cmp(&a.lcm, &b.lcm) == Ordering::Less)
            || (a.sugar == b.sugar && a.lcm == b.lcm && (a.i, a.j) < (b.i, b.j));
        if better {
            best = k;
        }
    }
    pairs.swap_remove(best)
}

/// Reduced Gröbner basis of the ideal generated by `gens` (all over the
/// same variables). Elements are monic and sorted by increasing leading
/// monomial.
pub fn reduced_groebner(gens: &[MultiPoly], ord: &MonomialOrder) -> Vec<MultiPoly> {
    let Some(first) = gens.first() else { return Vec::new() };
    let vars = first.vars().to_vec();
    let mut g: Vec<SPoly> = Vec::new();
    let mut alive: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<SPoly> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let q = p.with_vars(&vars).expect("generators over one ring");
            SPoly::from_poly(&q, ord)
        })
        .collect();
    input.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));

    let add = |h: SPoly, g: &mut Vec<SPoly>, alive: &mut Vec<bool>, pairs: &mut Vec<Pair>| {
        g.push(h);
        alive.push(true);
        let k = g.len() - 1;
        update(pairs, g, alive, k);
        for i in 0..k {
            if alive[i] && order::divides(g[k].lm(), g[i].lm()) {
                alive[i] = false;
            }
        }
        // pairs touching dead elements are still valid S-pairs; they keep the
        // ideal unchanged and are reduced against the live basis.
    };

    for p in input {
        let live: Vec<SPoly> = g.iter().zip(&alive).filter(|(_, a)| **a).map(|(x, _)| x.clone()).collect();
        let mut h = reduce(&p, &live, ord);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        add(h, &mut g, &mut alive, &mut pairs);
    }

    while !pairs.is_empty() {
        let pr = select(&mut pairs, ord);
        let s = s_poly(&g[pr.i], &g[pr.j], &pr.lcm, ord);
        let live: Vec<SPoly> = g.iter().zip(&alive).filter(|(_, a)| **a).map(|(x, _)| x.clone()).collect();
        let mut h = reduce(&s, &live, ord);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        add(h, &mut g, &mut alive, &mut pairs);
    }

    // Minimalize then inter-reduce.
    let mut minimal: Vec<SPoly> = Vec::new();
    for (k, p) in g.iter().enumerate() {
        let redundant =
            g.iter().enumerate().any(|(j, q)| j != k && order::divides(q.lm(), p.lm()) && (q.lm() != p.lm() || j < k));
        if !redundant {
            minimal.push(p.clone());
        }
    }
    minimal.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<SPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, q)| q.clone()).collect();
        let head = SPoly { terms: vec![minimal[k].terms[0].clone()], sugar: 0 };
        let tail = SPoly { terms: minimal[k].terms[1..].to_vec(), sugar: 0 };
        let mut r = reduce(&tail, &others, ord);
        let mut terms = head.terms;
        terms.append(&mut r.terms);
        let mut p = SPoly { terms, sugar: 0 };
        p.make_monic();
        reduced.push(p.to_poly(&vars));
    }
    reduced
}

/// Generators of an ideal together with a monomial order and, once
/// computed, its reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    vars: Vec<String>,
    generators: Vec<MultiPoly>,
    order: MonomialOrder,
    reduced_groebner: Option<Vec<MultiPoly>>,
}

impl IdealBasis {
    pub fn new<S: AsRef<str>>(vars: &[S], generators: Vec<MultiPoly>, order: MonomialOrder) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let generators = generators.into_iter().map(|g| g.with_vars(&vars)).collect::<Result<Vec<_>>>()?;
        if generators.iter().any(|g| g.is_zero()) {
            return Err(Error::pre("ideal generators must be nonzero"));
        }
        Ok(IdealBasis { vars, generators, order, reduced_groebner: None })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn reduced_groebner(&self) -> Option<&[MultiPoly]> {
        self.reduced_groebner.as_deref()
    }

    /// Returns `self` with the reduced Gröbner basis cached.
    pub fn with_groebner(mut self) -> Self {
        if self.reduced_groebner.is_none() {
            self.reduced_groebner = Some(reduced_groebner(&self.generators, &self.order));
        }
        self
    }

    fn gb(&self) -> Vec<MultiPoly> {
        match &self.reduced_groebner {
            Some(g) => g.clone(),
            None => reduced_groebner(&self.generators, &self.order),
        }
    }

    pub fn is_unit_ideal(&self) -> bool {
        let g = self.gb();
        g.len() == 1 && g[0].is_constant()
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        Ok(normal_form(p, self)?.is_zero())
    }

    /// Leading monomials of the reduced Gröbner basis.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gb().iter().map(|g| g.leading_term(&self.order).unwrap().0.clone()).collect()
    }
}

/// The reduced Gröbner basis of `basis` as a new `IdealBasis` whose
/// generators are that basis.
pub fn groebner(basis: &IdealBasis) -> IdealBasis {
    let gb = basis.gb();
    IdealBasis {
        vars: basis.vars.clone(),
        generators: gb.clone(),
        order: basis.order.clone(),
        reduced_groebner: Some(gb),
    }
}

/// Unique remainder of `p` modulo the ideal; zero iff `p` is a member.
pub fn normal_form(p: &MultiPoly, basis: &IdealBasis) -> Result<MultiPoly> {
    let p = p.with_vars(&basis.vars)?;
    let ord = &basis.order;
    let gb: Vec<SPoly> = basis.gb().iter().map(|g| SPoly::from_poly(g, ord)).collect();
    let r = reduce(&SPoly::from_poly(&p, ord), &gb, ord);
    Ok(r.to_poly(&basis.vars))
}

/// Generators of `I ∩ ℚ[remaining variables]`: the elements of the reduced
/// Gröbner basis for the block order with `front_vars` first that do not
/// involve `front_vars`. The returned basis lives over the remaining
/// variables with degrevlex.
pub fn eliminate<S: AsRef<str>>(basis: &IdealBasis, front_vars: &[S]) -> Result<IdealBasis> {
    let front: Vec<usize> = front_vars
        .iter()
        .map(|v| {
            basis
                .vars
                .iter()
                .position(|w| w == v.as_ref())
                .ok_or_else(|| Error::pre(format!("cannot eliminate unknown variable `{}`", v.as_ref())))
        })
        .collect::<Result<_>>()?;
    let ord = MonomialOrder::Elimination { front: front.clone() };
    let gb = reduced_groebner(&basis.generators, &ord);
    let rest: Vec<String> =
        basis.vars.iter().enumerate().filter(|(i, _)| !front.contains(i)).map(|(_, v)| v.clone()).collect();
    let kept: Vec<MultiPoly> = gb
        .into_iter()
        .filter(|g| g.terms().all(|(m, _)| front.iter().all(|&i| m[i] == 0)))
        .map(|g| g.with_vars(&rest).expect("free of eliminated variables"))
        .collect();
    let ideal =
        IdealBasis { vars: rest.clone(), generators: kept, order: MonomialOrder::DegRevLex, reduced_groebner: None };
    Ok(ideal)
}

/// Monomials of degree `< bound` outside the leading-term ideal, sorted by
/// increasing order. Fails when standard monomials of degree `bound` exist,
/// i.e. the quotient is infinite or larger than the search bound.
pub fn standard_monomials(basis: &IdealBasis, bound: u32) -> Result<Vec<Monomial>> {
    let lms = basis.leading_monomials();
    let n = basis.vars.len();
    let mut out = Vec::new();
    let mut top_hit = false;
    for d in 0..=bound {
        for m in monomials_of_degree(n, d) {
            if lms.iter().any(|l| order::divides(l, &m)) {
                continue;
            }
            if d == bound {
                top_hit = true;
                break;
            }
            out.push(m);
        }
        if top_hit {
            break;
        }
    }
    if top_hit {
        let zero_dim = (0..n).all(|i| lms.iter().any(|l| l[i] > 0 && (0..n).all(|j| j == i || l[j] == 0)));
        return Err(Error::pre(if zero_dim {
            format!("quotient has standard monomials of degree >= {bound}; raise the bound")
        } else {
            "quotient is not finite-dimensional".to_string()
        }));
    }
    out.sort_by(|a, b| basis.order.cmp(a, b));
    Ok(out)
}

/// All exponent vectors with `n` entries and total degree `d`.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(n - 1, d - first) {
            let mut m = vec![first];
            m.append(&mut rest);
            out.push(m);
        }
    }
    out
}

/// Leading monomials as a set, handy for tests.
pub fn leading_set(basis: &IdealBasis) -> BTreeSet<Monomial> {
    basis.leading_monomials().into_iter().collect()
}
