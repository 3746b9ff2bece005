//! Finite linear algebra in the jet space ℚ[vars]/𝔪^N.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::groebner::monomials_of_degree;
use super::order::{self, Monomial, MonomialOrder};
use super::poly::MultiPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Monomials of total degree `< N` in the given variables.
#[derive(Clone, Debug)]
pub struct JetSpace {
    vars: Vec<String>,
    degree_bound: u32,
    /// Sorted by decreasing degrevlex, so column 0 is the largest monomial.
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl JetSpace {
    pub fn new<S: AsRef<str>>(vars: &[S], degree_bound: u32) -> Self {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut basis: Vec<Monomial> = (0..degree_bound).flat_map(|d| monomials_of_degree(vars.len(), d)).collect();
        let ord = MonomialOrder::DegRevLex;
        basis.sort_by(|a, b| ord.cmp(b, a));
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        JetSpace { vars, degree_bound, basis, index }
    }

    /// The plane jet space in `x, y`.
    pub fn plane(degree_bound: u32) -> Self {
        JetSpace::new(&["x", "y"], degree_bound)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.basis
    }

    fn vector(&self, p: &MultiPoly) -> Result<BTreeMap<usize, Rational>> {
        let p = p.with_vars(&self.vars)?;
        Ok(p.terms().filter_map(|(m, c)| self.index.get(m).map(|&i| (i, c.clone()))).collect())
    }

    fn poly(&self, v: &BTreeMap<usize, Rational>) -> MultiPoly {
        MultiPoly::from_terms(&self.vars, v.iter().map(|(i, c)| (self.basis[*i].clone(), c.clone())))
    }
}

/// A subspace of a jet space kept in row echelon form. Rows are stored by
/// pivot column with pivot coefficient 1 and only larger columns after it.
#[derive(Clone, Debug)]
pub struct JetSpan {
    space: JetSpace,
    rows: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl JetSpan {
    pub fn new(space: &JetSpace) -> Self {
        JetSpan { space: space.clone(), rows: BTreeMap::new() }
    }

    /// The span of all monomial multiples of `gens`, truncated at the
    /// degree bound.
    pub fn of_ideal(space: &JetSpace, gens: &[MultiPoly]) -> Result<Self> {
        let mut s = JetSpan::new(space);
        for g in gens {
            s.add_ideal_generator(g)?;
        }
        Ok(s)
    }

    pub fn space(&self) -> &JetSpace {
        &self.space
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_vec(&self, mut v: BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        let mut col = 0;
        loop {
            let Some((&c, coef)) = v.range(col..).next() else { break };
            let coef = coef.clone();
            if let Some(row) = self.rows.get(&c) {
                for (j, r) in row {
                    let e = v.entry(*j).or_insert_with(Rational::zero);
                    *e -= &coef * r;
                    if e.is_zero() {
                        v.remove(j);
                    }
                }
            }
            col = c + 1;
        }
        v
    }

    fn insert_vec(&mut self, v: BTreeMap<usize, Rational>) -> bool {
        let v = self.reduce_vec(v);
        let Some((&piv, lead)) = v.iter().next() else { return false };
        let inv = lead.recip();
        let row: BTreeMap<usize, Rational> = v.into_iter().map(|(j, c)| (j, c * &inv)).collect();
        debug_assert!(row[&piv].is_one());
        self.rows.insert(piv, row);
        true
    }

    /// Adds the truncation of `p`; returns whether the rank grew.
    pub fn add(&mut self, p: &MultiPoly) -> Result<bool> {
        let v = self.space.vector(p)?;
        Ok(self.insert_vec(v))
    }

    /// Adds `m·g` for every monomial `m` with `deg m + ord g < N`.
    pub fn add_ideal_generator(&mut self, g: &MultiPoly) -> Result<()> {
        let g = g.with_vars(&self.space.vars)?;
        let Some(o) = g.ord() else { return Ok(()) };
        let n = self.space.degree_bound;
        if o >= n {
            return Ok(());
        }
        let g = g.truncate_degree(n);
        let one = Rational::one();
        for d in 0..(n - o) {
            for m in monomials_of_degree(self.space.vars.len(), d) {
                let shifted = g.mul_monomial(&m, &one).truncate_degree(n);
                self.add(&shifted)?;
            }
        }
        Ok(())
    }

    /// Remainder of the truncation of `p` after echelon reduction; zero iff
    /// the truncation lies in the span.
    pub fn reduce(&self, p: &MultiPoly) -> Result<MultiPoly> {
        let v = self.space.vector(p)?;
        Ok(self.space.poly(&self.reduce_vec(v)))
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }

    pub fn contains_span(&self, other: &JetSpan) -> bool {
        other.rows.values().all(|r| self.reduce_vec(r.clone()).is_empty())
    }

    /// Echelon rows as polynomials.
    pub fn basis_polys(&self) -> Vec<MultiPoly> {
        self.rows.values().map(|r| self.space.poly(r)).collect()
    }

    /// First monomial (in jet order) of degree `d` outside the span, if any.
    pub fn missing_monomial_of_degree(&self, d: u32) -> Option<Monomial> {
        let vars = &self.space.vars;
        monomials_of_degree(vars.len(), d).into_iter().find(|m| {
            let p = MultiPoly::monomial(vars, m, Rational::one());
            !self.contains(&p).unwrap_or(false)
        })
    }
}

/// A basis of a quotient of two jet spans.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientBasis {
    pub dimension: usize,
    /// Monomial representatives, when monomials suffice.
    pub monomials: Vec<Monomial>,
    /// Polynomial representatives, one per basis element.
    pub representatives: Vec<MultiPoly>,
}

/// Quotient `span(super) / span(sub)` with monomial representatives
/// preferred in decreasing degrevlex order.
pub fn jet_quotient_basis(sub: &[MultiPoly], sup: &[MultiPoly], jets: &JetSpace) -> Result<QuotientBasis> {
    let ord = MonomialOrder::DegRevLex;
    jet_quotient_basis_by(sub, sup, jets, |a, b| ord.cmp(b, a))
}

/// As [`jet_quotient_basis`], trying candidate monomials in the order given
/// by `cmp`.
pub fn jet_quotient_basis_by(
    sub: &[MultiPoly],
    sup: &[MultiPoly],
    jets: &JetSpace,
    cmp: impl FnMut(&Monomial, &Monomial) -> Ordering,
) -> Result<QuotientBasis> {
    let s = JetSpan::of_ideal(jets, sub)?;
    let t = JetSpan::of_ideal(jets, sup)?;
    quotient_of_spans(&s, &t, cmp)
}

/// Quotient of two spans over the same jet space. Fails when `sub` is not
/// contained in `sup`.
pub fn quotient_of_spans(
    sub: &JetSpan,
    sup: &JetSpan,
    mut cmp: impl FnMut(&Monomial, &Monomial) -> Ordering,
) -> Result<QuotientBasis> {
    if !sup.contains_span(sub) {
        let witness = sub
            .basis_polys()
            .into_iter()
            .find(|p| !sup.contains(p).unwrap_or(false))
            .map(|p| p.to_text())
            .unwrap_or_default();
        return Err(Error::Inconsistent(format!(
            "sub-span is not contained in super-span (witness {witness}); the jet bound or generators are wrong"
        )));
    }
    let dimension = sup.rank() - sub.rank();
    let space = sup.space();
    let one = Rational::one();
    let mut cands: Vec<Monomial> = space
        .monomials()
        .iter()
        .filter(|m| sup.contains(&MultiPoly::monomial(space.vars(), m, one.clone())).unwrap_or(false))
        .cloned()
        .collect();
    cands.sort_by(|a, b| cmp(a, b));

    let mut acc = sub.clone();
    let mut monomials = Vec::new();
    for m in cands {
        if monomials.len() == dimension {
            break;
        }
        if acc.add(&MultiPoly::monomial(space.vars(), &m, one.clone()))? {
            monomials.push(m);
        }
    }
    let mut representatives: Vec<MultiPoly> =
        monomials.iter().map(|m| MultiPoly::monomial(space.vars(), m, one.clone())).collect();
    if monomials.len() < dimension {
        // Monomials do not span: complete with echelon rows of the super span.
        for r in sup.basis_polys() {
            if representatives.len() == dimension {
                break;
            }
            if acc.add(&r)? {
                representatives.push(r);
            }
        }
        monomials.clear();
    }
    Ok(QuotientBasis { dimension, monomials, representatives })
}

/// Whether the images of `candidates` are linearly independent modulo the
/// span and together with it span `sup`.
pub fn is_quotient_basis(sub: &JetSpan, sup: &JetSpan, candidates: &[MultiPoly]) -> Result<bool> {
    let mut acc = sub.clone();
    for c in candidates {
        if !sup.contains(c)? || !acc.add(c)? {
            return Ok(false);
        }
    }
    Ok(acc.rank() == sup.rank())
}

/// Helper for callers that need an order-based comparison of monomials.
pub fn degree_then<'a>(ord: &'a MonomialOrder) -> impl Fn(&Monomial, &Monomial) -> Ordering + 'a {
    move |a, b| order::degree(a).cmp(&order::degree(b)).then_with(|| ord.cmp(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_poly_in;

    fn p(s: &str) -> MultiPoly {
        parse_poly_in(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn dimension_formula() {
        for n in 1..8 {
            assert_eq!(JetSpace::plane(n).dimension() as u32, n * (n + 1) / 2);
        }
    }

    #[test]
    fn equal_spans_give_empty_quotient() {
        let j = JetSpace::plane(5);
        let q = jet_quotient_basis(&[p("y^2-x^3")], &[p("y^2-x^3")], &j).unwrap();
        assert_eq!(q.dimension, 0);
        assert!(q.monomials.is_empty());
    }

    #[test]
    fn x_over_x_squared() {
        let j = JetSpace::plane(3);
        let q = jet_quotient_basis(&[p("x^2")], &[p("x")], &j).unwrap();
        assert_eq!(q.dimension, 2);
        let mut got = q.monomials.clone();
        got.sort();
        assert_eq!(got, vec![vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn non_inclusion_is_reported() {
        let j = JetSpace::plane(4);
        assert!(matches!(jet_quotient_basis(&[p("y")], &[p("x")], &j), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn reduce_and_contains() {
        let j = JetSpace::plane(4);
        let s = JetSpan::of_ideal(&j, &[p("x - y^2")]).unwrap();
        assert!(s.contains(&p("x*y - y^3")).unwrap());
        assert!(s.contains(&p("x^3")).unwrap());
        assert!(!s.contains(&p("y")).unwrap());
        // truncation: x^4 is zero in the jet space
        assert!(s.contains(&p("x^4 + x")).unwrap() == s.contains(&p("x")).unwrap());
    }
}
