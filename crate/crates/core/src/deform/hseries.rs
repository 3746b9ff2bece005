use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::conormal::LegendrianCurve;
use crate::curve::{Branch, EquisingClass};
use crate::error::{Error, Result};
use crate::exactalg::groebner::monomials_of_degree;
use crate::exactalg::jets::{JetSpace, JetSpan};
use crate::exactalg::order::Monomial;
use crate::exactalg::poly::MultiPoly;
use crate::exactalg::rational::Rational;
use crate::series::{substitute, TruncSeries};

type SparseVec = BTreeMap<usize, Rational>;

/// Last matched coefficient per branch: `B_τ = N·ord_τ(x) + c_τ − 1`, with
/// `c_τ` the branch conductor plus the intersection multiplicities with the
/// other branches. Then `t^{B_τ+1}ℂ{t}` lies in the image of `x^N` times
/// the conductor ideal, so matching modulo the image of `𝔪^N` below
/// `B_τ + 1` determines `h_ℓ` modulo `⟨f⟩ + 𝔪^N`.
pub fn matching_bounds(branches: &[Branch], jet_bound: u32) -> Result<Vec<usize>> {
    let class = EquisingClass::of_branches(branches)?;
    branches
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let k = b.ord_x().ok_or_else(|| Error::pre(format!("branch {b} lies on x = 0")))?;
            let c = class.branches[i].semigroup.conductor as usize + class.intersections[i].iter().sum::<usize>();
            Ok(jet_bound as usize * k + c - 1)
        })
        .collect()
}

/// The contact correction element `h_ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSeries {
    pub l: u32,
    /// Normal form modulo `⟨f⟩` in the jet space of degree `< N`.
    pub representative: MultiPoly,
    /// The full solution of the series match: the degree `< N` part plus
    /// an element of `𝔪^N`.
    pub solution: MultiPoly,
    /// `h_ℓ ∈ ⟨f⟩ + 𝔪^N`, so the representative is zero.
    pub absorbed: bool,
    pub bounds: Vec<usize>,
    /// `ord_τ(target − solution)` per branch (`None`: zero to known order).
    pub residual_orders: Vec<Option<usize>>,
}

impl HSeries {
    pub fn residual_exceeds_bounds(&self) -> bool {
        self.residual_orders.iter().zip(&self.bounds).all(|(o, b)| o.is_none_or(|o| o > *b))
    }
}

/// Series along the conormal branches, truncated at the matching bounds,
/// and an echelon form of the images of the unknown monomials.
pub struct HSolver {
    f: MultiPoly,
    conormal: LegendrianCurve,
    jet_bound: u32,
    bounds: Vec<usize>,
    offsets: Vec<usize>,
    unknowns: Vec<Monomial>,
    /// pivot ↦ (normalized row, combination of unknowns producing it)
    echelon: BTreeMap<usize, (SparseVec, SparseVec)>,
    kernel: Vec<MultiPoly>,
    fx: Vec<TruncSeries>,
    fy: Vec<TruncSeries>,
    f_span: JetSpan,
}

fn cut(s: &TruncSeries, n: usize) -> TruncSeries {
    s.truncate(n)
}

fn known_past(s: &TruncSeries, b: usize) -> bool {
    s.prec().is_none_or(|p| p > b)
}

impl HSolver {
    pub fn new(f: &MultiPoly, conormal: &LegendrianCurve, jet_bound: u32) -> Result<Self> {
        let f = f.with_vars(&["x", "y"])?;
        let plane: Vec<Branch> = conormal.branches().iter().map(|b| b.plane_branch()).collect::<Result<_>>()?;
        let bounds = matching_bounds(&plane, jet_bound)?;
        let mut offsets = Vec::new();
        let mut total = 0;
        for b in &bounds {
            offsets.push(total);
            total += b + 1;
        }
        // x^a y^b has order ≥ ord_τ(x)·(a + b) on every branch
        let top = plane
            .iter()
            .zip(&bounds)
            .map(|(b, bt)| bt / b.ord_x().unwrap() + 1)
            .max()
            .unwrap_or(0)
            .max(jet_bound as usize) as u32;
        let unknowns: Vec<Monomial> = (0..top).flat_map(|d| monomials_of_degree(2, d)).collect();
        let fxp = f.derivative("x");
        let fyp = f.derivative("y");
        let mut fx = Vec::new();
        let mut fy = Vec::new();
        let mut images: Vec<SparseVec> = vec![SparseVec::new(); unknowns.len()];
        for (k, lb) in conormal.branches().iter().enumerate() {
            let n = bounds[k] + 1;
            for (name, s) in [("x", &lb.x), ("y", &lb.y), ("p", &lb.p)] {
                if !known_past(s, bounds[k]) {
                    return Err(Error::Precision(format!(
                        "branch {k}: {name} is known below t^{} but the match needs t^{}",
                        s.prec().unwrap(),
                        bounds[k]
                    )));
                }
            }
            let x = cut(&lb.x, n);
            let y = cut(&lb.y, n);
            let mut xp = vec![TruncSeries::one().truncate(n)];
            let mut yp = vec![TruncSeries::one().truncate(n)];
            for _ in 0..top {
                let a = xp.last().unwrap() * &x;
                let b = yp.last().unwrap() * &y;
                xp.push(a);
                yp.push(b);
            }
            for (col, m) in unknowns.iter().enumerate() {
                let s = &xp[m[0] as usize] * &yp[m[1] as usize];
                if !known_past(&s, bounds[k]) {
                    return Err(Error::Precision(format!("image of a monomial along branch {k} is too short")));
                }
                for (i, c) in s.coeffs().iter().enumerate().take(n) {
                    if !c.is_zero() {
                        images[col].insert(offsets[k] + i, c.clone());
                    }
                }
            }
            let at = [("x", &x), ("y", &y)];
            fx.push(substitute(&fxp, &at)?);
            fy.push(substitute(&fyp, &at)?);
        }
        let jets = JetSpace::plane(jet_bound);
        let f_span = JetSpan::of_ideal(&jets, std::slice::from_ref(&f))?;
        let mut solver = HSolver {
            f,
            conormal: conormal.clone(),
            jet_bound,
            bounds,
            offsets,
            unknowns,
            echelon: BTreeMap::new(),
            kernel: Vec::new(),
            fx,
            fy,
            f_span,
        };
        for (col, v) in images.into_iter().enumerate() {
            if v.is_empty() {
                continue;
            }
            let mut combo = SparseVec::new();
            combo.insert(col, Rational::one());
            let (v, combo) = solver.reduce(v, combo);
            match v.iter().next() {
                Some((&piv, lead)) => {
                    let inv = lead.recip();
                    let row = v.iter().map(|(j, c)| (*j, c * &inv)).collect();
                    let combo = combo.iter().map(|(j, c)| (*j, c * &inv)).collect();
                    solver.echelon.insert(piv, (row, combo));
                }
                None => {
                    let k = solver.poly_of(&combo);
                    solver.kernel.push(k);
                }
            }
        }
        // The low-degree part of a relation must lie in ⟨f⟩ + 𝔪^N, otherwise
        // the representative of h_ℓ is not unique.
        for k in &solver.kernel {
            if !solver.f_span.contains(k)? {
                return Err(Error::Inconsistent(format!(
                    "matching is underdetermined: {} vanishes past the bounds but is not in <f> + m^{}",
                    k.to_text(),
                    jet_bound
                )));
            }
        }
        Ok(solver)
    }

    fn reduce(&self, mut v: SparseVec, mut combo: SparseVec) -> (SparseVec, SparseVec) {
        let mut col = 0;
        loop {
            let Some((&c, coef)) = v.range(col..).next() else { break };
            let coef = coef.clone();
            if let Some((row, rc)) = self.echelon.get(&c) {
                axpy(&mut v, &coef, row);
                axpy(&mut combo, &coef, rc);
            }
            col = c + 1;
        }
        (v, combo)
    }

    fn poly_of(&self, combo: &SparseVec) -> MultiPoly {
        MultiPoly::from_terms(&["x", "y"], combo.iter().map(|(i, c)| (self.unknowns[*i].clone(), c.clone())))
    }

    pub fn jet_bound(&self) -> u32 {
        self.jet_bound
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn conormal(&self) -> &LegendrianCurve {
        &self.conormal
    }

    /// Relations among the unknowns: polynomials vanishing past every
    /// matching bound.
    pub fn kernel(&self) -> &[MultiPoly] {
        &self.kernel
    }

    /// `(ℓ+1)p^ℓ f_x + ℓ p^{ℓ+1} f_y` along each branch, cut at its bound.
    pub fn target(&self, l: u32) -> Vec<TruncSeries> {
        let lq = Rational::from_integer(l.into());
        self.conormal
            .branches()
            .iter()
            .enumerate()
            .map(|(k, lb)| {
                let n = self.bounds[k] + 1;
                let p = cut(&lb.p, n);
                let mut pl = TruncSeries::one().truncate(n);
                for _ in 0..l {
                    pl = &pl * &p;
                }
                let a = (&pl * &self.fx[k]).scale(&(&lq + Rational::one()));
                let b = (&(&pl * &p) * &self.fy[k]).scale(&lq);
                (&a + &b).truncate(n)
            })
            .collect()
    }

    /// Solves for `h_ℓ`.
    pub fn solve(&self, l: u32) -> Result<HSeries> {
        if l == 0 {
            return Err(Error::pre("h_l is defined for l >= 1"));
        }
        let target = self.target(l);
        let mut v = SparseVec::new();
        for (k, t) in target.iter().enumerate() {
            for (i, c) in t.coeffs().iter().enumerate().take(self.bounds[k] + 1) {
                if !c.is_zero() {
                    v.insert(self.offsets[k] + i, c.clone());
                }
            }
        }
        let (rest, combo) = self.reduce(v, SparseVec::new());
        if !rest.is_empty() {
            return Err(Error::Inconsistent(format!(
                "no polynomial matches the target for l = {l}; is the curve generic?"
            )));
        }
        // reduce() subtracts, so the solution is the negated combination
        let solution = -&self.poly_of(&combo);
        let representative = self.f_span.reduce(&solution)?;
        let mut residual_orders = Vec::new();
        for (k, lb) in self.conormal.branches().iter().enumerate() {
            let n = self.bounds[k] + 1;
            let at = [("x", &cut(&lb.x, n)), ("y", &cut(&lb.y, n))];
            let r = &target[k] - &substitute(&solution, &at)?;
            residual_orders.push(r.ord());
        }
        let h = HSeries {
            l,
            absorbed: representative.is_zero(),
            representative,
            solution,
            bounds: self.bounds.clone(),
            residual_orders,
        };
        if !h.residual_exceeds_bounds() {
            return Err(Error::Inconsistent(format!("series match for h_{l} fails below the bound")));
        }
        Ok(h)
    }

    /// The target lies past every matching bound, as it does for all
    /// larger `ℓ`.
    pub fn beyond_bounds(&self, l: u32) -> bool {
        self.target(l).iter().zip(&self.bounds).all(|(t, b)| t.ord().is_none_or(|o| o > *b))
    }

    pub fn equation(&self) -> &MultiPoly {
        &self.f
    }
}

/// `v -= c·row`.
fn axpy(v: &mut SparseVec, c: &Rational, row: &SparseVec) {
    for (j, r) in row {
        let e = v.entry(*j).or_insert_with(Rational::zero);
        *e -= c * r;
        if e.is_zero() {
            v.remove(j);
        }
    }
}

/// `h_ℓ` for `f` along the given conormal, in the jet space `jets`.
pub fn compute_h(f: &MultiPoly, conormal: &LegendrianCurve, l: u32, jets: &JetSpace) -> Result<HSeries> {
    HSolver::new(f, conormal, jets.degree_bound())?.solve(l)
}

/// Per-branch pairs `((k+1)p^k, k·p^{k+1})` for `k = 1..=k_max`.
pub fn ihat_generators(conormal: &LegendrianCurve, k_max: u32) -> Vec<Vec<(TruncSeries, TruncSeries)>> {
    (1..=k_max)
        .map(|k| {
            let kq = Rational::from_integer(k.into());
            conormal
                .branches()
                .iter()
                .map(|b| {
                    let pk = b.p.pow(k);
                    let pk1 = &pk * &b.p;
                    (pk.scale(&(&kq + Rational::one())), pk1.scale(&kq))
                })
                .collect()
        })
        .collect()
}
