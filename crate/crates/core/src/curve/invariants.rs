use num_integer::Integer;
use num_traits::{One, Zero};

use super::branch::{Branch, DEFAULT_TRUNCATION};
use crate::error::{Error, Result};
use crate::exactalg::poly::MultiPoly;
use crate::exactalg::rational::Rational;
use crate::series::{semigroup_of_subring, substitute, SemigroupData, TruncSeries};

/// Value semigroup and characteristic exponents `(β₀; β₁, …)` of a branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchInvariants {
    pub semigroup: SemigroupData,
    pub char_exponents: Vec<u64>,
}

pub fn branch_invariants(b: &Branch) -> Result<BranchInvariants> {
    let semigroup = semigroup_of_subring(&[b.x().clone(), b.y().clone()])?;
    let char_exponents = semigroup.characteristic_exponents()?;
    Ok(BranchInvariants { semigroup, char_exponents })
}

/// Determinant-free characteristic polynomial of multiplication by `y(t)` on
/// `ℚ[X][t]/(t^k − X/c)`: a polynomial `g(x, y)` vanishing on the branch
/// `(c·t^k, y(t))`, monic in `y` of degree `k`.
pub fn implicit_equation(b: &Branch) -> Result<MultiPoly> {
    if !b.x_is_monomial() {
        return Err(Error::pre("implicit_equation needs x = c·t^k"));
    }
    let k = b.ord_x().unwrap();
    let c = b.x().leading_coeff().unwrap();
    let vars = ["x", "y"];
    let xq = MultiPoly::var(&["x"], "x").scale(&c.recip());
    // matrix of multiplication by y on the basis 1, t, …, t^{k-1}
    let zero = MultiPoly::zero(&["x"]);
    let mut a = vec![vec![zero.clone(); k]; k];
    for (j, coef) in b.y().coeffs().iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        for col in 0..k {
            let m = col + j;
            let row = m % k;
            let term = xq.pow((m / k) as u32).scale(coef);
            a[row][col] = &a[row][col] + &term;
        }
    }
    let charpoly = faddeev_leverrier(&a);
    let mut g = MultiPoly::zero(&vars);
    for (i, ci) in charpoly.iter().enumerate() {
        let ci = ci.with_vars(&vars).unwrap();
        g = &g + &(&ci * &MultiPoly::var(&vars, "y").pow(i as u32));
    }
    Ok(g)
}

/// Coefficients `c_0..c_n` of `det(λI − A)` over ℚ[x].
fn faddeev_leverrier(a: &[Vec<MultiPoly>]) -> Vec<MultiPoly> {
    let n = a.len();
    let vars = a[0][0].vars().to_vec();
    let zero = MultiPoly::zero(&vars);
    let matmul = |p: &[Vec<MultiPoly>], q: &[Vec<MultiPoly>]| -> Vec<Vec<MultiPoly>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(zero.clone(), |acc, k| &acc + &(&p[i][k] * &q[k][j]))).collect())
            .collect()
    };
    let mut c = vec![zero.clone(); n + 1];
    c[n] = MultiPoly::one(&vars);
    let mut m = vec![vec![zero.clone(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = matmul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = &row[i] + &c[n - k + 1];
        }
        m = next;
        let am = matmul(a, &m);
        let tr = (0..n).fold(zero.clone(), |acc, i| &acc + &am[i][i]);
        c[n - k] = tr.scale(&-Rational::new(1.into(), (k as i64).into()));
    }
    c
}

fn lcm(a: usize, b: usize) -> usize {
    a / a.gcd(&b) * b
}

/// Intersection multiplicity through the implicit equation of `b2`
/// evaluated along `b1`. Returns `None` when the data is too short.
fn route_implicit(b1: &Branch, b2: &Branch, to: usize) -> Result<Option<usize>> {
    let b2n = b2.normalize(to)?;
    let g = implicit_equation(&b2n)?;
    let r = substitute(&g, &[("x", b1.x()), ("y", b1.y())])?;
    let k1 = b1.ord_x().unwrap_or(0);
    let k2 = b2n.ord_x().unwrap();
    // y2 known mod t^P2 perturbs g along b1 at order >= k1·P2/k2
    let limit_num = b2n.y().prec().map(|p2| k1 * p2);
    match r.ord() {
        Some(o) => {
            let ok = limit_num.is_none_or(|ln| o * k2 < ln);
            Ok(if ok { Some(o) } else { None })
        }
        None if r.is_exact() && b2n.y().is_exact() => Err(Error::pre("branches coincide")),
        None => Ok(None),
    }
}

/// Intersection multiplicity through the Puiseux series difference over
/// all K-th roots of unity, only for branches with `x = t^k` exactly.
fn route_series(b1: &Branch, b2: &Branch) -> Result<Option<usize>> {
    if !(b1.is_normalized() && b2.is_normalized()) {
        return Ok(None);
    }
    let k1 = b1.ord_x().unwrap();
    let k2 = b2.ord_x().unwrap();
    let kk = lcm(k1, k2);
    let (s1, s2) = (kk / k1, kk / k2);
    let p1 = b1.y().prec().map(|p| p * s1).unwrap_or(usize::MAX);
    let p2 = b2.y().prec().map(|p| p * s2).unwrap_or(usize::MAX);
    let limit = p1.min(p2);
    let a = |j: usize| if j % s1 == 0 { b1.y().coeff(j / s1) } else { Rational::zero() };
    let b = |j: usize| if j % s2 == 0 { b2.y().coeff(j / s2) } else { Rational::zero() };
    let top = if limit == usize::MAX { (b1.y().coeffs().len() * s1).max(b2.y().coeffs().len() * s2) } else { limit };
    let mut total = 0usize;
    for m in 0..kk {
        let mut found = None;
        for j in 0..top {
            let (aj, bj) = (a(j), b(j));
            if aj == bj && aj.is_zero() {
                continue;
            }
            // a_j ζ^j = b_j with ζ = exp(2πi m/K) needs ζ^j = b_j/a_j ∈ {±1}
            let mj = (m * j) % kk;
            let equal = if aj.is_zero() || bj.is_zero() {
                false
            } else if mj == 0 {
                aj == bj
            } else if 2 * mj == kk {
                aj == -bj
            } else {
                false
            };
            if !equal {
                found = Some(j);
                break;
            }
        }
        match found {
            Some(j) => total += j,
            None if limit == usize::MAX => return Err(Error::pre("branches coincide")),
            None => return Ok(None),
        }
    }
    let num = k1 * k2 * total;
    if num % (kk * kk) != 0 {
        return Err(Error::Inconsistent(format!("non-integral intersection number {num}/{}", kk * kk)));
    }
    Ok(Some(num / (kk * kk)))
}

/// Intersection multiplicity `(b1 · b2)_0` of two distinct branches.
pub fn intersection_multiplicity(b1: &Branch, b2: &Branch) -> Result<usize> {
    intersection_multiplicity_to(b1, b2, DEFAULT_TRUNCATION)
}

pub fn intersection_multiplicity_to(b1: &Branch, b2: &Branch, to: usize) -> Result<usize> {
    // A branch on the line x = 0 has implicit equation x.
    if b2.x().is_zero_known() && b2.x().is_exact() {
        if b1.x().is_zero_known() && b1.x().is_exact() {
            return Err(Error::pre("branches coincide"));
        }
        return b1.x().ord().ok_or_else(|| Error::Precision("x(t) of the first branch is zero to known order".into()));
    }
    if b1.x().is_zero_known() && b1.x().is_exact() {
        return intersection_multiplicity_to(b2, b1, to);
    }
    // x ↦ x/c keeps intersection numbers and lets x = c·t^k normalize to t^k
    // without a k-th root of c
    let (b1, b2) = match b1.x().leading_coeff() {
        Some(c) if !c.is_one() => {
            let s = c.recip();
            (Branch::new(b1.x().scale(&s), b1.y().clone())?, Branch::new(b2.x().scale(&s), b2.y().clone())?)
        }
        _ => (b1.clone(), b2.clone()),
    };
    // start short and double: long normalized series carry large coefficients
    let mut n = to.min(16);
    loop {
        match intersection_at(&cut(&b1, n)?, &cut(&b2, n)?, n) {
            Err(Error::Precision(_)) if n < to => n = (2 * n).min(to),
            r => return r,
        }
    }
}

fn cut(b: &Branch, n: usize) -> Result<Branch> {
    let c = |s: &TruncSeries| if s.is_exact() && s.coeffs().len() <= n { s.clone() } else { s.truncate(n) };
    Branch::new(c(b.x()), c(b.y()))
}

fn intersection_at(b1: &Branch, b2: &Branch, to: usize) -> Result<usize> {
    let implicit = route_implicit(b1, b2, to)?;
    let n1 = b1.normalize(to).ok();
    let n2 = b2.normalize(to).ok();
    let series = match (n1, n2) {
        (Some(a), Some(b)) => route_series(&a, &b)?,
        _ => None,
    };
    match (implicit, series) {
        (Some(a), Some(b)) if a != b => {
            Err(Error::Inconsistent(format!("intersection multiplicity routes disagree: implicit {a}, series {b}")))
        }
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Err(Error::Precision("branches agree to the known order; raise the truncation".into())),
    }
}

/// Per-branch characteristic data plus the symmetric matrix of pairwise
/// intersection multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquisingClass {
    pub branches: Vec<BranchInvariants>,
    pub intersections: Vec<Vec<usize>>,
}

impl EquisingClass {
    pub fn of_branches(bs: &[Branch]) -> Result<Self> {
        let branches = bs.iter().map(branch_invariants).collect::<Result<Vec<_>>>()?;
        let n = bs.len();
        let mut intersections = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let m = intersection_multiplicity(&bs[i], &bs[j])?;
                intersections[i][j] = m;
                intersections[j][i] = m;
            }
        }
        Ok(EquisingClass { branches, intersections })
    }

    pub fn char_exponents(&self) -> Vec<Vec<u64>> {
        self.branches.iter().map(|b| b.char_exponents.clone()).collect()
    }
}

/// True iff a bijection of branches matches characteristic exponents and
/// all pairwise intersection multiplicities.
pub fn equisingular_equal(a: &EquisingClass, b: &EquisingClass) -> bool {
    let n = a.branches.len();
    if n != b.branches.len() {
        return false;
    }
    fn extend(a: &EquisingClass, b: &EquisingClass, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = perm.len();
        if i == used.len() {
            return true;
        }
        for j in 0..used.len() {
            if used[j] || a.branches[i].char_exponents != b.branches[j].char_exponents {
                continue;
            }
            if perm.iter().enumerate().any(|(ii, &jj)| a.intersections[i][ii] != b.intersections[j][jj]) {
                continue;
            }
            used[j] = true;
            perm.push(j);
            if extend(a, b, perm, used) {
                return true;
            }
            perm.pop();
            used[j] = false;
        }
        false
    }
    extend(a, b, &mut Vec::new(), &mut vec![false; n])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn br(x: &str, y: &str) -> Branch {
        Branch::parse(x, y, None).unwrap()
    }

    #[test]
    fn invariants() {
        let i = branch_invariants(&br("t^2", "t^5")).unwrap();
        assert_eq!(i.semigroup.generators, vec![2, 5]);
        assert_eq!(i.char_exponents, vec![2, 5]);
        let i = branch_invariants(&br("t^3", "t^10")).unwrap();
        assert_eq!(i.semigroup.generators, vec![3, 10]);
        let i = branch_invariants(&br("t^4", "t^6 + t^7")).unwrap();
        assert_eq!(i.semigroup.generators, vec![4, 6, 13]);
        assert_eq!(i.char_exponents, vec![4, 6, 7]);
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(intersection_multiplicity(&br("t", "t^2"), &br("t", "t^3")).unwrap(), 2);
        assert_eq!(intersection_multiplicity(&br("t^2", "t^3"), &br("t", "0")).unwrap(), 3);
        assert_eq!(intersection_multiplicity(&br("t^3", "t^7"), &br("t^3", "t^10")).unwrap(), 21);
        assert_eq!(intersection_multiplicity(&br("t^3", "-t^7"), &br("t^3", "-t^10")).unwrap(), 21);
        assert!(intersection_multiplicity(&br("t^2", "t^3"), &br("t^2", "t^3")).is_err());
        // conjugate parametrization of the same branch
        assert!(intersection_multiplicity(&br("t^2", "t^3"), &br("t^2", "-t^3")).is_err());
    }

    #[test]
    fn implicit_equation_of_cusp() {
        let g = implicit_equation(&br("t^2", "t^3")).unwrap();
        assert_eq!(g, crate::exactalg::parse::parse_poly_in("y^2 - x^3", &["x", "y"]).unwrap());
    }

    #[test]
    fn symmetric_and_line_cases() {
        let a = br("t^2", "t^5");
        let b = br("t^3", "t^4");
        assert_eq!(intersection_multiplicity(&a, &b).unwrap(), intersection_multiplicity(&b, &a).unwrap());
        let line_x0 = br("0", "t");
        assert_eq!(intersection_multiplicity(&a, &line_x0).unwrap(), 2);
        assert_eq!(intersection_multiplicity(&line_x0, &a).unwrap(), 2);
    }

    #[test]
    fn equality_of_classes() {
        let c1 = EquisingClass::of_branches(&[br("t^2", "t^5")]).unwrap();
        let c2 = EquisingClass::of_branches(&[br("t^2", "t^5 + t^6")]).unwrap();
        let c3 = EquisingClass::of_branches(&[br("t^2", "t^3")]).unwrap();
        assert!(equisingular_equal(&c1, &c2));
        assert!(!equisingular_equal(&c1, &c3));
        let p = EquisingClass::of_branches(&[br("t^3", "t^7"), br("t", "t^2")]).unwrap();
        let q = EquisingClass::of_branches(&[br("t", "t^2"), br("t^3", "t^7")]).unwrap();
        assert!(equisingular_equal(&p, &q));
    }
}
