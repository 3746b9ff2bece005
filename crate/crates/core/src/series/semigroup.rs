use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;

use super::trunc::TruncSeries;
use crate::error::{Error, Result};
use crate::exactalg::rational::Rational;

/// A numerical semigroup given by its minimal generators, conductor and gaps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupData {
    pub generators: Vec<u64>,
    pub conductor: u64,
    pub gaps: Vec<u64>,
}

impl SemigroupData {
    /// Builds the data from the semigroup's elements below some bound `b`,
    /// given that every integer in `[conductor, b)` is present.
    fn from_membership(member: &[bool], conductor: u64) -> Self {
        let gaps: Vec<u64> = (0..conductor).filter(|&n| !member[n as usize]).collect();
        let m = (1..member.len()).find(|&n| member[n]).unwrap_or(1) as u64;
        let contains = |n: u64| n >= conductor || member[n as usize];
        let mut generators = Vec::new();
        for n in 1..=conductor + m {
            if !contains(n) {
                continue;
            }
            let decomposable = (1..n).any(|a| contains(a) && contains(n - a));
            if !decomposable {
                generators.push(n);
            }
        }
        SemigroupData { generators, conductor, gaps }
    }

    /// The numerical semigroup generated by `gens` (gcd must be 1).
    pub fn from_generators(gens: &[u64]) -> Result<Self> {
        let g = gens.iter().fold(0u64, |a, &b| a.gcd(&b));
        if g != 1 {
            return Err(Error::pre(format!("generators {gens:?} have gcd {g} != 1")));
        }
        let m = *gens.iter().filter(|&&x| x > 0).min().unwrap();
        // Frobenius number is below (max gen)^2.
        let bound = gens.iter().max().unwrap().pow(2) as usize + 2 * m as usize + 2;
        let mut member = vec![false; bound];
        member[0] = true;
        for n in 1..bound {
            member[n] = gens.iter().any(|&a| a > 0 && a as usize <= n && member[n - a as usize]);
        }
        let conductor = conductor_of(&member, m as usize).expect("bound covers the conductor");
        Ok(SemigroupData::from_membership(&member, conductor as u64))
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.conductor || self.gaps.binary_search(&n).is_err()
    }

    pub fn multiplicity(&self) -> u64 {
        self.generators.first().copied().unwrap_or(1)
    }

    /// Elements `< n`.
    pub fn elements_below(&self, n: u64) -> Vec<u64> {
        (0..n).filter(|&k| self.contains(k)).collect()
    }

    /// `g` is a gap iff `conductor - 1 - g` is not.
    pub fn is_symmetric(&self) -> bool {
        if self.conductor == 0 {
            return true;
        }
        (0..self.conductor).all(|g| self.contains(g) != self.contains(self.conductor - 1 - g))
    }

    /// Characteristic exponents (β₀; β₁, …, β_g) of a plane branch with this
    /// semigroup. Fails unless the minimal generators form a plane-branch
    /// sequence.
    pub fn characteristic_exponents(&self) -> Result<Vec<u64>> {
        let b = &self.generators;
        if b.len() == 1 {
            return Ok(vec![1]);
        }
        let mut e = vec![b[0]];
        for i in 1..b.len() {
            e.push(e[i - 1].gcd(&b[i]));
        }
        if *e.last().unwrap() != 1 || e.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::pre(format!("semigroup {b:?} is not the semigroup of a plane branch")));
        }
        let mut beta = vec![b[0], b[1]];
        for i in 1..b.len() - 1 {
            let n_i = e[i - 1] / e[i];
            if n_i * b[i] >= b[i + 1] + beta[i] {
                return Err(Error::pre(format!("semigroup {b:?} is not the semigroup of a plane branch")));
            }
            beta.push(b[i + 1] + beta[i] - n_i * b[i]);
        }
        Ok(beta)
    }
}

fn conductor_of(member: &[bool], m: usize) -> Option<usize> {
    let b = member.len();
    let mut c = b;
    while c > 0 && member[c - 1] {
        c -= 1;
    }
    if b - c >= m {
        Some(c)
    } else {
        None
    }
}

/// All exponent vectors `e` with `Σ e_i·w_i < bound`.
fn weighted_monomials(w: &[usize], bound: usize) -> Vec<Vec<u32>> {
    fn rec(w: &[usize], bound: usize, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if acc.len() == w.len() {
            out.push(acc.clone());
            return;
        }
        let wi = w[acc.len()];
        let used: usize = acc.iter().zip(w).map(|(e, w)| *e as usize * w).sum();
        let mut e = 0;
        while used + e * wi < bound {
            acc.push(e as u32);
            rec(w, bound, acc, out);
            acc.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    rec(w, bound, &mut Vec::new(), &mut out);
    out
}

/// Orders below `bound` of elements of ℚ[gens] ⊂ ℚ[[t]], exactly, provided
/// every generator is known modulo `t^bound`.
fn orders_below(gens: &[TruncSeries], bound: usize) -> Vec<bool> {
    let w: Vec<usize> = gens.iter().map(|g| g.ord().unwrap()).collect();
    let mut pivots: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
    let mut powers: Vec<Vec<TruncSeries>> = gens.iter().map(|g| vec![TruncSeries::one(), g.truncate(bound)]).collect();
    for e in weighted_monomials(&w, bound) {
        let mut prod = TruncSeries::one();
        for (i, &k) in e.iter().enumerate() {
            while powers[i].len() <= k as usize {
                let next = (powers[i].last().unwrap() * &gens[i]).truncate(bound);
                powers[i].push(next);
            }
            prod = (&prod * &powers[i][k as usize]).truncate(bound);
        }
        let mut v: Vec<Rational> = (0..bound).map(|n| prod.coeff(n)).collect();
        for n in 0..bound {
            if v[n].is_zero() {
                continue;
            }
            match pivots.get(&n) {
                Some(row) => {
                    let c = v[n].clone();
                    for j in n..bound {
                        let d = &c * &row[j];
                        v[j] -= d;
                    }
                }
                None => {
                    let inv = v[n].recip();
                    for x in v.iter_mut() {
                        *x *= &inv;
                    }
                    pivots.insert(n, v);
                    break;
                }
            }
        }
    }
    let mut member = vec![false; bound];
    for n in pivots.keys() {
        member[*n] = true;
    }
    member
}

/// The value semigroup of the subring ℚ[gens] ⊂ ℚ[[t]].
///
/// The orders below a bound `P` are computed exactly by echelon reduction of
/// all generator products of weighted order `< P`. The answer is certified
/// once the orders contain a run `[c, P)` at least as long as the smallest
/// positive order. Exact inputs raise `P` as needed; truncated inputs fail
/// with a precision error when they are too short.
pub fn semigroup_of_subring(gens: &[TruncSeries]) -> Result<SemigroupData> {
    let gens: Vec<TruncSeries> =
        gens.iter().map(|g| g - &TruncSeries::constant(g.coeff(0))).filter(|g| !g.is_zero_known()).collect();
    if gens.is_empty() {
        return Err(Error::pre("no nonconstant generators"));
    }
    let g = gens.iter().fold(0usize, |a, s| a.gcd(&s.ord().unwrap()));
    let min_prec = gens.iter().filter_map(|s| s.prec()).min();
    let m = gens.iter().map(|s| s.ord().unwrap()).min().unwrap();
    if g != 1 {
        // Orders of products are multiples of g; the ring may still contain
        // other orders through cancellation, which the search below detects.
        if let Some(p) = min_prec {
            if p <= m {
                return Err(Error::Precision(format!("generators known only below t^{p}")));
            }
        }
    }
    let mut bound = 4 * m + 8;
    if let Some(p) = min_prec {
        bound = bound.min(p);
    }
    loop {
        let member = orders_below(&gens, bound);
        let m_eff = (1..bound).find(|&n| member[n]).unwrap_or(bound);
        if let Some(c) = conductor_of(&member, m_eff) {
            return Ok(SemigroupData::from_membership(&member, c as u64));
        }
        match min_prec {
            Some(p) if bound >= p => {
                return Err(Error::Precision(format!(
                    "semigroup not certified below t^{p}; raise the truncation of the inputs"
                )))
            }
            _ => {}
        }
        if bound > 4096 {
            return Err(Error::Precision("semigroup search exceeded t^4096".into()));
        }
        bound = match min_prec {
            Some(p) => (2 * bound).min(p),
            None => 2 * bound,
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(txt: &str) -> TruncSeries {
        TruncSeries::parse(txt, "t", None).unwrap()
    }

    #[test]
    fn conormal_of_y3_x10() {
        let sg = semigroup_of_subring(&[s("t^3"), s("t^10"), s("10/3*t^7")]).unwrap();
        // 10 = 3 + 7, so the minimal generators are 3 and 7
        assert_eq!(sg.generators, vec![3, 7]);
        assert!(sg.contains(10));
        assert_eq!(sg.gaps, vec![1, 2, 4, 5, 8, 11]);
        assert_eq!(sg.conductor, 12);
        assert_eq!(sg.elements_below(12), vec![0, 3, 6, 7, 9, 10]);
    }

    #[test]
    fn two_five() {
        let sg = semigroup_of_subring(&[s("t^2"), s("t^5")]).unwrap();
        assert_eq!(sg.generators, vec![2, 5]);
        assert_eq!(sg.conductor, 4);
        assert!(sg.is_symmetric());
    }

    #[test]
    fn deformed_conormal_contains_eleven() {
        let sg = semigroup_of_subring(&[s("t^3"), s("t^10 + t^11"), s("(10*t^7 + 11*t^8)/3")]).unwrap();
        assert!(sg.contains(11));
    }

    #[test]
    fn cancellation_is_detected() {
        // (t^4, t^6 + t^7): y^2 - x^3 = 2t^13 + t^14
        let sg = semigroup_of_subring(&[s("t^4"), s("t^6 + t^7")]).unwrap();
        assert_eq!(sg.generators, vec![4, 6, 13]);
        assert_eq!(sg.characteristic_exponents().unwrap(), vec![4, 6, 7]);
        assert!(sg.is_symmetric());
    }

    #[test]
    fn truncated_inputs_fail_when_short() {
        let x = TruncSeries::parse("t^3", "t", Some(8)).unwrap();
        let y = TruncSeries::parse("t^10", "t", Some(8)).unwrap();
        assert!(semigroup_of_subring(&[x, y]).is_err());
    }

    #[test]
    fn numerical_semigroups() {
        let sg = SemigroupData::from_generators(&[3, 10]).unwrap();
        assert_eq!(sg.conductor, 18);
        assert_eq!(sg.characteristic_exponents().unwrap(), vec![3, 10]);
        assert!(SemigroupData::from_generators(&[4, 6]).is_err());
        let sg = SemigroupData::from_generators(&[6, 4, 13]).unwrap();
        assert_eq!(sg.generators, vec![4, 6, 13]);
    }
}
