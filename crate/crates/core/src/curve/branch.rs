use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::rational::{rational_root, Rational};
use crate::series::TruncSeries;

/// Working truncation used when an exact input has to be expanded into an
/// infinite series.
pub const DEFAULT_TRUNCATION: usize = 64;

/// A parametrized irreducible plane curve germ `t ↦ (x(t), y(t))`.
#[derive(Clone, PartialEq, Eq)]
pub struct Branch {
    x: TruncSeries,
    y: TruncSeries,
    normalized: bool,
}

impl Branch {
    pub fn new(x: TruncSeries, y: TruncSeries) -> Result<Self> {
        for (name, s) in [("x", &x), ("y", &y)] {
            if !s.coeff(0).is_zero() {
                return Err(Error::pre(format!("{name}(0) != 0: the branch does not pass through the origin")));
            }
        }
        if x.is_zero_known() && y.is_zero_known() {
            return Err(Error::pre("both components vanish to the known order"));
        }
        let normalized = x.is_exact()
            && x.ord().is_some()
            && x.coeffs().len() == x.ord().unwrap() + 1
            && x.leading_coeff().unwrap().is_one();
        Ok(Branch { x, y, normalized })
    }

    /// Parses polynomial strings in `t`; `prec = None` marks exact data.
    pub fn parse(x: &str, y: &str, prec: Option<usize>) -> Result<Self> {
        Branch::new(TruncSeries::parse(x, "t", prec)?, TruncSeries::parse(y, "t", prec)?)
    }

    pub fn x(&self) -> &TruncSeries {
        &self.x
    }

    pub fn y(&self) -> &TruncSeries {
        &self.y
    }

    /// `x(t) = t^k` exactly.
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Multiplicity of the germ, `min(ord x, ord y)`.
    pub fn multiplicity(&self) -> usize {
        match (self.x.ord(), self.y.ord()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!(),
        }
    }

    pub fn ord_x(&self) -> Option<usize> {
        self.x.ord()
    }

    pub fn ord_y(&self) -> Option<usize> {
        self.y.ord()
    }

    /// True when `x` is exactly a monomial `c·t^k`.
    pub fn x_is_monomial(&self) -> bool {
        self.x.is_exact() && self.x.ord().is_some_and(|k| self.x.coeffs().len() == k + 1)
    }

    pub fn is_exact(&self) -> bool {
        self.x.is_exact() && self.y.is_exact()
    }

    /// Smallest precision of the two components.
    pub fn prec(&self) -> Option<usize> {
        match (self.x.prec(), self.y.prec()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Reparametrizes so that `x = c·t^k` exactly, with `c = 1` whenever the
    /// leading coefficient of `x` has a rational `k`-th root. Series are
    /// expanded to at most `to` terms.
    pub fn normalize(&self, to: usize) -> Result<Branch> {
        if self.normalized {
            return Ok(self.clone());
        }
        let k = self.x.ord().ok_or_else(|| Error::pre("x vanishes identically; cannot normalize in x"))?;
        let c = self.x.leading_coeff().unwrap();
        let (x, y) = if self.x_is_monomial() {
            (self.x.clone(), self.y.clone())
        } else {
            // x = c t^k u(t), u(0) = 1; s = t·u^{1/k} gives x = c s^k
            let u = self.x.div(&TruncSeries::monomial(c.clone(), k), to)?;
            let v = u.kth_root_unit(k as u32, to)?;
            let s = &TruncSeries::t() * &v;
            let h = s.invert_reparam(to)?;
            let y = self.y.compose(&h)?;
            (TruncSeries::monomial(c.clone(), k), y)
        };
        match rational_root(&c, k as u32) {
            Some(r) => {
                // t ↦ t/r turns c·t^k into t^k
                let rinv = r.recip();
                let mut pow = Rational::one();
                let mut coeffs = Vec::with_capacity(y.coeffs().len());
                for a in y.coeffs() {
                    coeffs.push(a * &pow);
                    pow *= &rinv;
                }
                let y = TruncSeries::new(coeffs, y.prec());
                Branch::new(TruncSeries::monomial(Rational::one(), k), y)
            }
            None => Branch::new(x, y),
        }
    }

    /// Replaces `t` by `g(t)`, `ord g = 1`.
    pub fn reparametrize(&self, g: &TruncSeries) -> Result<Branch> {
        if g.ord() != Some(1) {
            return Err(Error::pre("reparametrization must have order 1"));
        }
        Branch::new(self.x.compose(g)?, self.y.compose(g)?)
    }

    /// Applies `(x, y) ↦ (y, x)`.
    pub fn swapped(&self) -> Branch {
        Branch::new(self.y.clone(), self.x.clone()).expect("swap keeps the branch valid")
    }
}

impl fmt::Debug for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Branch(x = {}, y = {})", self.x, self.y)
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}
