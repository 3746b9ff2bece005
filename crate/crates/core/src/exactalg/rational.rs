//! Helpers around [`BigRational`], the coefficient field of every computation.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand constructor used all over the tests.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `a`, `-a` or `a/b`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| Error::Parse(format!("invalid rational `{s}`")))?;
    let den: BigInt = den.parse().map_err(|_| Error::Parse(format!("invalid rational `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `a` for integers, `a/b` otherwise.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn exact_integer_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        if k % 2 == 0 {
            return None;
        }
        return exact_integer_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Rational `k`-th root, preferring the positive one for even `k`.
pub fn rational_root(q: &Rational, k: u32) -> Option<Rational> {
    assert!(k >= 1);
    if k == 1 {
        return Some(q.clone());
    }
    let n = exact_integer_root(q.numer(), k)?;
    let d = exact_integer_root(q.denom(), k)?;
    Some(Rational::new(n, d))
}

/// `q^e` for a possibly negative integer exponent.
pub fn rational_powi(q: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(q.clone(), e as usize)
    } else {
        num_traits::pow(q.recip(), (-e) as usize)
    }
}

pub fn is_unit_sign(q: &Rational) -> bool {
    q.abs().is_one()
}
