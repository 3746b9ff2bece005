#![allow(dead_code)]

use legdef::contact::{ContactTransform, XYP};
use legdef::curve::{Branch, PlaneCurve};
use legdef::exactalg::{parse_poly_in, MultiPoly, Rational};
use legdef::series::TruncSeries;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, FileFailurePersistence, RngSeed};

pub const SEED: u64 = 0x5eed_1e9d;

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: Some(Box::new(FileFailurePersistence::Off)),
        ..Config::default()
    }
}

pub fn xy(s: &str) -> MultiPoly {
    parse_poly_in(s, &["x", "y"]).unwrap()
}

pub fn xyp(s: &str) -> MultiPoly {
    parse_poly_in(s, &XYP).unwrap()
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

pub fn nonzero() -> impl Strategy<Value = Rational> {
    rational().prop_map(|r| if r.is_zero() { q(1, 1) } else { r })
}

/// `(a(p), ∫ p·a'(p) dp)` for a polynomial `a` without constant term, so that
/// `(x + a, y + b, p)` is contact with cofactor 1.
fn vertical_pair(coeffs: &[Rational]) -> (MultiPoly, MultiPoly) {
    let mut a = MultiPoly::zero(&XYP);
    let mut b = MultiPoly::zero(&XYP);
    for (i, c) in coeffs.iter().enumerate() {
        let k = i as u32 + 1;
        a.add_term(vec![0, 0, k], c.clone());
        b.add_term(vec![0, 0, k + 1], c * q(k as i64, k as i64 + 1));
    }
    (a, b)
}

fn vertical(coeffs: Vec<Rational>) -> ContactTransform {
    let (a, b) = vertical_pair(&coeffs);
    ContactTransform::vertical(&a, &b, &MultiPoly::zero(&XYP)).unwrap()
}

/// One generator of every kind, fixing the origin.
pub fn generator() -> impl Strategy<Value = ContactTransform> {
    prop_oneof![
        (nonzero(), nonzero()).prop_map(|(l, m)| ContactTransform::scaling(l, m).unwrap()),
        (nonzero(), rational(), rational()).prop_map(|(a, b, c)| {
            let d = (Rational::from_integer(1.into()) + &b * &c) / &a;
            ContactTransform::paraboloidal(a, b, c, d).unwrap()
        }),
        rational().prop_map(ContactTransform::rho),
        Just(ContactTransform::legendre()),
        prop::collection::vec(rational(), 1..3).prop_map(vertical),
    ]
}

pub fn transform() -> impl Strategy<Value = ContactTransform> {
    prop::collection::vec(generator(), 1..4)
        .prop_map(|ts| ts.into_iter().fold(ContactTransform::identity(), ContactTransform::then))
}

/// Transforms that keep a generic curve in generic position.
pub fn generic_preserving() -> impl Strategy<Value = ContactTransform> {
    let g = prop_oneof![
        (nonzero(), nonzero()).prop_map(|(l, m)| ContactTransform::scaling(l, m).unwrap()),
        rational().prop_map(ContactTransform::rho),
        prop::collection::vec(rational(), 1..3).prop_map(vertical),
    ];
    prop::collection::vec(g, 1..4)
        .prop_map(|ts| ts.into_iter().fold(ContactTransform::identity(), ContactTransform::then))
}

/// `(k, n)` coprime with `2 ≤ k < n ≤ max`.
pub fn exponents(min_ratio2: bool, max: u32) -> impl Strategy<Value = (u32, u32)> {
    (2u32..=4, 3u32..=max).prop_filter_map("coprime exponents", move |(k, n)| {
        let ok = n > k && num_integer::gcd(k, n) == 1 && (!min_ratio2 || n >= 2 * k);
        ok.then_some((k, n))
    })
}

/// `x = t^k, y = c·t^n + e·t^{n+1}`.
pub fn branch(k: u32, n: u32, c: &Rational, e: &Rational) -> Branch {
    let mut y = vec![Rational::zero(); n as usize + 2];
    y[n as usize] = c.clone();
    y[n as usize + 1] = e.clone();
    Branch::new(TruncSeries::monomial(q(1, 1), k as usize), TruncSeries::exact(y)).unwrap()
}

/// One or two branches of type `(k; n)`, all distinct.
pub fn curve(generic: bool) -> impl Strategy<Value = PlaneCurve> {
    (exponents(generic, 9), nonzero(), rational(), prop::bool::ANY).prop_map(|((k, n), c, e, two)| {
        let mut bs = vec![branch(k, n, &c, &e)];
        if two {
            bs.push(branch(k, n, &(&c * q(2, 1)), &e));
        }
        PlaneCurve::from_branches(bs).unwrap()
    })
}

/// A polynomial in `vars` with `terms` random terms of degree `1..=deg`.
pub fn poly(vars: &'static [&'static str], terms: usize, deg: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=deg, vars.len()), nonzero()), 1..=terms).prop_map(move |ts| {
        let mut p = MultiPoly::zero(vars);
        for (mut e, c) in ts {
            let mut excess = e.iter().sum::<u32>().saturating_sub(deg);
            for v in e.iter_mut() {
                let cut = excess.min(*v);
                *v -= cut;
                excess -= cut;
            }
            if e.iter().all(|&v| v == 0) {
                e[0] = 1;
            }
            p.add_term(e, c);
        }
        p
    })
}
