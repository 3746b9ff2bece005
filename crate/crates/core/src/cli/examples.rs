use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conormal::{conormal_of, relative_conormal_ideal};
use crate::contact::{equisingularity_preservation_test, plane_action, ContactTransform, XYP};
use crate::curve::{is_generic, Branch, PlaneCurve};
use crate::deform::{ideal_es_nnd, xy_monomial, DeformationModel};
use crate::error::Result;
use crate::exactalg::parse::parse_poly_in;
use crate::exactalg::rational::{int, Rational};
use crate::series::{semigroup_of_subring, TruncSeries};

/// One golden check with a stable id.
pub struct GoldenItem {
    pub id: &'static str,
    pub description: &'static str,
    run: fn(u64) -> Result<(bool, String)>,
}

impl GoldenItem {
    /// Runs the check; errors count as failures.
    pub fn run(&self, seed: u64) -> (bool, String) {
        match (self.run)(seed) {
            Ok(r) => r,
            Err(e) => (false, e.to_string()),
        }
    }
}

fn xy(s: &str) -> Result<crate::exactalg::poly::MultiPoly> {
    parse_poly_in(s, &["x", "y"])
}

fn final_model() -> Result<DeformationModel> {
    DeformationModel::new(&xy("(y^3+x^7)*(y^3+x^10)")?)
}

fn mu_quotient(_: u64) -> Result<(bool, String)> {
    let m = final_model()?;
    let q = m.quotient_basis()?;
    let expected = vec![xy_monomial(3, 5), xy_monomial(5, 4), xy_monomial(14, 1)];
    let basis_ok = m.is_mu_quotient_basis(&expected)?;
    Ok((q.base_dim == 3 && basis_ok, format!("dimension {}, G = {}", q.base_dim, q.display())))
}

fn es_arrow(_: u64) -> Result<(bool, String)> {
    let m = final_model()?;
    let got = m.es_arrow_basis()?.representatives;
    let mut expected = vec![(3, 5), (5, 4), (11, 2), (12, 2), (14, 1), (15, 1), (16, 1)]
        .into_iter()
        .map(|(i, j)| xy_monomial(i, j))
        .collect::<Vec<_>>();
    let mut sorted = got.clone();
    sorted.sort_by_key(|p| p.to_text());
    expected.sort_by_key(|p| p.to_text());
    let text: Vec<String> = got.iter().map(|p| p.to_text()).collect();
    Ok((sorted == expected, format!("dimension {}: {}", got.len(), text.join(", "))))
}

fn newton_conditions(_: u64) -> Result<(bool, String)> {
    let e = ideal_es_nnd(&xy("(y^3+x^7)*(y^3+x^10)")?)?;
    let c = e.conditions();
    Ok((c == ["3*i + 7*j >= 42", "3*i + 10*j >= 51"], c.join(", ")))
}

fn conormal_semigroup(_: u64) -> Result<(bool, String)> {
    let l = conormal_of(&PlaneCurve::from_equation(xy("y^3 - x^10")?)?)?;
    let b = &l.branches()[0];
    let s = semigroup_of_subring(&[b.x.clone(), b.y.clone(), b.p.clone()])?;
    let below: Vec<u64> = s.elements_below(12);
    let ok = s.conductor == 12 && below == [0, 3, 6, 7, 9, 10];
    Ok((ok, format!("elements below 12: {below:?}, conductor {}", s.conductor)))
}

fn deformed_semigroup(_: u64) -> Result<(bool, String)> {
    let b = Branch::parse("t^3", "t^10 + t^11", None)?;
    let l = conormal_of(&PlaneCurve::from_branches(vec![b])?)?;
    let lb = &l.branches()[0];
    let s = semigroup_of_subring(&[lb.x.clone(), lb.y.clone(), lb.p.clone()])?;
    Ok((s.contains(11), format!("generators {:?}, conductor {}", s.generators, s.conductor)))
}

fn vertical_transform() -> Result<ContactTransform> {
    ContactTransform::vertical(&parse_poly_in("p", &XYP)?, &parse_poly_in("p^2/2", &XYP)?, &parse_poly_in("0", &XYP)?)
}

fn vertical_action(_: u64) -> Result<(bool, String)> {
    let img = plane_action(&vertical_transform()?, &PlaneCurve::from_equation(xy("y^3 - x^7")?)?)?;
    let b = &img.branches().unwrap()[0];
    let ok = b.x() == &TruncSeries::parse("t^3 + 7/3*t^4", "t", None)?
        && b.y() == &TruncSeries::parse("t^7 + 49/18*t^8", "t", None)?;
    Ok((ok, format!("x = {}, y = {}", b.x(), b.y())))
}

fn vertical_equisingular(_: u64) -> Result<(bool, String)> {
    let r = equisingularity_preservation_test(&vertical_transform()?, &PlaneCurve::from_equation(xy("y^3 - x^7")?)?)?;
    let before = r.before.as_ref().map(|c| c.char_exponents());
    let after = r.after.as_ref().map(|c| c.char_exponents());
    let ok = r.preserved == Some(true) && before == Some(vec![vec![3, 7]]) && after == before;
    Ok((ok, format!("before {before:?}, after {after:?}")))
}

fn relative_conormal(seed: u64) -> Result<(bool, String)> {
    let vars = ["x", "y", "z"];
    let f = parse_poly_in("z^2+y^3+s*x^4", &["x", "y", "z", "s"])?;
    let k = relative_conormal_ideal(&f, &vars, &["s"], None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = || {
        let n: i64 = rng.gen_range(-9..=9);
        let d: i64 = rng.gen_range(1..=5);
        let r = Rational::new(n.into(), d.into());
        if r.is_zero() {
            int(1)
        } else {
            r
        }
    };
    let mut ok = k.is_xi_homogeneous();
    for _ in 0..5 {
        let (m, c, s) = (q(), q(), q());
        let m2 = &m * &m;
        let m3 = &m2 * &m;
        let pt: Vec<(String, Rational)> = vec![
            ("u".into(), int(0)),
            ("v".into(), int(3) * &c * &m2 * &m2),
            ("w".into(), int(2) * &c * &m3),
            ("x".into(), int(0)),
            ("y".into(), -m2.clone()),
            ("z".into(), m3.clone()),
            ("s".into(), s),
        ];
        for g in k.generators() {
            ok &= g.eval(&pt)?.is_zero();
        }
    }
    Ok((ok, format!("{} generators, seed {seed}", k.generators().len())))
}

fn genericity_table(_: u64) -> Result<(bool, String)> {
    let mut checked = 0;
    for k in 2..12i64 {
        for n in k + 1..=12 {
            if num_integer::gcd(k, n) != 1 {
                continue;
            }
            let c = PlaneCurve::from_equation(xy(&format!("y^{k} - x^{n}"))?)?.with_computed_branches(64)?;
            let r = is_generic(&c)?;
            if r.generic != (n >= 2 * k) || r.criterion_c != r.criterion_d || r.criterion_c.is_none() {
                return Ok((false, format!("y^{k} - x^{n}: {r:?}")));
            }
            checked += 1;
        }
    }
    Ok((true, format!("{checked} curves, criteria agree")))
}

/// The golden suite, in run order.
pub fn items() -> Vec<GoldenItem> {
    vec![
        GoldenItem { id: "mu-quotient", description: "dim I_f/I_f^mu = 3 for (y^3+x^7)(y^3+x^10)", run: mu_quotient },
        GoldenItem { id: "es-arrow-basis", description: "seven-monomial es-arrow basis", run: es_arrow },
        GoldenItem {
            id: "newton-conditions",
            description: "Newton conditions 3i+7j>=42, 3i+10j>=51",
            run: newton_conditions,
        },
        GoldenItem {
            id: "conormal-semigroup",
            description: "semigroup of the conormal of y^3=x^10",
            run: conormal_semigroup,
        },
        GoldenItem {
            id: "deformed-semigroup",
            description: "order 11 appears for y = t^10 + t^11",
            run: deformed_semigroup,
        },
        GoldenItem { id: "vertical-action", description: "(x+p, y+p^2/2, p) on y^3 = x^7", run: vertical_action },
        GoldenItem {
            id: "vertical-equisingular",
            description: "the image of y^3 = x^7 keeps exponents (3; 7)",
            run: vertical_equisingular,
        },
        GoldenItem {
            id: "relative-conormal",
            description: "relative conormal of z^2+y^3+s*x^4 at the witness family",
            run: relative_conormal,
        },
        GoldenItem { id: "genericity-table", description: "y^k - x^n generic iff n >= 2k", run: genericity_table },
    ]
}
