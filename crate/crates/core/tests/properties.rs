mod common;

use common::*;
use legdef::contact::{make_infinitesimal, pullback, verify_contact, ContactTransform, XYP};
use legdef::curve::{branch_invariants, classify, intersection_multiplicity, newton_diagram};
use legdef::deform::ideal_es_nnd_at;
use legdef::exactalg::{parse_poly_in, MultiPoly, Rational};
use legdef::series::TruncSeries;
use num_traits::Zero;
use proptest::prelude::*;

fn unit_series() -> impl Strategy<Value = TruncSeries> {
    (nonzero(), prop::collection::vec(rational(), 0..6)).prop_map(|(a, rest)| {
        let mut c = vec![Rational::zero(), a];
        c.extend(rest);
        TruncSeries::exact(c)
    })
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn composition_multiplies_cofactors(t1 in generator(), t2 in generator()) {
        let u1 = verify_contact(&t1).cofactor.unwrap();
        let u2 = verify_contact(&t2).cofactor.unwrap();
        let [a, b, c] = t1.components();
        let vals: Vec<(String, MultiPoly)> = vec![("x".into(), a), ("y".into(), b), ("p".into(), c)];
        let want = &u2.compose(&vals) * &u1;
        let got = verify_contact(&t1.clone().then(t2)).cofactor.unwrap();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn transform_json_round_trip(t in transform()) {
        let back = ContactTransform::from_json(&t.to_json()).unwrap();
        prop_assert_eq!(back.components(), t.components());
        let text = serde_json::to_string(&t.to_json()).unwrap();
        prop_assert_eq!(ContactTransform::parse(&text).unwrap(), back);
    }

    #[test]
    fn pullback_is_linear_in_the_form(t in transform()) {
        // dY - P dX has no dp part and its dx part is -p times its dy part
        let f = pullback(&t.components());
        prop_assert!(f.dp.is_zero());
        prop_assert_eq!(&f.dx + &(&MultiPoly::var(&XYP, "p") * &f.dy), MultiPoly::zero(&XYP));
    }

    #[test]
    fn infinitesimal_transforms_are_contact(
        a in poly(&["x", "y", "p"], 4, 3),
        b in poly(&["x", "y"], 3, 3),
    ) {
        let t = make_infinitesimal(&a, &b).unwrap();
        prop_assert!(t.verify_first_order());
        let parts = t.alpha_parts();
        let mut back = MultiPoly::zero(&XYP);
        for (k, ak) in parts.iter().enumerate() {
            back = &back + &(&ak.with_vars(&XYP).unwrap() * &MultiPoly::var(&XYP, "p").pow(k as u32));
        }
        prop_assert_eq!(back, t.alpha.clone());
    }

    #[test]
    fn reparametrization_inverse(g in unit_series()) {
        let to = 12;
        let h = g.invert_reparam(to).unwrap();
        let id = g.compose(&h).unwrap();
        prop_assert!(id.agrees_below(&TruncSeries::t(), to));
    }

    #[test]
    fn poly_text_round_trip(p in poly(&["x", "y", "p"], 5, 4)) {
        prop_assert_eq!(parse_poly_in(&p.to_text(), &XYP).unwrap(), p.clone());
        prop_assert_eq!(parse_poly_in(&p.to_singular(), &XYP).unwrap(), p);
    }

    #[test]
    fn branch_semigroups_are_symmetric((k, n) in exponents(false, 11), c in nonzero(), e in rational()) {
        let inv = branch_invariants(&branch(k, n, &c, &e)).unwrap();
        prop_assert!(inv.semigroup.is_symmetric());
        prop_assert_eq!(inv.char_exponents, vec![k as u64, n as u64]);
        prop_assert_eq!(inv.semigroup.conductor, ((k - 1) * (n - 1)) as u64);
    }

    #[test]
    fn intersection_of_parallel_branches((k, n) in exponents(false, 9), c in nonzero(), e in rational()) {
        let b1 = branch(k, n, &c, &e);
        let b2 = branch(k, n, &(&c * q(2, 1)), &e);
        let i12 = intersection_multiplicity(&b1, &b2).unwrap();
        prop_assert_eq!(i12, (k * n) as usize);
        prop_assert_eq!(intersection_multiplicity(&b2, &b1).unwrap(), i12);
    }

    #[test]
    fn newton_monomials_lie_above_faces((k, n) in exponents(false, 11), c in nonzero()) {
        let f = xy(&format!("y^{k} - {c}*x^{n}"));
        prop_assert!(classify(&f).unwrap().is_nnd());
        let nd = newton_diagram(&f).unwrap();
        prop_assert_eq!(nd.faces.len(), 1);
        let e = ideal_es_nnd_at(&f, k + n).unwrap();
        for (i, j) in e.monomials() {
            prop_assert!(k * i + n * j >= k * n);
        }
    }
}
