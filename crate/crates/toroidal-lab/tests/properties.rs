use num::traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toroidal_lab::algebra::{bracket, normal_form, pair_table, AlgebraElement, AlgebraSpec, Bracketer, Family};
use toroidal_lab::automorphism::random_unimodular;
use toroidal_lab::lambda::{lambda_residual, LambdaSystem};
use toroidal_lab::roots::{reflect, weight_pairing, RealRoot, Weight};
use toroidal_lab::simple_lie::build_sl;
use toroidal_lab::{bar, underline, DegreeVector, Scalar, Window};

fn degree(n: usize, r: i64) -> impl Strategy<Value = DegreeVector> {
    proptest::collection::vec(-r..=r, n).prop_map(|c| DegreeVector::new(&c))
}

fn unit(len: usize, i: usize) -> Vec<Scalar> {
    let mut c = vec![Scalar::zero(); len];
    c[i] = Scalar::one();
    c
}

fn spec(family: Family, n: usize) -> AlgebraSpec {
    let g = family.has_g().then(|| build_sl(2).unwrap());
    AlgebraSpec::new(family, n, g).unwrap()
}

fn element(spec: &AlgebraSpec, r: &DegreeVector, coeffs: &[i64]) -> AlgebraElement {
    let len = spec.local_basis(r).unwrap().len();
    let c: Vec<Scalar> = (0..len).map(|i| Scalar::from_int(coeffs[i % coeffs.len()])).collect();
    AlgebraElement::from_coords(r, &c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pair_table_matches_element_bracket(r in degree(2, 2), s in degree(2, 2), fam in 0usize..4) {
        let family = [Family::TauH, Family::FullToroidal, Family::MinimalEALA, Family::Toroidal][fam];
        let spec = spec(family, 2);
        let (br, bs) = (spec.local_basis(&r).unwrap(), spec.local_basis(&s).unwrap());
        let q = r.add(&s);
        let nq = spec.local_basis(&q).unwrap().len();
        let table = pair_table(&spec, &r, &s).unwrap();
        for i in 0..br.len() {
            for j in 0..bs.len() {
                let x = AlgebraElement::from_coords(&r, &unit(br.len(), i));
                let y = AlgebraElement::from_coords(&s, &unit(bs.len(), j));
                let mut expected = vec![Scalar::zero(); nq];
                for (l, c) in table.get(i, j).iter() {
                    expected[*l as usize] += c.clone();
                }
                let got = bracket(&spec, &x, &y).unwrap();
                prop_assert_eq!(got, AlgebraElement::from_coords(&q, &expected));
            }
        }
    }

    #[test]
    fn cached_bracket_expands_bilinearly(
        r in degree(2, 2),
        s in degree(2, 2),
        a in proptest::collection::vec(-3i64..4, 1..6),
        b in proptest::collection::vec(-3i64..4, 1..6),
        k in -3i64..4,
    ) {
        let spec = spec(Family::TauH, 2);
        let bracketer = Bracketer::new(&spec);
        let (x, y) = (element(&spec, &r, &a), element(&spec, &s, &b));
        let (cx, cy) = (x.component(&r).cloned().unwrap_or_default(), y.component(&s).cloned().unwrap_or_default());
        let table = pair_table(&spec, &r, &s).unwrap();
        let q = r.add(&s);
        let mut expected = vec![Scalar::zero(); table.nq];
        for (i, xi) in cx.iter().enumerate() {
            for (j, yj) in cy.iter().enumerate() {
                for (l, c) in table.get(i, j).iter() {
                    expected[*l as usize] += &(xi * yj) * c;
                }
            }
        }
        let expected = AlgebraElement::from_coords(&q, &expected);
        let got = bracketer.bracket(&x, &y).unwrap();
        prop_assert_eq!(&got, &expected);
        prop_assert_eq!(bracketer.bracket(&x, &y).unwrap(), bracket(&spec, &x, &y).unwrap());
        let k = Scalar::from_int(k);
        prop_assert_eq!(got.scale(&k).eq_scaled(&expected, &k), true);
        prop_assert_eq!(expected.eq_scaled(&got, &k), got.scale(&k) == expected);
    }

    #[test]
    fn bracket_is_antisymmetric(r in degree(2, 2), s in degree(2, 2), a in proptest::collection::vec(-3i64..4, 1..6), b in proptest::collection::vec(-3i64..4, 1..6)) {
        let spec = spec(Family::TauH, 2);
        let (x, y) = (element(&spec, &r, &a), element(&spec, &s, &b));
        prop_assert_eq!(bracket(&spec, &x, &y).unwrap(), bracket(&spec, &y, &x).unwrap().neg());
    }

    #[test]
    fn normal_form_is_idempotent(r in degree(4, 1), a in proptest::collection::vec(-3i64..4, 1..8)) {
        let spec = spec(Family::TauH, 4);
        let x = element(&spec, &r, &a);
        let once = normal_form(&spec, &x.symbols(&spec)).unwrap();
        let twice = normal_form(&spec, &once).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(AlgebraElement::from_symbols(&spec, &once).unwrap(), x);
    }

    #[test]
    fn bar_is_an_antisymplectic_involution(r in degree(4, 5), s in degree(4, 5)) {
        let br = bar(&r).unwrap();
        prop_assert_eq!(bar(&br).unwrap(), r.neg());
        prop_assert_eq!(br.dot(&s), -bar(&s).unwrap().dot(&r));
        prop_assert_eq!(br.dot(&r), 0);
        prop_assert_eq!(br.dot(&bar(&s).unwrap()), r.dot(&s));
    }

    #[test]
    fn underline_is_linear(r in degree(3, 4), s in degree(3, 4)) {
        prop_assert_eq!(underline(&r.add(&s)).unwrap(), underline(&r).unwrap().add(&underline(&s).unwrap()));
        prop_assert!(bar(&r).is_err());
    }

    #[test]
    fn constant_family_solves_the_equation(l in degree(2, 1), r in degree(2, 1), s in degree(2, 1), lam in 1i64..5, mu in 1i64..5, c in 1i64..5) {
        prop_assume!(!l.is_zero() && !r.is_zero() && !s.is_zero());
        let sys = LambdaSystem::family(&Scalar::from_int(lam), &Scalar::from_int(mu), &Scalar::from_int(c), &Window::new(2, 2));
        prop_assert!(lambda_residual(&sys, &l, &r, &s).unwrap().is_zero());
    }

    #[test]
    fn reflection_is_an_isometric_involution(a in -3i64..4, d in proptest::collection::vec(-3i64..4, 2), w in proptest::collection::vec(-2i64..3, 2), r in degree(2, 2), neg in any::<bool>()) {
        let g = build_sl(2).unwrap();
        let gamma = RealRoot::new(&g, &[if neg { -1 } else { 1 }], &r).unwrap();
        let lambda = Weight::from_ints(&[a], &d, &w);
        let mu = Weight::from_ints(&[1 - a], &[1, 0], &[0, 1]);
        let (sl, sm) = (reflect(&g, &gamma, &lambda), reflect(&g, &gamma, &mu));
        prop_assert_eq!(reflect(&g, &gamma, &sl), lambda.clone());
        prop_assert_eq!(weight_pairing(&g, &sl, &sm), weight_pairing(&g, &lambda, &mu));
    }

    #[test]
    fn contragredient_preserves_the_pairing(seed in any::<u64>(), u in degree(4, 4), r in degree(4, 4)) {
        let b = random_unimodular(4, 6, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(b.det().abs(), 1);
        let f = b.contragredient();
        prop_assert_eq!(f.apply(&u).dot(&b.apply(&r)), u.dot(&r));
    }
}
