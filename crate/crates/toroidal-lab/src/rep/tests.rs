use num::traits::{One, Zero};

use super::*;
use crate::algebra::{AlgebraSpec, Decomposition, Family};
use crate::degree::{dv, DegreeVector, RationalVector, Window};
use crate::error::Error;
use crate::scalar::Scalar;
use crate::simple_lie::build_sl;

fn pts(v: &[&[i64]]) -> Vec<RationalVector> {
    v.iter().map(|p| RationalVector::from_ints(p)).collect()
}

fn positive_root(g: &crate::simple_lie::SimpleLieDatum) -> usize {
    g.roots.iter().position(|r| r.is_positive()).unwrap()
}

/// the calibrated `m = 1` profile
fn calibrated() -> Profile {
    Profile::from_ratios([(1, 1), (1, 2), (1, 2), (1, 2), (1, 2), (1, 2)])
}

#[test]
fn evaluation_actions() {
    let g = build_sl(2).unwrap();
    let e = g.basis_index(1, 2).unwrap();
    let one = EvaluationModule::new(g.clone(), pts(&[&[1]]), &[vec![1]]).unwrap();
    assert_eq!(one.x_matrix(e, &dv(&[3])), one.factors[0].action[e]);
    let two = EvaluationModule::new(g.clone(), pts(&[&[1], &[2]]), &[vec![1], vec![1]]).unwrap();
    let h = (0..g.dim).find(|&a| g.is_cartan(a)).unwrap();
    let top = two.top_vector();
    let (out, grade) = two.evaluation_action(h, &dv(&[1]), &top, &dv(&[0]));
    assert_eq!(grade, dv(&[1]));
    assert_eq!(out, top.iter().map(|c| c * &Scalar::from_int(3)).collect::<Vec<_>>());
    assert!(EvaluationModule::new(g.clone(), pts(&[&[0]]), &[vec![1]]).is_err());
    assert!(EvaluationModule::new(g, pts(&[&[2], &[2]]), &[vec![1], vec![1]]).is_err());
}

#[test]
fn evaluation_is_integrable_representation() {
    let g = build_sl(2).unwrap();
    let m = EvaluationModule::new(g, pts(&[&[1], &[2]]), &[vec![1], vec![1]]).unwrap();
    let w = Window::new(2, 1);
    assert!(verify_representation(&m, &w).passed());
    let rep = verify_integrability(&m, &w, 5);
    assert!(rep.passed(), "{rep}");
    assert_eq!(rep.stats["max_nilpotency_index"], 3);
    assert!(m.irreducibility_certificate(&w).passed());
    let two_var = EvaluationModule::new(build_sl(2).unwrap(), pts(&[&[1, 1], &[2, -1]]), &[vec![1], vec![2]]).unwrap();
    assert!(verify_representation(&two_var, &Window::new(1, 2)).passed());
}

#[test]
fn associativization_cases() {
    let g = build_sl(2).unwrap();
    let alpha = positive_root(&g);
    let w = Window::new(2, 1);
    let a1 = EvaluationModule::new(g.clone(), pts(&[&[1]]), &[vec![1]]).unwrap();
    let res = associativize(&a1, alpha, &w).unwrap();
    assert!(res.report.passed());
    assert_eq!(res.lambda_alpha, Scalar::one());
    assert!(res.tautological);
    // a = 2 rescales t^r by 2^r but stays associative
    let a2 = EvaluationModule::new(g.clone(), pts(&[&[2]]), &[vec![1]]).unwrap();
    let res = associativize(&a2, alpha, &w).unwrap();
    assert!(res.report.passed());
    assert!(!res.tautological);
    let p2 = EvaluationModule::new(g, pts(&[&[1], &[2]]), &[vec![1], vec![1]]).unwrap();
    assert!(matches!(associativize(&p2, alpha, &w), Err(Error::NonAssociativizable(_))));
}

#[test]
fn realization_module_checks() {
    let jet = JetModule::unshifted(SpRep::new(1, Fiber::Defining).unwrap(), calibrated());
    let v = realization_module(build_sl(2).unwrap(), &[1], jet).unwrap();
    let w = Window::new(1, 2);
    assert_eq!(v.dim(), 4);
    let rep = verify_representation(&v, &w);
    assert!(rep.passed(), "{rep}");
    assert!(verify_center_trivial(&v, &w).passed());
    assert!(verify_top_dimension(&v, &w).unwrap().passed());
    let alpha = positive_root(v.spec.g.as_ref().unwrap());
    let res = associativize(&v, alpha, &w).unwrap();
    assert_eq!(res.lambda_alpha, res.lambda_h);
    assert!(res.tautological);
    let manifest = module_manifest(&v, &w);
    assert_eq!(manifest["kind"], "realization");

    let bad = JetModule::unshifted(SpRep::new(1, Fiber::Defining).unwrap(), Profile::literal());
    let v = realization_module(build_sl(2).unwrap(), &[1], bad).unwrap();
    assert!(!verify_representation(&v, &w).passed());
}

#[test]
fn trivial_realization_is_the_torus() {
    let jet = JetModule::unshifted(SpRep::new(1, Fiber::Trivial).unwrap(), Profile::literal());
    let v = realization_module(build_sl(2).unwrap(), &[0], jet).unwrap();
    assert_eq!(v.dim(), 1);
    assert!(verify_representation(&v, &Window::new(1, 2)).passed());
}

fn toy_top(lambda: i64) -> Top {
    let jet = JetModule::unshifted(SpRep::new(1, Fiber::Trivial).unwrap(), Profile::literal());
    Top::new(build_sl(2).unwrap(), &[lambda], jet).unwrap()
}

#[test]
fn induced_module_and_quotient() {
    let w = Window::new(1, 2);
    let m = induced_module(toy_top(1), Decomposition::LevelZero, 2, &w).unwrap();
    let q0 = dv(&[0, 0]);
    assert_eq!(m.basis(0, &q0).len(), 1);
    assert_eq!(m.basis(1, &q0).len(), 9);
    assert!(m.basis(1, &q0).iter().all(|mono| mono.factors.len() == 1));
    // positive generators kill the top
    let g = m.spec().g.clone().unwrap();
    let e = g.basis_index(1, 2).unwrap();
    for top in m.basis(0, &q0) {
        let v = std::collections::BTreeMap::from([(top.clone(), Scalar::one())]);
        assert!(m.act(&dv(&[1, -1]), e, &v).unwrap().is_empty());
    }
    assert_eq!(m.highest_weight_space(0, &q0).unwrap().len(), 1);
    let quo = simple_quotient_window(&m).unwrap();
    assert_eq!(quo.label, "window-approximate simple quotient");
    for q in w.iter() {
        assert_eq!(quo.dim(0, &q), 1);
        assert_eq!(quo.dim(1, &q), 1);
        assert_eq!(quo.dim(2, &q), 0);
    }
    assert!(matches!(
        induced_module(toy_top(1), Decomposition::GeneralN, 1, &w),
        Err(Error::Capability(_))
    ));
}

#[test]
fn induced_bracket_relation() {
    // e(s) f(r) w = h(r+s) w = λ w ⊗ t^{k+r+s}
    let w = Window::new(1, 2);
    let m = induced_module(toy_top(3), Decomposition::LevelZero, 1, &w).unwrap();
    let g = m.spec().g.clone().unwrap();
    let (e, f) = (g.basis_index(1, 2).unwrap(), g.basis_index(2, 1).unwrap());
    let k = dv(&[0, 1]);
    let top = Monomial { factors: vec![], fiber: 0, grade: k.clone() };
    let v = std::collections::BTreeMap::from([(top, Scalar::one())]);
    let fv = m.act(&dv(&[1, 0]), f, &v).unwrap();
    let efv = m.act(&dv(&[-1, 1]), e, &fv).unwrap();
    let expect = Monomial { factors: vec![], fiber: 0, grade: DegreeVector::new(&[0, 2]) };
    assert_eq!(efv.len(), 1);
    assert_eq!(efv[&expect], Scalar::from_int(3));
    assert!(!fv.values().any(|c| c.is_zero()));
    let _ = AlgebraSpec::new(Family::TauH, 2, Some(g.as_ref().clone())).unwrap();
}
