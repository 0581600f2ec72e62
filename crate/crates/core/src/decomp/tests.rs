use super::constructions::*;
use super::*;
use crate::exactlin::{rat, unit_vector, Matrix, Rational, Subspace};
use crate::fusion::{cyclic_group_law, jordan_law, FusionLaw, FusionMorphism};

fn jordan_to_z2() -> FusionMorphism {
    FusionMorphism::from_labels(jordan_law(), cyclic_group_law(2), &[("e", "0"), ("z", "0"), ("h", "1")]).unwrap()
}

#[test]
fn peirce_j3_is_primitive_axial() {
    let d = jordan_peirce_algebra(3, &[0]);
    let r = d.verify();
    assert!(r.valid);
    assert_eq!(r.axial, Some(true));
    assert_eq!(r.primitive, Some(true));
    assert_eq!(r.part_dims[0].values().copied().collect::<Vec<_>>(), vec![1, 4, 4]);
}

#[test]
fn shrunk_law_is_violated_at_hh() {
    let mut d = jordan_peirce_algebra(3, &[0]);
    d.law = FusionLaw::from_labels(
        &["e", "z", "h"],
        &[
            ("e", "e", &["e"]),
            ("e", "h", &["h"]),
            ("z", "z", &["z"]),
            ("z", "h", &["h"]),
            ("h", "e", &["h"]),
            ("h", "z", &["h"]),
            ("h", "h", &["e"]),
        ],
    )
    .unwrap();
    let r = d.verify();
    assert!(!r.valid);
    assert_eq!(r.violations, vec![FusionViolation { index: "E11".into(), x: "h".into(), y: "h".into() }]);
}

#[test]
fn initial_object_is_valid() {
    let d = initial::<Rational>(&jordan_law());
    assert!(d.verify().valid);
    assert!(terminal::<Rational>(&jordan_law()).verify().valid);
}

#[test]
fn pushforward_to_z2() {
    let d = jordan_peirce_algebra(3, &[0, 1, 2]);
    let p = pushforward(&d, &jordan_to_z2()).unwrap();
    assert!(p.verify().valid);
    assert_eq!(p.decompositions[0].dims(), vec![5, 4]);
    let same = pushforward(&d, &FusionMorphism::identity(jordan_law())).unwrap();
    assert_eq!(same.decompositions, d.decompositions);
    assert!(pushforward(&p, &jordan_to_z2()).is_err());
}

#[test]
fn products() {
    let d = jordan_peirce_algebra(3, &[0]);
    let p = product(&d, &d).unwrap();
    assert_eq!(p.object.dim(), 18);
    assert_eq!(p.object.decompositions[0].dims(), vec![2, 8, 8]);
    assert!(p.object.verify().valid);
    p.first.check(&p.object, &d).unwrap();
    p.second.check(&p.object, &d).unwrap();
    let id = DecMorphism::identity(&d);
    let m = p.mediator(&id, &id).unwrap();
    m.check(&d, &p.object).unwrap();
    assert_eq!(m.then(&p.first), id);

    let t = terminal::<Rational>(&jordan_law());
    let pt = product(&d, &t).unwrap();
    assert_eq!(pt.object.dim(), 9);
    assert_eq!(pt.object.indices, vec!["(E11,*)"]);
}

#[test]
fn equalizers() {
    let d = jordan_peirce_algebra(3, &[0, 1, 2]);
    let id = DecMorphism::identity(&d);
    let e = equalizer(&d, &id, &id).unwrap();
    assert_eq!(e.object.dim(), 9);
    assert_eq!(e.object.indices.len(), 3);

    // Two index-preserving automorphisms: conjugation by diagonal sign matrices.
    let f = DecMorphism { phi: diagonal_conjugation(&[1, -1, 1]), psi: vec![0, 1, 2], axial: true };
    let g = DecMorphism { phi: diagonal_conjugation(&[1, 1, -1]), psi: vec![0, 1, 2], axial: true };
    f.check(&d, &d).unwrap();
    g.check(&d, &d).unwrap();
    let e = equalizer(&d, &f, &g).unwrap();
    // Fixed: diagonal and the (1,2),(2,1) entries, i.e. sign products agree.
    assert_eq!(e.object.dim(), 5);
    assert!(e.object.verify().valid);
    e.inclusion.check(&e.object, &d).unwrap();
}

#[test]
fn ideals_and_quotients() {
    let a = jordan_peirce_algebra(3, &[0]);
    let z2 = pushforward(&a, &jordan_to_z2()).unwrap();
    let (b, inc) = trivial_extension(&z2, &[1]).unwrap();
    inc.check(&z2, &b).unwrap();
    assert!(b.verify().valid);
    let m = Subspace::span(11, &[unit_vector(11, 9), unit_vector(11, 10)]);
    let v = decomposition_ideal_check(&b, &m);
    assert!(v.decomposition_ideal);
    let q = quotient(&b, &m).unwrap();
    assert_eq!(q.object.dim(), 9);
    assert_eq!(q.object.algebra, z2.algebra);
    assert_eq!(q.object.decompositions[0], z2.decompositions[0]);
    q.projection.check(&b, &q.object).unwrap();

    assert!(decomposition_ideal_check(&b, &Subspace::zero(11)).decomposition_ideal);
    assert!(decomposition_ideal_check(&b, &Subspace::full(11)).decomposition_ideal);
    let not_graded = Subspace::span(11, &[{
        let mut v = unit_vector::<Rational>(11, 9);
        v[10] = rat(1, 1);
        v
    }]);
    assert!(!decomposition_ideal_check(&b, &not_graded).decomposition_ideal);

    let k = inc.kernel();
    assert!(k.is_zero());
    let proj = DecMorphism::new(q.projection.phi.clone(), vec![0, 0]);
    let ker = proj.kernel();
    assert!(decomposition_ideal_check(&b, &ker).decomposition_ideal);
    let qq = quotient(&b, &ker).unwrap();
    let bar = qq.factor(&proj).unwrap();
    assert!(bar.phi.mul(&qq.projection.phi).approx_eq(&proj.phi));
}

#[test]
fn morphism_check_catches_bad_maps() {
    let d = jordan_peirce_algebra(3, &[0]);
    let bad = DecMorphism::new(Matrix::<Rational>::identity(9).scale(&rat(2, 1)), vec![0]);
    assert!(matches!(bad.check(&d, &d), Err(DecompError::NotAMorphism(_))));
}

#[test]
fn doc_round_trip() {
    let d = jordan_peirce_algebra(3, &[0]);
    let json = serde_json::to_string(&d.to_doc()).unwrap();
    let back = DecompositionAlgebra::<Rational>::from_doc(&serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(back, d);
}
