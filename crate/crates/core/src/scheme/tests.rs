use std::collections::BTreeMap;

use super::*;
use crate::chartheory::catalog_table;
use crate::exactlin::{rat, Field, Rational, Subspace, C64};
use crate::permgroup::{catalog_group, Perm, PermGroup};

fn johnson_5_2() -> (PermGroup, Vec<Vec<usize>>, AssociationScheme) {
    let s5 = catalog_group("S5").unwrap();
    let (g, subsets) = s5.on_k_subsets(2).unwrap();
    let scheme = scheme_from_group(&g).unwrap();
    (g, subsets, scheme)
}

/// Multiplicities of the adjacency spectrum of the Johnson graph, by a
/// floating eigensolve independent of the scheme code.
fn johnson_spectrum(subsets: &[Vec<usize>]) -> BTreeMap<i64, usize> {
    let n = subsets.len();
    let a = nalgebra::DMatrix::<f64>::from_fn(n, n, |x, y| {
        let common = subsets[x].iter().filter(|v| subsets[y].contains(v)).count();
        if common == 1 { 1.0 } else { 0.0 }
    });
    let mut out = BTreeMap::new();
    for l in a.symmetric_eigen().eigenvalues.iter() {
        *out.entry(l.round() as i64).or_insert(0) += 1;
    }
    out
}

#[test]
fn johnson_scheme_axioms_and_intersection_numbers() {
    let (_, subsets, scheme) = johnson_5_2();
    assert_eq!(scheme.n(), 10);
    assert_eq!(scheme.classes(), 2);
    assert!(scheme.is_symmetric());
    let adjacent = scheme.relation(0, (0..10).find(|&y| subsets[0].iter().filter(|v| subsets[y].contains(v)).count() == 1).unwrap());
    let far = 3 - adjacent;
    assert_eq!(scheme.valencies()[adjacent], 6);
    assert_eq!(scheme.valencies()[far], 3);
    // Johnson graph J(5,2): λ = 3, μ = 4.
    assert_eq!(scheme.p(adjacent, adjacent, adjacent), 3);
    assert_eq!(scheme.p(adjacent, adjacent, far), 4);
    assert_eq!(scheme.p(adjacent, adjacent, 0), 6);
}

#[test]
fn johnson_bose_mesner() {
    let (_, subsets, scheme) = johnson_5_2();
    let bm = bose_mesner::<Rational>(&scheme).unwrap();
    let mut dims = bm.dims();
    assert_eq!(dims[0], 1);
    dims.sort_unstable();
    assert_eq!(dims, vec![1, 4, 5]);
    assert!(bm.check_intersection_numbers());
    assert!(bm.check_idempotents());
    assert!(bm.krein_condition());
    for (j, e) in bm.idempotents.iter().enumerate() {
        assert_eq!(e.trace(), rat(bm.dims()[j] as i64, 1));
    }

    let oracle = johnson_spectrum(&subsets);
    let adjacent = (1..=2).find(|&i| bm.scheme.valencies()[i] == 6).unwrap();
    let mut found = BTreeMap::new();
    for (j, row) in bm.eigenvalues.iter().enumerate() {
        let l = row[adjacent].to_integer();
        *found.entry(i64::try_from(l).unwrap()).or_insert(0) += bm.dims()[j];
    }
    assert_eq!(found, oracle);
}

#[test]
fn projected_points_satisfy_the_sigma_identity() {
    let (_, _, scheme) = johnson_5_2();
    let bm = bose_mesner::<Rational>(&scheme).unwrap();
    let n = rat(bm.n() as i64, 1);
    for i in 0..=2 {
        for j in 0..=2 {
            for k in 0..=2 {
                for x in 0..bm.n() {
                    let lhs = bm.sigma(k, &bm.projected_point(i, x), &bm.projected_point(j, x));
                    let scale = bm.q(i, j, k).clone() / &n;
                    let rhs: Vec<Rational> = bm.projected_point(k, x).iter().map(|v| v.clone() * &scale).collect();
                    assert_eq!(lhs, rhs, "i={i} j={j} k={k} x={x}");
                }
            }
        }
    }
}

#[test]
fn float_mode_matches_exact_krein_parameters() {
    let (_, _, scheme) = johnson_5_2();
    let exact = bose_mesner::<Rational>(&scheme).unwrap();
    let float = bose_mesner::<C64>(&scheme).unwrap();
    assert_eq!(exact.dims(), float.dims());
    for ((a, b), c) in exact.krein.iter().flatten().flatten().zip(float.krein.iter().flatten().flatten()).zip(0..) {
        assert!((C64::from_rational(a).re() - b.re()).abs() < 1e-9, "parameter {c}");
    }
}

#[test]
fn norton_product_vanishes_with_krein_parameter() {
    let (_, _, scheme) = johnson_5_2();
    let bm = bose_mesner::<Rational>(&scheme).unwrap();
    for i in 0..=2 {
        let norton = norton_algebra(&bm, i).unwrap();
        assert!(norton.algebra.is_commutative());
        let zero = (0..norton.dim()).all(|a| (0..norton.dim()).all(|b| norton.algebra.basis_product(a, b).iter().all(|v| v.is_zero())));
        assert_eq!(zero, bm.q(i, i, i).is_zero(), "eigenspace {i}");
    }
    assert_eq!(norton_algebra(&bm, 3).unwrap_err(), SchemeError::IndexOutOfRange(3));
}

#[test]
fn johnson_norton_certificate() {
    let (_, _, scheme) = johnson_5_2();
    let bm = bose_mesner::<Rational>(&scheme).unwrap();
    let i = bm.dims().iter().position(|&d| d == 4).unwrap();
    let cert = norton_axial_certificate(&bm, i).unwrap();
    let summary = cert.summary();
    assert_eq!(summary.axes, 10);
    assert_eq!(summary.dim, 4);
    assert!(summary.valid && summary.full_eigenbasis && summary.certified);
    assert_eq!(summary.axial, Some(true));

    let own = bm.q(i, i, i).clone() / &rat(10, 1);
    let axes = cert.object.axes.as_ref().unwrap();
    assert_eq!(axes.lambda[axes.axis_label], own);
    for (x, a) in axes.vectors.iter().enumerate() {
        let aa = cert.norton.algebra.mul(a, a);
        assert_eq!(aa, a.iter().map(|v| v.clone() * &own).collect::<Vec<_>>(), "point {x}");
    }
}

#[test]
fn trivial_scheme() {
    let s4 = catalog_group("S4").unwrap();
    let scheme = scheme_from_group(&s4).unwrap();
    assert_eq!(scheme.classes(), 1);
    let bm = bose_mesner::<Rational>(&scheme).unwrap();
    assert_eq!(bm.dims(), vec![1, 3]);
    let cert = norton_axial_certificate(&bm, 1).unwrap();
    assert!(cert.summary().valid && cert.full_eigenbasis);

    let v0 = norton_algebra(&bm, 0).unwrap();
    assert_eq!(v0.dim(), 1);
    let a = v0.axis(&bm, 0);
    let aa = v0.algebra.mul(&a, &a);
    assert!(aa[0].clone() * &a[0] != rat(0, 1));
}

#[test]
fn cyclic_regular_scheme_is_not_symmetric() {
    let c3 = PermGroup::new(3, vec![Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()]).unwrap();
    let scheme = scheme_from_group(&c3).unwrap();
    assert_eq!(scheme.classes(), 2);
    assert!(!scheme.is_symmetric());
    assert!(matches!(bose_mesner::<Rational>(&scheme), Err(SchemeError::Eigen(_))));
    let bm = bose_mesner::<C64>(&scheme).unwrap();
    assert_eq!(bm.dims(), vec![1, 1, 1]);
    assert!(bm.check_idempotents());
    assert_eq!(norton_axial_certificate(&bm, 1).unwrap_err(), SchemeError::NotSymmetric);
    let generalized = norton_generalized_decomposition(&bm, 1).unwrap();
    assert!(generalized.generalized && !generalized.certified);
}

#[test]
fn axiom_failures() {
    let err = AssociationScheme::new(vec![vec![0, 0], vec![1, 0]]).unwrap_err();
    assert!(matches!(err, SchemeError::Axiom { axiom: 2, .. }));
    let err = AssociationScheme::new(vec![vec![0, 2], vec![2, 0]]).unwrap_err();
    assert!(matches!(err, SchemeError::Axiom { axiom: 1, .. }));
    let err = AssociationScheme::new(vec![vec![0, 1, 1], vec![2, 0, 1], vec![1, 1, 0]]).unwrap_err();
    assert!(matches!(err, SchemeError::Axiom { axiom: 3, .. }));
    // The regular action of S3 gives a non-commutative scheme.
    let s3 = catalog_group("S3").unwrap();
    let elements = s3.elements().unwrap().to_vec();
    let regular: Vec<Perm> = s3
        .generators()
        .iter()
        .map(|g| Perm::new(elements.iter().map(|e| s3.index_of(&g.compose(e)).unwrap().unwrap()).collect()).unwrap())
        .collect();
    let err = scheme_from_group(&PermGroup::new(6, regular).unwrap()).unwrap_err();
    assert!(matches!(err, SchemeError::Axiom { axiom: 5, .. }), "{err:?}");
}

#[test]
fn scheme_doc_round_trip() {
    let (_, _, scheme) = johnson_5_2();
    let json = serde_json::to_string(&scheme.to_doc()).unwrap();
    let back = AssociationScheme::from_doc(&serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(back, scheme);
}

#[test]
fn transpositions_of_s3_refined() {
    let s3 = catalog_group("S3").unwrap();
    let t = s3.elements().unwrap().iter().find(|p| p.order() == 2).unwrap().clone();
    let (action, class) = s3.on_class(&t).unwrap();
    assert_eq!(class.len(), 3);
    assert!(action.is_generously_transitive().unwrap());
    let scheme = scheme_from_group(&action).unwrap();
    let bm = bose_mesner::<Rational>(&scheme).unwrap();
    let cert = norton_axial_certificate(&bm, 1).unwrap();
    assert_eq!(cert.norton.dim(), 2);

    let refined = refine_with_centralizer(&cert, &bm, &s3, &class, 0, None).unwrap();
    assert_eq!(refined.centralizer_order, 2);
    assert_eq!(refined.grading_order, 2);
    assert!(refined.object.verify().valid);
    assert_eq!(refined.tau_is_rho, Some(true));
    assert_eq!(refined.image_order, 6);
    assert_eq!(refined.miyamoto_order, Some(6));
    // Every eigenspace splits into its centralizer-isotypic pieces.
    let coarse: Vec<usize> = cert.object.decompositions[0].dims();
    let fine = refined.object.decompositions[0].dims();
    assert_eq!(fine.iter().sum::<usize>(), 2);
    for (l, d) in coarse.iter().enumerate() {
        assert_eq!(fine[2 * l] + fine[2 * l + 1], *d);
    }
}

#[test]
fn refinement_by_trivial_centralizer_is_unchanged() {
    let c1 = catalog_group("C1").unwrap();
    let id = c1.identity();
    let (action, class) = c1.on_class(&id).unwrap();
    let scheme = scheme_from_group(&action).unwrap();
    let bm = bose_mesner::<Rational>(&scheme).unwrap();
    let cert = norton_axial_certificate(&bm, 0).unwrap();
    let refined = refine_with_centralizer(&cert, &bm, &c1, &class, 0, Some(catalog_table("C1").unwrap())).unwrap();
    assert_eq!(refined.centralizer_order, 1);
    let before: Vec<Subspace<Rational>> = cert.object.decompositions[0].parts.clone();
    let after = &refined.object.decompositions[0].parts;
    assert_eq!(before.len(), after.len());
    assert!(before.iter().zip(after).all(|(a, b)| a.same_as(b)));
    assert_eq!(refined.miyamoto_order, None);
}
