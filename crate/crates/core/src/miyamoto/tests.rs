use std::collections::HashSet;

use super::context::sign_characters;
use super::*;
use crate::decomp::constructions::{
    corner_embedding, diagonal_conjugation, jordan_idempotent_algebra, jordan_peirce_algebra, matrix_unit_index, trivial_extension,
};
use crate::decomp::{DecMorphism, DecompositionAlgebra};
use crate::exactlin::{rat, Matrix, Rational, Scalar};
use crate::fpgroup::DEFAULT_MAX_COSETS;
use crate::fusion::cyclic_group_law;

fn j3() -> MiyamotoContext<Rational> {
    MiyamotoContext::z2(&jordan_peirce_algebra(3, &[0, 1, 2])).unwrap()
}

/// `X ↦ g X g⁻¹` on `M_n` in the matrix-unit basis.
fn conjugation(g: &[Vec<Rational>]) -> Matrix<Rational> {
    let n = g.len();
    let gm = Matrix::from_rows(g).unwrap();
    let inv = gm.inverse().unwrap();
    let mut m = Matrix::zeros(n * n, n * n);
    for a in 0..n {
        for b in 0..n {
            for i in 0..n {
                for j in 0..n {
                    m.set(matrix_unit_index(n, a, b), matrix_unit_index(n, i, j), gm.get(a, i).clone() * inv.get(j, b));
                }
            }
        }
    }
    m
}

fn q(rows: &[&[i64]], den: i64) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|&x| rat(x, den)).collect()).collect()
}

/// Idempotents of `J_3` whose Miyamoto involutions do not commute:
/// `E11`, `E22` and the two rank one idempotents `e+`, `e-` of the top-left
/// block they are swapped into.
fn j3_block() -> DecompositionAlgebra<Rational> {
    let e11 = q(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]], 1);
    let e22 = q(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0]], 1);
    let plus = q(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 0]], 2);
    let minus = q(&[&[1, -1, 0], &[-1, 1, 0], &[0, 0, 0]], 2);
    jordan_idempotent_algebra(3, &[("E11".into(), e11), ("E22".into(), e22), ("e+".into(), plus), ("e-".into(), minus)]).unwrap()
}

#[test]
fn peirce_involution_is_sign_conjugation() {
    let ctx = j3();
    let sgn = ctx.character_index("sgn").unwrap();
    assert_eq!(ctx.ungraded().unwrap().decompositions[0].dims(), vec![1, 4, 4]);
    for k in 0..3 {
        let mut signs = vec![-1; 3];
        signs[k] = 1;
        assert_eq!(ctx.miyamoto_map(k, sgn), &diagonal_conjugation(&signs));
    }
    assert!(ctx.miyamoto_map(0, ctx.trivial()).is_identity());
    let t = ctx.miyamoto_map(1, sgn);
    assert!(t.mul(t).is_identity());
    for i in 0..3 {
        for a in 0..2 {
            for b in 0..2 {
                let prod = ctx.miyamoto_map(i, a).mul(ctx.miyamoto_map(i, b));
                assert_eq!(&prod, ctx.miyamoto_map(i, ctx.character_product(a, b)));
            }
        }
    }
}

#[test]
fn j3_miyamoto_group_has_order_four() {
    let ctx = j3();
    let g = miyamoto_group(&ctx, DEFAULT_GROUP_CAP);
    // Oracle: all products of the sign patterns s_k = (-1, .., 1 at k, .., -1).
    let mut oracle = HashSet::new();
    for mask in 0..8u32 {
        let mut signs = vec![1i64; 3];
        for k in 0..3 {
            if mask & (1 << k) != 0 {
                for (i, s) in signs.iter_mut().enumerate() {
                    if i != k {
                        *s = -*s;
                    }
                }
            }
        }
        oracle.insert(diagonal_conjugation(&signs).key());
    }
    assert_eq!(g.order(), Some(oracle.len()));
    assert_eq!(oracle.len(), 4);
    for (m, w) in g.elements.iter().zip(&g.words) {
        let prod = w.iter().fold(Matrix::identity(9), |acc, &k| acc.mul(ctx.miyamoto_map(g.generators[k].0, g.generators[k].1)));
        assert_eq!(&prod, m);
        assert!(oracle.contains(&m.key()));
    }
    assert!(miyamoto_group(&ctx, 2).exhausted);
}

#[test]
fn j3_closed_with_identity_permutations() {
    let ctx = j3();
    let closure = is_miyamoto_closed(&ctx);
    assert!(closure.is_closed());
    for row in &closure.pi {
        for perm in row {
            assert_eq!(perm, &vec![0, 1, 2]);
        }
    }
}

#[test]
fn conjugates_of_miyamoto_maps_are_miyamoto_maps() {
    let ctx = MiyamotoContext::z2(&j3_block()).unwrap();
    let sgn = ctx.character_index("sgn").unwrap();
    let maps: HashSet<_> = (0..4).map(|i| ctx.miyamoto_map(i, sgn).key()).collect();
    for a in 0..4 {
        for b in 0..4 {
            let t = ctx.miyamoto_map(a, sgn);
            let c = t.mul(ctx.miyamoto_map(b, sgn)).mul(t);
            assert!(maps.contains(&c.key()));
        }
    }
}

#[test]
fn single_index_gives_cyclic_two() {
    let ctx = MiyamotoContext::z2(&jordan_peirce_algebra(3, &[0])).unwrap();
    assert_eq!(miyamoto_group(&ctx, DEFAULT_GROUP_CAP).order(), Some(2));
    let up = universal_presentation(&ctx).unwrap();
    assert_eq!(up.presentation.generators().len(), 1);
    let ext = central_extension_check(&ctx, DEFAULT_MAX_COSETS).unwrap();
    assert_eq!((ext.universal_order, ext.miyamoto_order, ext.kernel_order), (2, 2, 1));
    assert!(ext.kernel_central);
    assert_eq!(ext.abelianization, vec![2]);
    let st = check_stability_and_unique_type(&ctx).unwrap();
    assert!(st.stable && st.unique_type);
}

#[test]
fn j3_universal_group_is_elementary_abelian() {
    let ctx = j3();
    let up = universal_presentation(&ctx).unwrap();
    assert!(up.closure_pairs_present);
    // Diagonal sign conjugations commute, so R_ā is the diagonal for each generator.
    for pairs in &up.conjugation_pairs {
        assert_eq!(pairs, &vec![(0, 0), (1, 1), (2, 2)]);
    }
    let ext = central_extension_check(&ctx, DEFAULT_MAX_COSETS).unwrap();
    assert_eq!(ext.abelianization, vec![2, 2, 2]);
    assert_eq!(ext.universal_order, 8);
    assert_eq!(ext.miyamoto_order, 4);
    assert_eq!(ext.kernel_order, 2);
    assert!(ext.kernel_central);
}

#[test]
fn duplicated_index_gives_equal_generators() {
    let e11 = q(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]], 1);
    let d = jordan_idempotent_algebra(3, &[("a".into(), e11.clone()), ("b".into(), e11)]).unwrap();
    let ctx = MiyamotoContext::z2(&d).unwrap();
    let single = MiyamotoContext::z2(&jordan_peirce_algebra(3, &[0])).unwrap();
    let ext = central_extension_check(&ctx, DEFAULT_MAX_COSETS).unwrap();
    let base = central_extension_check(&single, DEFAULT_MAX_COSETS).unwrap();
    assert_eq!(ext.universal_order, base.universal_order);
    let st = check_stability_and_unique_type(&ctx).unwrap();
    assert!(st.stable);
    assert!(!st.axes_injective && !st.maps_injective && !st.unique_type);
}

#[test]
fn j3_is_stable_and_of_unique_type() {
    let st = check_stability_and_unique_type(&j3()).unwrap();
    assert!(st.stable && st.unique_type);
    let st = check_stability_and_unique_type(&MiyamotoContext::z2(&j3_block()).unwrap()).unwrap();
    assert!(st.stable && st.unique_type);
    // τ_{e+} swaps E11 and E22 and fixes e+ and e-; τ_{E11} swaps e+ and e-.
    let pi = st.pi.unwrap();
    assert_eq!(pi[2][1], vec![1, 0, 2, 3]);
    assert_eq!(pi[0][1], vec![0, 1, 3, 2]);
}

#[test]
fn block_involution_matches_conjugation() {
    let ctx = MiyamotoContext::z2(&j3_block()).unwrap();
    let g = q(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]], 1);
    assert_eq!(ctx.miyamoto_map(2, 1), &conjugation(&g));
    let up = universal_presentation(&ctx).unwrap();
    assert!(up.closure_pairs_present);
    assert!(up.conjugation_pairs[2].contains(&(0, 1)));
    let ext = central_extension_check(&ctx, DEFAULT_MAX_COSETS).unwrap();
    assert!(ext.kernel_central);
    assert_eq!(ext.universal_order % ext.miyamoto_order, 0);
    assert_eq!(ext.universal_order / ext.miyamoto_order, ext.kernel_order);
}

#[test]
fn corner_embedding_is_not_functorial() {
    let source = j3();
    let target = MiyamotoContext::z2(&jordan_peirce_algebra(5, &[0, 1, 2])).unwrap();
    let f = DecMorphism::new(corner_embedding(3, 5), vec![0, 1, 2]);
    let product = (0..3).fold(Matrix::identity(25), |acc, i| acc.mul(target.miyamoto_map(i, 1)));
    assert_eq!(product, diagonal_conjugation(&[1, 1, 1, -1, -1]));
    let src_product = (0..3).fold(Matrix::identity(9), |acc, i| acc.mul(source.miyamoto_map(i, 1)));
    assert!(src_product.is_identity());

    let induced = induced_group_morphism(&source, &target, &f, DEFAULT_GROUP_CAP).unwrap();
    assert!(!induced.surjective);
    assert!(!induced.group_map.well_defined);
    assert!(induced.group_map.witness.is_some());
    assert!(induced.universal_failures.is_empty());
    assert!(induced.expected_non_functoriality);
}

#[test]
fn identity_morphism_induces_identity() {
    let ctx = j3();
    let f = DecMorphism::identity(ctx.object());
    let induced = induced_group_morphism(&ctx, &ctx, &DecMorphism::new(f.phi, f.psi), DEFAULT_GROUP_CAP).unwrap();
    assert!(induced.functorial && induced.surjective);
    assert!(induced.generator_map.iter().all(|(a, b)| a == b));
    assert_eq!(induced.group_map.source_order, 4);
}

fn extension() -> (MiyamotoContext<Rational>, MiyamotoContext<Rational>, DecMorphism<Rational>) {
    let a = MiyamotoContext::z2(&j3_block()).unwrap();
    let (b, inclusion) = trivial_extension(a.object(), &[1, 2, 1, 1]).unwrap();
    let b = MiyamotoContext::new(b, sign_characters()).unwrap();
    (a, b, inclusion)
}

#[test]
fn trivial_extension_is_closed_with_moving_indices() {
    let (_, b, _) = extension();
    assert_eq!(b.indices(), &["(E11,1)", "(E11,2)", "(E22,1)", "(E22,2)", "(e+,1)", "(e+,2)", "(e-,1)", "(e-,2)"]);
    // Oracle: τ_{(e+,1)} is conjugation by the block swap on J_3, fixes e and negates f.
    let swap = conjugation(&q(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]], 1));
    let mut expected = Matrix::zeros(11, 11);
    for r in 0..9 {
        for c in 0..9 {
            expected.set(r, c, swap.get(r, c).clone());
        }
    }
    expected.set(9, 9, rat(1, 1));
    expected.set(10, 10, rat(-1, 1));
    assert_eq!(b.miyamoto_map(4, 1), &expected);
    let closure = is_miyamoto_closed(&b);
    assert!(closure.is_closed());
    assert_eq!(closure.pi[4][1], vec![2, 3, 0, 1, 4, 5, 6, 7]);
}

#[test]
fn trivial_extension_breaks_universal_functoriality() {
    let (a, b, inclusion) = extension();
    let induced = induced_group_morphism(&a, &b, &inclusion, DEFAULT_GROUP_CAP).unwrap();
    assert!(!induced.surjective);
    assert!(!induced.universal_failures.is_empty());
    assert!(induced.expected_non_functoriality);
}

#[test]
fn projection_from_trivial_extension_is_functorial() {
    let (a, b, _) = extension();
    let mut phi = Matrix::zeros(9, 11);
    for i in 0..9 {
        phi.set(i, i, rat(1, 1));
    }
    let f = DecMorphism::new(phi, vec![0, 0, 1, 1, 2, 2, 3, 3]);
    let induced = induced_group_morphism(&b, &a, &f, DEFAULT_GROUP_CAP).unwrap();
    assert!(induced.surjective);
    assert!(induced.group_map.well_defined);
    assert!(induced.universal_failures.is_empty());
    assert!(induced.functorial && !induced.expected_non_functoriality);
}

#[test]
fn intertwining_failure_is_an_error() {
    let ctx = j3();
    let f = DecMorphism::new(Matrix::identity(9), vec![1, 0, 2]);
    assert!(induced_group_morphism(&ctx, &ctx, &f, DEFAULT_GROUP_CAP).is_err());
}

#[test]
fn characters_are_validated() {
    let d = MiyamotoContext::<Rational>::z2(&jordan_peirce_algebra(2, &[0])).unwrap();
    let object = d.object().clone();
    let one = || Scalar::Rational(rat(1, 1));
    let bad = vec![RCharacter::new("1", vec![one(), one()]), RCharacter::new("x", vec![one(), Scalar::Rational(rat(2, 1))])];
    assert!(matches!(MiyamotoContext::new(object.clone(), bad), Err(MiyError::InvalidCharacter(_))));
    let no_trivial = vec![RCharacter::new("sgn", vec![one(), Scalar::Rational(rat(-1, 1))])];
    assert!(matches!(MiyamotoContext::new(object.clone(), no_trivial), Err(MiyError::InvalidCharacter(_))));
    let only_trivial = MiyamotoContext::new(object, vec![RCharacter::new("1", vec![one(), one()])]).unwrap();
    assert_eq!(miyamoto_group(&only_trivial, 10).order(), Some(1));
    let doc = sign_characters()[1].to_doc(&cyclic_group_law(2));
    assert_eq!(RCharacter::from_doc(&doc, &cyclic_group_law(2)).unwrap(), sign_characters()[1]);
}

#[test]
fn float_mode_has_no_universal_presentation() {
    let d = jordan_peirce_algebra(3, &[0, 1]).map_field(|x| <crate::exactlin::C64 as crate::exactlin::Field>::from_rational(x));
    let ctx = MiyamotoContext::z2(&d).unwrap();
    assert_eq!(miyamoto_group(&ctx, DEFAULT_GROUP_CAP).order(), Some(4));
    assert!(matches!(universal_presentation(&ctx), Err(MiyError::FloatMode)));
}
