use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use decalg::decomp::constructions::{diagonal_conjugation, jordan_peirce_algebra};
use decalg::decomp::DecMorphism;
use decalg::exactlin::{rat, smith_normal_form, IntegerMatrix, Matrix, Rational};
use decalg::fpgroup::abelianized_grading;
use decalg::permgroup::{catalog, Perm};

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-20i64..=20, c), r))
}

fn permutation(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::new(v).unwrap())
}

proptest! {
    #[test]
    fn smith_form_of_square_matrix_keeps_the_determinant(rows in (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-9i64..=9, n), n))) {
        let m = IntegerMatrix::from_i64_rows(&rows).unwrap();
        let f = smith_normal_form(&m);
        let product: BigInt = f.s.diagonal().iter().product();
        prop_assert_eq!(product, m.determinant().abs());
    }

    #[test]
    fn smith_form_is_a_diagonalization(rows in int_matrix()) {
        let m = IntegerMatrix::from_i64_rows(&rows).unwrap();
        let f = smith_normal_form(&m);
        prop_assert_eq!(f.u.mul(&m).mul(&f.v), f.s.clone());
        let d = f.s.diagonal();
        for w in d.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
    }

    #[test]
    fn conjugation_is_an_action(a in permutation(6), b in permutation(6), x in permutation(6)) {
        prop_assert!(a.compose(&a.inverse()).is_identity());
        let ab = a.compose(&b);
        prop_assert_eq!(x.conjugate_by(&ab), x.conjugate_by(&b).conjugate_by(&a));
        prop_assert_eq!(x.conjugate_by(&a).order(), x.order());
    }

    #[test]
    fn rational_inverse(entries in prop::collection::vec(-6i64..=6, 9)) {
        let m = Matrix::new(3, 3, entries.iter().map(|&v| rat(v, 1)).collect()).unwrap();
        match m.inverse() {
            Some(inv) => prop_assert!(m.mul(&inv).is_identity()),
            None => prop_assert_eq!(m.determinant(), rat(0, 1)),
        }
    }

    #[test]
    fn sign_conjugations_are_automorphisms(signs in prop::collection::vec(prop_oneof![Just(1i64), Just(-1i64)], 3)) {
        let d = jordan_peirce_algebra(3, &[0, 1, 2]);
        let f: DecMorphism<Rational> = DecMorphism { phi: diagonal_conjugation(&signs), psi: vec![0, 1, 2], axial: true };
        prop_assert!(f.check(&d, &d).is_ok());
        prop_assert!(f.kernel().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn abelian_group_laws_grade_by_the_whole_group(k in 0usize..64) {
        let abelian: Vec<_> = catalog().into_iter().filter(|g| g.is_abelian() && g.order().unwrap() <= 16).collect();
        let g = &abelian[k % abelian.len()];
        let grading = abelianized_grading(&g.group_fusion_law().unwrap()).unwrap();
        prop_assert_eq!(grading.group.order(), Some(g.order().unwrap() as u64));
    }
}
