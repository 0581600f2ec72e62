//! Standard decomposition algebras: the Jordan algebra of `n × n` matrices
//! with its Peirce decompositions, corner embeddings, and the trivial
//! extension `B = A ⊕ M` used to break functoriality of universal groups.

use super::algebra::Algebra;
use super::category::DecMorphism;
use super::decomposition::{Axes, Decomposition, DecompositionAlgebra};
use super::DecompError;
use crate::exactlin::{rat, unit_vector, Field, Matrix, Rational, Subspace};
use crate::fusion::jordan_law;

/// Coordinate of the matrix unit `E_ij` in the basis of `M_n`.
pub fn matrix_unit_index(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

/// `J_n = M_n(ℚ)⁺` with `A • B = (AB + BA)/2` on the basis of matrix units.
pub fn matrix_jordan_algebra(n: usize) -> Algebra<Rational> {
    let dim = n * n;
    let half = rat(1, 2);
    let mut constants = vec![vec![vec![Rational::from_i64(0); dim]; dim]; dim];
    for (i, j, k, l) in quad(n) {
        let a = matrix_unit_index(n, i, j);
        let b = matrix_unit_index(n, k, l);
        // E_ij E_kl = δ_jk E_il
        if j == k {
            constants[a][b][matrix_unit_index(n, i, l)] += &half;
        }
        if l == i {
            constants[a][b][matrix_unit_index(n, k, j)] += &half;
        }
    }
    Algebra::new(dim, constants).expect("square constants")
}

fn quad(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).flat_map(move |k| (0..n).map(move |l| (i, j, k, l)))))
}

/// The Peirce decomposition of `J_n` at `E_kk`, with parts ordered as the
/// Jordan law `e, z, h` (eigenvalues `1, 0, 1/2`).
pub fn peirce_decomposition(n: usize, k: usize) -> Decomposition<Rational> {
    let dim = n * n;
    let unit = |i, j| unit_vector::<Rational>(dim, matrix_unit_index(n, i, j));
    let one = vec![unit(k, k)];
    let zero: Vec<_> = (0..n).filter(|&i| i != k).flat_map(|i| (0..n).filter(move |&j| j != k).map(move |j| (i, j))).map(|(i, j)| unit(i, j)).collect();
    let half: Vec<_> = (0..n).filter(|&i| i != k).flat_map(|i| [unit(i, k), unit(k, i)]).collect();
    Decomposition::new(vec![Subspace::span(dim, &one), Subspace::span(dim, &zero), Subspace::span(dim, &half)])
}

/// `λ` for the Jordan law: `e ↦ 1, z ↦ 0, h ↦ 1/2`.
pub fn jordan_lambda() -> Vec<Rational> {
    vec![rat(1, 1), rat(0, 1), rat(1, 2)]
}

/// `J_n` with the Peirce decompositions at the diagonal idempotents `E_kk`,
/// `k ∈ diagonal`, indexed `E11, E22, …` and with axes `E_kk`.
pub fn jordan_peirce_algebra(n: usize, diagonal: &[usize]) -> DecompositionAlgebra<Rational> {
    let indices = diagonal.iter().map(|&k| format!("E{}{}", k + 1, k + 1)).collect();
    let decompositions = diagonal.iter().map(|&k| peirce_decomposition(n, k)).collect();
    let vectors = diagonal.iter().map(|&k| unit_vector(n * n, matrix_unit_index(n, k, k))).collect();
    DecompositionAlgebra::new(matrix_jordan_algebra(n), jordan_law(), indices, decompositions)
        .and_then(|d| d.with_axes(Axes { vectors, lambda: jordan_lambda(), axis_label: 0 }))
        .expect("consistent shapes")
}

/// Eigenspaces of `ad_a` for the listed eigenvalues, in order. `None` when
/// they do not give a direct sum decomposition of the algebra.
pub fn eigenspace_decomposition<F: Field>(algebra: &Algebra<F>, a: &[F], eigenvalues: &[F]) -> Option<Decomposition<F>> {
    let ad = algebra.left_multiplication(a);
    let n = algebra.dim();
    let parts: Vec<Subspace<F>> = eigenvalues
        .iter()
        .map(|l| Subspace::span(n, &ad.sub(&Matrix::identity(n).scale(l)).kernel_basis()))
        .collect();
    let d = Decomposition::new(parts);
    d.is_direct_sum(n).then_some(d)
}

/// `J_n` with the Peirce decompositions at arbitrary idempotents, each given
/// as an `n × n` matrix, with axes the idempotents themselves.
pub fn jordan_idempotent_algebra(
    n: usize,
    idempotents: &[(String, Vec<Vec<Rational>>)],
) -> Result<DecompositionAlgebra<Rational>, DecompError> {
    let algebra = matrix_jordan_algebra(n);
    let mut decompositions = Vec::new();
    let mut vectors = Vec::new();
    for (name, m) in idempotents {
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(DecompError::Shape(format!("idempotent {name} is not {n}x{n}")));
        }
        let v: Vec<Rational> = m.iter().flatten().cloned().collect();
        if algebra.mul(&v, &v) != v {
            return Err(DecompError::Shape(format!("{name} is not idempotent")));
        }
        let d = eigenspace_decomposition(&algebra, &v, &jordan_lambda())
            .ok_or_else(|| DecompError::Shape(format!("{name} has no Peirce decomposition")))?;
        decompositions.push(d);
        vectors.push(v);
    }
    let indices = idempotents.iter().map(|(name, _)| name.clone()).collect();
    DecompositionAlgebra::new(algebra, jordan_law(), indices, decompositions)?
        .with_axes(Axes { vectors, lambda: jordan_lambda(), axis_label: 0 })
}

/// The corner embedding `J_n → J_m`, `A ↦ diag(A, 0)`, as a linear map.
pub fn corner_embedding(n: usize, m: usize) -> Matrix<Rational> {
    let mut phi = Matrix::zeros(m * m, n * n);
    for i in 0..n {
        for j in 0..n {
            phi.set(matrix_unit_index(m, i, j), matrix_unit_index(n, i, j), rat(1, 1));
        }
    }
    phi
}

/// The matrix of conjugation `X ↦ g X g⁻¹` on `M_n` for `g = diag(signs)`.
pub fn diagonal_conjugation(signs: &[i64]) -> Matrix<Rational> {
    let n = signs.len();
    let mut m = Matrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let a = matrix_unit_index(n, i, j);
            m.set(a, a, rat(signs[i], signs[j]));
        }
    }
    m
}

/// `B = A ⊕ Re ⊕ Rf` with `AM = MA = 0`, indexed by `I × {1, 2}`:
/// `Ω'[i,1] = (A_0^i ⊕ Re, A_1^i ⊕ Rf)` and `Ω'[i,2] = (A_0^i ⊕ Rf, A_1^i ⊕ Re)`.
///
/// `d` must be graded by a two-element law. The inclusion sends index `i`
/// to `(i, choice[i])`.
pub fn trivial_extension<F: Field>(
    d: &DecompositionAlgebra<F>,
    choice: &[usize],
) -> Result<(DecompositionAlgebra<F>, DecMorphism<F>), DecompError> {
    if d.law.len() != 2 || choice.len() != d.indices.len() || choice.iter().any(|&c| c != 1 && c != 2) {
        return Err(DecompError::Shape("needs a two-element law and a choice in {1, 2} per index".into()));
    }
    let n = d.dim();
    let total = n + 2;
    let algebra = Algebra::from_product(total, |a, b| {
        let mut p = d.algebra.mul(&a[..n], &b[..n]);
        p.extend([F::zero(), F::zero()]);
        p
    });
    let lift = |v: &[F]| {
        let mut w = v.to_vec();
        w.extend([F::zero(), F::zero()]);
        w
    };
    let (e, f) = (unit_vector::<F>(total, n), unit_vector::<F>(total, n + 1));
    let mut indices = Vec::new();
    let mut decompositions = Vec::new();
    for (i, dec) in d.decompositions.iter().enumerate() {
        for c in [1, 2] {
            indices.push(format!("({},{c})", d.indices[i]));
            let (first, second) = if c == 1 { (&e, &f) } else { (&f, &e) };
            let part = |x: usize, extra: &Vec<F>| {
                let mut vs: Vec<Vec<F>> = dec.parts[x].basis().iter().map(|v| lift(v)).collect();
                vs.push(extra.clone());
                Subspace::span(total, &vs)
            };
            decompositions.push(Decomposition::new(vec![part(0, first), part(1, second)]));
        }
    }
    let b = DecompositionAlgebra::new(algebra, d.law.clone(), indices, decompositions)?;
    let mut phi = Matrix::zeros(total, n);
    for i in 0..n {
        phi.set(i, i, F::one());
    }
    let psi = choice.iter().enumerate().map(|(i, &c)| 2 * i + c - 1).collect();
    Ok((b, DecMorphism::new(phi, psi)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jordan_product() {
        let j = matrix_jordan_algebra(2);
        let e11 = unit_vector::<Rational>(4, 0);
        let e12 = unit_vector::<Rational>(4, 1);
        assert_eq!(j.mul(&e11, &e11), e11);
        let mut half = vec![rat(0, 1); 4];
        half[1] = rat(1, 2);
        assert_eq!(j.mul(&e11, &e12), half);
        assert!(j.is_commutative());
    }

    #[test]
    fn peirce_dims() {
        assert_eq!(peirce_decomposition(3, 0).dims(), vec![1, 4, 4]);
        assert_eq!(peirce_decomposition(5, 2).dims(), vec![1, 16, 8]);
    }

    #[test]
    fn sign_conjugation_is_automorphism() {
        let j = matrix_jordan_algebra(3);
        assert!(j.is_automorphism(&diagonal_conjugation(&[1, -1, -1])));
        assert!(j.is_homomorphism(&matrix_jordan_algebra(5), &corner_embedding(3, 5)));
    }
}
