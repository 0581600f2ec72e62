use serde::{Deserialize, Serialize};

use super::DecompError;
use crate::exactlin::{unit_vector, vec_add, vec_scale, Field, FromScalar, Matrix, Scalar, Subspace};

/// A finite-dimensional algebra given by structure constants: the product of
/// basis vectors `i` and `j` is `constants[i][j]`. No associativity,
/// commutativity or unit is assumed.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra<F> {
    dim: usize,
    constants: Vec<Vec<Vec<F>>>,
}

/// JSON shape of an algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub dim: usize,
    pub structure_constants: Vec<Vec<Vec<Scalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commutative: Option<bool>,
}

impl<F: Field> Algebra<F> {
    pub fn new(dim: usize, constants: Vec<Vec<Vec<F>>>) -> Result<Self, DecompError> {
        let ok = constants.len() == dim
            && constants.iter().all(|row| row.len() == dim && row.iter().all(|v| v.len() == dim));
        if !ok {
            return Err(DecompError::Shape(format!("structure constants must be {dim}x{dim}x{dim}")));
        }
        Ok(Algebra { dim, constants })
    }

    /// The algebra with all products zero.
    pub fn zero_product(dim: usize) -> Self {
        Algebra { dim, constants: vec![vec![vec![F::zero(); dim]; dim]; dim] }
    }

    /// Builds the structure constants from a bilinear product on coordinates.
    pub fn from_product(dim: usize, product: impl Fn(&[F], &[F]) -> Vec<F>) -> Self {
        let constants = (0..dim)
            .map(|i| (0..dim).map(|j| product(&unit_vector(dim, i), &unit_vector(dim, j))).collect())
            .collect();
        Algebra { dim, constants }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[F] {
        &self.constants[i][j]
    }

    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let c = x.clone() * y;
                for (o, s) in out.iter_mut().zip(&self.constants[i][j]) {
                    *o += &(c.clone() * s);
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..i).all(|j| self.constants[i][j].iter().zip(&self.constants[j][i]).all(|(a, b)| a.approx_eq(b)))
        })
    }

    /// The matrix of `b ↦ a·b`.
    pub fn left_multiplication(&self, a: &[F]) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.dim).map(|j| self.mul(a, &unit_vector(self.dim, j))).collect();
        Matrix::from_columns(self.dim, &cols).expect("square")
    }

    /// True when `phi` (a `target.dim × self.dim` matrix) is multiplicative on basis pairs.
    pub fn is_homomorphism(&self, target: &Algebra<F>, phi: &Matrix<F>) -> bool {
        self.first_non_multiplicative(target, phi).is_none()
    }

    pub(crate) fn first_non_multiplicative(&self, target: &Algebra<F>, phi: &Matrix<F>) -> Option<(usize, usize)> {
        if phi.rows() != target.dim || phi.cols() != self.dim {
            return Some((usize::MAX, usize::MAX));
        }
        let images: Vec<Vec<F>> = phi.columns();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = phi.mul_vec(&self.constants[i][j]);
                let rhs = target.mul(&images[i], &images[j]);
                if !lhs.iter().zip(&rhs).all(|(a, b)| a.approx_eq(b)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_automorphism(&self, m: &Matrix<F>) -> bool {
        m.is_square() && m.rows() == self.dim && m.rank() == self.dim && self.is_homomorphism(self, m)
    }

    /// `A × B` with basis the basis of `A` followed by that of `B`.
    pub fn direct_product(&self, other: &Algebra<F>) -> Algebra<F> {
        let (n, m) = (self.dim, other.dim);
        let mut constants = vec![vec![vec![F::zero(); n + m]; n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                constants[i][j][..n].clone_from_slice(&self.constants[i][j]);
            }
        }
        for i in 0..m {
            for j in 0..m {
                constants[n + i][n + j][n..].clone_from_slice(&other.constants[i][j]);
            }
        }
        Algebra { dim: n + m, constants }
    }

    /// The subalgebra spanned by `basis`, in coordinates of that basis.
    pub fn restrict(&self, basis: &Subspace<F>) -> Result<Algebra<F>, DecompError> {
        let b = basis.basis();
        let k = b.len();
        let mut constants = vec![vec![Vec::new(); k]; k];
        for i in 0..k {
            for j in 0..k {
                constants[i][j] = basis
                    .coordinates(&self.mul(&b[i], &b[j]))
                    .ok_or_else(|| DecompError::NotClosed(format!("product of basis vectors {i}, {j}")))?;
            }
        }
        Ok(Algebra { dim: k, constants })
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> Algebra<G> {
        Algebra {
            dim: self.dim,
            constants: self.constants.iter().map(|r| r.iter().map(|v| v.iter().map(&f).collect()).collect()).collect(),
        }
    }

    /// Linear combination of basis vectors.
    pub fn combine(&self, coeffs: &[(usize, F)]) -> Vec<F> {
        coeffs.iter().fold(vec![F::zero(); self.dim], |acc, (i, c)| vec_add(&acc, &vec_scale(&unit_vector(self.dim, *i), c)))
    }
}

impl<F: FromScalar> Algebra<F> {
    pub fn from_doc(doc: &AlgebraDoc) -> Result<Self, DecompError> {
        let constants = doc
            .structure_constants
            .iter()
            .map(|r| r.iter().map(|v| v.iter().map(F::from_scalar).collect::<Result<Vec<_>, _>>()).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        let a = Algebra::new(doc.dim, constants)?;
        if doc.commutative == Some(true) && !a.is_commutative() {
            return Err(DecompError::Shape("algebra flagged commutative is not".into()));
        }
        Ok(a)
    }

    pub fn to_doc(&self) -> AlgebraDoc {
        AlgebraDoc {
            dim: self.dim,
            structure_constants: self
                .constants
                .iter()
                .map(|r| r.iter().map(|v| v.iter().map(F::to_scalar).collect()).collect())
                .collect(),
            commutative: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rat, Rational};

    fn q(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn complex_numbers_as_real_algebra() {
        let c = Algebra::<Rational>::from_product(2, |a, b| {
            vec![a[0].clone() * &b[0] - a[1].clone() * &b[1], a[0].clone() * &b[1] + a[1].clone() * &b[0]]
        });
        assert!(c.is_commutative());
        assert_eq!(c.mul(&q(&[0, 1]), &q(&[0, 1])), q(&[-1, 0]));
        let conj = Matrix::diagonal(&q(&[1, -1]));
        assert!(c.is_automorphism(&conj));
        assert!(!c.is_automorphism(&Matrix::diagonal(&q(&[1, 2]))));
    }

    #[test]
    fn product_and_restriction() {
        let a = Algebra::<Rational>::from_product(1, |x, y| vec![x[0].clone() * &y[0]]);
        let p = a.direct_product(&a);
        assert_eq!(p.dim(), 2);
        assert_eq!(p.mul(&q(&[1, 1]), &q(&[2, 3])), q(&[2, 3]));
        let diag = Subspace::span(2, &[q(&[1, 1])]);
        assert_eq!(p.restrict(&diag).unwrap().basis_product(0, 0), q(&[1]).as_slice());
    }

    #[test]
    fn doc_round_trip() {
        let a = Algebra::<Rational>::from_product(1, |x, y| vec![x[0].clone() * &y[0] / rat(2, 1)]);
        let json = serde_json::to_string(&a.to_doc()).unwrap();
        assert_eq!(json, r#"{"dim":1,"structure_constants":[[["1/2"]]]}"#);
        let b = Algebra::<Rational>::from_doc(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
