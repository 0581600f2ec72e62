//! Exact rational and tolerant complex scalar arithmetic with dense linear algebra.

mod eigen;
mod field;
mod matrix;
mod scalar;
mod snf;
mod subspace;

pub use eigen::{float_eigenvalues, rational_eigenvalues, symmetric_eigenspaces, RationalSpectrum, Spectral};
pub use field::{
    format_rational, parse_rational, rat, set_tolerance, tolerance, Field, Rational, C64,
    DEFAULT_TOLERANCE,
};
pub use matrix::{
    dot, unit_vector, vec_add, vec_approx_eq, vec_is_zero, vec_scale, vec_sub, Matrix, MatrixKey,
};
pub use scalar::{FromScalar, Scalar};
pub use snf::{smith_normal_form, IntegerMatrix, SmithForm};
pub use subspace::{is_direct_sum_decomposition, Subspace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("mixed scalar variants (exact rational vs complex float)")]
    VariantMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape error: {0}")]
    Shape(String),
}

/// A matrix whose entries all share one scalar variant.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarMatrix {
    Exact(Matrix<Rational>),
    Float(Matrix<C64>),
}

impl ScalarMatrix {
    /// Builds a matrix from dynamic scalars, rejecting mixed variants.
    pub fn from_rows(rows: &[Vec<Scalar>]) -> Result<Self, LinAlgError> {
        let all: Vec<&Scalar> = rows.iter().flatten().collect();
        if all.iter().all(|s| s.is_exact()) {
            let r: Vec<Vec<Rational>> = rows
                .iter()
                .map(|row| row.iter().map(|s| s.as_rational().unwrap().clone()).collect())
                .collect();
            Ok(ScalarMatrix::Exact(Matrix::from_rows(&r)?))
        } else if all.iter().all(|s| !s.is_exact()) {
            let r: Vec<Vec<C64>> = rows.iter().map(|row| row.iter().map(Scalar::to_c64).collect()).collect();
            Ok(ScalarMatrix::Float(Matrix::from_rows(&r)?))
        } else {
            Err(LinAlgError::VariantMismatch)
        }
    }
}

/// Exact right null space. Float input is a variant error; use [`kernel_basis_tol`].
pub fn kernel_basis(m: &ScalarMatrix) -> Result<Vec<Vec<Scalar>>, LinAlgError> {
    match m {
        ScalarMatrix::Exact(m) => Ok(m
            .kernel_basis()
            .into_iter()
            .map(|v| v.into_iter().map(Scalar::Rational).collect())
            .collect()),
        ScalarMatrix::Float(_) => Err(LinAlgError::VariantMismatch),
    }
}

/// Null space with zero-threshold `eps` (entries of either variant are handled as floats).
pub fn kernel_basis_tol(m: &ScalarMatrix, eps: f64) -> Vec<Vec<Scalar>> {
    let fm = match m {
        ScalarMatrix::Exact(m) => m.map(C64::from_rational),
        ScalarMatrix::Float(m) => m.clone(),
    };
    let previous = tolerance();
    set_tolerance(eps);
    let k = fm.kernel_basis();
    set_tolerance(previous);
    k.into_iter().map(|v| v.into_iter().map(Scalar::Complex).collect()).collect()
}

/// Rational eigenvalues of an exact square matrix.
pub fn rational_eigenvalues_of(m: &ScalarMatrix) -> Result<RationalSpectrum, LinAlgError> {
    match m {
        ScalarMatrix::Exact(m) if m.is_square() => Ok(rational_eigenvalues(m)),
        ScalarMatrix::Exact(_) => Err(LinAlgError::Shape("eigenvalues need a square matrix".into())),
        ScalarMatrix::Float(_) => Err(LinAlgError::VariantMismatch),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_kernel_rejects_floats() {
        let m = ScalarMatrix::from_rows(&[vec![Scalar::Complex(C64::new(1.0, 0.0))]]).unwrap();
        assert_eq!(kernel_basis(&m), Err(LinAlgError::VariantMismatch));
        assert!(kernel_basis_tol(&m, 1e-9).is_empty());
    }

    #[test]
    fn mixed_rows_rejected() {
        let rows = vec![vec![Scalar::Rational(rat(1, 1)), Scalar::Complex(C64::new(1.0, 0.0))]];
        assert_eq!(ScalarMatrix::from_rows(&rows), Err(LinAlgError::VariantMismatch));
    }
}
