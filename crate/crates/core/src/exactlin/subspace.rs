use super::field::Field;
use super::matrix::{vec_is_zero, Matrix};

/// A linear subspace of `F^n`, stored as the non-zero rows of a reduced row
/// echelon form so that equal subspaces have equal representations.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| super::matrix::unit_vector(ambient, i)).collect();
        Subspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn span(ambient: usize, vectors: &[Vec<F>]) -> Self {
        let vectors: Vec<Vec<F>> = vectors.iter().filter(|v| !vec_is_zero(v)).cloned().collect();
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length mismatch");
        let m = Matrix::from_rows(&vectors).expect("uniform rows");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// The canonical (RREF) basis.
    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    /// Coordinates of `v` in the canonical basis, or `None` when `v` is outside.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        let coords: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(b) {
                *r -= &(c.clone() * x);
            }
        }
        if F::EXACT {
            vec_is_zero(&residual).then_some(coords)
        } else {
            let scale = 1.0 + v.iter().map(Field::magnitude).fold(0.0, f64::max);
            let tol = super::tolerance() * scale * 10.0;
            residual.iter().all(|x| x.magnitude() <= tol).then_some(coords)
        }
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &vs)
    }

    pub fn intersection(&self, other: &Subspace<F>) -> Subspace<F> {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        // Solve sum a_i u_i - sum b_j w_j = 0.
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|x| -x.clone()).collect::<Vec<_>>()));
        let m = Matrix::from_columns(self.ambient, &cols).expect("uniform columns");
        let vectors: Vec<Vec<F>> = m
            .kernel_basis()
            .into_iter()
            .map(|k| self.combine(&k[..self.dim()]))
            .collect();
        Subspace::span(self.ambient, &vectors)
    }

    /// `sum coeffs[i] * basis[i]`.
    pub fn combine(&self, coeffs: &[F]) -> Vec<F> {
        let mut v = vec![F::zero(); self.ambient];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                *x += &(c.clone() * y);
            }
        }
        v
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, m: &Matrix<F>) -> Subspace<F> {
        let vs: Vec<Vec<F>> = self.basis.iter().map(|b| m.mul_vec(b)).collect();
        Subspace::span(m.rows(), &vs)
    }

    /// Same subspace, compared exactly for rationals and within tolerance for floats.
    pub fn same_as(&self, other: &Subspace<F>) -> bool {
        self.ambient == other.ambient
            && self.dim() == other.dim()
            && self.contains_subspace(other)
            && other.contains_subspace(self)
    }

    /// Standard basis vectors completing this subspace to the whole space.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }
}

/// True when the subspaces are independent and together span `F^ambient`.
pub fn is_direct_sum_decomposition<F: Field>(ambient: usize, parts: &[Subspace<F>]) -> bool {
    let total: usize = parts.iter().map(Subspace::dim).sum();
    if total != ambient {
        return false;
    }
    let all: Vec<Vec<F>> = parts.iter().flat_map(|p| p.basis().iter().cloned()).collect();
    Subspace::span(ambient, &all).dim() == ambient
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rat, Rational};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn canonical_form_identifies_equal_spans() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, &[v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert!(a.same_as(&b));
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let i = a.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[0, 5, 0])));
        assert_eq!(a.sum(&b).dim(), 3);
        assert_eq!(a.coordinates(&v(&[2, 3, 0])), Some(v(&[2, 3])));
        assert_eq!(a.coordinates(&v(&[2, 3, 1])), None);
    }

    #[test]
    fn direct_sum_check() {
        let a = Subspace::span(2, &[v(&[1, 1])]);
        let b = Subspace::span(2, &[v(&[1, -1])]);
        assert!(is_direct_sum_decomposition(2, &[a.clone(), b]));
        assert!(!is_direct_sum_decomposition(2, &[a.clone(), a]));
    }
}
