use std::fmt;
use std::hash::{Hash, Hasher};

use super::field::Field;
use super::LinAlgError;

/// Dense row-major matrix over a [`Field`].
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self, LinAlgError> {
        if data.len() != rows * cols {
            return Err(LinAlgError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<F>]) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinAlgError::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows.iter().flatten().cloned().collect() })
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Result<Self, LinAlgError> {
        if cols.iter().any(|c| c.len() != rows) {
            return Err(LinAlgError::Shape("column length mismatch".into()));
        }
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn conj_transpose(&self) -> Self {
        let mut t = self.transpose();
        for v in &mut t.data {
            *v = v.conj();
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.data[i * rhs.cols + j] += &(a.clone() * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a.clone() * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Matrix<F> {
        self.map(|v| v.clone() * s)
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() * b).collect(),
        }
    }

    pub fn trace(&self) -> F {
        let mut t = F::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.approx_eq(&Self::identity(self.rows))
    }

    pub fn approx_eq(&self, rhs: &Matrix<F>) -> bool {
        self.rows == rhs.rows
            && self.cols == rhs.cols
            && self.data.iter().zip(&rhs.data).all(|(a, b)| a.approx_eq(b))
    }

    /// Largest entry magnitude of `self - rhs`.
    pub fn residual(&self, rhs: &Matrix<F>) -> f64 {
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a.clone() - b).magnitude())
            .fold(0.0, f64::max)
    }

    /// Reduced row echelon form and pivot columns.
    ///
    /// Exact fields pivot on the first non-zero entry; float fields use partial
    /// pivoting and flush entries below tolerance to zero.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let pick = if F::EXACT {
                (row..m.rows).find(|&r| !m.get(r, col).is_zero())
            } else {
                (row..m.rows)
                    .filter(|&r| !m.get(r, col).is_zero())
                    .max_by(|&a, &b| m.get(a, col).magnitude().total_cmp(&m.get(b, col).magnitude()))
            };
            let Some(p) = pick else {
                if !F::EXACT {
                    for r in row..m.rows {
                        m.data[r * m.cols + col] = F::zero();
                    }
                }
                continue;
            };
            m.swap_rows(row, p);
            let inv = F::one() / m.get(row, col);
            for c in col..m.cols {
                let v = m.get(row, c).clone() * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    if !F::EXACT {
                        m.set(r, col, F::zero());
                    }
                    continue;
                }
                for c in col..m.cols {
                    let sub = factor.clone() * m.get(row, c);
                    let v = m.get(r, c).clone() - sub;
                    m.set(r, c, v);
                }
                m.set(r, col, F::zero());
            }
            pivots.push(col);
            row += 1;
        }
        if !F::EXACT {
            for v in &mut m.data {
                if v.is_zero() {
                    *v = F::zero();
                }
            }
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v | self * v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); self.cols];
                v[free] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, free).clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, F::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    /// Some solution `x` of `self * x = b`, if the system is consistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = red.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn determinant(&self) -> F {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = self.rows;
        let mut det = F::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return F::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det = det * &pivot;
            for r in col + 1..n {
                let factor = m.get(r, col).clone() / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c).clone() - factor.clone() * m.get(col, c);
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    /// Coefficients `c_0, .., c_n` of `det(x I - self)`, lowest degree first (Faddeev-LeVerrier).
    pub fn characteristic_polynomial(&self) -> Vec<F> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m);
            for i in 0..n {
                let v = next.get(i, i).clone() + &coeffs[n - k + 1];
                next.set(i, i, v);
            }
            let t = self.mul(&next).trace();
            coeffs[n - k] = -(t / F::from_i64(k as i64));
            m = next;
        }
        coeffs
    }

    /// Canonical hashable key; floats are quantized.
    pub fn key(&self) -> MatrixKey<F> {
        MatrixKey(self.clone())
    }
}

/// Hash-map key wrapper for matrices: exact equality for rationals,
/// quantized hashing plus tolerant equality for floats.
#[derive(Clone, Debug)]
pub struct MatrixKey<F>(pub Matrix<F>);

impl<F: Field> Hash for MatrixKey<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.rows.hash(state);
        self.0.cols.hash(state);
        for v in &self.0.data {
            v.hash_into(state);
        }
    }
}

impl<F: Field> PartialEq for MatrixKey<F> {
    fn eq(&self, other: &Self) -> bool {
        self.0.approx_eq(&other.0)
    }
}

impl<F: Field> Eq for MatrixKey<F> {}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b) {
        acc += &(x.clone() * y);
    }
    acc
}

pub fn vec_is_zero<F: Field>(v: &[F]) -> bool {
    v.iter().all(Field::is_zero)
}

pub fn vec_scale<F: Field>(v: &[F], s: &F) -> Vec<F> {
    v.iter().map(|x| x.clone() * s).collect()
}

pub fn vec_add<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y).collect()
}

pub fn vec_sub<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y).collect()
}

pub fn vec_approx_eq<F: Field>(a: &[F], b: &[F]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.approx_eq(y))
}

pub fn unit_vector<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rat, Rational, C64};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            &rows.iter().map(|r| r.iter().map(|&v| Rational::from_i64(v)).collect()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = q(&[&[1, 1], &[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![rat(-1, 1), rat(1, 1)]]);
        assert!(q(&[&[1, 0], &[0, 1]]).kernel_basis().is_empty());
    }

    #[test]
    fn inverse_and_solve() {
        let m = q(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.solve(&[rat(3, 1), rat(2, 1)]), Some(vec![rat(1, 1), rat(1, 1)]));
        assert!(q(&[&[1, 1], &[1, 1]]).solve(&[rat(1, 1), rat(0, 1)]).is_none());
    }

    #[test]
    fn characteristic_polynomial_matches_determinant() {
        let m = q(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let cp = m.characteristic_polynomial();
        // c_0 = (-1)^n det
        assert_eq!(cp[0], -m.determinant());
        assert_eq!(cp[2], -m.trace());
        assert_eq!(cp[3], rat(1, 1));
    }

    #[test]
    fn float_rref_flushes_noise() {
        let m: Matrix<C64> = Matrix::from_rows(&[
            vec![C64::new(1.0, 0.0), C64::new(2.0, 0.0)],
            vec![C64::new(2.0, 0.0), C64::new(4.0 + 1e-13, 0.0)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel_basis().len(), 1);
    }
}
