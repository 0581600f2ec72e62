use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::LinAlgError;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, LinAlgError> {
        if data.len() != rows * cols {
            return Err(LinAlgError::Shape(format!(
                "{} entries for a {rows}x{cols} integer matrix",
                data.len()
            )));
        }
        Ok(IntegerMatrix { rows, cols, data })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinAlgError::Shape("ragged rows".into()));
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m.get(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    /// Diagonal entries `S[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(src, c) * k;
            self.data[dst * self.cols + c] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, src) * k;
            self.data[r * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c).clone();
            self.set(r, c, v);
        }
    }
}

/// Smith normal form `S = U * m * V` with `U`, `V` unimodular and
/// `S` diagonal, non-negative, with `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// Diagonal of `S` padded with zeros to `cols` entries: the abelian group
    /// `Z^cols / rowspace(m)` is `sum Z/d_i`.
    pub fn invariant_factors_padded(&self) -> Vec<BigInt> {
        let mut d = self.s.diagonal();
        d.resize(self.s.cols(), BigInt::zero());
        d
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // smallest non-zero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    let x = s.get(r, c);
                    if x.is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(br, bc)| x.abs() < s.get(br, bc).abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else {
                return finish(s, u, v);
            };
            s.swap_rows(t, pr);
            u.swap_rows(t, pr);
            s.swap_cols(t, pc);
            v.swap_cols(t, pc);

            let mut clean = true;
            for r in t + 1..rows {
                if s.get(r, t).is_zero() {
                    continue;
                }
                let q = -s.get(r, t).div_floor(s.get(t, t));
                s.add_row(r, t, &q);
                u.add_row(r, t, &q);
                if !s.get(r, t).is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..cols {
                if s.get(t, c).is_zero() {
                    continue;
                }
                let q = -s.get(t, c).div_floor(s.get(t, t));
                s.add_col(c, t, &q);
                v.add_col(c, t, &q);
                if !s.get(t, c).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and retry
            let pivot = s.get(t, t).clone();
            let offending = (t + 1..rows)
                .find(|&r| (t + 1..cols).any(|c| !s.get(r, c).is_multiple_of(&pivot)));
            match offending {
                Some(r) => {
                    let one = BigInt::one();
                    s.add_row(t, r, &one);
                    u.add_row(t, r, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(s, u, v)
}

fn finish(s: IntegerMatrix, u: IntegerMatrix, v: IntegerMatrix) -> SmithForm {
    SmithForm { s, u, v }
}
