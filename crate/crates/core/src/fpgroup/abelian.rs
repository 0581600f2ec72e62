use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use super::FpError;
use crate::exactlin::{smith_normal_form, IntegerMatrix, Matrix, Rational};

/// `Z/d_1 × … × Z/d_k` with `d_1 | d_2 | …`, where `0` stands for `Z`;
/// factors equal to `1` are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub invariant_factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { invariant_factors: Vec::new() }
    }

    /// Normalises an arbitrary list of cyclic orders into invariant factors.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let free = orders.iter().filter(|&&d| d == 0).count();
        let finite: Vec<Vec<i64>> = {
            let k = orders.len() - free;
            let mut rows = vec![vec![0i64; k]; k];
            for (i, &d) in orders.iter().filter(|&&d| d != 0).enumerate() {
                rows[i][i] = d as i64;
            }
            rows
        };
        let m = IntegerMatrix::from_i64_rows(&finite).expect("square");
        let mut factors: Vec<u64> = smith_normal_form(&m)
            .s
            .diagonal()
            .iter()
            .map(|d| d.to_u64().expect("small factor"))
            .filter(|&d| d != 1)
            .collect();
        factors.extend(std::iter::repeat(0).take(free));
        AbelianGroup { invariant_factors: factors }
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// `None` when some factor is infinite.
    pub fn order(&self) -> Option<u64> {
        self.invariant_factors.iter().try_fold(1u64, |acc, &d| (d != 0).then(|| acc * d))
    }

    /// Reduces coordinates into canonical range.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        v.iter()
            .zip(&self.invariant_factors)
            .map(|(&x, &d)| if d == 0 { x } else { x.rem_euclid(d as i64) })
            .collect()
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.reduce(&a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>())
    }

    pub fn is_identity(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// True when the given elements generate the whole group.
    pub fn generated_by(&self, elements: &[Vec<i64>]) -> bool {
        let k = self.rank();
        if k == 0 {
            return true;
        }
        let mut rows: Vec<Vec<i64>> = elements.to_vec();
        for (i, &d) in self.invariant_factors.iter().enumerate() {
            let mut r = vec![0; k];
            r[i] = d as i64;
            rows.push(r);
        }
        let f = smith_normal_form(&IntegerMatrix::from_i64_rows(&rows).expect("uniform rows"));
        f.s.diagonal().iter().filter(|d| d.is_one()).count() == k
    }
}

/// `Γ/[Γ, Γ]` for a presentation, with the image of each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianQuotient {
    pub group: AbelianGroup,
    /// Coordinates of the image of each generator.
    pub images: Vec<Vec<i64>>,
    /// Each group basis element as an exponent vector over the generators.
    pub basis_in_generators: Vec<Vec<i64>>,
}

/// Abelianization via the Smith normal form of the relation matrix.
pub fn abelianize(p: &Presentation) -> Result<AbelianQuotient, FpError> {
    let n = p.generators().len();
    let rows = p.relation_matrix();
    let m = if rows.is_empty() {
        IntegerMatrix::zeros(0, n)
    } else {
        IntegerMatrix::from_i64_rows(&rows).map_err(|e| FpError::Internal(e.to_string()))?
    };
    let f = smith_normal_form(&m);
    let d = f.invariant_factors_padded();
    // Row vectors transform as x -> x V, sending the relation lattice onto the
    // diagonal lattice of S.
    let keep: Vec<usize> = (0..n).filter(|&i| !d[i].is_one()).collect();
    let mut order: Vec<usize> = keep.iter().copied().filter(|&i| !d[i].is_zero()).collect();
    order.extend(keep.iter().copied().filter(|&i| d[i].is_zero()));
    let factors: Vec<u64> = order.iter().map(|&i| to_u64(&d[i])).collect::<Result<_, _>>()?;
    let group = AbelianGroup { invariant_factors: factors };

    let images = (0..n)
        .map(|j| {
            let raw: Vec<i64> = order.iter().map(|&i| to_i64(f.v.get(j, i))).collect::<Result<_, _>>()?;
            Ok(group.reduce(&raw))
        })
        .collect::<Result<Vec<_>, FpError>>()?;

    let v_inv = integer_inverse(&f.v)?;
    let basis_in_generators = order
        .iter()
        .map(|&i| (0..n).map(|j| to_i64(v_inv.get(i, j))).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;

    Ok(AbelianQuotient { group, images, basis_in_generators })
}

fn to_u64(x: &BigInt) -> Result<u64, FpError> {
    x.to_u64().ok_or(FpError::Overflow)
}

fn to_i64(x: &BigInt) -> Result<i64, FpError> {
    x.to_i64().ok_or(FpError::Overflow)
}

fn integer_inverse(v: &IntegerMatrix) -> Result<IntegerMatrix, FpError> {
    let n = v.rows();
    if n == 0 {
        return Ok(IntegerMatrix::zeros(0, 0));
    }
    let q: Vec<Vec<Rational>> = (0..n)
        .map(|r| (0..n).map(|c| Rational::from_integer(v.get(r, c).clone())).collect())
        .collect();
    let inv = Matrix::from_rows(&q)
        .map_err(|e| FpError::Internal(e.to_string()))?
        .inverse()
        .ok_or_else(|| FpError::Internal("transform not invertible".into()))?;
    let mut out = IntegerMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            let x = inv.get(r, c);
            if !x.denom().is_one() {
                return Err(FpError::Internal("transform not unimodular".into()));
            }
            out.set(r, c, x.numer().clone());
        }
    }
    Ok(out)
}

/// `a | b`, with `0` standing for an infinite order.
pub fn divides(a: u64, b: u64) -> bool {
    if a == 0 {
        return b == 0;
    }
    b % a == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalise_cyclic_orders() {
        assert_eq!(AbelianGroup::from_cyclic_orders(&[2, 3]).invariant_factors, vec![6]);
        assert_eq!(AbelianGroup::from_cyclic_orders(&[2, 2, 0]).invariant_factors, vec![2, 2, 0]);
        assert_eq!(AbelianGroup::from_cyclic_orders(&[1]).invariant_factors, Vec::<u64>::new());
        assert_eq!(AbelianGroup::from_cyclic_orders(&[4, 6]).invariant_factors, vec![2, 12]);
    }

    #[test]
    fn abelianize_cyclic_and_free() {
        let p = Presentation::from_strs(&["a", "b"], &[&["a^4"], &["b^6"]]).unwrap();
        let q = abelianize(&p).unwrap();
        assert_eq!(q.group.invariant_factors, vec![2, 12]);
        assert!(q.group.generated_by(&q.images));
        let free = Presentation::from_strs(&["a", "b"], &[]).unwrap();
        assert_eq!(abelianize(&free).unwrap().group.invariant_factors, vec![0, 0]);
    }

    #[test]
    fn basis_round_trip() {
        let p = Presentation::from_strs(&["a", "b", "c"], &[&["a^2"], &["a", "b", "c^-1"], &["c^2"]]).unwrap();
        let q = abelianize(&p).unwrap();
        // Each basis element expressed in generators maps back to the unit vector.
        for (i, w) in q.basis_in_generators.iter().enumerate() {
            let mut v = vec![0i64; q.group.rank()];
            for (j, &e) in w.iter().enumerate() {
                for (k, x) in q.images[j].iter().enumerate() {
                    v[k] += e * x;
                }
            }
            let mut unit = vec![0; q.group.rank()];
            unit[i] = 1;
            assert_eq!(q.group.reduce(&v), q.group.reduce(&unit));
        }
    }
}
