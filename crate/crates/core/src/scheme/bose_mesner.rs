use std::cmp::Ordering;

use super::{AssociationScheme, SchemeError};
use crate::exactlin::{tolerance, Field, Matrix, Spectral, Subspace};

pub const MAX_EXACT_POINTS: usize = 200;
pub const MAX_FLOAT_POINTS: usize = 1000;

/// The adjacency algebra of a scheme with its primitive idempotents and
/// Krein parameters.
#[derive(Clone, Debug)]
pub struct BoseMesner<F> {
    pub scheme: AssociationScheme,
    pub adjacency: Vec<Matrix<F>>,
    /// Common eigenspaces `V_0, …, V_d`, with `V_0` the constants.
    pub eigenspaces: Vec<Subspace<F>>,
    /// `E_j`, the projection onto `V_j`.
    pub idempotents: Vec<Matrix<F>>,
    /// `eigenvalues[j][i]` is the eigenvalue of `A_i` on `V_j`.
    pub eigenvalues: Vec<Vec<F>>,
    /// `krein[i][j][k] = q_ij^k`.
    pub krein: Vec<Vec<Vec<F>>>,
}

fn compare<F: Field>(a: &[F], b: &[F]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if x.approx_eq(y) {
            continue;
        }
        let (x, y) = (x.to_complex(), y.to_complex());
        return y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im));
    }
    Ordering::Equal
}

/// A combination of the adjacency matrices whose eigenspaces are the common
/// eigenspaces: integer weights in exact mode, a Hermitian combination of
/// the symmetric and skew parts in float mode.
fn separating_combination<F: Field>(adjacency: &[Matrix<F>]) -> Matrix<F> {
    let n = adjacency[0].rows();
    let mut h = Matrix::zeros(n, n);
    if F::EXACT {
        let base = F::from_i64(2 * n as i64 + 1);
        let mut weight = F::one();
        for a in &adjacency[1..] {
            h = h.add(&a.scale(&weight));
            weight = weight * &base;
        }
    } else {
        for (i, a) in adjacency.iter().enumerate().skip(1) {
            let t = a.transpose();
            let (c, s) = (1.0 + 0.618_033_988_7 * i as f64, 0.577_215_664_9 + (i as f64).sqrt());
            let sym = a.add(&t).scale(&F::from_complex(c, 0.0).expect("float mode"));
            let skew = a.sub(&t).scale(&F::from_complex(0.0, s).expect("float mode"));
            h = h.add(&sym).add(&skew);
        }
    }
    h
}

/// Simultaneous diagonalization of the adjacency matrices.
///
/// In exact mode every adjacency matrix must have a rational spectrum.
pub fn bose_mesner<F: Spectral>(scheme: &AssociationScheme) -> Result<BoseMesner<F>, SchemeError> {
    let n = scheme.n();
    let limit = if F::EXACT { MAX_EXACT_POINTS } else { MAX_FLOAT_POINTS };
    if n > limit {
        return Err(SchemeError::TooLarge { n, limit });
    }
    let d = scheme.classes();
    let adjacency: Vec<Matrix<F>> = (0..=d)
        .map(|i| {
            let data = scheme.relations().iter().flatten().map(|&r| if r == i { F::one() } else { F::zero() }).collect();
            Matrix::new(n, n, data).expect("square")
        })
        .collect();

    let spaces: Vec<Subspace<F>> = if d == 0 {
        vec![Subspace::full(n)]
    } else {
        let h = separating_combination(&adjacency);
        F::eigenspaces_on(&h, &Subspace::full(n))
            .ok_or_else(|| SchemeError::Eigen("spectrum is not rational; use float mode".into()))?
            .into_iter()
            .map(|(_, s)| s)
            .collect()
    };
    if spaces.len() != d + 1 || spaces.iter().map(Subspace::dim).sum::<usize>() != n {
        return Err(SchemeError::Eigen(format!("found {} common eigenspaces for {} classes", spaces.len(), d + 1)));
    }
    let mut entries = Vec::new();
    for space in spaces {
        let b = &space.basis()[0];
        let p = b.iter().position(|x| !x.is_zero()).expect("non-zero basis vector");
        let thetas: Vec<F> = adjacency.iter().map(|a| a.mul_vec(b)[p].clone() / &b[p]).collect();
        for (a, t) in adjacency.iter().zip(&thetas) {
            if space.basis().iter().any(|v| !a.mul_vec(v).iter().zip(v).all(|(x, y)| x.approx_eq(&(t.clone() * y)))) {
                return Err(SchemeError::Eigen("eigenspace is not common to all adjacency matrices".into()));
            }
        }
        entries.push((space, thetas));
    }
    let ones = vec![F::one(); n];
    let trivial = entries
        .iter()
        .position(|(s, _)| s.dim() == 1 && s.contains(&ones))
        .ok_or_else(|| SchemeError::Eigen("constants do not form an eigenspace".into()))?;
    let first = entries.remove(trivial);
    entries.sort_by(|a, b| compare(&a.1, &b.1));
    entries.insert(0, first);
    let (eigenspaces, eigenvalues): (Vec<_>, Vec<_>) = entries.into_iter().unzip();

    let columns: Vec<Vec<F>> = eigenspaces.iter().flat_map(|s| s.basis().iter().cloned()).collect();
    let basis = Matrix::from_columns(n, &columns)?;
    let inverse = basis.inverse().ok_or_else(|| SchemeError::Eigen("eigenspaces are dependent".into()))?;
    let mut offset = 0;
    let idempotents: Vec<Matrix<F>> = eigenspaces
        .iter()
        .map(|s| {
            let diag: Vec<F> = (0..n).map(|k| if (offset..offset + s.dim()).contains(&k) { F::one() } else { F::zero() }).collect();
            offset += s.dim();
            basis.mul(&Matrix::diagonal(&diag)).mul(&inverse)
        })
        .collect();

    let size = F::from_i64(n as i64);
    let mut krein = vec![vec![vec![F::zero(); d + 1]; d + 1]; d + 1];
    for i in 0..=d {
        for j in 0..=d {
            let h = idempotents[i].hadamard(&idempotents[j]);
            let mut expansion = Matrix::zeros(n, n);
            for k in 0..=d {
                let m_k = F::from_i64(eigenspaces[k].dim() as i64);
                let q = size.clone() * &h.mul(&idempotents[k]).trace() / &m_k;
                expansion = expansion.add(&idempotents[k].scale(&(q.clone() / &size)));
                krein[i][j][k] = q;
            }
            if !expansion.approx_eq(&h) {
                return Err(SchemeError::Eigen(format!("E_{i} o E_{j} is not in the span of the idempotents")));
            }
        }
    }
    Ok(BoseMesner { scheme: scheme.clone(), adjacency, eigenspaces, idempotents, eigenvalues, krein })
}

impl<F: Spectral> BoseMesner<F> {
    pub fn n(&self) -> usize {
        self.scheme.n()
    }

    pub fn classes(&self) -> usize {
        self.scheme.classes()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.eigenspaces.iter().map(Subspace::dim).collect()
    }

    /// `q_ij^k`.
    pub fn q(&self, i: usize, j: usize, k: usize) -> &F {
        &self.krein[i][j][k]
    }

    /// All Krein parameters are real and at least `-ε`.
    pub fn krein_condition(&self) -> bool {
        let eps = tolerance();
        self.krein.iter().flatten().flatten().all(|q| {
            let z = q.to_complex();
            z.im.abs() <= eps.sqrt() && z.re >= -eps.sqrt()
        })
    }

    /// `A_i A_j = Σ_k p_ij^k A_k` for all `i, j`.
    pub fn check_intersection_numbers(&self) -> bool {
        let d = self.classes();
        (0..=d).all(|i| {
            (0..=d).all(|j| {
                let lhs = self.adjacency[i].mul(&self.adjacency[j]);
                let rhs = (0..=d).fold(Matrix::zeros(self.n(), self.n()), |acc, k| {
                    acc.add(&self.adjacency[k].scale(&F::from_i64(self.scheme.p(i, j, k) as i64)))
                });
                lhs.approx_eq(&rhs)
            })
        })
    }

    /// `E_i E_j = δ_ij E_i` and `Σ E_i = I`.
    pub fn check_idempotents(&self) -> bool {
        let n = self.n();
        let sum = self.idempotents.iter().fold(Matrix::zeros(n, n), |acc, e| acc.add(e));
        sum.approx_eq(&Matrix::identity(n))
            && self.idempotents.iter().enumerate().all(|(i, a)| {
                self.idempotents.iter().enumerate().all(|(j, b)| {
                    let p = a.mul(b);
                    if i == j {
                        p.approx_eq(a)
                    } else {
                        p.is_zero()
                    }
                })
            })
    }
}
