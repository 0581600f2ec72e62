use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{tolerance, Field, Rational, C64};
use super::matrix::Matrix;
use super::scalar::FromScalar;
use super::subspace::Subspace;

/// Rational roots of a characteristic polynomial, with multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalSpectrum {
    /// Distinct rational roots, sorted descending, with algebraic multiplicity.
    pub roots: Vec<(Rational, usize)>,
    /// Degree of the factor left after removing all rational roots.
    pub residual_degree: usize,
}

impl RationalSpectrum {
    /// True when the characteristic polynomial splits over the rationals.
    pub fn splits(&self) -> bool {
        self.residual_degree == 0
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }
}

/// All rational eigenvalues of a square rational matrix.
///
/// Roots are searched on the exact characteristic polynomial. Candidates
/// come from float eigenvalue estimates combined with the denominators
/// allowed by the leading coefficient, followed by a classical rational
/// root search on the remaining factor when its coefficients are small
/// enough to factor by trial division. Every reported root is verified
/// exactly.
pub fn rational_eigenvalues(m: &Matrix<Rational>) -> RationalSpectrum {
    assert!(m.is_square(), "eigenvalues need a square matrix");
    let cp = m.characteristic_polynomial();
    let mut poly = integer_polynomial(&cp);
    let mut found: Vec<(Rational, usize)> = Vec::new();

    let zero_mult = poly.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        found.push((<Rational as Zero>::zero(), zero_mult));
        poly.drain(..zero_mult);
    }

    let mut candidates: Vec<Rational> = Vec::new();
    if poly.len() > 1 {
        let lead_divisors = small_divisors(poly.last().unwrap()).unwrap_or_else(|| vec![BigInt::one()]);
        for z in float_eigenvalues_raw(&m.map(|q| <C64 as super::field::Field>::from_rational(q))) {
            if z.im.abs() > 1e-4 * (1.0 + z.re.abs()) {
                continue;
            }
            for q in &lead_divisors {
                let qf = q.to_f64().unwrap_or(1.0);
                let p = (z.re * qf).round();
                if !p.is_finite() {
                    continue;
                }
                for dp in [-1.0, 0.0, 1.0] {
                    candidates.push(BigRational::new(BigInt::from((p + dp) as i64), q.clone()));
                }
            }
        }
    }
    strip_roots(&mut poly, candidates, &mut found);

    if poly.len() > 1 {
        if let (Some(ps), Some(qs)) = (small_divisors(&poly[0]), small_divisors(poly.last().unwrap())) {
            let mut cands = Vec::new();
            for p in &ps {
                for q in &qs {
                    cands.push(BigRational::new(p.clone(), q.clone()));
                    cands.push(BigRational::new(-p.clone(), q.clone()));
                }
            }
            strip_roots(&mut poly, cands, &mut found);
        }
    }

    found.sort_by(|a, b| b.0.cmp(&a.0));
    RationalSpectrum { roots: found, residual_degree: poly.len().saturating_sub(1) }
}

fn strip_roots(poly: &mut Vec<BigInt>, candidates: Vec<Rational>, found: &mut Vec<(Rational, usize)>) {
    for r in candidates {
        if poly.len() <= 1 || found.iter().any(|(f, _)| *f == r) {
            continue;
        }
        let mut mult = 0;
        while poly.len() > 1 {
            match divide_by_root(poly, &r) {
                Some(q) => {
                    *poly = q;
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            found.push((r, mult));
        }
    }
}

/// Clears denominators and content; coefficients lowest degree first.
fn integer_polynomial(cp: &[Rational]) -> Vec<BigInt> {
    let lcm = cp.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = cp.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &content).collect()
}

/// Divides the integer polynomial by the primitive linear factor of `r = p/q`,
/// returning the quotient when the division is exact.
fn divide_by_root(poly: &[BigInt], r: &Rational) -> Option<Vec<BigInt>> {
    // (q x - p) divides poly iff poly(p/q) = 0; synthetic division over Q then rescale.
    let n = poly.len() - 1;
    let mut quotient = vec![<Rational as Zero>::zero(); n];
    let mut carry = <Rational as Zero>::zero();
    for k in (0..=n).rev() {
        let c = BigRational::from_integer(poly[k].clone()) + &carry * r;
        if k == 0 {
            if !Zero::is_zero(&c) {
                return None;
            }
        } else {
            quotient[k - 1] = c.clone();
            carry = c;
        }
    }
    Some(integer_polynomial(&quotient))
}

/// Positive divisors of `n`, when `|n|` is small enough to factor by trial division.
fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

fn to_nalgebra(m: &Matrix<C64>) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(m.rows(), m.cols(), |r, c| m.get(r, c).0)
}

/// Unclustered float eigenvalues of a square matrix.
fn float_eigenvalues_raw(m: &Matrix<C64>) -> Vec<Complex<f64>> {
    let n = m.rows();
    if n == 0 {
        return Vec::new();
    }
    let real = m.entries().iter().all(|z| z.im() == 0.0);
    if real {
        let a = DMatrix::from_fn(n, n, |r, c| m.get(r, c).re());
        let symmetric = (0..n).all(|r| (0..n).all(|c| (a[(r, c)] - a[(c, r)]).abs() <= 1e-12));
        if symmetric {
            return a.symmetric_eigenvalues().iter().map(|&x| Complex::new(x, 0.0)).collect();
        }
        return a.complex_eigenvalues().iter().copied().collect();
    }
    let schur = to_nalgebra(m).schur();
    let (_, t) = schur.unpack();
    (0..n).map(|i| t[(i, i)]).collect()
}

/// Float eigenvalues clustered within `sqrt(tolerance())`, with multiplicities,
/// sorted by descending real part then imaginary part.
pub fn float_eigenvalues(m: &Matrix<C64>) -> Vec<(C64, usize)> {
    let raw = float_eigenvalues_raw(m);
    let radius = tolerance().sqrt();
    let mut clusters: Vec<(Complex<f64>, usize)> = Vec::new();
    for z in raw {
        match clusters.iter_mut().find(|(c, k)| ((*c / *k as f64) - z).norm() <= radius * (1.0 + z.norm())) {
            Some((c, k)) => {
                *c += z;
                *k += 1;
            }
            None => clusters.push((z, 1)),
        }
    }
    let mut out: Vec<(C64, usize)> =
        clusters.into_iter().map(|(c, k)| (C64(c / k as f64), k)).collect();
    out.sort_by(|a, b| b.0.re().total_cmp(&a.0.re()).then(b.0.im().total_cmp(&a.0.im())));
    out
}

/// Orthonormal eigen-decomposition of a real symmetric or complex Hermitian
/// matrix: clustered real eigenvalues (descending) with an orthonormal basis
/// of each eigenspace.
pub fn symmetric_eigenspaces(m: &Matrix<C64>) -> Vec<(f64, Vec<Vec<C64>>)> {
    let n = m.rows();
    let eig = to_nalgebra(m).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let radius = tolerance().sqrt();
    let mut out: Vec<(f64, Vec<Vec<C64>>)> = Vec::new();
    for i in order {
        let lambda = eig.eigenvalues[i];
        let v: Vec<C64> = (0..n).map(|r| C64(eig.eigenvectors[(r, i)])).collect();
        match out.last_mut() {
            Some((l, vs)) if (*l - lambda).abs() <= radius * (1.0 + lambda.abs()) => {
                let k = vs.len() as f64;
                *l = (*l * k + lambda) / (k + 1.0);
                vs.push(v);
            }
            _ => out.push((lambda, vec![v])),
        }
    }
    out
}

/// Eigenspace computations whose method depends on the scalar mode.
pub trait Spectral: FromScalar {
    /// Eigenvalues of `m` on the invariant subspace `v` with their
    /// eigenspaces inside `v`, in descending order. `None` when `v` is not
    /// invariant or the spectrum is out of reach in this mode.
    fn eigenspaces_on(m: &Matrix<Self>, v: &Subspace<Self>) -> Option<Vec<(Self, Subspace<Self>)>>;

    /// Generalized eigenspaces `ker (m - λ)^dim v` on `v`.
    fn generalized_eigenspaces_on(m: &Matrix<Self>, v: &Subspace<Self>) -> Option<Vec<(Self, Subspace<Self>)>> {
        let r = restricted(m, v)?;
        let values = Self::eigenvalues(&r)?;
        let k = r.rows();
        Some(
            values
                .into_iter()
                .map(|l| {
                    let shifted = r.sub(&Matrix::identity(k).scale(&l));
                    let power = (1..k.max(1)).fold(shifted.clone(), |acc, _| acc.mul(&shifted));
                    let space = lift(v, &power.kernel_basis());
                    (l, space)
                })
                .collect(),
        )
    }

    /// Distinct eigenvalues of a square matrix, descending.
    fn eigenvalues(m: &Matrix<Self>) -> Option<Vec<Self>>;
}

/// The matrix of `m` on `v` in the canonical basis of `v`.
fn restricted<F: Field>(m: &Matrix<F>, v: &Subspace<F>) -> Option<Matrix<F>> {
    let columns: Vec<Vec<F>> = v.basis().iter().map(|b| v.coordinates(&m.mul_vec(b))).collect::<Option<_>>()?;
    Matrix::from_columns(v.dim(), &columns).ok()
}

fn lift<F: Field>(v: &Subspace<F>, coords: &[Vec<F>]) -> Subspace<F> {
    let vectors: Vec<Vec<F>> = coords.iter().map(|c| v.combine(c)).collect();
    Subspace::span(v.ambient(), &vectors)
}

fn kernel_spaces<F: Spectral>(m: &Matrix<F>, v: &Subspace<F>) -> Option<Vec<(F, Subspace<F>)>> {
    let r = restricted(m, v)?;
    let k = r.rows();
    let values = F::eigenvalues(&r)?;
    Some(values.into_iter().map(|l| {
        let kernel = r.sub(&Matrix::identity(k).scale(&l)).kernel_basis();
        (l, lift(v, &kernel))
    }).collect())
}

impl Spectral for Rational {
    fn eigenspaces_on(m: &Matrix<Self>, v: &Subspace<Self>) -> Option<Vec<(Self, Subspace<Self>)>> {
        kernel_spaces(m, v)
    }

    fn eigenvalues(m: &Matrix<Self>) -> Option<Vec<Self>> {
        let spectrum = rational_eigenvalues(m);
        spectrum.splits().then(|| spectrum.roots.into_iter().map(|(r, _)| r).collect())
    }
}

impl Spectral for C64 {
    fn eigenspaces_on(m: &Matrix<Self>, v: &Subspace<Self>) -> Option<Vec<(Self, Subspace<Self>)>> {
        if !m.approx_eq(&m.conj_transpose()) {
            return kernel_spaces(m, v);
        }
        let mut out = Vec::new();
        for (l, vectors) in symmetric_eigenspaces(m) {
            let space = Subspace::span(v.ambient(), &vectors).intersection(v);
            if !space.is_zero() {
                out.push((C64::new(l, 0.0), space));
            }
        }
        Some(out)
    }

    fn eigenvalues(m: &Matrix<Self>) -> Option<Vec<Self>> {
        Some(float_eigenvalues(m).into_iter().map(|(l, _)| l).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            &rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn diagonal_spectrum() {
        let m = Matrix::diagonal(&[rat(1, 1), rat(0, 1), rat(1, 2)]);
        let s = rational_eigenvalues(&m);
        assert_eq!(s.roots, vec![(rat(1, 1), 1), (rat(1, 2), 1), (rat(0, 1), 1)]);
        assert!(s.splits());
    }

    #[test]
    fn rotation_has_no_rational_roots() {
        let s = rational_eigenvalues(&q(&[&[0, -1], &[1, 0]]));
        assert!(s.roots.is_empty());
        assert_eq!(s.residual_degree, 2);
        assert!(!s.splits());
    }

    #[test]
    fn repeated_roots_counted() {
        let m = q(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, -3]]);
        let s = rational_eigenvalues(&m);
        assert_eq!(s.roots, vec![(rat(2, 1), 2), (rat(-3, 1), 1)]);
    }

    #[test]
    fn mixed_rational_and_irrational() {
        // diag(1/3) plus a 2x2 block with x^2 - 2
        let mut m = Matrix::<Rational>::zeros(3, 3);
        m.set(0, 0, rat(1, 3));
        m.set(1, 2, rat(2, 1));
        m.set(2, 1, rat(1, 1));
        let s = rational_eigenvalues(&m);
        assert_eq!(s.roots, vec![(rat(1, 3), 1)]);
        assert_eq!(s.residual_degree, 2);
    }

    #[test]
    fn clustering_merges_repeated_float_roots() {
        let m: Matrix<C64> = Matrix::diagonal(&[C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(-2.0, 0.0)]);
        let e = float_eigenvalues(&m);
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].1, 2);
    }
}
