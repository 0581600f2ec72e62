use serde::Serialize;

use super::{BoseMesner, SchemeError};
use crate::decomp::{Algebra, Axes, Decomposition, DecompositionAlgebra};
use crate::exactlin::{format_rational, unit_vector, vec_is_zero, Matrix, Spectral, Subspace};
use crate::fusion::FusionLaw;

/// The Norton algebra `(V_i, ⋆)` in the canonical basis of `V_i`.
#[derive(Clone, Debug)]
pub struct NortonAlgebra<F> {
    pub index: usize,
    /// `V_i` inside `F^X`.
    pub space: Subspace<F>,
    pub algebra: Algebra<F>,
}

impl<F: Spectral> BoseMesner<F> {
    /// `σ_ij^k(v, w)`: pointwise product projected to `V_k`.
    pub fn sigma(&self, k: usize, v: &[F], w: &[F]) -> Vec<F> {
        let pointwise: Vec<F> = v.iter().zip(w).map(|(a, b)| a.clone() * b).collect();
        self.idempotents[k].mul_vec(&pointwise)
    }

    /// Largest deviation in
    /// `σ_ij^k(π_i(e_x), π_j(e_x)) = (1/n) q_ij^k π_k(e_x)` over all `i, j, k, x`.
    pub fn sigma_identity_residual(&self) -> f64 {
        let n = self.n();
        let size = F::from_i64(n as i64);
        let d = self.classes();
        let points: Vec<Vec<Vec<F>>> = (0..=d).map(|i| (0..n).map(|x| self.projected_point(i, x)).collect()).collect();
        let mut worst = 0.0f64;
        for i in 0..=d {
            for j in 0..=d {
                for k in 0..=d {
                    let scale = self.q(i, j, k).clone() / &size;
                    for x in 0..n {
                        let lhs = self.sigma(k, &points[i][x], &points[j][x]);
                        for (a, b) in lhs.iter().zip(&points[k][x]) {
                            worst = worst.max((a.clone() - &(scale.clone() * b)).to_complex().norm());
                        }
                    }
                }
            }
        }
        worst
    }

    /// `π_i(e_x)`.
    pub fn projected_point(&self, i: usize, x: usize) -> Vec<F> {
        self.idempotents[i].mul_vec(&unit_vector(self.n(), x))
    }
}

pub fn norton_algebra<F: Spectral>(bm: &BoseMesner<F>, i: usize) -> Result<NortonAlgebra<F>, SchemeError> {
    if i > bm.classes() {
        return Err(SchemeError::IndexOutOfRange(i));
    }
    let space = bm.eigenspaces[i].clone();
    let algebra = Algebra::from_product(space.dim(), |a, b| {
        let (v, w) = (space.combine(a), space.combine(b));
        let s = bm.sigma(i, &v, &w);
        space.coordinates(&s).expect("projection lies in the eigenspace")
    });
    Ok(NortonAlgebra { index: i, space, algebra })
}

impl<F: Spectral> NortonAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Coordinates of an ambient vector of `V_i`.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        self.space.coordinates(v)
    }

    /// `π_i(e_x)` in Norton coordinates.
    pub fn axis(&self, bm: &BoseMesner<F>, x: usize) -> Vec<F> {
        self.coordinates(&bm.projected_point(self.index, x)).expect("projection lies in the eigenspace")
    }
}

/// The axial decomposition algebra on a Norton algebra, indexed by points.
#[derive(Clone, Debug)]
pub struct NortonCertificate<F> {
    pub norton: NortonAlgebra<F>,
    pub object: DecompositionAlgebra<F>,
    /// Eigenvalues labelling the law, descending.
    pub eigenvalues: Vec<F>,
    /// Every `ad` had a full eigenbasis.
    pub full_eigenbasis: bool,
    /// Exact arithmetic on a symmetric scheme.
    pub certified: bool,
    /// Built from generalized eigenspaces.
    pub generalized: bool,
}

/// JSON summary of a certificate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateSummary {
    pub index: usize,
    pub dim: usize,
    pub axes: usize,
    pub eigenvalues: Vec<String>,
    pub full_eigenbasis: bool,
    pub certified: bool,
    pub generalized: bool,
    pub valid: bool,
    pub axial: Option<bool>,
}

impl<F: Spectral> NortonCertificate<F> {
    pub fn summary(&self) -> CertificateSummary {
        let report = self.object.verify();
        CertificateSummary {
            index: self.norton.index,
            dim: self.norton.dim(),
            axes: self.object.indices.len(),
            eigenvalues: self.object.law.labels().to_vec(),
            full_eigenbasis: self.full_eigenbasis,
            certified: self.certified,
            generalized: self.generalized,
            valid: report.valid,
            axial: report.axial,
        }
    }
}

pub(crate) fn eigen_label<F: Spectral>(l: &F) -> String {
    if F::EXACT {
        if let Some(q) = l.to_scalar().as_rational() {
            return format_rational(q);
        }
    }
    let z = l.to_complex();
    let clean = |x: f64| if x.abs() < 1e-9 { 0.0 } else { x };
    if z.im.abs() < 1e-9 {
        format!("{}", (clean(z.re) * 1e6).round() / 1e6)
    } else {
        format!("{}{:+}i", (clean(z.re) * 1e6).round() / 1e6, (z.im * 1e6).round() / 1e6)
    }
}

/// `Θ_x = E_i diag(π_i(e_x)) E_i`, which restricts to `ad_{π_i(e_x)}` on `V_i`.
fn theta<F: Spectral>(bm: &BoseMesner<F>, i: usize, x: usize) -> Matrix<F> {
    let e = &bm.idempotents[i];
    e.mul(&Matrix::diagonal(&bm.projected_point(i, x))).mul(e)
}

/// Certifies that the Norton algebra `V_i` of a symmetric scheme is an axial
/// decomposition algebra with axes `π_i(e_x)`.
pub fn norton_axial_certificate<F: Spectral>(bm: &BoseMesner<F>, i: usize) -> Result<NortonCertificate<F>, SchemeError> {
    if !bm.scheme.is_symmetric() {
        return Err(SchemeError::NotSymmetric);
    }
    certificate(bm, i, false)
}

/// The decomposition of `V_i` into generalized eigenspaces of each `ad`, for
/// any commutative scheme. Never certified.
pub fn norton_generalized_decomposition<F: Spectral>(bm: &BoseMesner<F>, i: usize) -> Result<NortonCertificate<F>, SchemeError> {
    certificate(bm, i, true)
}

fn certificate<F: Spectral>(bm: &BoseMesner<F>, i: usize, generalized: bool) -> Result<NortonCertificate<F>, SchemeError> {
    let norton = norton_algebra(bm, i)?;
    let n = bm.n();
    let mut axes = Vec::with_capacity(n);
    for x in 0..n {
        let a = norton.axis(bm, x);
        if vec_is_zero(&a) {
            return Err(SchemeError::ZeroAxis(x));
        }
        axes.push(a);
    }

    let mut per_point: Vec<Vec<(F, Subspace<F>)>> = Vec::with_capacity(n);
    let mut full_eigenbasis = true;
    for (x, a) in axes.iter().enumerate() {
        let spaces = if generalized {
            let ad = norton.algebra.left_multiplication(a);
            F::generalized_eigenspaces_on(&ad, &Subspace::full(norton.dim()))
        } else {
            F::eigenspaces_on(&theta(bm, i, x), &norton.space).map(|list| {
                list.into_iter()
                    .map(|(l, s)| {
                        let coords: Vec<Vec<F>> = s.basis().iter().map(|v| norton.coordinates(v).expect("inside V_i")).collect();
                        (l, Subspace::span(norton.dim(), &coords))
                    })
                    .collect()
            })
        }
        .ok_or_else(|| SchemeError::Eigen(format!("no spectrum for the axis of point {x}")))?;
        full_eigenbasis &= spaces.iter().map(|(_, s)| s.dim()).sum::<usize>() == norton.dim();
        per_point.push(spaces);
    }
    if !full_eigenbasis && !generalized {
        return Err(SchemeError::Eigen("an adjoint map is not diagonalizable".into()));
    }

    let mut eigenvalues: Vec<F> = Vec::new();
    for (l, _) in per_point.iter().flatten() {
        if !eigenvalues.iter().any(|m| m.approx_eq(l)) {
            eigenvalues.push(l.clone());
        }
    }
    eigenvalues.sort_by(|a, b| {
        let (a, b) = (a.to_complex(), b.to_complex());
        b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im))
    });
    let k = eigenvalues.len();
    let decompositions: Vec<Decomposition<F>> = per_point
        .iter()
        .map(|spaces| {
            let parts = eigenvalues
                .iter()
                .map(|l| spaces.iter().find(|(m, _)| m.approx_eq(l)).map_or_else(|| Subspace::zero(norton.dim()), |(_, s)| s.clone()))
                .collect();
            Decomposition::new(parts)
        })
        .collect();

    let mut table = vec![vec![Vec::new(); k]; k];
    for d in &decompositions {
        let products = d.observed_products(&norton.algebra).ok_or_else(|| SchemeError::Eigen("eigenspaces do not span".into()))?;
        for (x, row) in products.into_iter().enumerate() {
            for (y, zs) in row.into_iter().enumerate() {
                for z in zs {
                    if !table[x][y].contains(&z) {
                        table[x][y].push(z);
                    }
                }
            }
        }
    }
    table.iter_mut().flatten().for_each(|zs| zs.sort_unstable());
    let mut labels: Vec<String> = eigenvalues.iter().map(eigen_label).collect();
    for j in 0..labels.len() {
        while labels[..j].contains(&labels[j]) {
            labels[j].push('\'');
        }
    }
    let law = FusionLaw::from_table(labels, table)?;

    let axis_label = (0..k)
        .find(|&l| decompositions[0].parts[l].contains(&axes[0]))
        .ok_or_else(|| SchemeError::Eigen("axis is not an eigenvector of its own adjoint".into()))?;
    let indices = (0..n).map(|x| x.to_string()).collect();
    let object = DecompositionAlgebra::new(norton.algebra.clone(), law, indices, decompositions)?.with_axes(Axes {
        vectors: axes,
        lambda: eigenvalues.clone(),
        axis_label,
    })?;
    Ok(NortonCertificate {
        norton,
        object,
        eigenvalues,
        full_eigenbasis,
        certified: F::EXACT && !generalized,
        generalized,
    })
}
