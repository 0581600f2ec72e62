use serde::{Deserialize, Serialize};

use super::algebra::Algebra;
use super::decomposition::{Axes, Decomposition, DecompositionAlgebra};
use super::DecompError;
use crate::exactlin::{Field, Matrix, Subspace};
use crate::fusion::{FusionLaw, FusionMorphism};

/// A morphism of decomposition algebras: an algebra homomorphism `phi` and a
/// map `psi` of index sets with `phi(A_x^i) ⊆ B_x^{psi(i)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecMorphism<F> {
    /// `target.dim × source.dim`.
    pub phi: Matrix<F>,
    pub psi: Vec<usize>,
    /// Also require `phi(a_i) = b_{psi(i)}` when both sides carry axes.
    pub axial: bool,
}

impl<F: Field> DecMorphism<F> {
    pub fn new(phi: Matrix<F>, psi: Vec<usize>) -> Self {
        DecMorphism { phi, psi, axial: false }
    }

    pub fn identity(d: &DecompositionAlgebra<F>) -> Self {
        DecMorphism { phi: Matrix::identity(d.dim()), psi: (0..d.indices.len()).collect(), axial: d.axes.is_some() }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &DecMorphism<F>) -> DecMorphism<F> {
        DecMorphism {
            phi: other.phi.mul(&self.phi),
            psi: self.psi.iter().map(|&i| other.psi[i]).collect(),
            axial: self.axial && other.axial,
        }
    }

    /// Checks every defining condition, returning the first failure.
    pub fn check(&self, source: &DecompositionAlgebra<F>, target: &DecompositionAlgebra<F>) -> Result<(), DecompError> {
        let fail = |msg: String| Err(DecompError::NotAMorphism(msg));
        if source.law != target.law {
            return Err(DecompError::LawMismatch);
        }
        if self.phi.rows() != target.dim() || self.phi.cols() != source.dim() {
            return fail(format!(
                "linear map is {}x{}, expected {}x{}",
                self.phi.rows(),
                self.phi.cols(),
                target.dim(),
                source.dim()
            ));
        }
        if self.psi.len() != source.indices.len() || self.psi.iter().any(|&j| j >= target.indices.len()) {
            return fail("index map has the wrong domain or codomain".into());
        }
        if let Some((i, j)) = source.algebra.first_non_multiplicative(&target.algebra, &self.phi) {
            return fail(format!("not multiplicative on basis vectors {i}, {j}"));
        }
        for (i, d) in source.decompositions.iter().enumerate() {
            let e = &target.decompositions[self.psi[i]];
            for (x, part) in d.parts.iter().enumerate() {
                if part.basis().iter().any(|b| !e.parts[x].contains(&self.phi.mul_vec(b))) {
                    return fail(format!(
                        "image of part {} of {} leaves part {} of {}",
                        source.law.label(x),
                        source.indices[i],
                        target.law.label(x),
                        target.indices[self.psi[i]]
                    ));
                }
            }
        }
        if self.axial {
            if let (Some(a), Some(b)) = (&source.axes, &target.axes) {
                for (i, v) in a.vectors.iter().enumerate() {
                    let image = self.phi.mul_vec(v);
                    if !image.iter().zip(&b.vectors[self.psi[i]]).all(|(x, y)| x.approx_eq(y)) {
                        return fail(format!("axis of {} is not sent to an axis", source.indices[i]));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_surjective(&self) -> bool {
        self.phi.rank() == self.phi.rows()
    }

    /// `ker phi` as a subspace of the source.
    pub fn kernel(&self) -> Subspace<F> {
        Subspace::span(self.phi.cols(), &self.phi.kernel_basis())
    }
}

/// The zero algebra with one decomposition indexed by `*`.
pub fn terminal<F: Field>(law: &FusionLaw) -> DecompositionAlgebra<F> {
    let parts = vec![Subspace::zero(0); law.len()];
    DecompositionAlgebra::new(Algebra::zero_product(0), law.clone(), vec!["*".into()], vec![Decomposition::new(parts)])
        .expect("consistent shapes")
}

/// The zero algebra with the empty index set.
pub fn initial<F: Field>(law: &FusionLaw) -> DecompositionAlgebra<F> {
    DecompositionAlgebra::new(Algebra::zero_product(0), law.clone(), Vec::new(), Vec::new()).expect("consistent shapes")
}

/// Regroups the parts of every decomposition along the fibres of `xi`.
pub fn pushforward<F: Field>(d: &DecompositionAlgebra<F>, xi: &FusionMorphism) -> Result<DecompositionAlgebra<F>, DecompError> {
    if xi.source() != &d.law {
        return Err(DecompError::LawMismatch);
    }
    let target = xi.target();
    let decompositions = d
        .decompositions
        .iter()
        .map(|dec| {
            let parts = (0..target.len())
                .map(|y| {
                    let fibre: Vec<usize> = (0..d.law.len()).filter(|&x| xi.apply(x) == y).collect();
                    dec.span_of(d.dim(), &fibre)
                })
                .collect();
            Decomposition::new(parts)
        })
        .collect();
    DecompositionAlgebra::new(d.algebra.clone(), target.clone(), d.indices.clone(), decompositions)
}

fn embed<F: Field>(v: &[F], offset: usize, total: usize) -> Vec<F> {
    let mut out = vec![F::zero(); total];
    out[offset..offset + v.len()].clone_from_slice(v);
    out
}

/// A product object with its two projections.
#[derive(Clone, Debug)]
pub struct Product<F> {
    pub object: DecompositionAlgebra<F>,
    pub first: DecMorphism<F>,
    pub second: DecMorphism<F>,
    right_count: usize,
}

/// `d1 × d2`: the direct product algebra, indexed by pairs of indices.
pub fn product<F: Field>(d1: &DecompositionAlgebra<F>, d2: &DecompositionAlgebra<F>) -> Result<Product<F>, DecompError> {
    if d1.law != d2.law {
        return Err(DecompError::LawMismatch);
    }
    let (n1, n2) = (d1.dim(), d2.dim());
    let n = n1 + n2;
    let mut indices = Vec::new();
    let mut decompositions = Vec::new();
    for (i, a) in d1.decompositions.iter().enumerate() {
        for (j, b) in d2.decompositions.iter().enumerate() {
            indices.push(format!("({},{})", d1.indices[i], d2.indices[j]));
            let parts = a
                .parts
                .iter()
                .zip(&b.parts)
                .map(|(p, q)| {
                    let vs: Vec<Vec<F>> = p
                        .basis()
                        .iter()
                        .map(|v| embed(v, 0, n))
                        .chain(q.basis().iter().map(|v| embed(v, n1, n)))
                        .collect();
                    Subspace::span(n, &vs)
                })
                .collect();
            decompositions.push(Decomposition::new(parts));
        }
    }
    let mut object = DecompositionAlgebra::new(d1.algebra.direct_product(&d2.algebra), d1.law.clone(), indices, decompositions)?;
    let mut axial = false;
    if let (Some(a), Some(b)) = (&d1.axes, &d2.axes) {
        let same = a.axis_label == b.axis_label && a.lambda.iter().zip(&b.lambda).all(|(x, y)| x.approx_eq(y));
        if same {
            let vectors = a
                .vectors
                .iter()
                .flat_map(|u| b.vectors.iter().map(move |v| embed(u, 0, n).into_iter().zip(embed(v, n1, n)).map(|(x, y)| x + y).collect()))
                .collect();
            object = object.with_axes(Axes { vectors, lambda: a.lambda.clone(), axis_label: a.axis_label })?;
            axial = true;
        }
    }
    let k2 = d2.indices.len();
    let proj = |offset: usize, rows: usize| {
        let mut m = Matrix::zeros(rows, n);
        for r in 0..rows {
            m.set(r, offset + r, F::one());
        }
        m
    };
    let count = d1.indices.len() * k2;
    let first = DecMorphism { phi: proj(0, n1), psi: (0..count).map(|p| p / k2.max(1)).collect(), axial };
    let second = DecMorphism { phi: proj(n1, n2), psi: (0..count).map(|p| p % k2.max(1)).collect(), axial };
    Ok(Product { object, first, second, right_count: k2 })
}

impl<F: Field> Product<F> {
    /// The unique morphism `c → d1 × d2` through which the cone `(f1, f2)` factors.
    pub fn mediator(&self, f1: &DecMorphism<F>, f2: &DecMorphism<F>) -> Result<DecMorphism<F>, DecompError> {
        if f1.phi.cols() != f2.phi.cols() || f1.psi.len() != f2.psi.len() {
            return Err(DecompError::Shape("cone legs have different sources".into()));
        }
        let mut rows = f1.phi.to_rows();
        rows.extend(f2.phi.to_rows());
        let phi = if rows.is_empty() { Matrix::zeros(0, f1.phi.cols()) } else { Matrix::from_rows(&rows)? };
        let psi = f1.psi.iter().zip(&f2.psi).map(|(&i, &j)| i * self.right_count + j).collect();
        Ok(DecMorphism { phi, psi, axial: f1.axial && f2.axial })
    }
}

/// An equalizer object with its inclusion.
#[derive(Clone, Debug)]
pub struct Equalizer<F> {
    pub object: DecompositionAlgebra<F>,
    pub inclusion: DecMorphism<F>,
    /// `{a | f(a) = g(a)}` inside the source.
    pub subspace: Subspace<F>,
}

/// The equalizer of two parallel morphisms `f, g: d → e`.
pub fn equalizer<F: Field>(
    d: &DecompositionAlgebra<F>,
    f: &DecMorphism<F>,
    g: &DecMorphism<F>,
) -> Result<Equalizer<F>, DecompError> {
    if f.phi.rows() != g.phi.rows() || f.phi.cols() != g.phi.cols() || f.psi.len() != g.psi.len() {
        return Err(DecompError::Shape("morphisms are not parallel".into()));
    }
    let n = d.dim();
    let diff = f.phi.sub(&g.phi);
    let subspace = Subspace::span(n, &diff.kernel_basis());
    let algebra = d.algebra.restrict(&subspace)?;
    let k = subspace.dim();
    let kept: Vec<usize> = (0..f.psi.len()).filter(|&i| f.psi[i] == g.psi[i]).collect();
    let coords = |v: &[F]| subspace.coordinates(v).expect("vector inside the equalizer");
    let decompositions = kept
        .iter()
        .map(|&i| {
            let parts = d.decompositions[i]
                .parts
                .iter()
                .map(|p| {
                    let inter = p.intersection(&subspace);
                    Subspace::span(k, &inter.basis().iter().map(|v| coords(v)).collect::<Vec<_>>())
                })
                .collect();
            Decomposition::new(parts)
        })
        .collect();
    let indices = kept.iter().map(|&i| d.indices[i].clone()).collect();
    let mut object = DecompositionAlgebra::new(algebra, d.law.clone(), indices, decompositions)?;
    let mut axial = false;
    if let Some(ax) = &d.axes {
        if kept.iter().all(|&i| subspace.contains(&ax.vectors[i])) {
            let vectors = kept.iter().map(|&i| coords(&ax.vectors[i])).collect();
            object = object.with_axes(Axes { vectors, lambda: ax.lambda.clone(), axis_label: ax.axis_label })?;
            axial = true;
        }
    }
    let phi = if k == 0 { Matrix::zeros(n, 0) } else { Matrix::from_columns(n, subspace.basis())? };
    Ok(Equalizer { object, inclusion: DecMorphism { phi, psi: kept, axial }, subspace })
}

impl<F: Field> Equalizer<F> {
    /// The factorization of `h` (with `f h = g h`) through the inclusion.
    pub fn mediator(&self, h: &DecMorphism<F>) -> Result<DecMorphism<F>, DecompError> {
        let k = self.subspace.dim();
        let cols = h
            .phi
            .columns()
            .iter()
            .map(|c| self.subspace.coordinates(c))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| DecompError::NotAMorphism("cone does not land in the equalizer".into()))?;
        let phi = if cols.is_empty() { Matrix::zeros(k, 0) } else { Matrix::from_columns(k, &cols)? };
        let psi = h
            .psi
            .iter()
            .map(|j| self.inclusion.psi.iter().position(|i| i == j))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| DecompError::NotAMorphism("cone index outside the equalized index set".into()))?;
        Ok(DecMorphism { phi, psi, axial: h.axial && self.inclusion.axial })
    }
}

/// Verdict of [`decomposition_ideal_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealVerdict {
    /// `AI ⊆ I` and `IA ⊆ I`.
    pub ideal: bool,
    /// `I = ⊕_x (A_x^i ∩ I)`, per index.
    pub graded: Vec<bool>,
    pub decomposition_ideal: bool,
}

pub fn decomposition_ideal_check<F: Field>(d: &DecompositionAlgebra<F>, ideal: &Subspace<F>) -> IdealVerdict {
    let n = d.dim();
    let units: Vec<Vec<F>> = (0..n).map(|i| crate::exactlin::unit_vector(n, i)).collect();
    let is_ideal = ideal.basis().iter().all(|v| {
        units.iter().all(|e| ideal.contains(&d.algebra.mul(e, v)) && ideal.contains(&d.algebra.mul(v, e)))
    });
    let graded: Vec<bool> = d
        .decompositions
        .iter()
        .map(|dec| dec.parts.iter().map(|p| p.intersection(ideal).dim()).sum::<usize>() == ideal.dim())
        .collect();
    let decomposition_ideal = is_ideal && graded.iter().all(|&g| g);
    IdealVerdict { ideal: is_ideal, graded, decomposition_ideal }
}

/// A quotient object with its projection and a linear section of it.
#[derive(Clone, Debug)]
pub struct Quotient<F> {
    pub object: DecompositionAlgebra<F>,
    pub projection: DecMorphism<F>,
    /// `dim A × dim A/I`: sends quotient coordinates to representatives.
    pub section: Matrix<F>,
}

/// `d / I` for a decomposition ideal `I`.
pub fn quotient<F: Field>(d: &DecompositionAlgebra<F>, ideal: &Subspace<F>) -> Result<Quotient<F>, DecompError> {
    let verdict = decomposition_ideal_check(d, ideal);
    if !verdict.decomposition_ideal {
        return Err(DecompError::NotDecompositionIdeal);
    }
    let n = d.dim();
    let free = ideal.complement_indices();
    let k = free.len();
    let pivots: Vec<usize> = (0..n).filter(|i| !free.contains(i)).collect();
    let project = |v: &[F]| -> Vec<F> {
        let mut r = v.to_vec();
        for (b, &p) in ideal.basis().iter().zip(&pivots) {
            let c = v[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(b) {
                *x -= &(c.clone() * y);
            }
        }
        free.iter().map(|&c| r[c].clone()).collect()
    };
    let mut projection = Matrix::zeros(k, n);
    for c in 0..n {
        let col = project(&crate::exactlin::unit_vector(n, c));
        for (r, x) in col.into_iter().enumerate() {
            projection.set(r, c, x);
        }
    }
    let mut section = Matrix::zeros(n, k);
    for (j, &c) in free.iter().enumerate() {
        section.set(c, j, F::one());
    }
    let algebra = Algebra::from_product(k, |a, b| {
        let lift = |x: &[F]| section.mul_vec(x);
        project(&d.algebra.mul(&lift(a), &lift(b)))
    });
    let decompositions = d
        .decompositions
        .iter()
        .map(|dec| {
            Decomposition::new(
                dec.parts
                    .iter()
                    .map(|p| Subspace::span(k, &p.basis().iter().map(|v| project(v)).collect::<Vec<_>>()))
                    .collect(),
            )
        })
        .collect();
    let mut object = DecompositionAlgebra::new(algebra, d.law.clone(), d.indices.clone(), decompositions)?;
    let mut axial = false;
    if let Some(ax) = &d.axes {
        let vectors: Vec<Vec<F>> = ax.vectors.iter().map(|v| project(v)).collect();
        if vectors.iter().all(|v| !crate::exactlin::vec_is_zero(v)) {
            object = object.with_axes(Axes { vectors, lambda: ax.lambda.clone(), axis_label: ax.axis_label })?;
            axial = true;
        }
    }
    let projection = DecMorphism { phi: projection, psi: (0..d.indices.len()).collect(), axial };
    Ok(Quotient { object, projection, section })
}

impl<F: Field> Quotient<F> {
    /// The factorization `f = f̄ ∘ π` of a morphism whose kernel contains the ideal.
    pub fn factor(&self, f: &DecMorphism<F>) -> Result<DecMorphism<F>, DecompError> {
        let bar = DecMorphism { phi: f.phi.mul(&self.section), psi: f.psi.clone(), axial: f.axial };
        if !bar.phi.mul(&self.projection.phi).approx_eq(&f.phi) {
            return Err(DecompError::NotAMorphism("kernel does not contain the ideal".into()));
        }
        Ok(bar)
    }
}
