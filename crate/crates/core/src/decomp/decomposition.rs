use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::algebra::{Algebra, AlgebraDoc};
use super::DecompError;
use crate::exactlin::{is_direct_sum_decomposition, vec_is_zero, vec_scale, vec_sub, Field, FromScalar, Scalar, Subspace};
use crate::fusion::FusionLaw;

/// A direct-sum decomposition `A = ⊕_x A_x` indexed by the elements of a fusion law.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<F> {
    /// `parts[x]` is `A_x`, for `x` a law element index.
    pub parts: Vec<Subspace<F>>,
}

impl<F: Field> Decomposition<F> {
    pub fn new(parts: Vec<Subspace<F>>) -> Self {
        Decomposition { parts }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(Subspace::dim).collect()
    }

    pub fn is_direct_sum(&self, dim: usize) -> bool {
        is_direct_sum_decomposition(dim, &self.parts)
    }

    /// `A_S = Σ_{x ∈ S} A_x`.
    pub fn span_of(&self, ambient: usize, labels: &[usize]) -> Subspace<F> {
        let vectors: Vec<Vec<F>> = labels.iter().flat_map(|&x| self.parts[x].basis().iter().cloned()).collect();
        Subspace::span(ambient, &vectors)
    }

    /// The smallest law this decomposition obeys in `algebra`: `z ∈ x * y`
    /// iff some product of a vector in `A_x` with one in `A_y` has a non-zero
    /// component in `A_z`. `None` when the parts do not span the algebra.
    pub fn observed_law(&self, algebra: &Algebra<F>, labels: Vec<String>) -> Option<FusionLaw> {
        FusionLaw::from_table(labels, self.observed_products(algebra)?).ok()
    }

    /// The table of [`Decomposition::observed_law`] without labels.
    pub fn observed_products(&self, algebra: &Algebra<F>) -> Option<Vec<Vec<Vec<usize>>>> {
        let k = self.parts.len();
        let mut table = vec![vec![Vec::new(); k]; k];
        for x in 0..k {
            for y in 0..k {
                let mut hit = vec![false; k];
                for a in self.parts[x].basis() {
                    for b in self.parts[y].basis() {
                        for (z, c) in self.components(&algebra.mul(a, b))?.iter().enumerate() {
                            hit[z] |= !vec_is_zero(c);
                        }
                    }
                }
                table[x][y] = (0..k).filter(|&z| hit[z]).collect();
            }
        }
        Some(table)
    }

    /// Components of `v` in each part; `None` when the parts do not span `v`.
    pub fn components(&self, v: &[F]) -> Option<Vec<Vec<F>>> {
        let ambient = v.len();
        let all: Vec<Vec<F>> = self.parts.iter().flat_map(|p| p.basis().iter().cloned()).collect();
        let m = crate::exactlin::Matrix::from_columns(ambient, &all).ok()?;
        let coeffs = if all.is_empty() {
            if vec_is_zero(v) {
                Vec::new()
            } else {
                return None;
            }
        } else {
            m.solve(v)?
        };
        let mut out = Vec::new();
        let mut k = 0;
        for p in &self.parts {
            let mut c = vec![F::zero(); ambient];
            for b in p.basis() {
                c = crate::exactlin::vec_add(&c, &vec_scale(b, &coeffs[k]));
                k += 1;
            }
            out.push(c);
        }
        Some(out)
    }
}

/// Axes with their eigenvalues: `a_i · b = λ_x b` for all `b ∈ A_x^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Axes<F> {
    /// One axis per index.
    pub vectors: Vec<Vec<F>>,
    /// `λ_x` for each law element.
    pub lambda: Vec<F>,
    /// The law element whose part contains the axes.
    pub axis_label: usize,
}

/// An algebra with an indexed family of decompositions obeying one fusion law.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionAlgebra<F> {
    pub algebra: Algebra<F>,
    pub law: FusionLaw,
    pub indices: Vec<String>,
    pub decompositions: Vec<Decomposition<F>>,
    pub axes: Option<Axes<F>>,
}

impl<F: Field> DecompositionAlgebra<F> {
    pub fn new(
        algebra: Algebra<F>,
        law: FusionLaw,
        indices: Vec<String>,
        decompositions: Vec<Decomposition<F>>,
    ) -> Result<Self, DecompError> {
        if indices.len() != decompositions.len() {
            return Err(DecompError::Shape(format!(
                "{} indices for {} decompositions",
                indices.len(),
                decompositions.len()
            )));
        }
        for (i, d) in decompositions.iter().enumerate() {
            if d.parts.len() != law.len() {
                return Err(DecompError::Shape(format!("decomposition {} has {} parts", indices[i], d.parts.len())));
            }
            if d.parts.iter().any(|p| p.ambient() != algebra.dim()) {
                return Err(DecompError::Shape(format!("decomposition {} lives in the wrong space", indices[i])));
            }
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = indices.iter().find(|i| !seen.insert(i.as_str())) {
            return Err(DecompError::DuplicateIndex(dup.clone()));
        }
        Ok(DecompositionAlgebra { algebra, law, indices, decompositions, axes: None })
    }

    pub fn with_axes(mut self, axes: Axes<F>) -> Result<Self, DecompError> {
        if axes.vectors.len() != self.indices.len() || axes.lambda.len() != self.law.len() {
            return Err(DecompError::Shape("axes must match the index set and λ the law".into()));
        }
        if axes.vectors.iter().any(|a| a.len() != self.algebra.dim()) || axes.axis_label >= self.law.len() {
            return Err(DecompError::Shape("axis vector of the wrong length".into()));
        }
        self.axes = Some(axes);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, DecompError> {
        self.indices.iter().position(|i| i == name).ok_or_else(|| DecompError::UnknownIndex(name.to_string()))
    }

    /// Part dimensions of each decomposition, keyed by law label.
    pub fn part_dims(&self) -> Vec<IndexMap<String, usize>> {
        self.decompositions
            .iter()
            .map(|d| self.law.labels().iter().cloned().zip(d.dims()).collect())
            .collect()
    }

    pub fn verify(&self) -> VerifyReport {
        let law = &self.law;
        let mut direct_sum = Vec::new();
        let mut violations = Vec::new();
        for (i, d) in self.decompositions.iter().enumerate() {
            direct_sum.push(d.is_direct_sum(self.dim()));
            let mut spans: std::collections::HashMap<Vec<usize>, Subspace<F>> = Default::default();
            for x in 0..law.len() {
                for y in 0..law.len() {
                    let target = spans.entry(law.product(x, y).to_vec()).or_insert_with(|| d.span_of(self.dim(), law.product(x, y)));
                    let bad = d.parts[x].basis().iter().any(|b1| {
                        d.parts[y].basis().iter().any(|b2| !target.contains(&self.algebra.mul(b1, b2)))
                    });
                    if bad {
                        violations.push(FusionViolation {
                            index: self.indices[i].clone(),
                            x: law.label(x).to_string(),
                            y: law.label(y).to_string(),
                        });
                    }
                }
            }
        }
        let valid = direct_sum.iter().all(|&b| b) && violations.is_empty();

        let (axial, primitive, axis_violations) = match &self.axes {
            None => (None, None, Vec::new()),
            Some(ax) => {
                let mut bad = Vec::new();
                for (i, d) in self.decompositions.iter().enumerate() {
                    let a = &ax.vectors[i];
                    let name = &self.indices[i];
                    if vec_is_zero(a) {
                        bad.push(AxisViolation { index: name.clone(), label: None, reason: "axis is zero".into() });
                    }
                    if !d.parts[ax.axis_label].contains(a) {
                        bad.push(AxisViolation {
                            index: name.clone(),
                            label: Some(law.label(ax.axis_label).to_string()),
                            reason: "axis outside its part".into(),
                        });
                    }
                    for x in 0..law.len() {
                        let ok = d.parts[x]
                            .basis()
                            .iter()
                            .all(|b| vec_is_zero(&vec_sub(&self.algebra.mul(a, b), &vec_scale(b, &ax.lambda[x]))));
                        if !ok {
                            bad.push(AxisViolation {
                                index: name.clone(),
                                label: Some(law.label(x).to_string()),
                                reason: "axis does not act by λ".into(),
                            });
                        }
                    }
                }
                let primitive = self.decompositions.iter().all(|d| d.parts[ax.axis_label].dim() == 1);
                (Some(bad.is_empty()), Some(primitive), bad)
            }
        };

        VerifyReport { valid, direct_sum, violations, axial, primitive, axis_violations, part_dims: self.part_dims() }
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> DecompositionAlgebra<G> {
        let conv = |v: &Vec<F>| v.iter().map(f).collect::<Vec<G>>();
        DecompositionAlgebra {
            algebra: self.algebra.map_field(f),
            law: self.law.clone(),
            indices: self.indices.clone(),
            decompositions: self
                .decompositions
                .iter()
                .map(|d| Decomposition {
                    parts: d.parts.iter().map(|p| Subspace::span(p.ambient(), &p.basis().iter().map(conv).collect::<Vec<_>>())).collect(),
                })
                .collect(),
            axes: self.axes.as_ref().map(|a| Axes {
                vectors: a.vectors.iter().map(conv).collect(),
                lambda: a.lambda.iter().map(f).collect(),
                axis_label: a.axis_label,
            }),
        }
    }
}

/// A product `A_x A_y` that escapes `A_{x*y}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionViolation {
    pub index: String,
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisViolation {
    pub index: String,
    pub label: Option<String>,
    pub reason: String,
}

/// Verdict of [`DecompositionAlgebra::verify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub direct_sum: Vec<bool>,
    pub violations: Vec<FusionViolation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axial: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primitive: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub axis_violations: Vec<AxisViolation>,
    pub part_dims: Vec<IndexMap<String, usize>>,
}

/// JSON shape of a decomposition algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionAlgebraDoc {
    pub algebra: AlgebraDoc,
    pub law: FusionLaw,
    pub indices: Vec<String>,
    /// One map per index: law label to a basis of the part.
    pub decompositions: Vec<IndexMap<String, Vec<Vec<Scalar>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axes: Option<Vec<Vec<Scalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<IndexMap<String, Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis_label: Option<String>,
}

impl<F: FromScalar> DecompositionAlgebra<F> {
    pub fn from_doc(doc: &DecompositionAlgebraDoc) -> Result<Self, DecompError> {
        let algebra = Algebra::<F>::from_doc(&doc.algebra)?;
        let n = algebra.dim();
        let conv = |v: &Vec<Scalar>| -> Result<Vec<F>, DecompError> {
            if v.len() != n {
                return Err(DecompError::Shape(format!("vector of length {} in a {n}-dimensional algebra", v.len())));
            }
            Ok(v.iter().map(F::from_scalar).collect::<Result<Vec<_>, _>>()?)
        };
        let mut decompositions = Vec::new();
        for map in &doc.decompositions {
            let mut parts = vec![Subspace::zero(n); doc.law.len()];
            for (label, basis) in map {
                let x = doc.law.index_of(label)?;
                let vs = basis.iter().map(conv).collect::<Result<Vec<_>, _>>()?;
                parts[x] = Subspace::span(n, &vs);
            }
            decompositions.push(Decomposition::new(parts));
        }
        let d = DecompositionAlgebra::new(algebra, doc.law.clone(), doc.indices.clone(), decompositions)?;
        match (&doc.axes, &doc.lambda) {
            (None, None) => Ok(d),
            (Some(axes), Some(lambda)) => {
                let mut lam = vec![F::zero(); doc.law.len()];
                for (label, v) in lambda {
                    lam[doc.law.index_of(label)?] = F::from_scalar(v)?;
                }
                let axis_label = match &doc.axis_label {
                    Some(l) => doc.law.index_of(l)?,
                    None => 0,
                };
                let vectors = axes.iter().map(conv).collect::<Result<Vec<_>, _>>()?;
                d.with_axes(Axes { vectors, lambda: lam, axis_label })
            }
            _ => Err(DecompError::Shape("axes and lambda must be given together".into())),
        }
    }

    pub fn to_doc(&self) -> DecompositionAlgebraDoc {
        let conv = |v: &Vec<F>| v.iter().map(F::to_scalar).collect::<Vec<_>>();
        DecompositionAlgebraDoc {
            algebra: self.algebra.to_doc(),
            law: self.law.clone(),
            indices: self.indices.clone(),
            decompositions: self
                .decompositions
                .iter()
                .map(|d| {
                    self.law.labels().iter().cloned().zip(d.parts.iter().map(|p| p.basis().iter().map(conv).collect())).collect()
                })
                .collect(),
            axes: self.axes.as_ref().map(|a| a.vectors.iter().map(conv).collect()),
            lambda: self
                .axes
                .as_ref()
                .map(|a| self.law.labels().iter().cloned().zip(a.lambda.iter().map(F::to_scalar)).collect()),
            axis_label: self.axes.as_ref().map(|a| self.law.label(a.axis_label).to_string()),
        }
    }
}
