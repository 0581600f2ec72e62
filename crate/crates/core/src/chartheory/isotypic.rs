use serde::{Deserialize, Serialize};

use super::table::{as_multiplicity, weighted_inner};
use super::{CharacterTable, ChartError};
use crate::decomp::{Algebra, Axes, Decomposition, DecompositionAlgebra};
use crate::exactlin::{Field, FromScalar, Matrix, Scalar, Subspace};
use crate::fusion::FusionLaw;
use crate::permgroup::{PermGroup, PermGroupDoc};

/// A matrix representation of a permutation group, given on its generators.
#[derive(Clone, Debug)]
pub struct MatrixRep<F> {
    pub group: PermGroup,
    pub generators: Vec<Matrix<F>>,
    dim: usize,
}

/// JSON shape of a representation: the group and one matrix per generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixRepDoc {
    pub group: PermGroupDoc,
    pub matrices: Vec<Vec<Vec<Scalar>>>,
    /// Needed only when the group has no generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

impl<F: Field> MatrixRep<F> {
    pub fn new(group: PermGroup, generators: Vec<Matrix<F>>) -> Result<Self, ChartError> {
        let dim = generators.first().map_or(0, Matrix::rows);
        Self::with_dim(group, generators, dim)
    }

    /// As [`MatrixRep::new`], with the module dimension given explicitly.
    pub fn with_dim(group: PermGroup, generators: Vec<Matrix<F>>, dim: usize) -> Result<Self, ChartError> {
        if generators.len() != group.generators().len() {
            return Err(ChartError::NotAHomomorphism(format!(
                "{} matrices for {} generators",
                generators.len(),
                group.generators().len()
            )));
        }
        if generators.iter().any(|m| !m.is_square() || m.rows() != dim) {
            return Err(ChartError::NotAHomomorphism("matrices must be square of one size".into()));
        }
        Ok(MatrixRep { group, generators, dim })
    }

    /// The representation sending every element to the identity of `F^dim`.
    pub fn trivial(group: PermGroup, dim: usize) -> Self {
        let generators = vec![Matrix::identity(dim); group.generators().len()];
        MatrixRep { group, generators, dim }
    }

    /// The permutation representation: `g · e_x = e_{g(x)}`.
    pub fn permutation(group: PermGroup) -> Self {
        let n = group.degree();
        let generators = group
            .generators()
            .iter()
            .map(|g| {
                let mut m = Matrix::zeros(n, n);
                for x in 0..n {
                    m.set(g.apply(x), x, F::one());
                }
                m
            })
            .collect();
        MatrixRep { group, generators, dim: n }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `h ↦ c ρ(h) c⁻¹`.
    pub fn conjugate(&self, c: &Matrix<F>) -> Result<Self, ChartError> {
        let inv = c.inverse().ok_or_else(|| ChartError::NotAHomomorphism("conjugating matrix is singular".into()))?;
        let generators = self.generators.iter().map(|m| c.mul(m).mul(&inv)).collect();
        Ok(MatrixRep { group: self.group.clone(), generators, dim: self.dim })
    }

    /// The matrix of every group element, in enumeration order, checking
    /// that the generator images define a homomorphism.
    pub fn matrices(&self) -> Result<Vec<Matrix<F>>, ChartError> {
        let elements = self.group.elements()?;
        let mut out: Vec<Option<Matrix<F>>> = vec![None; elements.len()];
        out[0] = Some(Matrix::identity(self.dim()));
        for i in 0..elements.len() {
            let m = out[i].clone().expect("parents precede children");
            for (g, mg) in self.group.generators().iter().zip(&self.generators) {
                let j = self.group.index_of(&elements[i].compose(g))?.expect("closed");
                let prod = m.mul(mg);
                match &out[j] {
                    None => out[j] = Some(prod),
                    Some(existing) if existing.approx_eq(&prod) => {}
                    Some(_) => {
                        return Err(ChartError::NotAHomomorphism(format!(
                            "two words for {} give different matrices",
                            elements[j]
                        )))
                    }
                }
            }
        }
        Ok(out.into_iter().map(|m| m.expect("all reached")).collect())
    }

    /// Characters of `ρ` restricted to each invariant subspace, evaluated on
    /// the conjugacy classes of the group.
    pub fn subspace_characters(&self, parts: &[Subspace<F>]) -> Result<Vec<Vec<F>>, ChartError> {
        let cc = self.group.conjugacy_classes()?;
        let matrices = self.matrices()?;
        let mut out = Vec::new();
        for (x, part) in parts.iter().enumerate() {
            for g in &self.generators {
                if part.basis().iter().any(|b| !part.contains(&g.mul_vec(b))) {
                    return Err(ChartError::NotInvariant(format!("part {x}")));
                }
            }
            let values = (0..cc.len())
                .map(|c| {
                    let m = &matrices[cc.representative(c)];
                    part.basis().iter().enumerate().fold(F::zero(), |acc, (k, b)| {
                        acc + &part.coordinates(&m.mul_vec(b)).expect("invariant")[k]
                    })
                })
                .collect();
            out.push(values);
        }
        Ok(out)
    }
}

impl<F: FromScalar> MatrixRep<F> {
    pub fn from_doc(doc: &MatrixRepDoc) -> Result<Self, ChartError> {
        let group = PermGroup::try_from(doc.group.clone())?;
        let generators = doc
            .matrices
            .iter()
            .map(|rows| {
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(F::from_scalar).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                Matrix::from_rows(&rows)
            })
            .collect::<Result<Vec<_>, _>>()?;
        match doc.dim {
            Some(d) => MatrixRep::with_dim(group, generators, d),
            None if generators.is_empty() => {
                Err(ChartError::NotAHomomorphism("a group without generators needs an explicit dimension".into()))
            }
            None => MatrixRep::new(group, generators),
        }
    }

    pub fn to_doc(&self) -> MatrixRepDoc {
        MatrixRepDoc {
            group: self.group.clone().into(),
            matrices: self.generators.iter().map(|m| m.to_rows().iter().map(|r| r.iter().map(F::to_scalar).collect()).collect()).collect(),
            dim: self.generators.is_empty().then_some(self.dim),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IsotypicComponent<F> {
    pub label: String,
    pub degree: u64,
    pub multiplicity: usize,
    pub subspace: Subspace<F>,
    pub projector: Matrix<F>,
}

/// The decomposition of a module into isotypic components, one per
/// irreducible character in table order (possibly zero).
#[derive(Clone, Debug)]
pub struct IsotypicDecomposition<F> {
    pub components: Vec<IsotypicComponent<F>>,
    pub multiplicity_free: bool,
}

/// JSON summary of an isotypic decomposition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsotypicReport {
    pub components: Vec<ComponentReport>,
    pub multiplicity_free: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub label: String,
    pub dim: usize,
    pub multiplicity: usize,
    pub basis: Vec<Vec<Scalar>>,
}

impl<F: FromScalar> IsotypicDecomposition<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.subspace.dim()).collect()
    }

    pub fn decomposition(&self) -> Decomposition<F> {
        Decomposition::new(self.components.iter().map(|c| c.subspace.clone()).collect())
    }

    pub fn report(&self) -> IsotypicReport {
        IsotypicReport {
            components: self
                .components
                .iter()
                .map(|c| ComponentReport {
                    label: c.label.clone(),
                    dim: c.subspace.dim(),
                    multiplicity: c.multiplicity,
                    basis: c.subspace.basis().iter().map(|v| v.iter().map(F::to_scalar).collect()).collect(),
                })
                .collect(),
            multiplicity_free: self.multiplicity_free,
        }
    }
}

/// Isotypic components via the projections
/// `p_χ = (χ(1)/|H|) Σ_g conj(χ(g)) ρ(g)`.
pub fn isotypic_decomposition<F: FromScalar>(
    rep: &MatrixRep<F>,
    table: &CharacterTable,
) -> Result<IsotypicDecomposition<F>, ChartError> {
    let columns = table.bind(&rep.group)?;
    let matrices = rep.matrices()?;
    let cc = rep.group.conjugacy_classes()?;
    let n = rep.dim();
    let class_sums: Vec<Matrix<F>> =
        cc.classes.iter().map(|members| members.iter().fold(Matrix::zeros(n, n), |acc, &g| acc.add(&matrices[g]))).collect();
    let order = F::from_i64(table.order() as i64);
    let mut components = Vec::new();
    let mut total = Matrix::zeros(n, n);
    for (i, ch) in table.characters().iter().enumerate() {
        let degree = table.degree(i)?;
        let values: Vec<F> = ch.values.iter().map(|v| F::from_scalar(v).map_err(|_| ChartError::NeedsComplex)).collect::<Result<_, _>>()?;
        let sum = class_sums
            .iter()
            .enumerate()
            .fold(Matrix::zeros(n, n), |acc, (c, s)| acc.add(&s.scale(&values[columns[c]].conj())));
        let projector = sum.scale(&(F::from_i64(degree as i64) / &order));
        total = total.add(&projector);
        let subspace = Subspace::span(n, &projector.columns());
        let dim = subspace.dim();
        if dim % degree as usize != 0 {
            return Err(ChartError::NotSemisimple(format!("component `{}` has dimension {dim}", ch.label)));
        }
        components.push(IsotypicComponent { label: ch.label.clone(), degree, multiplicity: dim / degree as usize, subspace, projector });
    }
    if !total.approx_eq(&Matrix::identity(n)) {
        return Err(ChartError::NotSemisimple("projections do not sum to the identity".into()));
    }
    let multiplicity_free = components.iter().all(|c| c.multiplicity <= 1);
    Ok(IsotypicDecomposition { components, multiplicity_free })
}

/// The law `x * y = {z | ⟨χ_z, χ_x χ_y⟩ ≠ 0}` where `χ_x` is the character
/// of `H` on the invariant part `A_x`.
pub fn refine_fusion_law<F: Field>(
    rep: &MatrixRep<F>,
    decomposition: &Decomposition<F>,
    labels: Vec<String>,
) -> Result<FusionLaw, ChartError> {
    if labels.len() != decomposition.parts.len() {
        return Err(ChartError::NotInvariant(format!("{} labels for {} parts", labels.len(), decomposition.parts.len())));
    }
    for (part, label) in decomposition.parts.iter().zip(&labels) {
        if rep.generators.iter().any(|g| part.basis().iter().any(|b| !part.contains(&g.mul_vec(b)))) {
            return Err(ChartError::NotInvariant(label.clone()));
        }
    }
    let chars = rep.subspace_characters(&decomposition.parts)?;
    let sizes = rep.group.conjugacy_classes()?.sizes();
    let k = labels.len();
    let mut table = vec![vec![Vec::new(); k]; k];
    for x in 0..k {
        for y in 0..k {
            let prod: Vec<F> = chars[x].iter().zip(&chars[y]).map(|(a, b)| a.clone() * b).collect();
            for z in 0..k {
                if as_multiplicity(&weighted_inner(&sizes, &prod, &chars[z]))? > 0 {
                    table[x][y].push(z);
                }
            }
        }
    }
    Ok(FusionLaw::from_table(labels, table)?)
}

/// A decomposition algebra built from isotypic decompositions under
/// conjugate subgroups of the automorphism group.
#[derive(Clone, Debug)]
pub struct GroupDecomposition<F> {
    pub object: DecompositionAlgebra<F>,
    pub isotypic: Vec<IsotypicDecomposition<F>>,
    pub multiplicity_free: bool,
}

/// Each `reps[i]` is the action of `H_i` on `A`; all share the group of
/// `table`. Indexed by `indices`, with the representation fusion law of the
/// table. When every module is multiplicity-free, the axis at `i` is the
/// first basis vector of `A_1^i` and `λ_χ` the scalar by which it acts on
/// `A_χ^i`.
pub fn construct_decomposition_algebra_from_group<F: FromScalar>(
    algebra: &Algebra<F>,
    reps: &[MatrixRep<F>],
    indices: Vec<String>,
    table: &CharacterTable,
) -> Result<GroupDecomposition<F>, ChartError> {
    for rep in reps {
        if rep.dim() != algebra.dim() {
            return Err(ChartError::NotAHomomorphism(format!("representation of dimension {} on an algebra of dimension {}", rep.dim(), algebra.dim())));
        }
        if let Some(k) = rep.generators.iter().position(|g| !algebra.is_automorphism(g)) {
            return Err(ChartError::NotAutomorphism(k));
        }
    }
    let law = table.representation_fusion_law()?;
    let isotypic: Vec<IsotypicDecomposition<F>> = reps.iter().map(|r| isotypic_decomposition(r, table)).collect::<Result<_, _>>()?;
    let decompositions = isotypic.iter().map(IsotypicDecomposition::decomposition).collect();
    let mut object = DecompositionAlgebra::new(algebra.clone(), law, indices, decompositions)?;
    let multiplicity_free = isotypic.iter().all(|d| d.multiplicity_free);
    if multiplicity_free && !isotypic.is_empty() {
        if let Some(axes) = choose_axes(algebra, &isotypic) {
            object = object.with_axes(axes)?;
        }
    }
    Ok(GroupDecomposition { object, isotypic, multiplicity_free })
}

fn choose_axes<F: Field>(algebra: &Algebra<F>, isotypic: &[IsotypicDecomposition<F>]) -> Option<Axes<F>> {
    let vectors: Vec<Vec<F>> = isotypic
        .iter()
        .map(|d| {
            let v = d.components[0].subspace.basis().first()?.clone();
            let lead = v.iter().find(|c| !c.is_zero())?.clone();
            Some(v.iter().map(|c| c.clone() / &lead).collect())
        })
        .collect::<Option<_>>()?;
    let a = &vectors[0];
    let lambda = isotypic[0]
        .components
        .iter()
        .map(|c| match c.subspace.basis().first() {
            None => F::zero(),
            Some(b) => {
                let ab = algebra.mul(a, b);
                let k = b.iter().position(|x| !x.is_zero()).expect("non-zero basis vector");
                ab[k].clone() / &b[k]
            }
        })
        .collect();
    Some(Axes { vectors, lambda, axis_label: 0 })
}
