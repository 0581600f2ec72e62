use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::{MiyError, MAX_CHARACTERS, MAX_INDICES};
use crate::decomp::{pushforward, DecompositionAlgebra};
use crate::exactlin::{rat, FromScalar, LinAlgError, Matrix, Scalar};
use crate::fpgroup::abelianized_grading;
use crate::fusion::{cyclic_group_law, FusionLaw, FusionMorphism};

/// A group homomorphism `Γ → R^×`, with values listed in the order of the
/// grading law's elements.
#[derive(Clone, Debug, PartialEq)]
pub struct RCharacter {
    pub label: String,
    pub values: Vec<Scalar>,
}

/// JSON shape of a character: values keyed by group element label.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RCharacterDoc {
    pub label: String,
    pub values: IndexMap<String, Scalar>,
}

impl RCharacter {
    pub fn new(label: impl Into<String>, values: Vec<Scalar>) -> Self {
        RCharacter { label: label.into(), values }
    }

    pub fn from_doc(doc: &RCharacterDoc, law: &FusionLaw) -> Result<Self, MiyError> {
        if doc.values.len() != law.len() {
            return Err(MiyError::InvalidCharacter(format!("{} must give one value per group element", doc.label)));
        }
        let values = law
            .labels()
            .iter()
            .map(|g| {
                doc.values
                    .get(g)
                    .cloned()
                    .ok_or_else(|| MiyError::InvalidCharacter(format!("{} has no value at {g}", doc.label)))
            })
            .collect::<Result<_, _>>()?;
        Ok(RCharacter { label: doc.label.clone(), values })
    }

    pub fn to_doc(&self, law: &FusionLaw) -> RCharacterDoc {
        RCharacterDoc { label: self.label.clone(), values: law.labels().iter().cloned().zip(self.values.iter().cloned()).collect() }
    }
}

/// A Γ-graded decomposition algebra together with a finite group `𝒴` of
/// characters of Γ and the Miyamoto maps `τ_{i,χ}`.
#[derive(Clone, Debug)]
pub struct MiyamotoContext<F> {
    object: DecompositionAlgebra<F>,
    ungraded: Option<DecompositionAlgebra<F>>,
    characters: Vec<RCharacter>,
    values: Vec<Vec<F>>,
    cayley: Vec<Vec<usize>>,
    trivial: usize,
    products: Vec<Vec<usize>>,
    maps: Vec<Vec<Matrix<F>>>,
}

/// The multiplication table of a group fusion law and its identity.
pub(crate) fn group_table(law: &FusionLaw) -> Result<(Vec<Vec<usize>>, usize), MiyError> {
    let n = law.len();
    let mut cayley = vec![vec![0; n]; n];
    for (x, row) in cayley.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            match law.product(x, y) {
                [z] => *cell = *z,
                _ => return Err(MiyError::NotGroupLaw(format!("{} * {} is not a single element", law.label(x), law.label(y)))),
            }
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| cayley[e][x] == x))
        .ok_or_else(|| MiyError::NotGroupLaw("no identity".into()))?;
    Ok((cayley, identity))
}

impl<F: FromScalar> MiyamotoContext<F> {
    /// `object` must be graded by a group law; `characters` must form a group.
    pub fn new(object: DecompositionAlgebra<F>, characters: Vec<RCharacter>) -> Result<Self, MiyError> {
        if object.indices.len() > MAX_INDICES {
            return Err(MiyError::TooLarge(format!("{} indices (at most {MAX_INDICES})", object.indices.len())));
        }
        if characters.len() > MAX_CHARACTERS {
            return Err(MiyError::TooLarge(format!("{} characters (at most {MAX_CHARACTERS})", characters.len())));
        }
        let (cayley, identity) = group_table(&object.law)?;
        let n = object.law.len();
        let mut values = Vec::new();
        for (k, ch) in characters.iter().enumerate() {
            if characters[..k].iter().any(|c| c.label == ch.label) {
                return Err(MiyError::InvalidCharacter(format!("duplicate label {}", ch.label)));
            }
            if ch.values.len() != n {
                return Err(MiyError::InvalidCharacter(format!("{} has {} values for {n} elements", ch.label, ch.values.len())));
            }
            let v: Vec<F> = ch.values.iter().map(F::from_scalar).collect::<Result<_, _>>()?;
            if v.iter().any(|x| x.is_zero()) {
                return Err(MiyError::InvalidCharacter(format!("{} takes the value 0", ch.label)));
            }
            if !v[identity].is_one() {
                return Err(MiyError::InvalidCharacter(format!("{} is not 1 at the identity", ch.label)));
            }
            for x in 0..n {
                for y in 0..n {
                    if !(v[x].clone() * &v[y]).approx_eq(&v[cayley[x][y]]) {
                        return Err(MiyError::InvalidCharacter(format!(
                            "{} is not multiplicative at ({}, {})",
                            ch.label,
                            object.law.label(x),
                            object.law.label(y)
                        )));
                    }
                }
            }
            values.push(v);
        }
        let trivial = values
            .iter()
            .position(|v| v.iter().all(F::is_one))
            .ok_or_else(|| MiyError::InvalidCharacter("the trivial character is missing".into()))?;
        let same = |a: &[F], b: &[F]| a.iter().zip(b).all(|(x, y)| x.approx_eq(y));
        let mut products = vec![vec![0; values.len()]; values.len()];
        for a in 0..values.len() {
            for b in 0..values.len() {
                let p: Vec<F> = values[a].iter().zip(&values[b]).map(|(x, y)| x.clone() * y).collect();
                products[a][b] = values.iter().position(|v| same(v, &p)).ok_or_else(|| {
                    MiyError::InvalidCharacter(format!("{} · {} is not in the list", characters[a].label, characters[b].label))
                })?;
            }
        }
        if values.iter().enumerate().any(|(a, v)| values[..a].iter().any(|w| same(v, w))) {
            return Err(MiyError::InvalidCharacter("two labels name the same character".into()));
        }
        let maps = build_maps(&object, &characters, &values)?;
        Ok(MiyamotoContext { object, ungraded: None, characters, values, cayley, trivial, products, maps })
    }

    /// Pushes `d` forward along `zeta` into the group law `zeta.target()` and
    /// keeps `d` for stability checks.
    pub fn from_grading(d: &DecompositionAlgebra<F>, zeta: &FusionMorphism, characters: Vec<RCharacter>) -> Result<Self, MiyError> {
        let graded = pushforward(d, zeta)?;
        Ok(Self::new(graded, characters)?.with_ungraded(d.clone()))
    }

    /// The context of a `ℤ/2`-graded algebra with `𝒴 = {1, sgn}`.
    ///
    /// A law that is already a two-element group law is used as is; otherwise
    /// the finest abelian grading must be `ℤ/2`.
    pub fn z2(d: &DecompositionAlgebra<F>) -> Result<Self, MiyError> {
        let chars = sign_characters();
        if d.law.len() == 2 && group_table(&d.law).is_ok() {
            let (_, identity) = group_table(&d.law)?;
            let chars = if identity == 0 { chars } else { chars.into_iter().map(|c| RCharacter::new(c.label, c.values.into_iter().rev().collect())).collect() };
            let ctx = Self::new(d.clone(), chars)?;
            return Ok(if d.axes.is_some() { ctx.with_ungraded(d.clone()) } else { ctx });
        }
        let zeta = z2_grading(&d.law)?;
        Self::from_grading(d, &zeta, chars)
    }

    /// Attaches the finer decomposition algebra the context was pushed from.
    pub fn with_ungraded(mut self, d: DecompositionAlgebra<F>) -> Self {
        self.ungraded = Some(d);
        self
    }
}

/// `{1, sgn}` on `ℤ/2` labelled as by [`cyclic_group_law`].
pub fn sign_characters() -> Vec<RCharacter> {
    vec![
        RCharacter::new("1", vec![Scalar::Rational(rat(1, 1)), Scalar::Rational(rat(1, 1))]),
        RCharacter::new("sgn", vec![Scalar::Rational(rat(1, 1)), Scalar::Rational(rat(-1, 1))]),
    ]
}

/// The morphism onto `ℤ/2` given by the finest abelian grading, when that
/// grading is `ℤ/2`.
pub fn z2_grading(law: &FusionLaw) -> Result<FusionMorphism, MiyError> {
    let grading = abelianized_grading(law)?;
    if grading.invariant_factors() != Some(&[2][..]) {
        return Err(MiyError::NotGroupLaw(format!(
            "finest abelian grading is {:?}, not Z/2",
            grading.invariant_factors().unwrap_or_default()
        )));
    }
    let map = (0..law.len())
        .map(|x| grading.vector(x).map(|v| v[0].rem_euclid(2) as usize).ok_or_else(|| MiyError::NotGroupLaw("non-abelian grading".into())))
        .collect::<Result<_, _>>()?;
    Ok(FusionMorphism::new(law.clone(), cyclic_group_law(2), map)?)
}

fn build_maps<F: FromScalar>(
    object: &DecompositionAlgebra<F>,
    characters: &[RCharacter],
    values: &[Vec<F>],
) -> Result<Vec<Vec<Matrix<F>>>, MiyError> {
    let n = object.dim();
    let mut maps = Vec::new();
    for (i, dec) in object.decompositions.iter().enumerate() {
        if !dec.is_direct_sum(n) {
            return Err(MiyError::Decomp(crate::decomp::DecompError::Shape(format!(
                "decomposition {} is not a direct sum",
                object.indices[i]
            ))));
        }
        let mut columns = Vec::new();
        let mut owner = Vec::new();
        for (g, part) in dec.parts.iter().enumerate() {
            for b in part.basis() {
                columns.push(b.clone());
                owner.push(g);
            }
        }
        let basis = Matrix::from_columns(n, &columns)?;
        let inverse = basis.inverse().ok_or_else(|| LinAlgError::Shape("decomposition basis is singular".into()))?;
        let mut row = Vec::new();
        for (c, v) in values.iter().enumerate() {
            let scale: Vec<F> = owner.iter().map(|&g| v[g].clone()).collect();
            let tau = basis.mul(&Matrix::diagonal(&scale)).mul(&inverse);
            if !object.algebra.is_automorphism(&tau) {
                return Err(MiyError::NotAutomorphism { index: object.indices[i].clone(), character: characters[c].label.clone() });
            }
            row.push(tau);
        }
        maps.push(row);
    }
    Ok(maps)
}

impl<F: FromScalar> MiyamotoContext<F> {
    pub fn object(&self) -> &DecompositionAlgebra<F> {
        &self.object
    }

    /// The finer (usually axial) decomposition algebra, if any.
    pub fn ungraded(&self) -> Option<&DecompositionAlgebra<F>> {
        self.ungraded.as_ref()
    }

    /// The decomposition algebra carrying axes: the ungraded one when present.
    pub fn axial(&self) -> Option<&DecompositionAlgebra<F>> {
        match &self.ungraded {
            Some(d) if d.axes.is_some() => Some(d),
            _ => self.object.axes.as_ref().map(|_| &self.object),
        }
    }

    pub fn characters(&self) -> &[RCharacter] {
        &self.characters
    }

    pub fn character_index(&self, label: &str) -> Option<usize> {
        self.characters.iter().position(|c| c.label == label)
    }

    pub fn character_values(&self, c: usize) -> &[F] {
        &self.values[c]
    }

    pub fn trivial(&self) -> usize {
        self.trivial
    }

    /// Index of the product character `χ_a χ_b`.
    pub fn character_product(&self, a: usize, b: usize) -> usize {
        self.products[a][b]
    }

    pub fn character_inverse(&self, a: usize) -> usize {
        (0..self.characters.len()).find(|&b| self.products[a][b] == self.trivial).expect("finite group")
    }

    pub fn nontrivial_characters(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.characters.len()).filter(move |&c| c != self.trivial)
    }

    pub fn group_cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn indices(&self) -> &[String] {
        &self.object.indices
    }

    /// `τ_{i,χ}`: scales `A_g^i` by `χ(g)`.
    pub fn miyamoto_map(&self, i: usize, c: usize) -> &Matrix<F> {
        &self.maps[i][c]
    }

    /// Labels `(index, character)` for a generator pair.
    pub fn pair_label(&self, i: usize, c: usize) -> String {
        format!("{},{}", self.object.indices[i], self.characters[c].label)
    }
}
