use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::abelian::{abelianize, AbelianGroup};
use super::collapse::reduced_presentation;
use super::coset::{compose, coset_enumerate, CosetGroup, Enumeration};
use super::presentation::finest_grading_presentation;
use super::FpError;
use crate::fusion::{FusionLaw, FusionMorphism};

/// The group a grading lands in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradingGroup {
    Abelian(AbelianGroup),
    /// A finite group given by its regular permutation representation.
    Finite(CosetGroup),
}

/// An element of a grading group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupElement {
    Vector(Vec<i64>),
    Perm(Vec<usize>),
}

/// A fusion-law morphism into a group fusion law.
#[derive(Clone, Debug)]
pub struct Grading {
    pub law: FusionLaw,
    pub group: GradingGroup,
    pub map: Vec<GroupElement>,
    pub adequate: bool,
    basis_in_elements: Vec<Vec<i64>>,
}

/// JSON report of an abelian grading.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradingReport {
    pub invariant_factors: Vec<u64>,
    pub map: LabelMap<Vec<i64>>,
    pub adequate: bool,
}

impl GradingGroup {
    fn op(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (self, a, b) {
            (GradingGroup::Abelian(g), GroupElement::Vector(a), GroupElement::Vector(b)) => GroupElement::Vector(g.add(a, b)),
            (GradingGroup::Finite(_), GroupElement::Perm(a), GroupElement::Perm(b)) => GroupElement::Perm(compose(a, b)),
            _ => panic!("element does not belong to the grading group"),
        }
    }

    fn same(&self, a: &GroupElement, b: &GroupElement) -> bool {
        match (self, a, b) {
            (GradingGroup::Abelian(g), GroupElement::Vector(a), GroupElement::Vector(b)) => g.reduce(a) == g.reduce(b),
            _ => a == b,
        }
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            GradingGroup::Abelian(g) => g.order(),
            GradingGroup::Finite(g) => Some(g.order as u64),
        }
    }
}

impl Grading {
    /// Triples `(x, y, z)` with `z ∈ x * y` but `ξ(x)ξ(y) ≠ ξ(z)`.
    pub fn violations(&self) -> Vec<(usize, usize, usize)> {
        self.law
            .triples()
            .filter(|&(x, y, z)| !self.group.same(&self.group.op(&self.map[x], &self.map[y]), &self.map[z]))
            .collect()
    }

    pub fn is_morphism(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn invariant_factors(&self) -> Option<&[u64]> {
        match &self.group {
            GradingGroup::Abelian(g) => Some(&g.invariant_factors),
            GradingGroup::Finite(_) => None,
        }
    }

    /// The element vector of label `x` in an abelian grading.
    pub fn vector(&self, x: usize) -> Option<&[i64]> {
        match &self.map[x] {
            GroupElement::Vector(v) => Some(v),
            GroupElement::Perm(_) => None,
        }
    }

    pub fn report(&self) -> Option<GradingReport> {
        let factors = self.invariant_factors()?.to_vec();
        let map = self
            .law
            .labels()
            .iter()
            .zip(&self.map)
            .map(|(l, e)| match e {
                GroupElement::Vector(v) => (l.clone(), v.clone()),
                GroupElement::Perm(_) => unreachable!(),
            })
            .collect();
        Some(GradingReport { invariant_factors: factors, map, adequate: self.adequate })
    }

    /// The grading `self ∘ ζ` of `ζ`'s source, for a surjective `ζ` into this
    /// grading's law.
    pub fn pull_back(&self, zeta: &FusionMorphism) -> Option<Grading> {
        if zeta.target() != &self.law {
            return None;
        }
        let n = zeta.source().len();
        let preimage: Vec<Option<usize>> =
            (0..self.law.len()).map(|y| (0..n).find(|&x| zeta.apply(x) == y)).collect();
        let basis_in_elements = self
            .basis_in_elements
            .iter()
            .map(|w| {
                let mut out = vec![0; n];
                for (y, &e) in w.iter().enumerate() {
                    if e != 0 {
                        out[preimage[y]?] += e;
                    }
                }
                Some(out)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Grading {
            law: zeta.source().clone(),
            group: self.group.clone(),
            map: (0..n).map(|x| self.map[zeta.apply(x)].clone()).collect(),
            adequate: self.adequate && preimage.iter().all(Option::is_some),
            basis_in_elements,
        })
    }

    /// Factors a grading `ζ` into an abelian group law through this finest
    /// abelian grading: returns `ρ(b_i)` for each basis element `b_i`, as
    /// element indices of `ζ`'s target, or `None` when no homomorphism
    /// `ρ` with `ζ = ρ ∘ ξ` exists.
    pub fn factor_through(&self, zeta: &FusionMorphism) -> Option<Vec<usize>> {
        let GradingGroup::Abelian(g) = &self.group else { return None };
        if zeta.source() != &self.law {
            return None;
        }
        let target = GroupOps::new(zeta.target())?;
        let rho: Vec<usize> = self
            .basis_in_elements
            .iter()
            .map(|w| {
                w.iter()
                    .enumerate()
                    .fold(target.identity, |acc, (x, &e)| target.mul(acc, target.pow(zeta.apply(x), e)))
            })
            .collect();
        for (i, &d) in g.invariant_factors.iter().enumerate() {
            if d != 0 && target.pow(rho[i], d as i64) != target.identity {
                return None;
            }
        }
        for x in 0..self.law.len() {
            let v = self.vector(x)?;
            let image = v.iter().enumerate().fold(target.identity, |acc, (i, &e)| target.mul(acc, target.pow(rho[i], e)));
            if image != zeta.apply(x) {
                return None;
            }
        }
        Some(rho)
    }
}

/// Multiplication read off a group fusion law.
struct GroupOps<'a> {
    law: &'a FusionLaw,
    identity: usize,
}

impl<'a> GroupOps<'a> {
    fn new(law: &'a FusionLaw) -> Option<Self> {
        let n = law.len();
        if (0..n).any(|x| (0..n).any(|y| law.product(x, y).len() != 1)) {
            return None;
        }
        let identity = *law.units().first()?;
        Some(GroupOps { law, identity })
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.law.product(a, b)[0]
    }

    fn inverse(&self, a: usize) -> usize {
        (0..self.law.len()).find(|&b| self.mul(a, b) == self.identity).expect("group element has an inverse")
    }

    fn pow(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inverse(a) } else { a };
        (0..e.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }
}

/// The finest abelian grading, computed from the Smith normal form of the
/// relation matrix of the finest grading presentation.
pub fn abelianized_grading(law: &FusionLaw) -> Result<Grading, FpError> {
    let q = abelianize(&finest_grading_presentation(law))?;
    let adequate = q.group.generated_by(&q.images);
    let grading = Grading {
        law: law.clone(),
        map: q.images.into_iter().map(GroupElement::Vector).collect(),
        group: GradingGroup::Abelian(q.group),
        adequate,
        basis_in_elements: q.basis_in_generators,
    };
    if let Some(&(x, y, _)) = grading.violations().first() {
        return Err(FpError::Internal(format!(
            "abelianized map fails containment at ({}, {})",
            law.label(x),
            law.label(y)
        )));
    }
    Ok(grading)
}

/// The finest grading, when coset enumeration of the collapsed presentation
/// closes within `max_cosets`.
pub fn finest_grading(law: &FusionLaw, max_cosets: usize) -> Result<Grading, FpError> {
    let reduced = reduced_presentation(law);
    let group = match coset_enumerate(&reduced.presentation, max_cosets) {
        Enumeration::Finite(g) => g,
        Enumeration::Exhausted { cosets_defined } => return Err(FpError::Exhausted { cosets_defined }),
    };
    let identity: Vec<usize> = (0..group.order).collect();
    let map = reduced
        .element_generator
        .iter()
        .map(|g| GroupElement::Perm(g.map_or_else(|| identity.clone(), |g| group.generators[g].clone())))
        .collect();
    let grading = Grading { law: law.clone(), group: GradingGroup::Finite(group), map, adequate: true, basis_in_elements: Vec::new() };
    if !grading.is_morphism() {
        return Err(FpError::Internal("enumerated grading is not a fusion morphism".into()));
    }
    Ok(grading)
}

/// Label-keyed map that keeps law order when serialized.
pub type LabelMap<V> = IndexMap<String, V>;
