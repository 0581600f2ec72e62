use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::{FusionError, FusionLaw};

/// A map of labels `ξ: X -> Y` with `ξ(x₁ * x₂) ⊆ ξ(x₁) * ξ(x₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionMorphism {
    source: FusionLaw,
    target: FusionLaw,
    map: Vec<usize>,
}

impl FusionMorphism {
    /// Checks the containment condition on every pair before accepting `map`.
    pub fn new(source: FusionLaw, target: FusionLaw, map: Vec<usize>) -> Result<Self, FusionError> {
        if map.len() != source.len() {
            return Err(FusionError::MapArity { got: map.len(), expected: source.len() });
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.len()) {
            return Err(FusionError::IndexOutOfRange(bad));
        }
        if let Some((x, y)) = first_violation(&source, &target, &map) {
            return Err(FusionError::NotAMorphism {
                x: source.label(x).to_string(),
                y: source.label(y).to_string(),
            });
        }
        Ok(FusionMorphism { source, target, map })
    }

    pub fn from_labels(source: FusionLaw, target: FusionLaw, pairs: &[(&str, &str)]) -> Result<Self, FusionError> {
        let mut map = vec![usize::MAX; source.len()];
        for (x, y) in pairs {
            map[source.index_of(x)?] = target.index_of(y)?;
        }
        if let Some(missing) = map.iter().position(|&y| y == usize::MAX) {
            return Err(FusionError::UnknownLabel(source.label(missing).to_string()));
        }
        Self::new(source, target, map)
    }

    pub fn identity(law: FusionLaw) -> Self {
        let map = (0..law.len()).collect();
        FusionMorphism { source: law.clone(), target: law, map }
    }

    pub fn source(&self) -> &FusionLaw {
        &self.source
    }

    pub fn target(&self) -> &FusionLaw {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FusionMorphism) -> Result<FusionMorphism, FusionError> {
        if self.target != other.source {
            return Err(FusionError::NotAMorphism {
                x: "codomain".into(),
                y: "domain".into(),
            });
        }
        let map = self.map.iter().map(|&y| other.map[y]).collect();
        Ok(FusionMorphism { source: self.source.clone(), target: other.target.clone(), map })
    }

    /// Projections `X × Y -> X` and `X × Y -> Y` of the product law.
    pub fn projections(a: &FusionLaw, b: &FusionLaw) -> (FusionMorphism, FusionMorphism) {
        let p = a.product_law(b);
        let m = b.len();
        let first = (0..p.len()).map(|k| k / m).collect();
        let second = (0..p.len()).map(|k| k % m).collect();
        (
            FusionMorphism::new(p.clone(), a.clone(), first).expect("projection"),
            FusionMorphism::new(p, b.clone(), second).expect("projection"),
        )
    }

    /// Inclusions `X -> X ∪ Y` and `Y -> X ∪ Y` of the union law.
    pub fn inclusions(a: &FusionLaw, b: &FusionLaw) -> (FusionMorphism, FusionMorphism) {
        let u = a.union_law(b);
        let n = a.len();
        (
            FusionMorphism::new(a.clone(), u.clone(), (0..n).collect()).expect("inclusion"),
            FusionMorphism::new(b.clone(), u, (0..b.len()).map(|y| n + y).collect()).expect("inclusion"),
        )
    }
}

/// JSON shape of a morphism: the target law and a label map. The source is
/// optional when it is implied by context.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FusionMorphismDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<FusionLaw>,
    pub target: FusionLaw,
    pub map: IndexMap<String, String>,
}

impl FusionMorphism {
    /// Reads a morphism; `source` is used when the document has none.
    pub fn from_doc(doc: &FusionMorphismDoc, source: Option<&FusionLaw>) -> Result<Self, FusionError> {
        let source = doc.source.as_ref().or(source).ok_or_else(|| FusionError::UnknownLabel("source law".into()))?.clone();
        let mut map = vec![usize::MAX; source.len()];
        for (x, y) in &doc.map {
            map[source.index_of(x)?] = doc.target.index_of(y)?;
        }
        if let Some(missing) = map.iter().position(|&y| y == usize::MAX) {
            return Err(FusionError::UnknownLabel(source.label(missing).to_string()));
        }
        Self::new(source, doc.target.clone(), map)
    }

    pub fn to_doc(&self) -> FusionMorphismDoc {
        FusionMorphismDoc {
            source: Some(self.source.clone()),
            target: self.target.clone(),
            map: self.source.labels().iter().zip(&self.map).map(|(x, &y)| (x.clone(), self.target.label(y).to_string())).collect(),
        }
    }
}

/// First pair `(x₁, x₂)` where the containment fails, if any.
pub(crate) fn first_violation(source: &FusionLaw, target: &FusionLaw, map: &[usize]) -> Option<(usize, usize)> {
    for x in 0..source.len() {
        for y in 0..source.len() {
            let allowed = target.product(map[x], map[y]);
            if source.product(x, y).iter().any(|&z| allowed.binary_search(&map[z]).is_err()) {
                return Some((x, y));
            }
        }
    }
    None
}
