use serde::Serialize;

use super::table::scalar_approx_eq;
use super::{CharacterTable, ChartError};
use crate::exactlin::{FromScalar, Rational, Scalar, C64};
use crate::fpgroup::{abelianized_grading, Grading, GradingGroup};
use crate::fusion::{FusionLaw, FusionMorphism};

/// The grading `χ ↦ χ|_Z / χ(1)` of the representation fusion law by the
/// dual of the center, with its comparison against the finest abelian grading.
#[derive(Clone, Debug)]
pub struct CenterGrading {
    pub grading: Grading,
    /// Table columns of the central (singleton) classes.
    pub center_classes: Vec<usize>,
    /// `Irr(Z)` as a group fusion law, labelled by the first character restricting to each element.
    pub dual_center: FusionLaw,
    pub morphism: FusionMorphism,
    pub summary: CenterSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterSummary {
    pub center_order: usize,
    pub invariant_factors: Vec<u64>,
    /// Characters with `Z` in their kernel.
    pub kernel: Vec<String>,
    pub abelianized_invariant_factors: Vec<u64>,
    pub abelianized_kernel: Vec<String>,
    pub matches_abelianized: bool,
}

/// `χ(c)/χ(1)` on each central class.
fn restriction<F: FromScalar>(table: &CharacterTable, i: usize, center: &[usize]) -> Result<Vec<Scalar>, ChartError> {
    let ch = &table.characters()[i];
    let degree = F::from_i64(table.degree(i)? as i64);
    center
        .iter()
        .map(|&c| Ok((F::from_scalar(&ch.values[c]).map_err(|_| ChartError::NeedsComplex)? / &degree).to_scalar()))
        .collect()
}

pub fn center_grading_map(table: &CharacterTable) -> Result<CenterGrading, ChartError> {
    let center: Vec<usize> = table.classes().iter().enumerate().filter(|(_, c)| c.size == 1).map(|(i, _)| i).collect();
    let restrictions: Vec<Vec<Scalar>> = (0..table.len())
        .map(|i| if table.is_exact() { restriction::<Rational>(table, i, &center) } else { restriction::<C64>(table, i, &center) })
        .collect::<Result<_, _>>()?;
    let same = |a: &[Scalar], b: &[Scalar]| a.iter().zip(b).all(|(x, y)| scalar_approx_eq(x, y));

    let mut distinct: Vec<usize> = Vec::new();
    let mut map = Vec::new();
    for (i, r) in restrictions.iter().enumerate() {
        match distinct.iter().position(|&d| same(&restrictions[d], r)) {
            Some(p) => map.push(p),
            None => {
                map.push(distinct.len());
                distinct.push(i);
            }
        }
    }
    let n = distinct.len();
    let mut cayley = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let prod: Vec<Scalar> = restrictions[distinct[a]]
                .iter()
                .zip(&restrictions[distinct[b]])
                .map(|(x, y)| match (x, y) {
                    (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
                    _ => Scalar::Complex(x.to_c64() * y.to_c64()),
                })
                .collect();
            cayley[a][b] = distinct
                .iter()
                .position(|&d| same(&restrictions[d], &prod))
                .ok_or_else(|| ChartError::InvalidTable("restrictions to the center are not closed".into()))?;
        }
    }
    let labels: Vec<String> = distinct.iter().map(|&d| table.characters()[d].label.clone()).collect();
    let dual_center = FusionLaw::group_law(labels, &cayley)?;
    let law = table.representation_fusion_law()?;
    let morphism = FusionMorphism::new(law.clone(), dual_center.clone(), map)?;
    let finest_dual = abelianized_grading(&dual_center)?;
    let grading = finest_dual
        .pull_back(&morphism)
        .ok_or_else(|| ChartError::InvalidTable("center restriction map is not onto".into()))?;

    let abelian = abelianized_grading(&law)?;
    let kernel_of = |g: &Grading| -> Vec<String> {
        let GradingGroup::Abelian(group) = &g.group else { return Vec::new() };
        (0..law.len()).filter(|&x| g.vector(x).is_some_and(|v| group.is_identity(v))).map(|x| law.label(x).to_string()).collect()
    };
    let factors = |g: &Grading| g.invariant_factors().map(<[u64]>::to_vec).unwrap_or_default();
    let (kernel, abelianized_kernel) = (kernel_of(&grading), kernel_of(&abelian));
    let (invariant_factors, abelianized_invariant_factors) = (factors(&grading), factors(&abelian));
    let summary = CenterSummary {
        center_order: center.iter().map(|&c| table.classes()[c].size).sum(),
        matches_abelianized: kernel == abelianized_kernel && invariant_factors == abelianized_invariant_factors,
        invariant_factors,
        kernel,
        abelianized_invariant_factors,
        abelianized_kernel,
    };
    Ok(CenterGrading { grading, center_classes: center, dual_center, morphism, summary })
}
