use std::collections::{HashMap, HashSet};

use super::{BoseMesner, NortonCertificate, SchemeError};
use crate::chartheory::{isotypic_decomposition, refine_fusion_law, table_for_group, CharacterTable, MatrixRep};
use crate::decomp::{Axes, Decomposition, DecompositionAlgebra};
use crate::exactlin::{rat, Field, Matrix, Scalar, Spectral, C64};
use crate::fusion::{cyclic_group_law, FusionLaw, FusionMorphism};
use crate::miyamoto::{miyamoto_group, MiyamotoContext, RCharacter, DEFAULT_GROUP_CAP};
use crate::permgroup::{Perm, PermGroup};

/// The eigenspace decomposition at every point refined by the isotypic
/// components of the point's centralizer.
#[derive(Clone, Debug)]
pub struct RefinedDecomposition<F> {
    pub point: usize,
    pub centralizer_order: usize,
    /// The eigenvalue law refined by the centralizer action.
    pub eigen_law: FusionLaw,
    /// Indexed by points, over the product of `eigen_law` and the
    /// representation law of the centralizer.
    pub object: DecompositionAlgebra<F>,
    /// `(λ, χ) ↦ k` where `χ(x)/χ(1) = exp(2πik/n)`.
    pub grading: FusionMorphism,
    pub grading_order: usize,
    /// `ρ(y)` on `V_i` for every point `y`.
    pub rho: Vec<Matrix<F>>,
    /// `τ_x = ρ(x)`, when the grading characters are representable.
    pub tau_is_rho: Option<bool>,
    pub miyamoto_order: Option<usize>,
    /// `|ρ(G)|`.
    pub image_order: usize,
}

/// `V_i` of a scheme on a conjugacy class `class` of `group`, refined at the
/// point `x` with `H = C_G(class[x])`.
///
/// `table` is a character table of the centralizer; a shipped one is
/// looked up when absent.
pub fn refine_with_centralizer<F: Spectral>(
    cert: &NortonCertificate<F>,
    bm: &BoseMesner<F>,
    group: &PermGroup,
    class: &[Perm],
    x: usize,
    table: Option<CharacterTable>,
) -> Result<RefinedDecomposition<F>, SchemeError> {
    let n = bm.n();
    if class.len() != n || cert.object.indices.len() != n {
        return Err(SchemeError::IndexOutOfRange(class.len()));
    }
    if x >= n {
        return Err(SchemeError::IndexOutOfRange(x));
    }
    let index: HashMap<&Perm, usize> = class.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let on_points = |g: &Perm| -> Result<Vec<usize>, SchemeError> {
        class
            .iter()
            .map(|p| index.get(&p.conjugate_by(g)).copied().ok_or_else(|| SchemeError::NotInvariant("points are not a conjugacy class".into())))
            .collect()
    };
    let space = &cert.norton.space;
    let restrict = |images: &[usize]| -> Matrix<F> {
        let columns: Vec<Vec<F>> = space
            .basis()
            .iter()
            .map(|b| {
                let mut moved = vec![F::zero(); n];
                for (y, v) in b.iter().enumerate() {
                    moved[images[y]] = v.clone();
                }
                space.coordinates(&moved).expect("eigenspaces are invariant")
            })
            .collect();
        Matrix::from_columns(space.dim(), &columns).expect("square")
    };

    let h = group.centralizer(&class[x])?;
    let table = match table {
        Some(t) => t,
        None => table_for_group(&h)?,
    };
    let generators = h.generators().iter().map(|g| Ok(restrict(&on_points(g)?))).collect::<Result<Vec<_>, SchemeError>>()?;
    let rep = MatrixRep::with_dim(h.clone(), generators, space.dim())?;
    let isotypic = isotypic_decomposition(&rep, &table)?;
    let local = &cert.object.decompositions[x];
    let eigen_law = refine_fusion_law(&rep, local, cert.object.law.labels().to_vec())?;
    let irr_law = table.representation_fusion_law()?;
    let law = eigen_law.product_law(&irr_law);
    let m = irr_law.len();

    let parts: Vec<_> =
        local.parts.iter().flat_map(|w| isotypic.components.iter().map(move |u| w.intersection(&u.subspace))).collect();
    let refined = Decomposition::new(parts);
    if !refined.is_direct_sum(space.dim()) {
        return Err(SchemeError::NotInvariant("eigenspaces are not sums of isotypic pieces".into()));
    }

    let elements = group.elements()?;
    let mut rho = Vec::with_capacity(n);
    let mut decompositions = Vec::with_capacity(n);
    for y in 0..n {
        let g = elements
            .iter()
            .find(|g| class[x].conjugate_by(g) == class[y])
            .ok_or_else(|| SchemeError::NotInvariant(format!("point {y} is not conjugate to {x}")))?;
        let moved = restrict(&on_points(g)?);
        decompositions.push(Decomposition::new(refined.parts.iter().map(|p| p.image(&moved)).collect()));
        rho.push(restrict(&on_points(&class[y])?));
    }

    let trivial = table
        .characters()
        .iter()
        .position(|c| c.values.iter().all(|v| v.to_c64().approx_eq(&C64::new(1.0, 0.0))))
        .ok_or_else(|| SchemeError::NotInvariant("table has no trivial character".into()))?;
    let axes = cert.object.axes.as_ref().map(|a| Axes {
        vectors: a.vectors.clone(),
        lambda: (0..law.len()).map(|k| a.lambda[k / m].clone()).collect(),
        axis_label: a.axis_label * m + trivial,
    });
    let mut object = DecompositionAlgebra::new(cert.object.algebra.clone(), law.clone(), cert.object.indices.clone(), decompositions)?;
    if let Some(axes) = axes {
        object = object.with_axes(axes)?;
    }

    let order = class[x].order();
    let columns = table.bind(&h)?;
    let cc = h.conjugacy_classes()?;
    let hx = h.index_of(&class[x])?.expect("x centralizes itself");
    let column = columns[cc.class_of[hx]];
    let grades: Vec<usize> = (0..m)
        .map(|c| {
            let value = table.characters()[c].values[column].to_c64() / table.characters()[c].values[table.identity_class()].to_c64();
            let turns = value.im().atan2(value.re()) / (2.0 * std::f64::consts::PI) * order as f64;
            (turns.round() as i64).rem_euclid(order as i64) as usize
        })
        .collect();
    let map = (0..law.len()).map(|k| grades[k % m]).collect();
    let grading = FusionMorphism::new(law, cyclic_group_law(order), map)?;

    let image_order = {
        let gens = group.generators().iter().map(|g| Ok(restrict(&on_points(g)?))).collect::<Result<Vec<_>, SchemeError>>()?;
        let full = MatrixRep::with_dim(group.clone(), gens, space.dim())?;
        full.matrices()?.into_iter().map(|m| m.key()).collect::<HashSet<_>>().len()
    };

    let (mut tau_is_rho, mut miyamoto_order) = (None, None);
    if order >= 2 && (order <= 2 || !F::EXACT) {
        let ctx = MiyamotoContext::from_grading(&object, &grading, cyclic_characters(order))?;
        tau_is_rho = Some((0..n).all(|y| ctx.miyamoto_map(y, 1).approx_eq(&rho[y])));
        miyamoto_order = miyamoto_group(&ctx, DEFAULT_GROUP_CAP).order();
    }
    Ok(RefinedDecomposition {
        point: x,
        centralizer_order: h.order()?,
        eigen_law,
        object,
        grading,
        grading_order: order,
        rho,
        tau_is_rho,
        miyamoto_order,
        image_order,
    })
}

/// `k ↦ ζ^{jk}` for `j = 0..n`, rational when `n ≤ 2`.
fn cyclic_characters(n: usize) -> Vec<RCharacter> {
    (0..n)
        .map(|j| {
            let values = (0..n)
                .map(|k| {
                    if n <= 2 {
                        Scalar::Rational(rat(if j * k % 2 == 0 { 1 } else { -1 }, 1))
                    } else {
                        Scalar::Complex(C64::root_of_unity((j * k) as i64, n as i64))
                    }
                })
                .collect();
            RCharacter::new(if j == 0 { "1".to_string() } else { format!("z^{j}") }, values)
        })
        .collect()
}
