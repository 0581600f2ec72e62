use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::context::MiyamotoContext;
use super::group::{generator_pairs, is_miyamoto_closed};
use super::MiyError;
use crate::exactlin::{FromScalar, Matrix, MatrixKey};
use crate::fpgroup::{abelianize, coset_enumerate, cyclic_reduce, Enumeration, Letter, Presentation, Word};

/// The universal Miyamoto group as a finite presentation.
#[derive(Clone, Debug)]
pub struct UniversalPresentation {
    pub presentation: Presentation,
    /// `(index, character)` of each generator `t_{i,χ}`.
    pub generators: Vec<(usize, usize)>,
    /// `R_ā` for each generator: pairs `(j, k)` with `ā τ_{j,χ} ā⁻¹ = τ_{k,χ}` for all `χ`.
    pub conjugation_pairs: Vec<Vec<(usize, usize)>>,
    /// Every `(j, π_{i,χ}(j))` lies in the corresponding `R_ā`.
    pub closure_pairs_present: bool,
}

/// `R_ā` for the element `a` (with inverse `a_inv`).
pub(crate) fn conjugation_pairs<F: FromScalar>(ctx: &MiyamotoContext<F>, a: &Matrix<F>, a_inv: &Matrix<F>) -> Vec<(usize, usize)> {
    let n = ctx.indices().len();
    let chars: Vec<usize> = ctx.nontrivial_characters().collect();
    let Some(&first) = chars.first() else {
        return (0..n).flat_map(|j| (0..n).map(move |k| (j, k))).collect();
    };
    let mut lookup: HashMap<MatrixKey<F>, Vec<usize>> = HashMap::new();
    for k in 0..n {
        lookup.entry(ctx.miyamoto_map(k, first).key()).or_default().push(k);
    }
    let mut pairs = Vec::new();
    for j in 0..n {
        let conj = |c: usize| a.mul(ctx.miyamoto_map(j, c)).mul(a_inv);
        let Some(candidates) = lookup.get(&conj(first).key()) else { continue };
        for &k in candidates {
            if chars.iter().all(|&c| conj(c).approx_eq(ctx.miyamoto_map(k, c))) {
                pairs.push((j, k));
            }
        }
    }
    pairs
}

pub(crate) fn generator_name<F: FromScalar>(ctx: &MiyamotoContext<F>, i: usize, c: usize) -> String {
    format!("t[{}]", ctx.pair_label(i, c))
}

pub fn universal_presentation<F: FromScalar>(ctx: &MiyamotoContext<F>) -> Result<UniversalPresentation, MiyError> {
    if !F::EXACT {
        return Err(MiyError::FloatMode);
    }
    let closure = is_miyamoto_closed(ctx);
    if let Some(f) = &closure.failure {
        return Err(MiyError::NotClosed {
            index: ctx.indices()[f.index].clone(),
            character: ctx.characters()[f.character].label.clone(),
            source_index: ctx.indices()[f.source].clone(),
        });
    }
    let generators = generator_pairs(ctx);
    let position: HashMap<(usize, usize), usize> = generators.iter().enumerate().map(|(g, &p)| (p, g)).collect();
    let letter = |i: usize, c: usize| Letter::new(position[&(i, c)]);

    let mut relators: Vec<Word> = Vec::new();
    for i in 0..ctx.indices().len() {
        for a in ctx.nontrivial_characters() {
            for b in ctx.nontrivial_characters() {
                let ab = ctx.character_product(a, b);
                let mut w = vec![letter(i, a), letter(i, b)];
                if ab != ctx.trivial() {
                    w.push(letter(i, ab).inverted());
                }
                relators.push(w);
            }
        }
    }

    let mut conjugation = Vec::new();
    let mut closure_pairs_present = true;
    for &(i, c) in &generators {
        let a = ctx.miyamoto_map(i, c);
        let a_inv = ctx.miyamoto_map(i, ctx.character_inverse(c));
        let pairs = conjugation_pairs(ctx, a, a_inv);
        for &(j, k) in &pairs {
            for c2 in ctx.nontrivial_characters() {
                relators.push(vec![letter(k, c2).inverted(), letter(i, c), letter(j, c2), letter(i, c).inverted()]);
            }
        }
        let set: HashSet<(usize, usize)> = pairs.iter().copied().collect();
        closure_pairs_present &= (0..ctx.indices().len()).all(|j| set.contains(&(j, closure.pi[i][c][j])));
        conjugation.push(pairs);
    }

    let mut seen = HashSet::new();
    let relators: Vec<Word> = relators.into_iter().map(|w| cyclic_reduce(&w)).filter(|w| !w.is_empty() && seen.insert(w.clone())).collect();
    let names = generators.iter().map(|&(i, c)| generator_name(ctx, i, c)).collect();
    Ok(UniversalPresentation {
        presentation: Presentation::new(names, relators)?,
        generators,
        conjugation_pairs: conjugation,
        closure_pairs_present,
    })
}

/// Orders of `Û` and `Miy`, the kernel of `t_{i,χ} ↦ τ_{i,χ}` and whether it is central.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralExtension {
    pub universal_order: usize,
    pub miyamoto_order: usize,
    pub kernel_order: usize,
    pub kernel_central: bool,
    pub abelianization: Vec<u64>,
    pub generators: usize,
    pub relators: usize,
}

pub fn central_extension_check<F: FromScalar>(ctx: &MiyamotoContext<F>, max_cosets: usize) -> Result<CentralExtension, MiyError> {
    let up = universal_presentation(ctx)?;
    let abelianization = abelianize(&up.presentation)?.group.invariant_factors;
    let group = match coset_enumerate(&up.presentation, max_cosets) {
        Enumeration::Finite(g) => g,
        Enumeration::Exhausted { cosets_defined } => return Err(MiyError::Exhausted { cosets_defined }),
    };
    let gens: Vec<&Matrix<F>> = up.generators.iter().map(|&(i, c)| ctx.miyamoto_map(i, c)).collect();
    let mut images: Vec<Option<Matrix<F>>> = vec![None; group.order];
    let mut words: Vec<Vec<Letter>> = vec![Vec::new(); group.order];
    images[0] = Some(Matrix::identity(ctx.object().dim()));
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        let current = images[u].clone().expect("visited");
        for (g, m) in gens.iter().enumerate() {
            let v = group.right[u][2 * g];
            let next = current.mul(m);
            match &images[v] {
                Some(existing) if !existing.approx_eq(&next) => return Err(MiyError::RelatorsFail),
                Some(_) => {}
                None => {
                    let mut w = words[u].clone();
                    w.push(Letter::new(g));
                    words[v] = w;
                    images[v] = Some(next);
                    queue.push_back(v);
                }
            }
        }
    }
    let images: Vec<Matrix<F>> = images.into_iter().map(|m| m.expect("generators reach every element")).collect();
    let kernel: Vec<usize> = (0..group.order).filter(|&u| images[u].is_identity()).collect();
    let kernel_central = kernel.iter().all(|&u| {
        (0..gens.len()).all(|g| {
            let mut left = vec![Letter::new(g)];
            left.extend(words[u].iter().copied());
            group.element_of(&left) == group.right[u][2 * g]
        })
    });
    let distinct: HashSet<MatrixKey<F>> = images.iter().map(Matrix::key).collect();
    Ok(CentralExtension {
        universal_order: group.order,
        miyamoto_order: distinct.len(),
        kernel_order: kernel.len(),
        kernel_central,
        abelianization,
        generators: up.generators.len(),
        relators: up.presentation.relators().len(),
    })
}
