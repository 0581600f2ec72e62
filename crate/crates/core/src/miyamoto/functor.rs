use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::context::MiyamotoContext;
use super::group::{generator_pairs, is_miyamoto_closed};
use super::universal::{conjugation_pairs, universal_presentation};
use super::MiyError;
use crate::decomp::DecMorphism;
use crate::exactlin::{vec_approx_eq, FromScalar, Matrix, MatrixKey};

/// Miyamoto stability and unique type of an axial context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub stable: bool,
    pub unique_type: bool,
    /// `i ↦ a_i` is injective.
    pub axes_injective: bool,
    /// `i ↦ (χ ↦ τ_{i,χ})` is injective.
    pub maps_injective: bool,
    /// `pi[i][χ][j]`, filled when stable.
    pub pi: Option<Vec<Vec<Vec<usize>>>>,
    pub failure: Option<String>,
}

pub fn check_stability_and_unique_type<F: FromScalar>(ctx: &MiyamotoContext<F>) -> Result<StabilityReport, MiyError> {
    let d = ctx.axial().ok_or(MiyError::NoAxes)?;
    let axes = d.axes.as_ref().ok_or(MiyError::NoAxes)?;
    let n = d.indices.len();
    let mut pi = Vec::new();
    let mut failure = None;
    'outer: for i in 0..n {
        let mut row = Vec::new();
        for c in 0..ctx.characters().len() {
            let m = ctx.miyamoto_map(i, c);
            let mut candidates = Vec::new();
            for j in 0..n {
                let axis = m.mul_vec(&axes.vectors[j]);
                let parts: Vec<_> = d.decompositions[j].parts.iter().map(|p| p.image(m)).collect();
                candidates.push(
                    (0..n)
                        .filter(|&k| {
                            vec_approx_eq(&axis, &axes.vectors[k])
                                && d.decompositions[k].parts.iter().zip(&parts).all(|(a, b)| a.same_as(b))
                        })
                        .collect::<Vec<_>>(),
                );
                if candidates[j].is_empty() {
                    failure = Some(format!("tau[{}] does not permute the axial decompositions at {}", ctx.pair_label(i, c), d.indices[j]));
                    break 'outer;
                }
            }
            let Some(perm) = perfect_matching(&candidates) else {
                failure = Some(format!("tau[{}] does not induce a permutation of the indices", ctx.pair_label(i, c)));
                break 'outer;
            };
            row.push(perm);
        }
        pi.push(row);
    }
    let axes_injective = (0..n).all(|i| (0..i).all(|j| !vec_approx_eq(&axes.vectors[i], &axes.vectors[j])));
    let maps_injective = (0..n).all(|i| {
        (0..i).all(|j| ctx.nontrivial_characters().any(|c| !ctx.miyamoto_map(i, c).approx_eq(ctx.miyamoto_map(j, c))))
    });
    let stable = failure.is_none();
    Ok(StabilityReport {
        stable,
        unique_type: axes_injective && maps_injective,
        axes_injective,
        maps_injective,
        pi: stable.then_some(pi),
        failure,
    })
}

/// A bijection `j ↦ perm[j]` with `perm[j] ∈ candidates[j]`.
fn perfect_matching(candidates: &[Vec<usize>]) -> Option<Vec<usize>> {
    fn augment(j: usize, candidates: &[Vec<usize>], owner: &mut [Option<usize>], visited: &mut [bool]) -> bool {
        for &k in &candidates[j] {
            if visited[k] {
                continue;
            }
            visited[k] = true;
            if owner[k].is_none_or(|o| augment(o, candidates, owner, visited)) {
                owner[k] = Some(j);
                return true;
            }
        }
        false
    }
    let n = candidates.len();
    let mut owner = vec![None; n];
    for j in 0..n {
        if !augment(j, candidates, &mut owner, &mut vec![false; n]) {
            return None;
        }
    }
    let mut perm = vec![0; n];
    for (k, o) in owner.iter().enumerate() {
        perm[o.expect("perfect")] = k;
    }
    Some(perm)
}

/// Whether the generator assignment extends to a well-defined map of
/// enumerated Miyamoto groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupMapCheck {
    pub well_defined: bool,
    pub source_order: usize,
    pub exhausted: bool,
    /// A word in the source generators that is trivial in the source group
    /// but not on the target side.
    pub witness: Option<Vec<String>>,
}

/// The map `τ_{i,χ} ↦ τ_{ψ(i),χ}` induced by a morphism, with its checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedMorphism {
    /// `(source generator, target generator)` labels.
    pub generator_map: Vec<(String, String)>,
    pub surjective: bool,
    pub group_map: GroupMapCheck,
    /// Universal relators of the source whose images are not relators of the target.
    pub universal_failures: Vec<String>,
    pub functorial: bool,
    /// The morphism is not surjective and functoriality fails, as allowed.
    pub expected_non_functoriality: bool,
}

/// Checks `φ ∘ τ_{i,χ} = τ_{ψ(i),χ} ∘ φ` and whether the induced generator
/// assignment respects the relations of the Miyamoto and universal groups.
pub fn induced_group_morphism<F: FromScalar>(
    source: &MiyamotoContext<F>,
    target: &MiyamotoContext<F>,
    f: &DecMorphism<F>,
    cap: usize,
) -> Result<InducedMorphism, MiyError> {
    f.check(source.object(), target.object())?;
    let char_map: Vec<usize> = source
        .characters()
        .iter()
        .enumerate()
        .map(|(c, ch)| {
            let t = target.character_index(&ch.label).ok_or_else(|| MiyError::Mismatch(format!("target has no character {}", ch.label)))?;
            let same = source.character_values(c).iter().zip(target.character_values(t)).all(|(a, b)| a.approx_eq(b));
            if same {
                Ok(t)
            } else {
                Err(MiyError::Mismatch(format!("character {} differs between source and target", ch.label)))
            }
        })
        .collect::<Result<_, _>>()?;

    for i in 0..source.indices().len() {
        for c in 0..source.characters().len() {
            let left = f.phi.mul(source.miyamoto_map(i, c));
            let right = target.miyamoto_map(f.psi[i], char_map[c]).mul(&f.phi);
            if !left.approx_eq(&right) {
                return Err(MiyError::Intertwining(format!("at {}", source.pair_label(i, c))));
            }
        }
    }
    for (ctx, side) in [(source, "source"), (target, "target")] {
        if let Some(fail) = is_miyamoto_closed(ctx).failure {
            return Err(MiyError::NotClosed {
                index: format!("{side} {}", ctx.indices()[fail.index]),
                character: ctx.characters()[fail.character].label.clone(),
                source_index: ctx.indices()[fail.source].clone(),
            });
        }
    }

    let generators = generator_pairs(source);
    let image = |(i, c): (usize, usize)| (f.psi[i], char_map[c]);
    let generator_map = generators.iter().map(|&(i, c)| {
        let (j, d) = image((i, c));
        (source.pair_label(i, c), target.pair_label(j, d))
    });
    let generator_map: Vec<_> = generator_map.collect();
    let group_map = check_group_map(source, target, &generators, &image, cap);

    let mut universal_failures = Vec::new();
    if F::EXACT {
        let up = universal_presentation(source)?;
        for (g, &(i, c)) in up.generators.iter().enumerate() {
            let (ti, tc) = image((i, c));
            let a = target.miyamoto_map(ti, tc);
            let a_inv = target.miyamoto_map(ti, target.character_inverse(tc));
            let target_pairs: HashSet<(usize, usize)> = conjugation_pairs(target, a, a_inv).into_iter().collect();
            for &(j, k) in &up.conjugation_pairs[g] {
                if !target_pairs.contains(&(f.psi[j], f.psi[k])) {
                    universal_failures.push(format!(
                        "conjugating {} by t[{}] gives {} in the source, but not {} in the target",
                        source.indices()[j],
                        source.pair_label(i, c),
                        source.indices()[k],
                        target.indices()[f.psi[k]]
                    ));
                }
            }
        }
    }
    let surjective = f.is_surjective();
    let functorial = group_map.well_defined && universal_failures.is_empty();
    Ok(InducedMorphism {
        generator_map,
        surjective,
        group_map,
        universal_failures,
        functorial,
        expected_non_functoriality: !surjective && !functorial,
    })
}

/// Walks the source group, tracking the target product of the same word; two
/// words with equal source matrices must give equal target matrices.
fn check_group_map<F: FromScalar>(
    source: &MiyamotoContext<F>,
    target: &MiyamotoContext<F>,
    generators: &[(usize, usize)],
    image: &impl Fn((usize, usize)) -> (usize, usize),
    cap: usize,
) -> GroupMapCheck {
    let src: Vec<&Matrix<F>> = generators.iter().map(|&(i, c)| source.miyamoto_map(i, c)).collect();
    let tgt: Vec<&Matrix<F>> = generators.iter().map(|&p| {
        let (j, d) = image(p);
        target.miyamoto_map(j, d)
    }).collect();
    let word_labels = |w: &[usize]| w.iter().map(|&g| source.pair_label(generators[g].0, generators[g].1)).collect::<Vec<_>>();

    let mut seen: HashMap<MatrixKey<F>, usize> = HashMap::new();
    let mut pairs = vec![(Matrix::identity(source.object().dim()), Matrix::identity(target.object().dim()))];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    seen.insert(pairs[0].0.key(), 0);
    let mut queue = VecDeque::from([0]);
    while let Some(k) = queue.pop_front() {
        for g in 0..src.len() {
            let s = pairs[k].0.mul(src[g]);
            let t = pairs[k].1.mul(tgt[g]);
            let mut w = words[k].clone();
            w.push(g);
            match seen.get(&s.key()) {
                Some(&e) => {
                    if !pairs[e].1.approx_eq(&t) {
                        // w · words[e]⁻¹ is trivial in the source but not in the target.
                        let mut witness = word_labels(&w);
                        witness.extend(words[e].iter().rev().map(|&g| format!("{}^-1", source.pair_label(generators[g].0, generators[g].1))));
                        return GroupMapCheck { well_defined: false, source_order: pairs.len(), exhausted: false, witness: Some(witness) };
                    }
                }
                None => {
                    if pairs.len() >= cap {
                        return GroupMapCheck { well_defined: true, source_order: pairs.len(), exhausted: true, witness: None };
                    }
                    seen.insert(s.key(), pairs.len());
                    pairs.push((s, t));
                    words.push(w);
                    queue.push_back(pairs.len() - 1);
                }
            }
        }
    }
    GroupMapCheck { well_defined: true, source_order: pairs.len(), exhausted: false, witness: None }
}
