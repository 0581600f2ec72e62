use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::context::MiyamotoContext;
use crate::exactlin::{FromScalar, Matrix, MatrixKey};

pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// The group generated by the non-trivial Miyamoto maps.
#[derive(Clone, Debug)]
pub struct MiyamotoGroup<F> {
    /// `(index, character)` of each generator.
    pub generators: Vec<(usize, usize)>,
    pub elements: Vec<Matrix<F>>,
    /// `elements[k]` is the product of the generators listed in `words[k]`, left to right.
    pub words: Vec<Vec<usize>>,
    pub exhausted: bool,
}

impl<F> MiyamotoGroup<F> {
    /// `None` when the enumeration hit its cap.
    pub fn order(&self) -> Option<usize> {
        (!self.exhausted).then_some(self.elements.len())
    }
}

/// Non-trivial generator pairs in index-major order.
pub(crate) fn generator_pairs<F: FromScalar>(ctx: &MiyamotoContext<F>) -> Vec<(usize, usize)> {
    (0..ctx.indices().len()).flat_map(|i| ctx.nontrivial_characters().map(move |c| (i, c))).collect()
}

/// Breadth-first closure of the generators, stopping after `cap` elements.
pub fn miyamoto_group<F: FromScalar>(ctx: &MiyamotoContext<F>, cap: usize) -> MiyamotoGroup<F> {
    let generators = generator_pairs(ctx);
    let gens: Vec<&Matrix<F>> = generators.iter().map(|&(i, c)| ctx.miyamoto_map(i, c)).collect();
    let identity = Matrix::identity(ctx.object().dim());
    let mut seen: HashMap<MatrixKey<F>, usize> = HashMap::from([(identity.key(), 0)]);
    let mut elements = vec![identity];
    let mut words = vec![Vec::new()];
    let mut queue = VecDeque::from([0]);
    while let Some(k) = queue.pop_front() {
        for (g, m) in gens.iter().enumerate() {
            let next = elements[k].mul(m);
            let key = next.key();
            if seen.contains_key(&key) {
                continue;
            }
            if elements.len() >= cap {
                return MiyamotoGroup { generators, elements, words, exhausted: true };
            }
            seen.insert(key, elements.len());
            let mut w = words[k].clone();
            w.push(g);
            elements.push(next);
            words.push(w);
            queue.push_back(elements.len() - 1);
        }
    }
    MiyamotoGroup { generators, elements, words, exhausted: false }
}

/// Where closure fails: `τ_{index,character}` sends `Ω[source]` outside `Ω`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureFailure {
    pub index: usize,
    pub character: usize,
    pub source: usize,
}

/// The permutations `π_{i,χ}` of the index set, or the first failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    /// `pi[i][χ][j]` is the smallest `k` with `τ_{i,χ}(Ω[j]) = Ω[k]`.
    pub pi: Vec<Vec<Vec<usize>>>,
    pub failure: Option<ClosureFailure>,
}

impl Closure {
    pub fn is_closed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Smallest `k` whose decomposition equals the image of `Ω[j]` under `m`.
pub(crate) fn matching_decomposition<F: FromScalar>(ctx: &MiyamotoContext<F>, m: &Matrix<F>, j: usize) -> Option<usize> {
    let decs = &ctx.object().decompositions;
    let image: Vec<_> = decs[j].parts.iter().map(|p| p.image(m)).collect();
    decs.iter().position(|d| d.parts.iter().zip(&image).all(|(a, b)| a.same_as(b)))
}

pub fn is_miyamoto_closed<F: FromScalar>(ctx: &MiyamotoContext<F>) -> Closure {
    let n = ctx.indices().len();
    let mut pi = Vec::new();
    for i in 0..n {
        let mut row = Vec::new();
        for c in 0..ctx.characters().len() {
            let m = ctx.miyamoto_map(i, c);
            let mut perm = Vec::new();
            for j in 0..n {
                match matching_decomposition(ctx, m, j) {
                    Some(k) => perm.push(k),
                    None => {
                        row.push(perm);
                        pi.push(row);
                        return Closure { pi, failure: Some(ClosureFailure { index: i, character: c, source: j }) };
                    }
                }
            }
            row.push(perm);
        }
        pi.push(row);
    }
    Closure { pi, failure: None }
}
