use serde::{Deserialize, Serialize};

use super::SchemeError;
use crate::permgroup::PermGroup;

/// A commutative association scheme on the points `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociationScheme {
    relations: Vec<Vec<usize>>,
    transpose: Vec<usize>,
    /// `intersection[i][j][k] = p_ij^k`.
    intersection: Vec<Vec<Vec<u64>>>,
    valencies: Vec<usize>,
}

/// JSON shape: `{"n": …, "relations": [[…], …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeDoc {
    pub n: usize,
    pub relations: Vec<Vec<usize>>,
}

fn axiom(number: u8, detail: String) -> SchemeError {
    SchemeError::Axiom { axiom: number, detail }
}

impl AssociationScheme {
    /// Checks all five axioms by brute force.
    pub fn new(relations: Vec<Vec<usize>>) -> Result<Self, SchemeError> {
        let n = relations.len();
        if n == 0 {
            return Err(axiom(1, "no points".into()));
        }
        if relations.iter().any(|r| r.len() != n) {
            return Err(axiom(1, "relation matrix is not square".into()));
        }
        let d = relations.iter().flatten().copied().max().unwrap_or(0);
        let mut pairs = vec![Vec::new(); d + 1];
        for (x, row) in relations.iter().enumerate() {
            for (y, &r) in row.iter().enumerate() {
                pairs[r].push((x, y));
            }
        }
        if let Some(k) = pairs.iter().position(Vec::is_empty) {
            return Err(axiom(1, format!("relation {k} is empty")));
        }
        for (x, row) in relations.iter().enumerate() {
            for (y, &r) in row.iter().enumerate() {
                if (r == 0) != (x == y) {
                    return Err(axiom(2, format!("pair ({x}, {y}) has relation {r}")));
                }
            }
        }
        let mut transpose = Vec::with_capacity(d + 1);
        for (i, ps) in pairs.iter().enumerate() {
            let (x, y) = ps[0];
            let t = relations[y][x];
            if ps.iter().any(|&(a, b)| relations[b][a] != t) || pairs[t].len() != ps.len() {
                return Err(axiom(3, format!("the transpose of relation {i} is not a relation")));
            }
            transpose.push(t);
        }
        let mut intersection = vec![vec![vec![u64::MAX; d + 1]; d + 1]; d + 1];
        let mut counts = vec![vec![0u64; d + 1]; d + 1];
        for (x, row) in relations.iter().enumerate() {
            for (y, &k) in row.iter().enumerate() {
                counts.iter_mut().for_each(|r| r.iter_mut().for_each(|c| *c = 0));
                for z in 0..n {
                    counts[relations[x][z]][relations[z][y]] += 1;
                }
                for i in 0..=d {
                    for j in 0..=d {
                        let p = &mut intersection[i][j][k];
                        if *p == u64::MAX {
                            *p = counts[i][j];
                        } else if *p != counts[i][j] {
                            return Err(axiom(4, format!("p_{i}{j}^{k} is not constant (pair ({x}, {y}))")));
                        }
                    }
                }
            }
        }
        for i in 0..=d {
            for j in 0..i {
                for k in 0..=d {
                    if intersection[i][j][k] != intersection[j][i][k] {
                        return Err(axiom(5, format!("p_{i}{j}^{k} = {} but p_{j}{i}^{k} = {}", intersection[i][j][k], intersection[j][i][k])));
                    }
                }
            }
        }
        let valencies = pairs.iter().map(|p| p.len() / n).collect();
        Ok(AssociationScheme { relations, transpose, intersection, valencies })
    }

    pub fn from_doc(doc: &SchemeDoc) -> Result<Self, SchemeError> {
        if doc.relations.len() != doc.n {
            return Err(axiom(1, format!("n = {} but {} rows", doc.n, doc.relations.len())));
        }
        Self::new(doc.relations.clone())
    }

    pub fn to_doc(&self) -> SchemeDoc {
        SchemeDoc { n: self.n(), relations: self.relations.clone() }
    }

    pub fn n(&self) -> usize {
        self.relations.len()
    }

    /// The number `d` of non-diagonal classes.
    pub fn classes(&self) -> usize {
        self.transpose.len() - 1
    }

    pub fn relation(&self, x: usize, y: usize) -> usize {
        self.relations[x][y]
    }

    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    /// `p_ij^k`.
    pub fn p(&self, i: usize, j: usize, k: usize) -> u64 {
        self.intersection[i][j][k]
    }

    pub fn intersection_numbers(&self) -> &[Vec<Vec<u64>>] {
        &self.intersection
    }

    pub fn transpose_of(&self, i: usize) -> usize {
        self.transpose[i]
    }

    pub fn valencies(&self) -> &[usize] {
        &self.valencies
    }

    pub fn is_symmetric(&self) -> bool {
        self.transpose.iter().enumerate().all(|(i, &t)| i == t)
    }
}

/// The orbital scheme of a transitive permutation group.
pub fn scheme_from_group(group: &PermGroup) -> Result<AssociationScheme, SchemeError> {
    let orbitals = group.orbitals()?;
    AssociationScheme::new(orbitals.relation)
}
