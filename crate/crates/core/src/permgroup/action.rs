use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::group::PermGroup;
use super::perm::Perm;
use super::PermError;

/// The orbitals of a transitive action: orbits of `G` on ordered pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbitals {
    /// `relation[x][y]` is the orbital containing `(x, y)`; `0` is the diagonal.
    pub relation: Vec<Vec<usize>>,
    /// Smallest pair (row-major) of each orbital.
    pub representatives: Vec<(usize, usize)>,
}

impl Orbitals {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// The orbital containing the reversed pairs of orbital `i`.
    pub fn paired(&self, i: usize) -> usize {
        let (x, y) = self.representatives[i];
        self.relation[y][x]
    }

    /// 0/1 adjacency matrix of orbital `i`.
    pub fn adjacency(&self, i: usize) -> Vec<Vec<u8>> {
        self.relation.iter().map(|row| row.iter().map(|&r| u8::from(r == i)).collect()).collect()
    }

    /// Valency of each orbital (row sum, constant under transitivity).
    pub fn valencies(&self) -> Vec<usize> {
        let mut v = vec![0; self.len()];
        for &r in &self.relation[0] {
            v[r] += 1;
        }
        v
    }
}

impl PermGroup {
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        seen[x] = true;
        let mut out = vec![x];
        let mut k = 0;
        while k < out.len() {
            let y = out[k];
            for g in self.generators() {
                let z = g.apply(y);
                if !seen[z] {
                    seen[z] = true;
                    out.push(z);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree() == 0 || self.orbit(0).len() == self.degree()
    }

    pub fn orbitals(&self) -> Result<Orbitals, PermError> {
        if !self.is_transitive() {
            return Err(PermError::NotTransitive);
        }
        let n = self.degree();
        let mut relation = vec![vec![usize::MAX; n]; n];
        let mut representatives = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if relation[x][y] != usize::MAX {
                    continue;
                }
                let id = representatives.len();
                representatives.push((x, y));
                relation[x][y] = id;
                let mut stack = vec![(x, y)];
                while let Some((a, b)) = stack.pop() {
                    for g in self.generators() {
                        let (c, d) = (g.apply(a), g.apply(b));
                        if relation[c][d] == usize::MAX {
                            relation[c][d] = id;
                            stack.push((c, d));
                        }
                    }
                }
            }
        }
        Ok(Orbitals { relation, representatives })
    }

    /// Every orbital is self-paired.
    pub fn is_generously_transitive(&self) -> Result<bool, PermError> {
        let o = self.orbitals()?;
        Ok((0..o.len()).all(|i| o.paired(i) == i))
    }

    /// The induced action on `k`-subsets, listed in lexicographic order.
    pub fn on_k_subsets(&self, k: usize) -> Result<(PermGroup, Vec<Vec<usize>>), PermError> {
        let subsets = k_subsets(self.degree(), k);
        let index: HashMap<&[usize], usize> = subsets.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let gens = self
            .generators()
            .iter()
            .map(|g| {
                let images = subsets
                    .iter()
                    .map(|s| {
                        let mut t: Vec<usize> = s.iter().map(|&x| g.apply(x)).collect();
                        t.sort_unstable();
                        index[t.as_slice()]
                    })
                    .collect();
                Perm::new(images)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((PermGroup::new(subsets.len(), gens)?, subsets))
    }

    /// The conjugation action on the conjugacy class of `x`, listed in
    /// enumeration order.
    pub fn on_class(&self, x: &Perm) -> Result<(PermGroup, Vec<Perm>), PermError> {
        let i = self.index_of(x)?.ok_or_else(|| PermError::NotInGroup(x.to_string()))?;
        let cc = self.conjugacy_classes()?;
        let class: Vec<Perm> =
            cc.classes[cc.class_of[i]].iter().map(|&j| self.element(j).cloned()).collect::<Result<_, _>>()?;
        let index: HashMap<&Perm, usize> = class.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let gens = self
            .generators()
            .iter()
            .map(|g| Perm::new(class.iter().map(|p| index[&p.conjugate_by(g)]).collect()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((PermGroup::new(class.len(), gens)?, class))
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> PermGroup {
        let mut cycle: Vec<usize> = (1..n).collect();
        cycle.push(0);
        PermGroup::new(n, vec![Perm::from_cycles(n, &[&[0, 1]]).unwrap(), Perm::new(cycle).unwrap()]).unwrap()
    }

    #[test]
    fn johnson_orbitals() {
        let (g, subsets) = sym(5).on_k_subsets(2).unwrap();
        assert_eq!(subsets.len(), 10);
        assert_eq!(subsets[0], vec![0, 1]);
        let o = g.orbitals().unwrap();
        assert_eq!(o.len(), 3);
        assert_eq!(o.valencies(), vec![1, 6, 3]);
        assert!(g.is_generously_transitive().unwrap());
    }

    #[test]
    fn cyclic_is_not_generous() {
        let c3 = PermGroup::new(3, vec![Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()]).unwrap();
        let o = c3.orbitals().unwrap();
        assert_eq!(o.len(), 3);
        assert_eq!(o.paired(1), 2);
        assert!(!c3.is_generously_transitive().unwrap());
    }

    #[test]
    fn intransitive_rejected() {
        let g = PermGroup::new(3, vec![Perm::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap();
        assert_eq!(g.orbitals(), Err(PermError::NotTransitive));
    }

    #[test]
    fn transpositions_class_action() {
        let g = sym(4);
        let t = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        let (h, class) = g.on_class(&t).unwrap();
        assert_eq!(class.len(), 6);
        assert_eq!(h.order().unwrap(), 24);
        assert_eq!(h.orbitals().unwrap().len(), 3);
    }

    #[test]
    fn subsets_count() {
        assert_eq!(k_subsets(5, 0), vec![Vec::<usize>::new()]);
        assert_eq!(k_subsets(6, 3).len(), 20);
        assert!(k_subsets(2, 3).is_empty());
    }
}
