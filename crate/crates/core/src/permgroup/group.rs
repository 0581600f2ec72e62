use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::perm::Perm;
use super::PermError;
use crate::fpgroup::{AbelianGroup, CosetGroup};
use crate::fusion::FusionLaw;

/// Default bound on the number of group elements enumerated.
pub const DEFAULT_ELEMENT_CAP: usize = 10_000;

/// A permutation group given by generators, with its elements enumerated on
/// first use by breadth-first closure.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "PermGroupDoc", into = "PermGroupDoc")]
pub struct PermGroup {
    name: Option<String>,
    degree: usize,
    generators: Vec<Perm>,
    cap: usize,
    elements: OnceLock<Result<Elements, PermError>>,
    classes: OnceLock<Result<ConjugacyClasses, PermError>>,
}

#[derive(Clone, Debug)]
struct Elements {
    list: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

/// JSON shape of a permutation group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PermGroupDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl TryFrom<PermGroupDoc> for PermGroup {
    type Error = PermError;

    fn try_from(doc: PermGroupDoc) -> Result<Self, PermError> {
        let gens = doc.generators.into_iter().map(Perm::new).collect::<Result<Vec<_>, _>>()?;
        let mut g = PermGroup::new(doc.degree, gens)?;
        g.name = doc.name;
        Ok(g)
    }
}

impl From<PermGroup> for PermGroupDoc {
    fn from(g: PermGroup) -> Self {
        PermGroupDoc { name: g.name, degree: g.degree, generators: g.generators.into_iter().map(Into::into).collect() }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

/// Conjugacy classes with ATLAS-style labels (`1a`, `2a`, `2b`, `3a`, …).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClasses {
    /// Element indices of each class; classes ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    /// Class index of every element.
    pub class_of: Vec<usize>,
    pub labels: Vec<String>,
    pub element_orders: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self, PermError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch { expected: degree, got: g.degree() });
        }
        Ok(PermGroup {
            name: None,
            degree,
            generators,
            cap: DEFAULT_ELEMENT_CAP,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    /// Generators given as image lists.
    pub fn from_images(degree: usize, generators: &[Vec<usize>]) -> Result<Self, PermError> {
        let gens = generators.iter().cloned().map(Perm::new).collect::<Result<Vec<_>, _>>()?;
        Self::new(degree, gens)
    }

    /// The regular representation produced by coset enumeration.
    pub fn from_coset_group(g: &CosetGroup) -> Self {
        Self::from_images(g.order, &g.generators).expect("coset tables give permutations")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Replaces the element cap; enumeration is redone on next use.
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self.elements = OnceLock::new();
        self.classes = OnceLock::new();
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    fn enumeration(&self) -> Result<&Elements, PermError> {
        self.elements
            .get_or_init(|| {
                let id = self.identity();
                let mut list = vec![id.clone()];
                let mut index = HashMap::from([(id, 0)]);
                let mut queue = VecDeque::from([0]);
                while let Some(i) = queue.pop_front() {
                    for g in &self.generators {
                        let p = list[i].compose(g);
                        if !index.contains_key(&p) {
                            if list.len() >= self.cap {
                                return Err(PermError::CapExceeded { cap: self.cap });
                            }
                            index.insert(p.clone(), list.len());
                            queue.push_back(list.len());
                            list.push(p);
                        }
                    }
                }
                Ok(Elements { list, index })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// All elements in breadth-first order from the identity.
    pub fn elements(&self) -> Result<&[Perm], PermError> {
        Ok(&self.enumeration()?.list)
    }

    pub fn order(&self) -> Result<usize, PermError> {
        Ok(self.enumeration()?.list.len())
    }

    pub fn index_of(&self, p: &Perm) -> Result<Option<usize>, PermError> {
        Ok(self.enumeration()?.index.get(p).copied())
    }

    pub fn contains(&self, p: &Perm) -> Result<bool, PermError> {
        Ok(p.degree() == self.degree && self.index_of(p)?.is_some())
    }

    pub fn element(&self, i: usize) -> Result<&Perm, PermError> {
        Ok(&self.enumeration()?.list[i])
    }

    /// Index of `elements[i] * elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> Result<usize, PermError> {
        let e = self.enumeration()?;
        Ok(e.index[&e.list[i].compose(&e.list[j])])
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn conjugacy_classes(&self) -> Result<&ConjugacyClasses, PermError> {
        self.classes
            .get_or_init(|| {
                let e = self.enumeration()?;
                let n = e.list.len();
                let mut class_of = vec![usize::MAX; n];
                let mut classes: Vec<Vec<usize>> = Vec::new();
                for start in 0..n {
                    if class_of[start] != usize::MAX {
                        continue;
                    }
                    let c = classes.len();
                    let mut members = vec![start];
                    class_of[start] = c;
                    let mut k = 0;
                    while k < members.len() {
                        let x = &e.list[members[k]];
                        for g in &self.generators {
                            let y = e.index[&x.conjugate_by(g)];
                            if class_of[y] == usize::MAX {
                                class_of[y] = c;
                                members.push(y);
                            }
                        }
                        k += 1;
                    }
                    members.sort_unstable();
                    classes.push(members);
                }
                let element_orders: Vec<usize> = e.list.iter().map(Perm::order).collect();
                let mut next_letter: HashMap<usize, u8> = HashMap::new();
                let labels = classes
                    .iter()
                    .map(|c| {
                        let o = element_orders[c[0]];
                        let k = next_letter.entry(o).or_insert(0);
                        let label = format!("{o}{}", letter_suffix(*k));
                        *k += 1;
                        label
                    })
                    .collect();
                Ok(ConjugacyClasses { classes, class_of, labels, element_orders })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// The class fusion law: `E ∈ C * D` iff `E` meets the setwise product `CD`.
    ///
    /// `CD` is a union of classes, so the classes it meets are those met by
    /// `c₀D` for any fixed `c₀ ∈ C`.
    pub fn class_fusion_law(&self) -> Result<FusionLaw, PermError> {
        let cc = self.conjugacy_classes()?;
        let k = cc.len();
        let mut table = vec![vec![Vec::new(); k]; k];
        for c in 0..k {
            let c0 = cc.representative(c);
            for d in 0..k {
                let mut hit = vec![false; k];
                for &y in &cc.classes[d] {
                    hit[cc.class_of[self.mul(c0, y)?]] = true;
                }
                table[c][d] = (0..k).filter(|&e| hit[e]).collect();
            }
        }
        Ok(FusionLaw::from_table(cc.labels.clone(), table).expect("class labels are distinct"))
    }

    /// The group fusion law `(g, h) -> {gh}` with elements labelled in cycle notation.
    pub fn group_fusion_law(&self) -> Result<FusionLaw, PermError> {
        let e = self.enumeration()?;
        let n = e.list.len();
        let labels = e.list.iter().map(|p| p.to_string()).collect();
        let mut cayley = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                cayley[i][j] = e.index[&e.list[i].compose(&e.list[j])];
            }
        }
        FusionLaw::group_law(labels, &cayley).map_err(|err| PermError::Internal(err.to_string()))
    }

    /// The subgroup generated by `gens`, with a greedily thinned generator list.
    pub fn subgroup(&self, gens: &[Perm]) -> PermGroup {
        let mut chosen: Vec<Perm> = Vec::new();
        let mut current = PermGroup::new(self.degree, Vec::new()).expect("same degree");
        for g in gens {
            if !current.contains(g).unwrap_or(false) {
                chosen.push(g.clone());
                current = PermGroup::new(self.degree, chosen.clone()).expect("same degree").with_cap(self.cap);
            }
        }
        current
    }

    /// `C_G(x) = {h ∈ G | hx = xh}`.
    pub fn centralizer(&self, x: &Perm) -> Result<PermGroup, PermError> {
        if !self.contains(x)? {
            return Err(PermError::NotInGroup(x.to_string()));
        }
        let members: Vec<Perm> = self.elements()?.iter().filter(|h| h.compose(x) == x.compose(h)).cloned().collect();
        Ok(self.subgroup(&members))
    }

    /// Element indices of the commutator subgroup: the normal closure of the
    /// commutators of the generators.
    pub fn commutator_subgroup(&self) -> Result<Vec<usize>, PermError> {
        let e = self.enumeration()?;
        let mut gens: Vec<Perm> = Vec::new();
        for a in &self.generators {
            for b in &self.generators {
                let c = a.compose(b).compose(&a.inverse()).compose(&b.inverse());
                if !c.is_identity() && !gens.contains(&c) {
                    gens.push(c);
                }
            }
        }
        loop {
            let members = closure(&e.index, &e.list, &gens, self.degree);
            let mut in_d = vec![false; e.list.len()];
            for &m in &members {
                in_d[m] = true;
            }
            let missing = gens
                .iter()
                .flat_map(|d| self.generators.iter().map(move |g| d.conjugate_by(g)))
                .find(|c| !in_d[e.index[c]]);
            match missing {
                Some(c) => gens.push(c),
                None => return Ok(members),
            }
        }
    }

    /// Invariant factors of `G/[G, G]`, read off from the number of cosets
    /// whose order divides each prime power.
    pub fn abelianization(&self) -> Result<AbelianGroup, PermError> {
        let e = self.enumeration()?;
        let d = self.commutator_subgroup()?;
        let mut in_d = vec![false; e.list.len()];
        for &m in &d {
            in_d[m] = true;
        }
        let quotient = (e.list.len() / d.len()) as u64;
        let mut cyclic = Vec::new();
        for p in prime_factors(quotient) {
            let mut p_part = 1u64;
            let mut q = quotient;
            while q % p == 0 {
                q /= p;
                p_part *= p;
            }
            // ranks[k] = number of cyclic p-factors of exponent > k
            let mut ranks = Vec::new();
            let mut previous = 1u64;
            let mut pk = 1i64;
            loop {
                pk *= p as i64;
                let count = e.list.iter().filter(|g| in_d[e.index[&g.pow(pk)]]).count() as u64 / d.len() as u64;
                let mut r = 0;
                let mut ratio = count / previous;
                while ratio > 1 {
                    ratio /= p;
                    r += 1;
                }
                ranks.push(r);
                previous = count;
                if count == p_part {
                    break;
                }
            }
            for (k, &r) in ranks.iter().enumerate() {
                let next = ranks.get(k + 1).copied().unwrap_or(0);
                for _ in next..r {
                    cyclic.push(p.pow(k as u32 + 1));
                }
            }
        }
        Ok(AbelianGroup::from_cyclic_orders(&cyclic))
    }
}

fn letter_suffix(k: u8) -> String {
    let mut k = k as usize;
    let mut s = String::new();
    loop {
        s.insert(0, (b'a' + (k % 26) as u8) as char);
        if k < 26 {
            return s;
        }
        k = k / 26 - 1;
    }
}

fn closure(index: &HashMap<Perm, usize>, list: &[Perm], gens: &[Perm], degree: usize) -> Vec<usize> {
    let id = Perm::identity(degree);
    let mut seen = vec![false; list.len()];
    let start = index[&id];
    seen[start] = true;
    let mut members = vec![start];
    let mut k = 0;
    while k < members.len() {
        let x = list[members[k]].clone();
        for g in gens {
            let y = index[&x.compose(g)];
            if !seen[y] {
                seen[y] = true;
                members.push(y);
            }
        }
        k += 1;
    }
    members.sort_unstable();
    members
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
