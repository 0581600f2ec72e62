use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::FusionError;

/// A finite fusion law `(X, *)`.
///
/// Elements are opaque labels kept in insertion order; products are stored
/// as sorted index sets.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FusionLawDoc", into = "FusionLawDoc")]
pub struct FusionLaw {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    table: Vec<Vec<usize>>,
}

/// Flags from the definition of units, annihilating and absorbing elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementKind {
    pub unit: bool,
    pub annihilating: bool,
    pub absorbing: bool,
}

/// JSON shape of a fusion law. Entries missing from `table` are empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FusionLawDoc {
    pub elements: Vec<String>,
    #[serde(default)]
    pub table: Vec<FusionEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FusionEntry {
    pub left: String,
    pub right: String,
    pub out: Vec<String>,
}

impl TryFrom<FusionLawDoc> for FusionLaw {
    type Error = FusionError;

    fn try_from(doc: FusionLawDoc) -> Result<Self, FusionError> {
        let mut law = FusionLaw::empty(doc.elements)?;
        for e in doc.table {
            let x = law.index_of(&e.left)?;
            let y = law.index_of(&e.right)?;
            let mut out = Vec::with_capacity(e.out.len());
            for z in &e.out {
                out.push(law.index_of(z)?);
            }
            let n = law.len();
            let cell = &mut law.table[x * n + y];
            cell.extend(out);
            cell.sort_unstable();
            cell.dedup();
        }
        Ok(law)
    }
}

impl From<FusionLaw> for FusionLawDoc {
    fn from(law: FusionLaw) -> Self {
        law.to_doc()
    }
}

impl fmt::Debug for FusionLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FusionLaw{:?}", self.labels)
    }
}

impl fmt::Display for FusionLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.labels.iter().map(|l| l.len()).max().unwrap_or(1);
        for x in 0..self.len() {
            for y in 0..self.len() {
                let out: Vec<&str> = self.product(x, y).iter().map(|&z| self.labels[z].as_str()).collect();
                writeln!(f, "{:>width$} * {:<width$} = {{{}}}", self.labels[x], self.labels[y], out.join(", "))?;
            }
        }
        Ok(())
    }
}

impl FusionLaw {
    /// Law on `labels` with every product empty.
    pub fn empty(labels: Vec<String>) -> Result<Self, FusionError> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(FusionError::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        Ok(FusionLaw { labels, index, table: vec![Vec::new(); n * n] })
    }

    /// Builds a law from an index table `table[x][y] = x * y`.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<Vec<usize>>>) -> Result<Self, FusionError> {
        let mut law = Self::empty(labels)?;
        let n = law.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(FusionError::MapArity { got: table.len(), expected: n });
        }
        for (x, row) in table.into_iter().enumerate() {
            for (y, mut cell) in row.into_iter().enumerate() {
                if let Some(&bad) = cell.iter().find(|&&z| z >= n) {
                    return Err(FusionError::IndexOutOfRange(bad));
                }
                cell.sort_unstable();
                cell.dedup();
                law.table[x * n + y] = cell;
            }
        }
        Ok(law)
    }

    /// Convenience constructor from string slices; unlisted products are empty.
    pub fn from_labels(labels: &[&str], entries: &[(&str, &str, &[&str])]) -> Result<Self, FusionError> {
        FusionLaw::try_from(FusionLawDoc {
            elements: labels.iter().map(|s| s.to_string()).collect(),
            table: entries
                .iter()
                .map(|(l, r, o)| FusionEntry {
                    left: l.to_string(),
                    right: r.to_string(),
                    out: o.iter().map(|s| s.to_string()).collect(),
                })
                .collect(),
        })
    }

    /// Group fusion law `(g, h) -> {gh}` from a Cayley table, after checking
    /// closure, associativity, identity and inverses.
    pub fn group_law(labels: Vec<String>, cayley: &[Vec<usize>]) -> Result<Self, FusionError> {
        let n = labels.len();
        if n == 0 {
            return Err(FusionError::NotAGroup("empty set".into()));
        }
        if cayley.len() != n || cayley.iter().any(|r| r.len() != n) {
            return Err(FusionError::NotAGroup("Cayley table is not square over the labels".into()));
        }
        if cayley.iter().flatten().any(|&z| z >= n) {
            return Err(FusionError::NotAGroup("product outside the set".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]] {
                        return Err(FusionError::NotAGroup(format!(
                            "associativity fails for ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| cayley[e][x] == x && cayley[x][e] == x))
            .ok_or_else(|| FusionError::NotAGroup("no identity element".into()))?;
        for x in 0..n {
            if !(0..n).any(|y| cayley[x][y] == identity && cayley[y][x] == identity) {
                return Err(FusionError::NotAGroup(format!("{} has no inverse", labels[x])));
            }
        }
        let table = cayley.iter().map(|row| row.iter().map(|&z| vec![z]).collect()).collect();
        Self::from_table(labels, table)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, FusionError> {
        self.index.get(label).copied().ok_or_else(|| FusionError::UnknownLabel(label.to_string()))
    }

    /// `x * y` as sorted element indices.
    pub fn product(&self, x: usize, y: usize) -> &[usize] {
        &self.table[x * self.len() + y]
    }

    /// `x * y` as labels.
    pub fn product_labels(&self, x: &str, y: &str) -> Result<Vec<&str>, FusionError> {
        let (x, y) = (self.index_of(x)?, self.index_of(y)?);
        Ok(self.product(x, y).iter().map(|&z| self.label(z)).collect())
    }

    /// `z ∈ x * y`.
    pub fn contains(&self, x: usize, y: usize, z: usize) -> bool {
        self.product(x, y).binary_search(&z).is_ok()
    }

    /// Every triple `(x, y, z)` with `z ∈ x * y`, in row-major order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |x| (0..n).flat_map(move |y| self.product(x, y).iter().map(move |&z| (x, y, z))))
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (x + 1..n).all(|y| self.product(x, y) == self.product(y, x)))
    }

    pub fn classify_index(&self, e: usize) -> ElementKind {
        let n = self.len();
        let both = |pred: &dyn Fn(&[usize], usize) -> bool| {
            (0..n).all(|x| pred(self.product(e, x), x) && pred(self.product(x, e), x))
        };
        ElementKind {
            unit: both(&|s, x| s.iter().all(|&z| z == x)),
            annihilating: both(&|s, _| s.is_empty()),
            absorbing: both(&|s, _| s.iter().all(|&z| z == e)),
        }
    }

    pub fn classify(&self, label: &str) -> Result<ElementKind, FusionError> {
        Ok(self.classify_index(self.index_of(label)?))
    }

    pub fn units(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.classify_index(e).unit).collect()
    }

    /// Pairs of distinct units `(e, f)` with `e * f` non-empty. Always empty
    /// for a well-formed table; a non-empty answer means the table is corrupt.
    pub fn check_distinct_units(&self) -> Vec<(String, String)> {
        let units = self.units();
        let mut bad = Vec::new();
        for &e in &units {
            for &f in &units {
                if e != f && !self.product(e, f).is_empty() {
                    bad.push((self.labels[e].clone(), self.labels[f].clone()));
                }
            }
        }
        bad
    }

    /// Product law on `X × Y` with labels `(x,y)`.
    pub fn product_law(&self, other: &FusionLaw) -> FusionLaw {
        let (n, m) = (self.len(), other.len());
        let labels: Vec<String> = self
            .labels
            .iter()
            .flat_map(|x| other.labels.iter().map(move |y| format!("({x},{y})")))
            .collect();
        let mut table = vec![vec![Vec::new(); n * m]; n * m];
        for x1 in 0..n {
            for y1 in 0..m {
                for x2 in 0..n {
                    for y2 in 0..m {
                        table[x1 * m + y1][x2 * m + y2] = self
                            .product(x1, x2)
                            .iter()
                            .flat_map(|&x| other.product(y1, y2).iter().map(move |&y| x * m + y))
                            .collect();
                    }
                }
            }
        }
        FusionLaw::from_table(unique_labels(labels), table).expect("well-formed product")
    }

    /// Disjoint union; labels of `other` that collide get primes appended.
    /// Elements of `other` follow those of `self`.
    pub fn union_law(&self, other: &FusionLaw) -> FusionLaw {
        let (n, m) = (self.len(), other.len());
        let mut labels = self.labels.clone();
        for l in &other.labels {
            let mut l = l.clone();
            while labels.contains(&l) {
                l.push('\'');
            }
            labels.push(l);
        }
        let mut table = vec![vec![Vec::new(); n + m]; n + m];
        for x in 0..n {
            for y in 0..n {
                table[x][y] = self.product(x, y).to_vec();
            }
        }
        for x in 0..m {
            for y in 0..m {
                table[n + x][n + y] = other.product(x, y).iter().map(|&z| n + z).collect();
            }
        }
        FusionLaw::from_table(labels, table).expect("well-formed union")
    }

    /// The `Sym(3)` action on the incidence `ω(x, y, z) = [z ∈ x * y]`:
    /// the result has `ω'(p₀, p₁, p₂) = ω(p_{σ(0)}, p_{σ(1)}, p_{σ(2)})`.
    pub fn permute_roles(&self, sigma: [usize; 3]) -> FusionLaw {
        let mut sorted = sigma;
        sorted.sort_unstable();
        assert_eq!(sorted, [0, 1, 2], "sigma must be a permutation of 0, 1, 2");
        let n = self.len();
        let mut table = vec![vec![Vec::new(); n]; n];
        for (x, y, z) in self.triples() {
            let src = [x, y, z];
            let mut p = [0; 3];
            for k in 0..3 {
                p[sigma[k]] = src[k];
            }
            table[p[0]][p[1]].push(p[2]);
        }
        FusionLaw::from_table(self.labels.clone(), table).expect("same labels")
    }

    /// Same law with elements reordered: new element `k` is old element `order[k]`.
    pub fn reorder(&self, order: &[usize]) -> Result<FusionLaw, FusionError> {
        let n = self.len();
        let mut inv = vec![usize::MAX; n];
        if order.len() != n {
            return Err(FusionError::MapArity { got: order.len(), expected: n });
        }
        for (k, &o) in order.iter().enumerate() {
            if o >= n || inv[o] != usize::MAX {
                return Err(FusionError::IndexOutOfRange(o));
            }
            inv[o] = k;
        }
        let labels = order.iter().map(|&o| self.labels[o].clone()).collect();
        let table = order
            .iter()
            .map(|&x| order.iter().map(|&y| self.product(x, y).iter().map(|&z| inv[z]).collect()).collect())
            .collect();
        FusionLaw::from_table(labels, table)
    }

    pub fn to_doc(&self) -> FusionLawDoc {
        let n = self.len();
        let mut table = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let out = self.product(x, y);
                if !out.is_empty() {
                    table.push(FusionEntry {
                        left: self.labels[x].clone(),
                        right: self.labels[y].clone(),
                        out: out.iter().map(|&z| self.labels[z].clone()).collect(),
                    });
                }
            }
        }
        FusionLawDoc { elements: self.labels.clone(), table }
    }
}

fn unique_labels(mut labels: Vec<String>) -> Vec<String> {
    let mut seen = std::collections::HashSet::new();
    for l in labels.iter_mut() {
        while !seen.insert(l.clone()) {
            l.push('\'');
        }
    }
    labels
}

#[cfg(test)]
mod tests {
    use super::super::*;

    #[test]
    fn jordan_classification() {
        let j = jordan_law();
        assert_eq!(j.classify("e").unwrap(), ElementKind { unit: true, annihilating: false, absorbing: false });
        assert_eq!(j.classify("h").unwrap(), ElementKind { unit: false, annihilating: false, absorbing: false });
        assert!(matches!(j.classify("q"), Err(FusionError::UnknownLabel(_))));
        assert_eq!(j.units(), vec![0, 1]);
        assert!(j.check_distinct_units().is_empty());
        assert!(j.is_symmetric());
    }

    #[test]
    fn vacuous_one_point_law() {
        let l = empty_law(&["x"]);
        assert_eq!(l.classify("x").unwrap(), ElementKind { unit: true, annihilating: true, absorbing: true });
    }

    #[test]
    fn ising_units() {
        let i = ising_law();
        assert_eq!(i.units(), vec![0, 1]);
        assert!(i.check_distinct_units().is_empty());
        assert_eq!(i.product_labels("t", "t").unwrap(), vec!["e", "z", "q"]);
    }

    #[test]
    fn corrupted_table_reports_units() {
        let l = FusionLaw::from_labels(&["a", "b"], &[("a", "a", &["a"]), ("b", "b", &["b"])]).unwrap();
        assert!(l.check_distinct_units().is_empty());
        // Both elements are units only when a*b is empty.
        let l2 = FusionLaw::from_labels(&["a"], &[("a", "a", &["a"])]).unwrap();
        assert_eq!(l2.units(), vec![0]);
    }

    #[test]
    fn jordan_and_ising_are_role_invariant() {
        let perms = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        for law in [jordan_law(), ising_law()] {
            for p in perms {
                assert_eq!(law.permute_roles(p), law, "sigma {p:?}");
            }
        }
        let g = cyclic_group_law(3);
        assert_ne!(g.permute_roles([0, 2, 1]), g);
    }

    #[test]
    fn union_renames_and_leaves_cross_empty() {
        let u = jordan_law().union_law(&ising_law());
        assert_eq!(u.len(), 7);
        assert_eq!(u.labels(), &["e", "z", "h", "e'", "z'", "q", "t"]);
        for x in 0..3 {
            for y in 3..7 {
                assert!(u.product(x, y).is_empty() && u.product(y, x).is_empty());
            }
        }
        let e = FusionLaw::empty(vec![]).unwrap();
        assert_eq!(jordan_law().union_law(&e), jordan_law());
    }

    #[test]
    fn product_with_unit_law() {
        let one = FusionLaw::from_labels(&["x"], &[("x", "x", &["x"])]).unwrap();
        let p = jordan_law().product_law(&one);
        assert_eq!(p.len(), 3);
        assert_eq!(p.product_labels("(h,x)", "(h,x)").unwrap(), vec!["(e,x)", "(z,x)"]);
        let empty = empty_law(&["a", "b"]).product_law(&jordan_law());
        assert!(empty.triples().next().is_none());
    }

    #[test]
    fn group_law_checks() {
        let z2 = cyclic_group_law(2);
        assert_eq!(z2.product(1, 1), &[0]);
        assert_eq!(z2.units(), vec![0]);
        let bad = FusionLaw::group_law(vec!["a".into(), "b".into()], &[vec![0, 0], vec![0, 1]]);
        assert!(matches!(bad, Err(FusionError::NotAGroup(_))));
        let trivial = cyclic_group_law(1);
        assert_eq!(trivial.product(0, 0), &[0]);
    }

    #[test]
    fn json_roundtrip_defaults_to_empty() {
        let doc = r#"{"elements":["e","z","h"],"table":[{"left":"h","right":"h","out":["z","e"]}]}"#;
        let law: FusionLaw = serde_json::from_str(doc).unwrap();
        assert_eq!(law.product_labels("h", "h").unwrap(), vec!["e", "z"]);
        assert!(law.product_labels("e", "e").unwrap().is_empty());
        let back: FusionLaw = serde_json::from_str(&serde_json::to_string(&law).unwrap()).unwrap();
        assert_eq!(back, law);
        let bad = r#"{"elements":["a"],"table":[{"left":"a","right":"a","out":["b"]}]}"#;
        assert!(serde_json::from_str::<FusionLaw>(bad).is_err());
    }
}
