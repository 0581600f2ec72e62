use super::presentation::{Letter, Presentation};

/// Outcome of a bounded coset enumeration over the trivial subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumeration {
    Finite(CosetGroup),
    /// The table overflowed before closing; no verdict on finiteness.
    Exhausted { cosets_defined: usize },
}

impl Enumeration {
    pub fn finite(self) -> Option<CosetGroup> {
        match self {
            Enumeration::Finite(g) => Some(g),
            Enumeration::Exhausted { .. } => None,
        }
    }
}

/// The regular permutation representation produced by a closed coset table.
///
/// Coset `0` is the identity. `generators[g]` is the permutation `i -> i·g⁻¹`
/// (as an image list), which makes `g -> generators[g]` a homomorphism for
/// the composition `(στ)(i) = σ(τ(i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetGroup {
    pub order: usize,
    pub generators: Vec<Vec<usize>>,
    /// Right-action table: `right[i][2g]` is `i·g`, `right[i][2g + 1]` is `i·g⁻¹`.
    pub right: Vec<Vec<usize>>,
}

impl CosetGroup {
    /// The coset `1·w`, i.e. the index of the element represented by `w`.
    pub fn element_of(&self, w: &[Letter]) -> usize {
        w.iter().fold(0, |c, l| self.right[c][l.column()])
    }

    /// Permutation image of a word under the homomorphism.
    pub fn perm_of(&self, w: &[Letter]) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.order).collect();
        for l in w {
            let g = &self.generators[l.gen];
            p = if l.inverse { compose(&p, &invert(g)) } else { compose(&p, g) };
        }
        p
    }
}

pub(crate) fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

pub(crate) fn invert(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

const NONE: usize = usize::MAX;

struct Table {
    cols: usize,
    rows: Vec<Vec<usize>>,
    parent: Vec<usize>,
    max: usize,
    overflow: bool,
}

impl Table {
    fn new(cols: usize, max: usize) -> Self {
        Table { cols, rows: vec![vec![NONE; cols]], parent: vec![0], max, overflow: false }
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> bool {
        if self.rows.len() >= self.max {
            self.overflow = true;
            return false;
        }
        let d = self.rows.len();
        self.rows.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.rows[c][x] = d;
        self.rows[d][x ^ 1] = c;
        true
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut k = c;
        while self.parent[k] != r {
            let next = self.parent[k];
            self.parent[k] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo;
        queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.rows[e][x];
                if f == NONE {
                    continue;
                }
                if self.rows[f][x ^ 1] == e {
                    self.rows[f][x ^ 1] = NONE;
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.rows[e1][x] != NONE {
                    let t = self.rows[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.rows[f1][x ^ 1] != NONE {
                    let t = self.rows[f1][x ^ 1];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.rows[e1][x] = f1;
                    self.rows[f1][x ^ 1] = e1;
                }
            }
        }
    }

    /// HLT scan of `word` from coset `c`, defining cosets as needed.
    fn scan_and_fill(&mut self, c: usize, word: &[usize]) {
        if word.is_empty() {
            return;
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, word.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.rows[f][word[i]] != NONE {
                f = self.rows[f][word[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != c {
                    self.coincidence(f, c);
                }
                return;
            }
            while j >= i as isize && self.rows[b][word[j as usize] ^ 1] != NONE {
                b = self.rows[b][word[j as usize] ^ 1];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return;
            }
            if j == i as isize {
                self.rows[f][word[i]] = b;
                self.rows[b][word[i] ^ 1] = f;
                return;
            }
            if !self.define(f, word[i]) {
                return;
            }
        }
    }
}

/// Todd–Coxeter enumeration of the cosets of the trivial subgroup, HLT
/// strategy: relators are scanned from each live coset in order, then the
/// coset's row is completed. At most `max_cosets` cosets are ever defined.
pub fn coset_enumerate(p: &Presentation, max_cosets: usize) -> Enumeration {
    assert!(max_cosets >= 1, "max_cosets must be positive");
    let p = p.simplified();
    let ngens = p.generators().len();
    let cols = 2 * ngens;
    let relators: Vec<Vec<usize>> = p.relators().iter().map(|r| r.iter().map(|l| l.column()).collect()).collect();
    let mut t = Table::new(cols, max_cosets);

    let mut c = 0;
    while c < t.rows.len() {
        if t.live(c) {
            for r in &relators {
                t.scan_and_fill(c, r);
                if t.overflow {
                    return Enumeration::Exhausted { cosets_defined: t.rows.len() };
                }
                if !t.live(c) {
                    break;
                }
            }
            if t.live(c) {
                for x in 0..cols {
                    if t.rows[c][x] == NONE && !t.define(c, x) {
                        return Enumeration::Exhausted { cosets_defined: t.rows.len() };
                    }
                }
            }
        }
        c += 1;
    }

    let live: Vec<usize> = (0..t.rows.len()).filter(|&c| t.live(c)).collect();
    let mut new_index = vec![NONE; t.rows.len()];
    for (k, &c) in live.iter().enumerate() {
        new_index[c] = k;
    }
    let right: Vec<Vec<usize>> = live
        .iter()
        .map(|&c| {
            (0..cols)
                .map(|x| {
                    let target = t.rows[c][x];
                    let target = t.rep(target);
                    new_index[target]
                })
                .collect()
        })
        .collect();
    let generators = (0..ngens).map(|g| right.iter().map(|row| row[2 * g + 1]).collect()).collect();
    Enumeration::Finite(CosetGroup { order: live.len(), generators, right })
}
