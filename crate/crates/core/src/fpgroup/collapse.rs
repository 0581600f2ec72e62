use serde::{Deserialize, Serialize};

use super::presentation::{Letter, Presentation};
use crate::fusion::FusionLaw;

/// Which collapsing rule produced an identification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CollapseRule {
    /// A unit `x` with some non-empty product.
    NonAnnihilatingUnit,
    /// `y ∈ x * y` (or `x ∈ x * y`) forces the other factor trivial.
    FixedFactor,
    /// Two members of the same product set.
    SameProduct,
    /// A common member of `x * y` and `x * y'` (or `x * y` and `x' * y`).
    SharedMember,
}

/// One forced relation in the finest grading group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Collapse {
    Trivial { element: String, rule: CollapseRule, witness: [String; 3] },
    Equal { left: String, right: String, rule: CollapseRule, witness: [String; 3] },
}

/// Every identification forced by the collapsing rules, first witness only.
pub fn collapse_report(law: &FusionLaw) -> Vec<Collapse> {
    let n = law.len();
    let name = |i: usize| law.label(i).to_string();
    let witness = |x: usize, y: usize, z: usize| [name(x), name(y), name(z)];
    let mut trivial_seen = vec![false; n];
    let mut equal_seen = std::collections::HashSet::new();
    let mut out = Vec::new();

    for u in law.units() {
        let kind = law.classify_index(u);
        if kind.annihilating {
            continue;
        }
        if let Some((x, y, z)) = law.triples().find(|&(x, y, _)| x == u || y == u) {
            trivial_seen[u] = true;
            out.push(Collapse::Trivial { element: name(u), rule: CollapseRule::NonAnnihilatingUnit, witness: witness(x, y, z) });
        }
    }

    let mut trivial = |t: usize, x: usize, y: usize, z: usize, out: &mut Vec<Collapse>| {
        if !trivial_seen[t] {
            trivial_seen[t] = true;
            out.push(Collapse::Trivial { element: name(t), rule: CollapseRule::FixedFactor, witness: witness(x, y, z) });
        }
    };
    for (x, y, z) in law.triples() {
        if z == y {
            trivial(x, x, y, z, &mut out);
        }
        if z == x {
            trivial(y, x, y, z, &mut out);
        }
    }

    let mut equal = |a: usize, b: usize, rule: CollapseRule, w: [String; 3], out: &mut Vec<Collapse>| {
        let key = (a.min(b), a.max(b));
        if a != b && equal_seen.insert(key) {
            out.push(Collapse::Equal { left: name(key.0), right: name(key.1), rule, witness: w });
        }
    };
    for x in 0..n {
        for y in 0..n {
            let p = law.product(x, y);
            for (k, &z1) in p.iter().enumerate() {
                for &z2 in &p[k + 1..] {
                    equal(z1, z2, CollapseRule::SameProduct, witness(x, y, z1), &mut out);
                }
            }
        }
    }
    for (x, y, z) in law.triples() {
        for y2 in y + 1..n {
            if law.contains(x, y2, z) {
                equal(y, y2, CollapseRule::SharedMember, witness(x, y, z), &mut out);
            }
        }
        for x2 in x + 1..n {
            if law.contains(x2, y, z) {
                equal(x, x2, CollapseRule::SharedMember, witness(x, y, z), &mut out);
            }
        }
    }
    out
}

/// A presentation of the finest grading group with collapsed generators
/// removed, plus where each law element lands (`None` = identity).
#[derive(Clone, Debug)]
pub struct ReducedPresentation {
    pub presentation: Presentation,
    pub element_generator: Vec<Option<usize>>,
}

/// Applies the collapse report to the finest grading presentation: trivial
/// generators are deleted and equal ones merged. The result presents the
/// same group, since every identification is a consequence of the relators.
pub fn reduced_presentation(law: &FusionLaw) -> ReducedPresentation {
    let n = law.len();
    // Node `n` stands for the identity.
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let union = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            // Keep the identity node or the smaller index as root.
            let (root, child) = if ra == n || (rb != n && ra < rb) { (ra, rb) } else { (rb, ra) };
            p[child] = root;
        }
    };
    for c in collapse_report(law) {
        match c {
            Collapse::Trivial { element, .. } => {
                let e = law.index_of(&element).expect("own label");
                union(&mut parent, e, n);
            }
            Collapse::Equal { left, right, .. } => {
                let (a, b) = (law.index_of(&left).expect("own label"), law.index_of(&right).expect("own label"));
                union(&mut parent, a, b);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    let mut gen_of_root = vec![None; n + 1];
    let mut generators = Vec::new();
    for x in 0..n {
        let r = roots[x];
        if r != n && gen_of_root[r].is_none() {
            gen_of_root[r] = Some(generators.len());
            generators.push(format!("g_{}", law.label(r)));
        }
    }
    let element_generator: Vec<Option<usize>> = roots.iter().map(|&r| gen_of_root[r]).collect();
    let mut relators = Vec::new();
    for (x, y, z) in law.triples() {
        let mut w = Vec::new();
        if let Some(g) = element_generator[x] {
            w.push(Letter::new(g));
        }
        if let Some(g) = element_generator[y] {
            w.push(Letter::new(g));
        }
        if let Some(g) = element_generator[z] {
            w.push(Letter::inv(g));
        }
        relators.push(w);
    }
    let presentation = Presentation::new(generators, relators).expect("indices in range").simplified();
    ReducedPresentation { presentation, element_generator }
}
