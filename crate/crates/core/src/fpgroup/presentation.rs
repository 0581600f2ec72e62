use std::fmt;

use serde::{Deserialize, Serialize};

use super::FpError;
use crate::fusion::FusionLaw;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn inv(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    /// Column index in a coset table: `2g` for `g`, `2g + 1` for `g⁻¹`.
    pub fn column(self) -> usize {
        2 * self.gen + usize::from(self.inverse)
    }
}

pub type Word = Vec<Letter>;

pub fn invert_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverted()).collect()
}

/// Cancels adjacent inverse pairs.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverted()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free reduction followed by cancellation between the two ends.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == w[w.len() - 1].inverted() {
        w.pop();
        w.remove(0);
    }
    w
}

/// A finitely presented group `⟨generators | relators⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationDoc", into = "PresentationDoc")]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<Vec<String>>,
}

impl TryFrom<PresentationDoc> for Presentation {
    type Error = FpError;

    fn try_from(doc: PresentationDoc) -> Result<Self, FpError> {
        let mut p = Presentation::new(doc.generators, Vec::new())?;
        for r in &doc.relators {
            let w = p.parse_word(r)?;
            p.relators.push(w);
        }
        Ok(p)
    }
}

impl From<Presentation> for PresentationDoc {
    fn from(p: Presentation) -> Self {
        let relators = p.relators.iter().map(|r| p.word_tokens(r)).collect();
        PresentationDoc { generators: p.generators, relators }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, FpError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(FpError::DuplicateGenerator(g.clone()));
            }
        }
        if let Some(l) = relators.iter().flatten().find(|l| l.gen >= generators.len()) {
            return Err(FpError::GeneratorOutOfRange(l.gen));
        }
        Ok(Presentation { generators, relators })
    }

    /// Parses relators written as tokens such as `"a"`, `"b^-1"`, `"c^3"`.
    pub fn from_strs(generators: &[&str], relators: &[&[&str]]) -> Result<Self, FpError> {
        PresentationDoc {
            generators: generators.iter().map(|s| s.to_string()).collect(),
            relators: relators.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
        }
        .try_into()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Result<usize, FpError> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| FpError::UnknownGenerator(name.to_string()))
    }

    pub fn push_relator(&mut self, w: Word) -> Result<(), FpError> {
        if let Some(l) = w.iter().find(|l| l.gen >= self.generators.len()) {
            return Err(FpError::GeneratorOutOfRange(l.gen));
        }
        self.relators.push(w);
        Ok(())
    }

    /// Parses one token list into a word; `x^k` expands to `|k|` letters.
    pub fn parse_word<S: AsRef<str>>(&self, tokens: &[S]) -> Result<Word, FpError> {
        let mut w = Vec::new();
        for t in tokens {
            let t = t.as_ref().trim();
            let (name, exp) = match t.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.trim().parse().map_err(|_| FpError::BadToken(t.to_string()))?;
                    (n.trim(), e)
                }
                None => (t, 1),
            };
            let g = self.generator_index(name)?;
            let l = if exp < 0 { Letter::inv(g) } else { Letter::new(g) };
            for _ in 0..exp.unsigned_abs() {
                w.push(l);
            }
        }
        Ok(w)
    }

    pub fn word_tokens(&self, w: &[Letter]) -> Vec<String> {
        w.iter()
            .map(|l| {
                let g = &self.generators[l.gen];
                if l.inverse {
                    format!("{g}^-1")
                } else {
                    g.clone()
                }
            })
            .collect()
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        self.word_tokens(w).join(" ")
    }

    /// Cyclically reduced, non-empty, deduplicated relators; a relator and its
    /// inverse or cyclic rotations are treated as the same.
    pub fn simplified(&self) -> Presentation {
        let mut seen = std::collections::HashSet::new();
        let mut relators = Vec::new();
        for r in &self.relators {
            let r = cyclic_reduce(r);
            if r.is_empty() {
                continue;
            }
            if seen.insert(canonical_cyclic(&r)) {
                relators.push(r);
            }
        }
        Presentation { generators: self.generators.clone(), relators }
    }

    /// Integer relation matrix: one row per relator, exponent sums per generator.
    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.generators.len()];
                for l in r {
                    row[l.gen] += if l.inverse { -1 } else { 1 };
                }
                row
            })
            .collect()
    }
}

fn canonical_cyclic(w: &[Letter]) -> Word {
    let inv = invert_word(w);
    let mut best: Option<Word> = None;
    for base in [w, &inv[..]] {
        for k in 0..base.len() {
            let rot: Word = base[k..].iter().chain(&base[..k]).copied().collect();
            if best.as_ref().map_or(true, |b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// The presentation of the finest grading group: one generator `γ_x` per
/// element and one relator `γ_x γ_y γ_z⁻¹` for every `z ∈ x * y`.
pub fn finest_grading_presentation(law: &FusionLaw) -> Presentation {
    let generators = law.labels().iter().map(|l| format!("g_{l}")).collect();
    let mut relators = Vec::new();
    for (x, y, z) in law.triples() {
        let r = vec![Letter::new(x), Letter::new(y), Letter::inv(z)];
        if !relators.contains(&r) {
            relators.push(r);
        }
    }
    Presentation { generators, relators }
}
