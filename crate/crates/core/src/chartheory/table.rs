use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::ChartError;
use crate::exactlin::{tolerance, Field, FromScalar, Rational, Scalar, C64};
use crate::fusion::FusionLaw;
use crate::permgroup::{Perm, PermGroup};

/// A conjugacy class: a representative and the class size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub rep: Perm,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Character {
    pub label: String,
    pub values: Vec<Scalar>,
}

/// A function on conjugacy classes, aligned with the class list of a table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassFunction {
    pub values: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct CharacterTableDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    group: Option<String>,
    classes: Vec<ClassInfo>,
    characters: Vec<Character>,
}

/// The irreducible characters of a finite group, with class data.
///
/// Construction validates the table: square shape, trivial character first,
/// class sizes summing to the group order and orthonormal rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CharacterTableDoc", into = "CharacterTableDoc")]
pub struct CharacterTable {
    group: Option<String>,
    classes: Vec<ClassInfo>,
    characters: Vec<Character>,
    identity_class: usize,
}

impl TryFrom<CharacterTableDoc> for CharacterTable {
    type Error = ChartError;

    fn try_from(doc: CharacterTableDoc) -> Result<Self, ChartError> {
        CharacterTable::new(doc.group, doc.classes, doc.characters)
    }
}

impl From<CharacterTable> for CharacterTableDoc {
    fn from(t: CharacterTable) -> Self {
        CharacterTableDoc { group: t.group, classes: t.classes, characters: t.characters }
    }
}

impl ClassFunction {
    pub fn new(values: Vec<Scalar>) -> Self {
        ClassFunction { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.values.iter().all(Scalar::is_exact)
    }

    /// Pointwise product.
    pub fn product(&self, other: &ClassFunction) -> Result<ClassFunction, ChartError> {
        if self.len() != other.len() {
            return Err(ChartError::LengthMismatch(self.len(), other.len()));
        }
        let values = if self.is_exact() && other.is_exact() {
            pointwise::<Rational>(&self.values, &other.values)
        } else {
            pointwise::<C64>(&self.values, &other.values)
        };
        Ok(ClassFunction { values })
    }

    /// Values in the field `F`; fails for complex values in exact mode.
    pub fn values_in<F: FromScalar>(&self) -> Result<Vec<F>, ChartError> {
        self.values.iter().map(|v| F::from_scalar(v).map_err(|_| ChartError::NeedsComplex)).collect()
    }
}

fn pointwise<F: FromScalar>(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let p = F::from_scalar(x).expect("checked variant") * F::from_scalar(y).expect("checked variant");
            p.to_scalar()
        })
        .collect()
}

/// `(1/|G|) Σ_c |c| a(c) conj(b(c))`.
pub(crate) fn weighted_inner<F: Field>(sizes: &[usize], a: &[F], b: &[F]) -> F {
    let order: usize = sizes.iter().sum();
    let total = sizes
        .iter()
        .zip(a.iter().zip(b))
        .fold(F::zero(), |acc, (&s, (x, y))| acc + F::from_i64(s as i64) * x * &y.conj());
    total / F::from_i64(order as i64)
}

/// The nearest non-negative integer to an inner product of characters.
pub(crate) fn as_multiplicity<F: Field>(v: &F) -> Result<u64, ChartError> {
    let n = v.to_integer().ok_or_else(|| ChartError::NonIntegral(v.to_string()))?;
    u64::try_from(n).map_err(|_| ChartError::NonIntegral(v.to_string()))
}

impl CharacterTable {
    pub fn new(group: Option<String>, classes: Vec<ClassInfo>, characters: Vec<Character>) -> Result<Self, ChartError> {
        let invalid = |m: String| Err(ChartError::InvalidTable(m));
        let k = classes.len();
        if k == 0 {
            return invalid("no classes".into());
        }
        if characters.len() != k {
            return invalid(format!("{} characters for {k} classes", characters.len()));
        }
        let degree = classes[0].rep.degree();
        if classes.iter().any(|c| c.rep.degree() != degree || c.size == 0) {
            return invalid("class representatives must share a degree and classes must be non-empty".into());
        }
        let Some(identity_class) = classes.iter().position(|c| c.rep.is_identity()) else {
            return invalid("no class of the identity".into());
        };
        if classes[identity_class].size != 1 {
            return invalid("the identity class must have size 1".into());
        }
        let mut seen = HashSet::new();
        for ch in &characters {
            if ch.values.len() != k {
                return invalid(format!("character `{}` has {} values for {k} classes", ch.label, ch.values.len()));
            }
            if !seen.insert(ch.label.as_str()) {
                return invalid(format!("duplicate label `{}`", ch.label));
            }
        }
        let one = Scalar::Rational(Rational::from_integer(1.into()));
        if !characters[0].values.iter().all(|v| scalar_approx_eq(v, &one)) {
            return invalid("the first character must be trivial".into());
        }
        let table = CharacterTable { group, classes, characters, identity_class };
        for i in 0..k {
            table.degree(i)?;
            for j in 0..=i {
                let ip = table.inner_product(&table.character(i), &table.character(j))?;
                let expected = if i == j { 1 } else { 0 };
                let target = Scalar::Rational(Rational::from_integer(expected.into()));
                if !scalar_approx_eq(&ip, &target) {
                    return invalid(format!(
                        "<{}, {}> = {ip}, expected {expected}",
                        table.characters[i].label, table.characters[j].label
                    ));
                }
            }
        }
        Ok(table)
    }

    pub fn from_json(s: &str) -> Result<Self, ChartError> {
        serde_json::from_str(s).map_err(|e| ChartError::InvalidTable(e.to_string()))
    }

    pub fn group_name(&self) -> Option<&str> {
        self.group.as_deref()
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.characters.iter().map(|c| c.label.clone()).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size).collect()
    }

    pub fn order(&self) -> usize {
        self.classes.iter().map(|c| c.size).sum()
    }

    pub fn identity_class(&self) -> usize {
        self.identity_class
    }

    pub fn is_exact(&self) -> bool {
        self.characters.iter().all(|c| c.values.iter().all(Scalar::is_exact))
    }

    pub fn character(&self, i: usize) -> ClassFunction {
        ClassFunction::new(self.characters[i].values.clone())
    }

    /// `χ_i(1)`.
    pub fn degree(&self, i: usize) -> Result<u64, ChartError> {
        let v = &self.characters[i].values[self.identity_class];
        let d = match v {
            Scalar::Rational(q) => q.is_integer().then(|| q.to_integer()),
            Scalar::Complex(c) => c.to_integer(),
        };
        d.and_then(|d| u64::try_from(d).ok())
            .filter(|&d| d > 0)
            .ok_or_else(|| ChartError::InvalidTable(format!("degree of `{}` is {v}", self.characters[i].label)))
    }

    /// The class function `g ↦ f(g)` evaluated on class representatives.
    pub fn class_function(&self, f: impl Fn(&Perm) -> Scalar) -> ClassFunction {
        ClassFunction::new(self.classes.iter().map(|c| f(&c.rep)).collect())
    }

    /// The character of the regular representation.
    pub fn regular_character(&self) -> ClassFunction {
        let order = self.order() as i64;
        self.class_function(|p| Scalar::Rational(Rational::from_integer(if p.is_identity() { order } else { 0 }.into())))
    }

    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> Result<Scalar, ChartError> {
        let k = self.classes.len();
        for f in [a, b] {
            if f.len() != k {
                return Err(ChartError::LengthMismatch(f.len(), k));
            }
        }
        let sizes = self.sizes();
        Ok(if a.is_exact() && b.is_exact() {
            weighted_inner(&sizes, &a.values_in::<Rational>()?, &b.values_in::<Rational>()?).to_scalar()
        } else {
            weighted_inner(&sizes, &a.values_in::<C64>()?, &b.values_in::<C64>()?).to_scalar()
        })
    }

    /// `⟨a, b⟩` as a non-negative integer, the multiplicity of `b` in `a`
    /// when `b` is irreducible.
    pub fn multiplicity(&self, a: &ClassFunction, b: &ClassFunction) -> Result<u64, ChartError> {
        match self.inner_product(a, b)? {
            Scalar::Rational(q) => as_multiplicity(&q),
            Scalar::Complex(c) => as_multiplicity(&c),
        }
    }

    /// Multiplicities of each irreducible in `f`.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<u64>, ChartError> {
        (0..self.len()).map(|i| self.multiplicity(f, &self.character(i))).collect()
    }

    /// `m[i][j][k] = ⟨χ_i χ_j, χ_k⟩`.
    pub fn tensor_multiplicities(&self) -> Result<Vec<Vec<Vec<u64>>>, ChartError> {
        let n = self.len();
        let mut out = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let p = self.character(i).product(&self.character(j))?;
                out[i][j] = self.decompose(&p)?;
            }
        }
        Ok(out)
    }

    /// `χ ∈ χ₁ * χ₂` iff `χ` is a constituent of `χ₁ ⊗ χ₂`.
    pub fn representation_fusion_law(&self) -> Result<FusionLaw, ChartError> {
        let m = self.tensor_multiplicities()?;
        let table = m
            .iter()
            .map(|row| row.iter().map(|mult| (0..mult.len()).filter(|&k| mult[k] > 0).collect()).collect())
            .collect();
        Ok(FusionLaw::from_table(self.labels(), table)?)
    }

    /// Maps each class of `group` to the column of this table holding it.
    pub fn bind(&self, group: &PermGroup) -> Result<Vec<usize>, ChartError> {
        let mismatch = |m: String| ChartError::GroupMismatch(m);
        if group.order()? != self.order() {
            return Err(mismatch(format!("group order {} but table order {}", group.order()?, self.order())));
        }
        let cc = group.conjugacy_classes()?;
        if cc.len() != self.classes.len() {
            return Err(mismatch(format!("{} classes but table has {}", cc.len(), self.classes.len())));
        }
        let mut columns = vec![usize::MAX; cc.len()];
        for (col, class) in self.classes.iter().enumerate() {
            let idx = if class.rep.degree() == group.degree() { group.index_of(&class.rep)? } else { None };
            let idx = idx.ok_or_else(|| mismatch(format!("representative {} is not in the group", class.rep)))?;
            let c = cc.class_of[idx];
            if cc.classes[c].len() != class.size || columns[c] != usize::MAX {
                return Err(mismatch(format!("class of {} does not match the table", class.rep)));
            }
            columns[c] = col;
        }
        Ok(columns)
    }

    /// The same table with class representatives taken in `target`, a group
    /// isomorphic to `source`, where `source` is the group this table binds to.
    pub fn transport(&self, source: &PermGroup, target: &PermGroup) -> Result<CharacterTable, ChartError> {
        let columns = self.bind(source)?;
        let iso = super::iso::find_isomorphism(target, source)?
            .ok_or_else(|| ChartError::GroupMismatch("groups are not isomorphic".into()))?;
        let (tcc, scc) = (target.conjugacy_classes()?, source.conjugacy_classes()?);
        let mut classes = Vec::new();
        let mut picked = Vec::new();
        for (c, members) in tcc.classes.iter().enumerate() {
            let rep = tcc.representative(c);
            classes.push(ClassInfo { rep: target.element(rep)?.clone(), size: members.len() });
            picked.push(columns[scc.class_of[iso[rep]]]);
        }
        let characters = self
            .characters
            .iter()
            .map(|ch| Character { label: ch.label.clone(), values: picked.iter().map(|&col| ch.values[col].clone()).collect() })
            .collect();
        CharacterTable::new(target.name().map(str::to_string).or_else(|| self.group.clone()), classes, characters)
    }
}

pub(crate) fn scalar_approx_eq(a: &Scalar, b: &Scalar) -> bool {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => x == y,
        _ => {
            let d = a.to_c64() - b.to_c64();
            d.magnitude() <= tolerance()
        }
    }
}
