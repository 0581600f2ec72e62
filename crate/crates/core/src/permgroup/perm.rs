use std::fmt;

use serde::{Deserialize, Serialize};

use super::PermError;

/// A permutation of `{0, …, n-1}` stored as its image list.
///
/// Products compose right to left: `(a * b)(x) = a(b(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm(Vec<usize>);

impl TryFrom<Vec<usize>> for Perm {
    type Error = PermError;

    fn try_from(images: Vec<usize>) -> Result<Self, PermError> {
        Perm::new(images)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Self {
        p.0
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    /// Cycle notation on 0-based points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::InvalidPermutation(format!("{images:?} is not a bijection of 0..{n}")));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                let y = c[(k + 1) % c.len()];
                if x >= n || y >= n {
                    return Err(PermError::InvalidPermutation(format!("point out of range in cycle {c:?}")));
                }
                images[x] = y;
            }
        }
        Perm::new(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    /// `g * self * g⁻¹`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.compose(self).compose(&g.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Perm::identity(self.degree());
        for _ in 0..e.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// Non-trivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                c.push(x);
                x = self.0[x];
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }

    /// Cycle lengths in descending order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = t.iter().sum();
        t.extend(std::iter::repeat(1).take(self.degree() - moved));
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_right_to_left() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        // a(b(1)) = a(2) = 2, a(b(2)) = a(1) = 0
        assert_eq!(a.compose(&b).images(), &[1, 2, 0]);
        assert_eq!(a.compose(&b).to_string(), "(0 1 2)");
        assert!(a.compose(&a).is_identity());
        assert_eq!(a.compose(&b).order(), 3);
        assert_eq!(a.compose(&b).inverse().compose(&a.compose(&b)), Perm::identity(3));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::new(vec![0, 0]).is_err());
        assert!(serde_json::from_str::<Perm>("[1,2]").is_err());
        assert_eq!(serde_json::from_str::<Perm>("[1,0]").unwrap().to_string(), "(0 1)");
    }

    #[test]
    fn cycle_type_and_parity() {
        let p = Perm::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(p.cycle_type(), vec![3, 2]);
        assert!(!p.is_even());
        assert_eq!(p.order(), 6);
        assert_eq!(p.pow(6), Perm::identity(5));
        assert_eq!(p.pow(-1), p.inverse());
    }
}
