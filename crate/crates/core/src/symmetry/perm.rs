use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::SymmetryError;

/// A bijection of `0..n`, stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self, SymmetryError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &i in &image {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(SymmetryError::NotAPermutation(image));
            }
        }
        Ok(Permutation(image))
    }

    pub(crate) fn from_vec_unchecked(image: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(image.clone()).is_ok());
        Permutation(image)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(i, &j)| *i == j).map(|(i, _)| i)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = SymmetryError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

/// A finite permutation group held as an explicit sorted element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl PermGroup {
    /// Takes every element of the group. Generators are picked greedily in
    /// lexicographic order: an element becomes a generator when it is not in
    /// the span of the earlier ones.
    pub(crate) fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let mut generators: Vec<Permutation> = Vec::new();
        let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
        for e in &elements {
            if span.len() == elements.len() {
                break;
            }
            if span.contains(e) {
                continue;
            }
            generators.push(e.clone());
            extend_span(&mut span, &generators);
        }
        PermGroup { degree, elements, generators }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Identity present, closed under composition and inverses.
    pub fn satisfies_subgroup_axioms(&self) -> bool {
        self.contains(&Permutation::identity(self.degree))
            && self.elements.iter().all(|a| self.contains(&a.inverse()))
            && self
                .elements
                .iter()
                .all(|a| self.elements.iter().all(|b| self.contains(&a.after(b))))
    }
}

/// Grows `span` (closed under the earlier generators) to the group generated
/// with the last generator added.
fn extend_span(span: &mut HashSet<Permutation>, generators: &[Permutation]) {
    let newest = generators.last().expect("at least one generator");
    let mut frontier: Vec<Permutation> =
        span.iter().map(|p| newest.after(p)).filter(|q| !span.contains(q)).collect();
    while let Some(p) = frontier.pop() {
        if !span.insert(p.clone()) {
            continue;
        }
        for g in generators {
            let q = g.after(&p);
            if !span.contains(&q) {
                frontier.push(q);
            }
        }
    }
}

#[cfg(test)]
fn closure(degree: usize, generators: &[Permutation]) -> HashSet<Permutation> {
    let mut span = HashSet::from([Permutation::identity(degree)]);
    for k in 1..=generators.len() {
        extend_span(&mut span, &generators[..k]);
    }
    span
}
