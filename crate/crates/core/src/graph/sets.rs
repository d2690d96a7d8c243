use std::collections::BTreeSet;
use std::fmt;

/// A vertex addressed by its class and its position inside that class.
///
/// The derived ordering is lexicographic on `(part, index)`, which is also the
/// order of global vertex ids inside a [`MultipartiteGraph`](super::MultipartiteGraph).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexRef {
    pub part: usize,
    pub index: usize,
}

impl VertexRef {
    pub const fn new(part: usize, index: usize) -> Self {
        VertexRef { part, index }
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.part, self.index)
    }
}

/// An ordered set of vertices. Iteration is always lexicographic.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(BTreeSet<VertexRef>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn insert(&mut self, v: VertexRef) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: &VertexRef) -> bool {
        self.0.remove(v)
    }

    pub fn contains(&self, v: &VertexRef) -> bool {
        self.0.contains(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = VertexRef> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<VertexRef> {
        self.0.first().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn extend<I: IntoIterator<Item = VertexRef>>(&mut self, iter: I) {
        self.0.extend(iter)
    }

    pub fn to_vec(&self) -> Vec<VertexRef> {
        self.0.iter().copied().collect()
    }
}

impl FromIterator<VertexRef> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexRef>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = VertexRef;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, VertexRef>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// An ordered set of class indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassSet(BTreeSet<usize>);

impl ClassSet {
    pub fn new() -> Self {
        ClassSet(BTreeSet::new())
    }

    /// All classes `0..r`.
    pub fn all(r: usize) -> Self {
        ClassSet((0..r).collect())
    }

    pub fn insert(&mut self, c: usize) -> bool {
        self.0.insert(c)
    }

    pub fn remove(&mut self, c: usize) -> bool {
        self.0.remove(&c)
    }

    pub fn contains(&self, c: usize) -> bool {
        self.0.contains(&c)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn union(&self, other: &ClassSet) -> ClassSet {
        ClassSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &ClassSet) -> ClassSet {
        ClassSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &ClassSet) -> ClassSet {
        ClassSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &ClassSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.iter().copied().collect()
    }
}

impl FromIterator<usize> for ClassSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ClassSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a ClassSet {
    type Item = usize;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, usize>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Display for ClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, c) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}
