//! Sorted finite sets of ordinals.

use std::collections::BTreeSet;
use std::fmt;

use crate::term::Ordinal;

/// A finite, duplicate-free, sorted set of ordinals.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FinOrdSet(BTreeSet<Ordinal>);

impl FinOrdSet {
    pub fn new() -> FinOrdSet {
        FinOrdSet(BTreeSet::new())
    }

    pub fn singleton(x: Ordinal) -> FinOrdSet {
        let mut s = FinOrdSet::new();
        s.insert(x);
        s
    }

    pub fn insert(&mut self, x: Ordinal) -> bool {
        self.0.insert(x)
    }

    pub fn contains(&self, x: &Ordinal) -> bool {
        self.0.contains(x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> Option<&Ordinal> {
        self.0.iter().next_back()
    }

    pub fn min(&self) -> Option<&Ordinal> {
        self.0.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Ordinal> {
        self.0.iter()
    }

    pub fn union_with(&mut self, other: &FinOrdSet) {
        for x in other.iter() {
            self.0.insert(x.clone());
        }
    }

    pub fn is_subset(&self, other: &FinOrdSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Elements strictly below `bound`.
    pub fn below(&self, bound: &Ordinal) -> FinOrdSet {
        FinOrdSet(self.0.iter().filter(|x| *x < bound).cloned().collect())
    }
}

impl FromIterator<Ordinal> for FinOrdSet {
    fn from_iter<T: IntoIterator<Item = Ordinal>>(iter: T) -> Self {
        FinOrdSet(iter.into_iter().collect())
    }
}

impl IntoIterator for FinOrdSet {
    type Item = Ordinal;
    type IntoIter = std::collections::btree_set::IntoIter<Ordinal>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl fmt::Display for FinOrdSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for FinOrdSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
