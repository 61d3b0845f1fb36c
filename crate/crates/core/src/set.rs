//! Fixed-universe vertex sets backed by a bit vector.

use bitvec::prelude::*;

use crate::game::VertexId;

/// A set of vertex ids over a fixed universe `0..universe()`.
///
/// All binary operations require both operands to share the same universe;
/// mixing sets from different games is a logic error and panics.
#[derive(Clone, PartialEq, Eq)]
pub struct VertexSet {
    bits: BitVec<usize, Lsb0>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet { bits: bitvec![usize, Lsb0; 0; universe] }
    }

    pub fn full(universe: usize) -> Self {
        VertexSet { bits: bitvec![usize, Lsb0; 1; universe] }
    }

    pub fn from_ids(universe: usize, ids: &[VertexId]) -> Self {
        let mut s = Self::empty(universe);
        for &v in ids {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.bits[v as usize]
    }

    pub fn insert(&mut self, v: VertexId) {
        self.bits.set(v as usize, true);
    }

    pub fn remove(&mut self, v: VertexId) {
        self.bits.set(v as usize, false);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.not_any()
    }

    /// Iterates members in ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.bits.iter_ones().map(|i| i as VertexId)
    }

    /// Members as a sorted vector, the canonical form for reports.
    pub fn ids(&self) -> Vec<VertexId> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        assert_eq!(self.universe(), other.universe(), "universe mismatch");
        self.bits |= &other.bits;
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        assert_eq!(self.universe(), other.universe(), "universe mismatch");
        for i in other.bits.iter_ones() {
            self.bits.set(i, false);
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        assert_eq!(self.universe(), other.universe(), "universe mismatch");
        self.bits &= &other.bits;
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    /// Complement within the universe.
    pub fn complement(&self) -> VertexSet {
        let mut bits = self.bits.clone();
        for mut b in bits.iter_mut() {
            *b = !*b;
        }
        VertexSet { bits }
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        assert_eq!(self.universe(), other.universe(), "universe mismatch");
        self.bits.iter_ones().all(|i| other.bits[i])
    }

    pub fn is_disjoint_from(&self, other: &VertexSet) -> bool {
        assert_eq!(self.universe(), other.universe(), "universe mismatch");
        self.bits.iter_ones().all(|i| !other.bits[i])
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
