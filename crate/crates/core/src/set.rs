use std::fmt;

use fixedbitset::FixedBitSet;

/// Index of a state.
pub type StateId = usize;
/// Index of an action.
pub type ActionId = usize;

/// A subset of the states `0..universe` of some model.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet(FixedBitSet);

impl StateSet {
    pub fn empty(universe: usize) -> Self {
        StateSet(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut b = FixedBitSet::with_capacity(universe);
        b.insert_range(..);
        StateSet(b)
    }

    pub fn singleton(universe: usize, q: StateId) -> Self {
        let mut s = Self::empty(universe);
        s.insert(q);
        s
    }

    pub fn from_states(universe: usize, states: impl IntoIterator<Item = StateId>) -> Self {
        let mut s = Self::empty(universe);
        for q in states {
            s.insert(q);
        }
        s
    }

    /// Builds the set whose members are the set bits of `mask`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        Self::from_states(universe, (0..universe.min(64)).filter(|i| mask >> i & 1 == 1))
    }

    /// Size of the underlying state space.
    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn contains(&self, q: StateId) -> bool {
        self.0.contains(q)
    }

    pub fn insert(&mut self, q: StateId) {
        self.0.insert(q);
    }

    pub fn remove(&mut self, q: StateId) {
        self.0.set(q, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = StateId> + '_ {
        self.0.ones()
    }

    pub fn first(&self) -> Option<StateId> {
        self.0.minimum()
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &StateSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let mut r = self.clone();
        r.0.union_with(&other.0);
        r
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        let mut r = self.clone();
        r.0.intersect_with(&other.0);
        r
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        let mut r = self.clone();
        r.0.difference_with(&other.0);
        r
    }

    pub fn complement(&self) -> StateSet {
        let mut r = self.clone();
        r.0.toggle_range(..);
        r
    }

    pub fn union_with(&mut self, other: &StateSet) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &StateSet) {
        self.0.intersect_with(&other.0);
    }

    /// Members as a sorted vector.
    pub fn to_vec(&self) -> Vec<StateId> {
        self.iter().collect()
    }

    /// Bitmask encoding, for universes of at most 64 states.
    pub fn mask(&self) -> u64 {
        self.iter().filter(|&q| q < 64).fold(0, |m, q| m | 1 << q)
    }

    /// Key ordering sets by size first, then by the sorted member list.
    pub fn size_lex_key(&self) -> (usize, Vec<StateId>) {
        (self.len(), self.to_vec())
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = StateSet::from_states(5, [0, 2, 4]);
        let b = StateSet::from_states(5, [2, 3]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 2, 3, 4]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 4]);
        assert_eq!(a.complement().to_vec(), vec![1, 3]);
        assert!(StateSet::singleton(5, 2).is_subset(&a));
        assert_eq!(StateSet::full(3).len(), 3);
        assert_eq!(StateSet::from_mask(4, 0b1010).to_vec(), vec![1, 3]);
        assert_eq!(a.mask(), 0b10101);
    }
}
