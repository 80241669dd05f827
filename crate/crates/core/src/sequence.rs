use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::set::StateSet;

/// An ultimately periodic sequence `x_0, x_1, ...` stored up to its first repetition.
///
/// `items` holds `x_0 .. x_{k+r-1}`, all distinct, and `x_{k+r} = x_k`
/// where `k = prefix_len` and `r = period`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Periodic<T> {
    pub items: Vec<T>,
    pub prefix_len: usize,
    pub period: usize,
}

/// `Pre^i(T)` for `i = 0, 1, ...`.
pub type PreSequence = Periodic<StateSet>;
/// `(Pre^i(T), Pre^i(U))` for `i = 0, 1, ...`.
pub type PrePairSequence = Periodic<(StateSet, StateSet)>;

impl<T: Clone + Eq + Hash> Periodic<T> {
    /// Iterates `step` from `start` until an element repeats.
    pub fn detect(start: T, mut step: impl FnMut(&T) -> T, cap: usize) -> Result<Self> {
        let mut index: HashMap<T, usize> = HashMap::new();
        let mut items = Vec::new();
        let mut cur = start;
        loop {
            if let Some(&k) = index.get(&cur) {
                let period = items.len() - k;
                return Ok(Periodic { items, prefix_len: k, period });
            }
            if items.len() >= cap {
                return Err(Error::limit(format!("sequence did not repeat within {cap} elements")));
            }
            let next = step(&cur);
            index.insert(cur.clone(), items.len());
            items.push(cur);
            cur = next;
        }
    }
}

impl<T> Periodic<T> {
    /// Element `n` of the infinite sequence.
    pub fn get(&self, n: usize) -> &T {
        if n < self.items.len() {
            &self.items[n]
        } else {
            &self.items[self.prefix_len + (n - self.prefix_len) % self.period]
        }
    }

    /// The repeating block `x_k .. x_{k+r-1}`.
    pub fn periodic_part(&self) -> &[T] {
        &self.items[self.prefix_len..]
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Smallest index whose element satisfies `pred`, searching one full cycle.
    pub fn position(&self, pred: impl FnMut(&T) -> bool) -> Option<usize> {
        self.items.iter().position(pred)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_prefix_and_period() {
        // 0 -> 1 -> 2 -> 3 -> 4 -> 2
        let s = Periodic::detect(0u32, |&x| if x == 4 { 2 } else { x + 1 }, 100).unwrap();
        assert_eq!(s.items, vec![0, 1, 2, 3, 4]);
        assert_eq!((s.prefix_len, s.period), (2, 3));
        assert_eq!(*s.get(5), 2);
        assert_eq!(*s.get(9), 3);
        assert_eq!(s.periodic_part(), &[2, 3, 4]);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(Periodic::detect(0u64, |&x| x + 1, 10), Err(Error::ResourceLimit(_))));
    }
}
