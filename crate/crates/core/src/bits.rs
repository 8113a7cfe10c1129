//! Bitmask view of a small atom set, used by the exhaustive enumerators.

use alloc::vec::Vec;

use crate::atom::{Atom, AtomSet};

pub(crate) type Mask = u64;

pub(crate) struct AtomIndex {
    atoms: Vec<Atom>,
}

impl AtomIndex {
    /// Callers guarantee `universe.len() <= 64`.
    pub(crate) fn new(universe: &AtomSet) -> Self {
        debug_assert!(universe.len() <= 64);
        AtomIndex {
            atoms: universe.iter().cloned().collect(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.atoms.len()
    }

    pub(crate) fn full(&self) -> Mask {
        full_mask(self.atoms.len())
    }

    pub(crate) fn bit(&self, atom: &Atom) -> Option<usize> {
        self.atoms.binary_search(atom).ok()
    }

    pub(crate) fn mask<'a, I: IntoIterator<Item = &'a Atom>>(&self, atoms: I) -> Mask {
        atoms
            .into_iter()
            .filter_map(|a| self.bit(a))
            .fold(0, |m, b| m | (1 << b))
    }

    pub(crate) fn set(&self, mask: Mask) -> AtomSet {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| a.clone())
            .collect()
    }
}

pub(crate) fn full_mask(n: usize) -> Mask {
    if n >= 64 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

/// Iterates every submask of `mask`, including 0 and `mask` itself.
pub(crate) fn submasks(mask: Mask) -> impl Iterator<Item = Mask> {
    let mut next = Some(mask);
    core::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}
