//! Fixed-width sets of small integers.

use std::fmt;

/// Largest universe an [`ElemSet`] can hold.
pub const MAX_UNIVERSE: usize = 128;

/// A subset of `{0, ..., 127}` stored as a single `u128`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ElemSet(pub u128);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    /// Panics if any element is `>= 128`; callers validate ranges first.
    pub fn from_elems<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        let mut bits = 0u128;
        for e in elems {
            assert!(e < MAX_UNIVERSE, "element {e} does not fit in an ElemSet");
            bits |= 1u128 << e;
        }
        ElemSet(bits)
    }

    /// `{0, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_UNIVERSE);
        if n == MAX_UNIVERSE {
            ElemSet(u128::MAX)
        } else {
            ElemSet((1u128 << n) - 1)
        }
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        e < MAX_UNIVERSE && self.0 >> e & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, e: usize) {
        self.0 |= 1u128 << e;
    }

    #[inline]
    pub fn remove(&mut self, e: usize) {
        self.0 &= !(1u128 << e);
    }

    #[inline]
    pub fn union(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest element, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest element, if any.
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> Elems {
        Elems(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Image of the set under `x -> (x + shift) mod n`. All elements must be `< n`.
    pub fn translate(self, shift: usize, n: usize) -> ElemSet {
        ElemSet::from_elems(self.iter().map(|x| (x + shift) % n))
    }

    /// Lexicographic comparison of the ascending element lists.
    pub fn lex_cmp(self, other: ElemSet) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

/// Ascending iterator over the elements of an [`ElemSet`].
pub struct Elems(u128);

impl Iterator for Elems {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elems {}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElemSet::from_elems(iter)
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basics() {
        let s = ElemSet::from_elems([2, 2, 4, 0]);
        assert_eq!(s.to_vec(), vec![0, 2, 4]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.first(), Some(0));
        assert_eq!(s.last(), Some(4));
        assert!(ElemSet::EMPTY.first().is_none());
        assert_eq!(ElemSet::full(128).len(), 128);
        assert_eq!(ElemSet::from_elems([127]).last(), Some(127));
    }

    #[test]
    fn translate_wraps() {
        let a = ElemSet::from_elems([1, 2, 4, 0]);
        assert_eq!(a.translate(1, 7).to_vec(), vec![1, 2, 3, 5]);
    }

    #[test]
    fn lex_order() {
        use std::cmp::Ordering::*;
        let a = ElemSet::from_elems([0, 3]);
        let b = ElemSet::from_elems([0, 2, 4]);
        assert_eq!(a.lex_cmp(b), Greater);
        assert_eq!(ElemSet::EMPTY.lex_cmp(a), Less);
    }

    proptest! {
        #[test]
        fn iter_roundtrip(v in proptest::collection::btree_set(0usize..128, 0..20)) {
            let s: ElemSet = v.iter().copied().collect();
            prop_assert_eq!(s.to_vec(), v.into_iter().collect::<Vec<_>>());
        }
    }
}
