//! Fixed-width bitsets over vertex and edge ids of one graph.

use std::fmt;

macro_rules! bitset {
    ($name:ident, $word:ty, $bits:expr, $doc:expr) => {
        #[doc = $doc]
        #[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
        pub struct $name(pub $word);

        impl $name {
            pub const CAPACITY: usize = $bits;

            pub const fn empty() -> Self {
                Self(0)
            }

            /// The set `{0, .., count-1}`.
            pub fn full(count: usize) -> Self {
                debug_assert!(count <= $bits);
                if count == $bits {
                    Self(<$word>::MAX)
                } else {
                    Self(((1 as $word) << count) - 1)
                }
            }

            pub fn singleton(i: usize) -> Self {
                Self((1 as $word) << i)
            }

            #[inline]
            pub fn contains(self, i: usize) -> bool {
                i < $bits && (self.0 >> i) & 1 == 1
            }

            #[inline]
            pub fn insert(&mut self, i: usize) {
                self.0 |= (1 as $word) << i;
            }

            #[inline]
            pub fn remove(&mut self, i: usize) {
                self.0 &= !((1 as $word) << i);
            }

            #[inline]
            pub fn with(self, i: usize) -> Self {
                Self(self.0 | ((1 as $word) << i))
            }

            #[inline]
            pub fn without(self, i: usize) -> Self {
                Self(self.0 & !((1 as $word) << i))
            }

            #[inline]
            pub fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            #[inline]
            pub fn is_empty(self) -> bool {
                self.0 == 0
            }

            #[inline]
            pub fn union(self, other: Self) -> Self {
                Self(self.0 | other.0)
            }

            #[inline]
            pub fn intersection(self, other: Self) -> Self {
                Self(self.0 & other.0)
            }

            #[inline]
            pub fn difference(self, other: Self) -> Self {
                Self(self.0 & !other.0)
            }

            #[inline]
            pub fn is_subset(self, other: Self) -> bool {
                self.0 & !other.0 == 0
            }

            #[inline]
            pub fn is_disjoint(self, other: Self) -> bool {
                self.0 & other.0 == 0
            }

            /// Smallest member, if any.
            #[inline]
            pub fn first(self) -> Option<usize> {
                if self.0 == 0 {
                    None
                } else {
                    Some(self.0.trailing_zeros() as usize)
                }
            }

            pub fn iter(self) -> impl Iterator<Item = usize> {
                let mut rest = self.0;
                std::iter::from_fn(move || {
                    if rest == 0 {
                        None
                    } else {
                        let i = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        Some(i)
                    }
                })
            }

            /// All subsets of `self`, starting with the empty set.
            pub fn subsets(self) -> impl Iterator<Item = Self> {
                let mask = self.0;
                let mut next: Option<$word> = Some(0);
                std::iter::from_fn(move || {
                    let cur = next?;
                    next = if cur == mask {
                        None
                    } else {
                        Some((cur.wrapping_sub(mask)) & mask)
                    };
                    Some(Self(cur))
                })
            }
        }

        impl FromIterator<usize> for $name {
            fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
                let mut s = Self::empty();
                for i in iter {
                    s.insert(i);
                }
                s
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_set().entries(self.iter()).finish()
            }
        }
    };
}

bitset!(
    VertexSet,
    u64,
    64,
    "Set of vertex ids, at most 64 vertices."
);
bitset!(EdgeSet, u128, 128, "Set of edge ids, at most 128 edges.");

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_all() {
        let s: VertexSet = [1, 3, 4].into_iter().collect();
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|t| t.is_subset(s)));
        assert_eq!(all[0], VertexSet::empty());
    }

    #[test]
    fn full_sets() {
        assert_eq!(VertexSet::full(64).len(), 64);
        assert_eq!(EdgeSet::full(128).len(), 128);
        assert_eq!(EdgeSet::full(3).iter().collect::<Vec<_>>(), vec![0, 1, 2]);
    }
}
