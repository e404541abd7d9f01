//! Dense edge subsets keyed by a network's canonical edge index.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

const WORD: usize = 64;

/// A subset of the edges `0..universe` of one network.
///
/// Ordering compares the universe size first, then the bitmask read as an
/// unsigned integer (bit `i` has weight `2^i`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeSubset {
    universe: usize,
    words: Vec<u64>,
}

impl EdgeSubset {
    pub fn empty(universe: usize) -> Self {
        Self {
            universe,
            words: vec![0; universe.div_ceil(WORD)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    /// Builds a subset from the low `universe` bits of `mask`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= WORD, "mask form is limited to 64 edges");
        let mut s = Self::empty(universe);
        if let Some(w) = s.words.first_mut() {
            *w = mask;
        }
        s.trim();
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Number of edges of the owning network.
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe, "edge index {i} out of range {}", self.universe);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.universe {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn cardinality(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// The edges of the network not in `self`.
    pub fn complement(&self) -> Self {
        let mut s = Self {
            universe: self.universe,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.trim();
        s
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.universe == other.universe
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// The bitmask, when the universe fits in one machine word.
    pub fn as_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&i| self.contains(i))
    }

    fn trim(&mut self) {
        let rem = self.universe % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl Ord for EdgeSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe
            .cmp(&other.universe)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for EdgeSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for EdgeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.universe)
    }
}

impl fmt::Display for EdgeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// Serialized as the sorted list of member edge indices.
impl Serialize for EdgeSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Deserialization cannot recover the universe from an index list, so the
/// result uses the smallest universe containing every index. Callers that
/// know the network should rebuild with [`EdgeSubset::from_indices`].
impl<'de> Deserialize<'de> for EdgeSubset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let indices = Vec::<usize>::deserialize(deserializer)?;
        let universe = indices.iter().max().map_or(0, |m| m + 1);
        Ok(Self::from_indices(universe, indices))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn complement_stays_inside_universe() {
        let s = EdgeSubset::from_indices(70, [0, 5, 69]);
        let c = s.complement();
        assert_eq!(c.cardinality(), 67);
        assert!(!c.contains(69));
        assert!(!c.contains(70));
        assert_eq!(EdgeSubset::full(70).cardinality(), 70);
        assert!(EdgeSubset::empty(0).is_empty());
    }

    #[test]
    fn order_matches_integer_value() {
        let a = EdgeSubset::from_mask(6, 0b000011);
        let b = EdgeSubset::from_mask(6, 0b000100);
        assert!(a < b);
        let big_low = EdgeSubset::from_indices(100, [0, 1, 2]);
        let big_high = EdgeSubset::from_indices(100, [65]);
        assert!(big_low < big_high);
    }

    #[test]
    fn display_lists_indices() {
        assert_eq!(EdgeSubset::from_indices(8, [3, 1]).to_string(), "{1,3}");
        assert_eq!(serde_json::to_string(&EdgeSubset::from_indices(8, [3, 1])).unwrap(), "[1,3]");
    }

    proptest! {
        #[test]
        fn mask_and_index_forms_agree(mask in 0u64..(1 << 20)) {
            let s = EdgeSubset::from_mask(20, mask);
            let t = EdgeSubset::from_indices(20, (0..20).filter(|i| mask >> i & 1 == 1));
            prop_assert_eq!(&s, &t);
            prop_assert_eq!(s.as_mask(), Some(mask));
            prop_assert_eq!(s.cardinality(), mask.count_ones() as usize);
            prop_assert_eq!(s.complement().as_mask(), Some(!mask & ((1 << 20) - 1)));
            prop_assert!(s.is_subset_of(&EdgeSubset::full(20)));
        }
    }
}
