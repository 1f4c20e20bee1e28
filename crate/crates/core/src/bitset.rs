//! Fixed-width bit sets over symbol ids.

/// A set of symbols stored as packed 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolSet {
    words: Vec<u64>,
}

impl SymbolSet {
    pub fn new(universe: usize) -> Self {
        SymbolSet { words: vec![0; words_for(universe)] }
    }

    pub fn from_symbols(universe: usize, symbols: &[usize]) -> Self {
        let mut s = Self::new(universe);
        for &x in symbols {
            s.insert(x);
        }
        s
    }

    pub fn insert(&mut self, x: usize) {
        self.words[x / 64] |= 1 << (x % 64);
    }

    pub fn contains(&self, x: usize) -> bool {
        self.words[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &SymbolSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection_len(&self, other: &SymbolSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// Number of elements of `self` missing from `other`.
    pub fn difference_len(&self, other: &SymbolSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & !b).count_ones() as usize).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b)
        })
    }
}

pub(crate) fn words_for(universe: usize) -> usize {
    universe.div_ceil(64).max(1)
}
