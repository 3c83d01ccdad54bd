use alloc::vec;
use alloc::vec::Vec;

/// Fixed-capacity bitset over voter indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VoterSet {
    len: usize,
    words: Vec<u64>,
}

impl VoterSet {
    pub fn empty(len: usize) -> Self {
        VoterSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// Number of voters the set ranges over (not the number of members).
    pub fn capacity(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "voter {i} out of range {}", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }

    /// The set as a single machine word, when it ranges over at most 64 voters.
    pub fn as_u64(&self) -> Option<u64> {
        match self.words.as_slice() {
            [] => Some(0),
            [w] => Some(*w),
            _ => None,
        }
    }
}
