use alloc::vec::Vec;

/// Voter subsets of `0..n` with at least `min_size` members, as bitmasks.
///
/// Larger subsets come first; subsets of equal size come in lexicographic
/// order of their sorted member lists (`{0,1} < {0,2} < {1,2}`).
pub struct SubsetsByPopcount {
    n: usize,
    min_size: usize,
    size: usize,
    combo: Vec<usize>,
    done: bool,
}

impl SubsetsByPopcount {
    /// `n` must be below 64.
    pub fn new(n: usize, min_size: usize) -> Self {
        assert!(n < 64, "subset enumeration supports n < 64");
        SubsetsByPopcount {
            n,
            min_size,
            size: n,
            combo: (0..n).collect(),
            done: min_size > n,
        }
    }

    fn advance(&mut self) {
        let (n, k) = (self.n, self.size);
        // rightmost position that can still move right
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if self.combo[pos] < n - k + pos {
                self.combo[pos] += 1;
                for q in pos + 1..k {
                    self.combo[q] = self.combo[q - 1] + 1;
                }
                return;
            }
        }
        if self.size == self.min_size {
            self.done = true;
        } else {
            self.size -= 1;
            self.combo = (0..self.size).collect();
        }
    }
}

impl Iterator for SubsetsByPopcount {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let mask = self.combo.iter().fold(0u64, |m, &i| m | (1 << i));
        self.advance();
        Some(mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn order_for_three_voters() {
        let got: Vec<u64> = SubsetsByPopcount::new(3, 1).collect();
        assert_eq!(got, vec![0b111, 0b011, 0b101, 0b110, 0b001, 0b010, 0b100]);
    }

    #[test]
    fn includes_empty_set_when_allowed() {
        let got: Vec<u64> = SubsetsByPopcount::new(2, 0).collect();
        assert_eq!(got, vec![0b11, 0b01, 0b10, 0b00]);
        assert_eq!(SubsetsByPopcount::new(0, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(SubsetsByPopcount::new(2, 3).count(), 0);
    }

    #[test]
    fn counts_match_binomials() {
        // sum_{k>=2} C(6,k) = 64 - 1 - 6
        assert_eq!(SubsetsByPopcount::new(6, 2).count(), 57);
    }
}
