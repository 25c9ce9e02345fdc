//! Minimal fixed-width bit rows used for adjacency storage.

/// A packed matrix of `n` rows of `n` bits each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    n: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        BitMatrix {
            n,
            words_per_row,
            words: vec![0; n * words_per_row],
        }
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        debug_assert!(row < self.n && col < self.n);
        let w = self.words[row * self.words_per_row + (col >> 6)];
        (w >> (col & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize) {
        debug_assert!(row < self.n && col < self.n);
        self.words[row * self.words_per_row + (col >> 6)] |= 1 << (col & 63);
    }

    pub fn row(&self, row: usize) -> &[u64] {
        &self.words[row * self.words_per_row..(row + 1) * self.words_per_row]
    }

    /// Number of set bits in `row` restricted to the mask rows given as words.
    pub fn row_intersection_count(&self, row: usize, mask: &[u64]) -> usize {
        self.row(row)
            .iter()
            .zip(mask)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn row_count(&self, row: usize) -> usize {
        self.row(row).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_row(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        let words = self.row(row);
        words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            let base = wi * 64;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(base + b)
                }
            })
        })
    }
}

/// A set of vertices packed into 64-bit words.
pub(crate) fn word_mask(members: impl IntoIterator<Item = usize>, n: usize) -> Vec<u64> {
    let mut mask = vec![0u64; n.div_ceil(64)];
    for v in members {
        debug_assert!(v < n);
        mask[v >> 6] |= 1 << (v & 63);
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_and_iterate() {
        let mut m = BitMatrix::new(130);
        m.set(0, 5);
        m.set(0, 64);
        m.set(0, 129);
        m.set(129, 0);
        assert!(m.get(0, 5) && m.get(0, 64) && m.get(0, 129));
        assert!(!m.get(0, 6));
        assert_eq!(m.iter_row(0).collect::<Vec<_>>(), vec![5, 64, 129]);
        assert_eq!(m.row_count(0), 3);
        let mask = word_mask([5, 129], 130);
        assert_eq!(m.row_intersection_count(0, &mask), 2);
    }
}
