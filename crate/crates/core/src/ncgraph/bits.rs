/// Dense symmetric adjacency stored as rows of 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn words_for(n: usize) -> usize {
        n.div_ceil(64)
    }

    pub fn new(n: usize) -> Self {
        let words = Self::words_for(n);
        BitMatrix { n, words, bits: vec![0; n * words] }
    }

    pub(crate) fn from_rows(n: usize, rows: Vec<Vec<u64>>) -> Self {
        let words = Self::words_for(n);
        let bits = rows.into_iter().flatten().collect();
        BitMatrix { n, words, bits }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Sets both `(u, v)` and `(v, u)`.
    pub fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn row_count(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Set positions of row `u`, ascending.
    pub fn ones(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(u))
    }

    /// Positions `v != u` with `(u, v)` unset, ascending.
    pub fn zeros(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n;
        self.row(u).iter().enumerate().flat_map(move |(i, &w)| {
            let valid = n - i * 64;
            let mask = if valid >= 64 { u64::MAX } else { (1u64 << valid) - 1 };
            BitIter { base: i * 64, word: !w & mask }
        })
        .filter(move |&v| v != u)
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| BitIter { base: i * 64, word: w })
}

struct BitIter {
    base: usize,
    word: u64,
}

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let t = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(self.base + t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_and_zeros_partition_the_row() {
        for n in [1, 5, 63, 64, 65, 130] {
            let mut m = BitMatrix::new(n);
            for v in (0..n).step_by(3) {
                if v != 0 {
                    m.set(0, v);
                }
            }
            let ones: Vec<usize> = m.ones(0).collect();
            let zeros: Vec<usize> = m.zeros(0).collect();
            assert_eq!(ones.len() + zeros.len() + 1, n);
            assert!(zeros.iter().all(|&v| v < n && !m.get(0, v)));
            assert_eq!(m.row_count(0), ones.len());
        }
    }
}
