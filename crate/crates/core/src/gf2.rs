//! Dense linear algebra over GF(2) on bit-packed rows.
//!
//! Only what ideal-membership tests need: incremental row reduction and a
//! span-membership query. Matrices here are tiny (one row per monomial of a
//! fixed degree), so there is no attempt at blocking or transposition tricks.

/// A vector over GF(2), packed 64 coordinates per word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let (w, b) = (i / 64, i % 64);
        if value {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    fn leading_bit(&self) -> Option<usize> {
        for (w, &word) in self.words.iter().enumerate() {
            if word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
        }
        None
    }
}

/// Row space of a set of GF(2) vectors, kept in row-echelon form.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    // rows[i] has a unique pivot column, strictly increasing in i
    rows: Vec<(usize, BitVec)>,
}

impl RowSpace {
    pub fn new() -> Self {
        RowSpace::default()
    }

    /// Reduce `v` against the current rows and return the remainder.
    fn reduce(&self, mut v: BitVec) -> BitVec {
        for (pivot, row) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign(row);
            }
        }
        v
    }

    /// Insert `v` into the span. Returns false if it was already contained.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let reduced = self.reduce(v);
        match reduced.leading_bit() {
            None => false,
            Some(pivot) => {
                let pos = self
                    .rows
                    .partition_point(|(p, _)| *p < pivot);
                self.rows.insert(pos, (pivot, reduced));
                true
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(bits: &[u8]) -> BitVec {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b == 1);
        }
        v
    }

    #[test]
    fn span_membership() {
        let mut space = RowSpace::new();
        assert!(space.insert(bv(&[1, 1, 0])));
        assert!(space.insert(bv(&[0, 1, 1])));
        // sum of the two rows
        assert!(space.contains(&bv(&[1, 0, 1])));
        assert!(!space.contains(&bv(&[0, 0, 1])));
        assert!(!space.insert(bv(&[1, 0, 1])));
    }

    #[test]
    fn zero_vector_is_always_contained() {
        let space = RowSpace::new();
        assert!(space.contains(&BitVec::zeros(5)));
    }

    #[test]
    fn wide_rows_cross_word_boundary() {
        let mut space = RowSpace::new();
        let mut v = BitVec::zeros(130);
        v.set(129, true);
        assert!(space.insert(v.clone()));
        assert!(space.contains(&v));
    }
}
