//! Dense matrices over F2 with bit-packed rows.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u64>>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(WORD);
        BitMatrix {
            rows,
            cols,
            data: vec![vec![0; words]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v & 1 == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i][j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i][j / WORD];
        let bit = 1u64 << (j % WORD);
        if v {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.data[i][j / WORD] ^= 1u64 << (j % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|&w| w == 0))
    }

    /// `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in F2 product");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for (o, x) in out.data[i].iter_mut().zip(&other.data[k]) {
                        *o ^= x;
                    }
                }
            }
        }
        out
    }

    /// Appends `v` (length `cols`) as a new row.
    pub fn push_row(&mut self, v: &[bool]) {
        assert_eq!(v.len(), self.cols);
        let mut row = vec![0u64; self.cols.div_ceil(WORD)];
        for (j, &b) in v.iter().enumerate() {
            if b {
                row[j / WORD] |= 1u64 << (j % WORD);
            }
        }
        self.data.push(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Rank by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let (w, bit) = (col / WORD, 1u64 << (col % WORD));
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] & bit != 0 {
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }
}

/// Rank of a binary matrix over F2.
pub fn matrix_rank_f2(m: &BitMatrix) -> usize {
    m.rank()
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let s: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_ranks() {
        assert_eq!(matrix_rank_f2(&BitMatrix::identity(3)), 3);
        assert_eq!(matrix_rank_f2(&BitMatrix::zeros(2, 4)), 0);
        assert_eq!(
            matrix_rank_f2(&BitMatrix::from_rows(&[vec![1, 1], vec![1, 1]])),
            1
        );
        assert_eq!(
            matrix_rank_f2(&BitMatrix::from_rows(&[
                vec![1, 1, 0],
                vec![0, 1, 1],
                vec![1, 0, 1]
            ])),
            2
        );
    }

    #[test]
    fn wide_rows_cross_word_boundary() {
        let mut m = BitMatrix::zeros(3, 200);
        m.set(0, 63, true);
        m.set(1, 64, true);
        m.set(2, 63, true);
        m.set(2, 64, true);
        assert_eq!(m.rank(), 2);
        assert!(m.get(1, 64) && !m.get(1, 63));
    }

    fn matrix() -> impl Strategy<Value = BitMatrix> {
        (1usize..8, 1usize..8).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(0u8..2, c), r)
                .prop_map(|rows| BitMatrix::from_rows(&rows))
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(m in matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert!(m.rank() <= m.rows().min(m.cols()));
        }
    }
}
