//! Dense matrices over F2 with rows packed into `u64` words.

use crate::bits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<Vec<u64>>,
}

impl BitMatrix {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    /// Appends a row given by the indices of its set columns.
    pub fn push_row<I: IntoIterator<Item = usize>>(&mut self, ones: I) {
        let mut row = vec![0u64; bits::words_for(self.cols)];
        for c in ones {
            assert!(c < self.cols, "column {c} out of range");
            bits::flip(&mut row, c);
        }
        self.rows.push(row);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        bits::get(&self.rows[r], c)
    }

    /// Submatrix keeping only the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::new(cols.len());
        for r in 0..self.rows() {
            out.push_row(
                cols.iter()
                    .enumerate()
                    .filter(|(_, &c)| self.get(r, c))
                    .map(|(i, _)| i),
            );
        }
        out
    }

    /// Row rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let w = col / bits::WORD;
            let mask = 1u64 << (col % bits::WORD);
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & mask != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] & mask != 0 {
                    for (a, b) in row.iter_mut().zip(&pivot_row) {
                        *a ^= b;
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
