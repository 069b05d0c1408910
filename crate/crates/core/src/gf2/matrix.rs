//! Dense bit-packed matrices over GF(2) and Gaussian elimination.

use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64).max(1);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 bytes; all rows must share one length.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(AlgebraError::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            for (c, &b) in row.iter().enumerate() {
                m.set(r, c, b & 1 == 1);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.words_per_row + c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.words_per_row + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    /// `self · x` over GF(2).
    pub fn apply(&self, x: &[u8]) -> Result<Vec<u8>, AlgebraError> {
        if x.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        let mut packed = vec![0u64; self.words_per_row];
        for (c, &b) in x.iter().enumerate() {
            if b & 1 == 1 {
                packed[c / 64] |= 1 << (c % 64);
            }
        }
        Ok((0..self.rows)
            .map(|r| {
                let ones: u32 = self
                    .row(r)
                    .iter()
                    .zip(&packed)
                    .map(|(a, b)| (a & b).count_ones())
                    .sum();
                (ones & 1) as u8
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.eliminate(None).len()
    }

    /// Reduced row echelon form in place, carrying `rhs` along. Returns the
    /// pivot column of each of the leading rows.
    fn eliminate(&mut self, mut rhs: Option<&mut Vec<u8>>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let wpr = self.words_per_row;
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            if p != row {
                for w in 0..wpr {
                    self.data.swap(p * wpr + w, row * wpr + w);
                }
                if let Some(rhs) = rhs.as_deref_mut() {
                    rhs.swap(p, row);
                }
            }
            let pivot_row: Vec<u64> = self.row(row).to_vec();
            for r in 0..self.rows {
                if r != row && self.get(r, col) {
                    for (w, pw) in pivot_row.iter().enumerate() {
                        self.data[r * wpr + w] ^= pw;
                    }
                    if let Some(rhs) = rhs.as_deref_mut() {
                        rhs[r] ^= rhs[row];
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }
}

/// Outcome of a consistent solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    /// The solution with every free variable set to 0.
    pub x: Vec<u8>,
    pub rank: usize,
}

impl LinearSolution {
    pub fn is_unique(&self, cols: usize) -> bool {
        self.rank == cols
    }
}

/// Solves `m · x = rhs` over GF(2).
///
/// A rank-deficient but consistent system is not an error: free variables
/// are set to 0 and the rank is reported alongside the solution.
pub fn solve_linear(m: &BitMatrix, rhs: &[u8]) -> Result<LinearSolution, AlgebraError> {
    if rhs.len() != m.rows() {
        return Err(AlgebraError::DimensionMismatch {
            expected: m.rows(),
            got: rhs.len(),
        });
    }
    let mut work = m.clone();
    let mut b: Vec<u8> = rhs.iter().map(|v| v & 1).collect();
    let pivots = work.eliminate(Some(&mut b));
    let rank = pivots.len();
    if b[rank..].contains(&1) {
        return Err(AlgebraError::Inconsistent { rank });
    }
    let mut x = vec![0u8; m.cols()];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = b[r];
    }
    Ok(LinearSolution { x, rank })
}
