//! Dense matrices over `F_l`.

use std::fmt;

use crate::coefficients::Prime;
use crate::error::{AlgebraError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    prime: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zero(prime: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix {
            prime,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Builds a matrix from rows of equal length; entries are reduced mod `l`.
    pub fn from_rows(prime: Prime, rows: &[Vec<u32>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(prime, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x % self.prime.value();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let p = self.prime;
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            let inv = p.inverse(m.get(rank, col));
            for j in col..self.cols {
                let x = p.mul(m.get(rank, j), inv);
                m.set(rank, j, x);
            }
            for r in 0..self.rows {
                let factor = m.get(r, col);
                if r == rank || factor == 0 {
                    continue;
                }
                for j in col..self.cols {
                    let x = p.add(m.get(r, j), p.neg(p.mul(factor, m.get(rank, j))));
                    m.set(r, j, x);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> Result<bool> {
        if self.rows != self.cols {
            return Err(AlgebraError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rank() == self.rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Whether a square matrix is invertible; non-square input is an error.
pub fn matrix_invertible(m: &FpMatrix) -> Result<bool> {
    m.is_invertible()
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_invertibility() {
        let p = Prime::THREE;
        let id = FpMatrix::from_rows(p, &[vec![1, 0], vec![0, 1]]);
        assert_eq!(matrix_invertible(&id), Ok(true));
        let singular = FpMatrix::from_rows(p, &[vec![1, 2], vec![2, 1]]);
        // 1*1 - 2*2 = -3 = 0 mod 3
        assert_eq!(singular.rank(), 1);
        assert_eq!(matrix_invertible(&singular), Ok(false));
        let wide = FpMatrix::from_rows(p, &[vec![1, 0, 0]]);
        assert_eq!(
            matrix_invertible(&wide),
            Err(AlgebraError::NonSquare { rows: 1, cols: 3 })
        );
        assert_eq!(matrix_invertible(&FpMatrix::zero(p, 0, 0)), Ok(true));
    }
}
