//! Dense exact linear algebra over prime fields GF(p): rank, kernel
//! dimension, product and power. Matrix sides stay small here (a few
//! hundred at most), so plain O(k^3) elimination with deterministic
//! pivoting is ample.

use crate::arith::{mod_mul, mod_pow};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixGFp {
    p: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u64>, // row-major, entries < p
}

impl MatrixGFp {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> MatrixGFp {
        MatrixGFp { p, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, k: usize) -> MatrixGFp {
        let mut m = Self::zeros(p, k, k);
        for i in 0..k {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_entries(p: u64, rows: usize, cols: usize, entries: Vec<u64>) -> Result<MatrixGFp> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|e| e % p).collect();
        Ok(MatrixGFp { p, rows, cols, entries })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> MatrixGFp {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Row rank by fraction-free elimination. Pivots are chosen
    /// deterministically: columns left to right, first nonzero row below the
    /// current pivot row.
    pub fn rank(&self) -> usize {
        let p = self.p;
        let mut m = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let pivot = (rank..rows).find(|&r| m[r * cols + col] != 0);
            let Some(pr) = pivot else { continue };
            if pr != rank {
                for c in 0..cols {
                    m.swap(pr * cols + c, rank * cols + c);
                }
            }
            let inv = mod_pow(m[rank * cols + col], (p - 2) as u128, p);
            for r in (rank + 1)..rows {
                let factor = m[r * cols + col];
                if factor == 0 {
                    continue;
                }
                let scale = mod_mul(factor, inv, p);
                for c in col..cols {
                    let sub = mod_mul(scale, m[rank * cols + c], p);
                    m[r * cols + c] = (m[r * cols + c] + p - sub) % p;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn mul(&self, other: &MatrixGFp) -> MatrixGFp {
        assert_eq!(self.p, other.p, "mixed moduli");
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let p = self.p;
        let mut out = Self::zeros(p, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let add = mod_mul(a, other.get(k, c), p);
                    let e = out.get(r, c);
                    out.set(r, c, (e + add) % p);
                }
            }
        }
        out
    }

    /// M^k by repeated squaring; M^0 is the identity.
    pub fn pow(&self, mut k: u64) -> Result<MatrixGFp> {
        if self.rows != self.cols {
            return Err(Error::InvalidInput(format!(
                "power of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut acc = Self::identity(self.p, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_basics() {
        assert_eq!(MatrixGFp::identity(5, 4).rank(), 4);
        assert_eq!(MatrixGFp::zeros(3, 3, 5).rank(), 0);
        let m = MatrixGFp::from_entries(2, 2, 2, vec![1, 1, 1, 1]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel_dim(), 1);
    }

    #[test]
    fn rank_equals_transpose_rank() {
        let m = MatrixGFp::from_entries(7, 3, 4, vec![1, 2, 3, 4, 2, 4, 6, 1, 0, 0, 0, 5]).unwrap();
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn powers() {
        let nil = MatrixGFp::from_entries(3, 2, 2, vec![0, 1, 0, 0]).unwrap();
        assert!(nil.pow(2).unwrap().is_zero());
        assert_eq!(nil.pow(0).unwrap(), MatrixGFp::identity(3, 2));
        // permutation matrix of order 3
        let perm =
            MatrixGFp::from_entries(5, 3, 3, vec![0, 1, 0, 0, 0, 1, 1, 0, 0]).unwrap();
        assert_eq!(perm.pow(3).unwrap(), MatrixGFp::identity(5, 3));
        let rect = MatrixGFp::zeros(2, 2, 3);
        assert!(matches!(rect.pow(2), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn product_rank_bound() {
        let a = MatrixGFp::from_entries(3, 2, 3, vec![1, 0, 2, 0, 1, 1]).unwrap();
        let b = MatrixGFp::from_entries(3, 3, 2, vec![1, 1, 0, 2, 1, 0]).unwrap();
        let ab = a.mul(&b);
        assert!(ab.rank() <= a.rank().min(b.rank()));
    }
}
