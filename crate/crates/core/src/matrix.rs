//! Dense n x n matrices over QuadExt, with exact inversion.

use std::fmt;

use num::BigInt;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactfield::{QuadExt, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    n: usize,
    // row-major
    entries: Vec<QuadExt>,
}

impl Mat {
    pub fn zero(n: usize) -> Self {
        Mat { n, entries: vec![QuadExt::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, QuadExt::one());
        }
        m
    }

    /// The matrix with 1 on the second diagonal and 0 elsewhere.
    pub fn second_diagonal(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, n - 1 - i, QuadExt::one());
        }
        m
    }

    pub fn diagonal(entries: Vec<QuadExt>) -> Self {
        let n = entries.len();
        let mut m = Self::zero(n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<QuadExt>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "ragged rows");
        Mat { n, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| QuadExt::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &QuadExt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: QuadExt) {
        self.entries[i * self.n + j] = v;
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn diagonal_entries(&self) -> Vec<QuadExt> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = QuadExt::zero();
                for k in 0..n {
                    if self.get(i, k).is_zero() || other.get(k, j).is_zero() {
                        continue;
                    }
                    acc = acc.checked_add(&self.get(i, k).checked_mul(other.get(k, j))?)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Entrywise quadratic conjugation.
    pub fn conj(&self) -> Mat {
        Mat { n: self.n, entries: self.entries.iter().map(|e| e.conj()).collect() }
    }

    pub fn scale(&self, k: &QuadExt) -> Result<Mat> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(e.checked_mul(k)?);
        }
        Ok(Mat { n: self.n, entries })
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Mat> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot_row != col {
                a.swap_rows(pivot_row, col);
                inv.swap_rows(pivot_row, col);
            }
            let pivot_inv = a.get(col, col).inv()?;
            for j in 0..n {
                a.set(col, j, a.get(col, j).checked_mul(&pivot_inv)?);
                inv.set(col, j, inv.get(col, j).checked_mul(&pivot_inv)?);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let av = a.get(r, j).checked_sub(&factor.checked_mul(a.get(col, j))?)?;
                    a.set(r, j, av);
                    let iv = inv.get(r, j).checked_sub(&factor.checked_mul(inv.get(col, j))?)?;
                    inv.set(r, j, iv);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.n {
            self.entries.swap(r1 * self.n + j, r2 * self.n + j);
        }
    }

    /// Row-permuted copy: row i of the result is row perm[i] of self.
    pub fn permute_rows(&self, perm: &[usize]) -> Mat {
        let mut out = Mat::zero(self.n);
        for (i, &src) in perm.iter().enumerate() {
            for j in 0..self.n {
                out.set(i, j, self.get(src, j).clone());
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!((0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_json()).collect::<Vec<_>>())
            .collect::<Vec<_>>())
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Helper for building rational matrix entries.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
