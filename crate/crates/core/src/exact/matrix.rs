//! Dense exact matrices over ℚ(i).
//!
//! Elimination is plain field elimination; the pivot in each column is the first
//! nonzero entry at or below the current row, so reduced forms are reproducible.

use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};

use super::gq::Gq;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Gq>, // row-major, length rows * cols
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Outcome of [`Matrix::solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// `m * particular = rhs`; every column of `m * k` vanishes for `k` in `kernel`.
    Consistent {
        particular: Matrix,
        kernel: Vec<Vec<Gq>>,
    },
    /// A row vector `y` with `y * m = 0` and `y * rhs != 0`.
    Infeasible { witness: Vec<Gq> },
}

impl Solution {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Solution::Consistent { .. })
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Gq::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Gq::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Gq>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows. All rows must share a length; `cols` is used when there are no rows.
    pub fn from_rows(rows: Vec<Vec<Gq>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (k, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {k} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            entries.extend(r);
        }
        Ok(Matrix {
            rows: n,
            cols,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Gq) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn column(v: Vec<Gq>) -> Self {
        let n = v.len();
        Matrix {
            rows: n,
            cols: 1,
            entries: v,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Gq] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Gq] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Gq>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vec(&self, j: usize) -> Vec<Gq> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj_transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "stacking {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form; only the first `limit` columns are eligible as pivots.
    fn rref_limited(&self, limit: usize) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit.min(m.cols) {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            let pivot_row: Vec<Gq> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !pivot_row[j].is_zero() {
                        let d = &f * &pivot_row[j];
                        m[(i, j)] -= &d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            reduced: m,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rref(&self) -> Rref {
        self.rref_limited(self.cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Gq>> {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        kernel_from_rref(&reduced, &pivots, self.cols)
    }

    /// Solves `self * x = rhs` exactly.
    pub fn solve(&self, rhs: &Matrix) -> Result<Solution> {
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} rows but right-hand side has {}",
                self.rows, rhs.rows
            )));
        }
        let (n, k, m) = (self.cols, rhs.cols, self.rows);
        // [A | B | I]; the identity block records the row operations
        let aug = Matrix::from_fn(m, n + k + m, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j < n + k {
                rhs[(i, j - n)].clone()
            } else if j - n - k == i {
                Gq::one()
            } else {
                Gq::zero()
            }
        });
        let Rref {
            reduced, pivots, ..
        } = aug.rref_limited(n + k);
        if let Some(row) = pivots.iter().position(|&c| c >= n) {
            let witness = reduced.row(row)[n + k..].to_vec();
            return Ok(Solution::Infeasible { witness });
        }
        let mut particular = Matrix::zeros(n, k);
        for (row, &c) in pivots.iter().enumerate() {
            for j in 0..k {
                particular[(c, j)] = reduced[(row, n + j)].clone();
            }
        }
        let kernel = kernel_from_rref(&reduced, &pivots, n);
        Ok(Solution::Consistent { particular, kernel })
    }

    /// Exact determinant by elimination with row swaps.
    pub fn det(&self) -> Result<Gq> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Gq::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Gq::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("pivot is nonzero");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    if !m[(c, j)].is_zero() {
                        let d = &f * &m[(c, j)];
                        m[(i, j)] -= &d;
                    }
                }
            }
        }
        Ok(det)
    }
}

fn kernel_from_rref(reduced: &Matrix, pivots: &[usize], n: usize) -> Vec<Vec<Gq>> {
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Gq::zero(); n];
            v[f] = Gq::one();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = -&reduced[(row, f)];
            }
            v
        })
        .collect()
}

/// Free-function form of [`Matrix::rref`].
pub fn mat_rref(m: &Matrix) -> Rref {
    m.rref()
}

pub fn mat_solve(m: &Matrix, rhs: &Matrix) -> Result<Solution> {
    m.solve(rhs)
}

pub fn mat_det(m: &Matrix) -> Result<Gq> {
    m.det()
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Gq;
    fn index(&self, (i, j): (usize, usize)) -> &Gq {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Gq {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("dimension mismatch")
    }
}

/// One row per line, entries separated by single spaces.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", line.join(", "))?;
        }
        write!(f, "]")
    }
}
