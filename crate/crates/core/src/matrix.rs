//! Dense matrices over an exact field.
//!
//! Empty matrices (0 rows or 0 columns) are first-class citizens: dimension
//! vectors with zero entries occur throughout, and the empty linear map has
//! to compose, reduce and invert like any other.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    entries: Vec<K>, // row-major
}

/// Result of Gauss-Jordan reduction: the reduced row echelon form together
/// with its pivot columns and rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref<K> {
    pub matrix: Matrix<K>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl<K: Field> Matrix<K> {
    pub fn new(rows: usize, cols: usize, entries: Vec<K>) -> Self {
        assert_eq!(rows * cols, entries.len(), "entry count must be rows*cols");
        Matrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![K::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = K::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix::new(rows, cols, entries)
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Integer-literal constructor, mostly for tests and fixtures.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Matrix::from_fn(r, c, |i, j| K::from_int(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[K] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[K] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            self[(r, c)].clone() + other[(r, c)].clone()
        })
    }

    pub fn neg(&self) -> Self {
        Matrix::from_fn(self.rows, self.cols, |r, c| -self[(r, c)].clone())
    }

    pub fn scale(&self, k: &K) -> Self {
        Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() * k.clone())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matmul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        Matrix::from_fn(self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self[(r, c)].clone()
            } else {
                other[(r - self.rows, c)].clone()
            }
        })
    }

    pub fn select_rows(&self, sel: &[usize]) -> Self {
        Matrix::from_fn(sel.len(), self.cols, |r, c| self[(sel[r], c)].clone())
    }

    pub fn select_cols(&self, sel: &[usize]) -> Self {
        Matrix::from_fn(self.rows, sel.len(), |r, c| self[(r, sel[c])].clone())
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Matrix::from_fn(r1 - r0, c1 - c0, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    /// Assemble a block matrix from a grid of blocks.
    ///
    /// All blocks in a grid row must share their row count and all blocks in
    /// a grid column must share their column count.
    pub fn block_assemble(grid: &[Vec<Matrix<K>>]) -> Result<Self> {
        if grid.is_empty() {
            return Ok(Matrix::zeros(0, 0));
        }
        let block_cols = grid[0].len();
        for row in grid {
            if row.len() != block_cols {
                return Err(Error::DimensionMismatch("ragged block grid".into()));
            }
        }
        let row_heights: Vec<usize> = grid.iter().map(|row| row.first().map_or(0, Matrix::rows)).collect();
        let col_widths: Vec<usize> = if block_cols == 0 {
            Vec::new()
        } else {
            (0..block_cols).map(|j| grid[0][j].cols()).collect()
        };
        for (i, row) in grid.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if b.rows() != row_heights[i] || b.cols() != col_widths[j] {
                    return Err(Error::DimensionMismatch(format!(
                        "block ({i},{j}) is {}x{}, expected {}x{}",
                        b.rows(),
                        b.cols(),
                        row_heights[i],
                        col_widths[j]
                    )));
                }
            }
        }
        let total_rows: usize = row_heights.iter().sum();
        let total_cols: usize = col_widths.iter().sum();
        let mut out = Matrix::zeros(total_rows, total_cols);
        let mut roff = 0;
        for (i, row) in grid.iter().enumerate() {
            let mut coff = 0;
            for (j, b) in row.iter().enumerate() {
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        out[(roff + r, coff + c)] = b[(r, c)].clone();
                    }
                }
                coff += col_widths[j];
            }
            roff += row_heights[i];
        }
        Ok(out)
    }

    /// Gauss-Jordan reduction to the unique reduced row echelon form.
    pub fn rref(&self) -> Rref<K> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inv().expect("nonzero pivot");
            for c in col..m.cols {
                m[(row, c)] = m[(row, c)].clone() * inv.clone();
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for c in col..m.cols {
                        let delta = factor.clone() * m[(row, c)].clone();
                        m[(r, c)] = m[(r, c)].clone() - delta;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the kernel, as matrix columns in canonical echelon order
    /// (one column per free column of the rref, ascending).
    pub fn kernel_basis(&self) -> Matrix<K> {
        let Rref { matrix: r, pivots, rank } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            out[(fc, j)] = K::one();
            for (i, &pc) in pivots.iter().enumerate().take(rank) {
                out[(pc, j)] = -r[(i, fc)].clone();
            }
        }
        out
    }

    /// Basis of the column space, as matrix columns in canonical form
    /// (the rref row basis of the transpose, transposed back).
    pub fn image_basis(&self) -> Matrix<K> {
        let r = self.transpose().rref();
        r.matrix.submatrix(0, r.rank, 0, self.rows).transpose()
    }

    pub fn invert(&self) -> Result<Matrix<K>> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n)).rref();
        // Invertible iff the left block reduces to the identity, i.e. all
        // pivots land in the first n columns.
        if aug.pivots.len() != n || aug.pivots.iter().any(|&p| p >= n) {
            return Err(Error::SingularMatrix);
        }
        Ok(aug.matrix.submatrix(0, n, n, 2 * n))
    }

    pub fn det(&self) -> K {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = K::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return K::zero();
            };
            if p != col {
                m.swap_rows(col, p);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = det * pivot.clone();
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone() * inv.clone();
                for c in col..n {
                    let delta = factor.clone() * m[(col, c)].clone();
                    m[(r, c)] = m[(r, c)].clone() - delta;
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// A particular solution of `self * x = rhs` (free variables set to 0),
    /// or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix<K>) -> Option<Matrix<K>> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(rhs).rref();
        if aug.pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (i, &p) in aug.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(p, j)] = aug.matrix[(i, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl<K> Index<(usize, usize)> for Matrix<K> {
    type Output = K;
    fn index(&self, (r, c): (usize, usize)) -> &K {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }
}

impl<K> IndexMut<(usize, usize)> for Matrix<K> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut K {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.entries[r * self.cols + c]
    }
}

impl<K: fmt::Debug> fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self
                .entries
                .iter()
                .skip(r * self.cols)
                .take(self.cols)
                .map(|e| format!("{e:?}"))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}
