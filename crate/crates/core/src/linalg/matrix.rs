use std::fmt;
use std::ops::{Index, IndexMut};

use super::{Field, LinalgError};

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from a list of rows. All rows must share a length;
    /// an empty list gives a `0 × cols` matrix.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::Shape {
                    expected: format!("row of length {cols}"),
                    got: format!("row of length {}", row.len()),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape {
                expected: format!("{} entries", rows * cols),
                got: format!("{} entries", data.len()),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<Vec<T>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(|c| c.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Matrix product. Zero entries of `self` are skipped, which keeps
    /// products of the sparse operators used throughout the crate cheap.
    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k);
                for (c, b) in orow.iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    let mut t = a.clone();
                    t *= b;
                    out.data[r * other.cols + c] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let mut t = a.clone();
                    t *= b;
                    acc += t;
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &T) -> Matrix<T> {
        let data = self.data.iter().map(|a| a.clone() * s).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// `self · other − other · self`.
    pub fn commutator(&self, other: &Matrix<T>) -> Matrix<T> {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, e: usize) -> Matrix<T> {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut t = T::zero();
        for i in 0..self.rows {
            t += &self[(i, i)];
        }
        t
    }

    /// Copies the block with the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix<T> {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    /// Vertical concatenation.
    pub fn stack(&self, below: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, below.cols);
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Matrix { rows: self.rows + below.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form and the list of pivot columns.
    pub fn rref(&self) -> (Matrix<T>, Vec<usize>) {
        let mut rows = self.clone().into_rows();
        let pivots = rref_in_place(&mut rows, self.cols);
        let m = Matrix::from_rows(rows, self.cols).expect("rows keep their length");
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.clone().into_rows();
        rref_in_place(&mut rows, self.cols).len()
    }

    /// Inverse of a square matrix by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix<T>, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Shape {
                expected: "square matrix".into(),
                got: format!("{}x{}", self.rows, self.cols),
            });
        }
        let n = self.rows;
        let mut rows: Vec<Vec<T>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { T::one() } else { T::zero() }));
                row
            })
            .collect();
        let pivots = rref_in_place(&mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(LinalgError::Singular);
        }
        let data = rows.into_iter().flat_map(|r| r.into_iter().skip(n)).collect();
        Ok(Matrix { rows: n, cols: n, data })
    }

    /// Smallest `l` with `self^(l+1) = 0`, or `None` if no power up to the
    /// dimension vanishes.
    pub fn nilpotency_index(&self) -> Option<usize> {
        assert!(self.is_square());
        let n = self.rows;
        if self.is_zero() {
            return Some(0);
        }
        let mut p = self.clone();
        for l in 1..=n {
            p = p.mul(self);
            if p.is_zero() {
                return Some(l);
            }
        }
        None
    }

    /// Maps every entry through `f`.
    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

/// Gauss–Jordan elimination on a list of rows of width `cols`. The rows are
/// left in reduced row echelon form (nonzero rows first) and the pivot
/// columns are returned in increasing order.
pub(crate) fn rref_in_place<T: Field>(rows: &mut [Vec<T>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = T::one() / rows[r][c].clone();
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (prow, rest) = tail.split_first_mut().expect("pivot row exists");
        for other in head.iter_mut().chain(rest.iter_mut()) {
            if other[c].is_zero() {
                continue;
            }
            let f = other[c].clone();
            for (x, y) in other[c..].iter_mut().zip(&prow[c..]) {
                if y.is_zero() {
                    continue;
                }
                let mut t = f.clone();
                t *= y;
                *x -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}
