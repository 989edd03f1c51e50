use super::matrix::rref_in_place;
use super::{Field, LinalgError, Matrix};

/// A subspace of `T^ambient`, stored as the reduced row echelon basis of
/// its row space. Two subspaces are equal exactly when their bases are
/// identical grids.
#[derive(Clone, PartialEq)]
pub struct Subspace<T> {
    ambient: usize,
    basis: Matrix<T>,
    pivots: Vec<usize>,
}

impl<T: Field> Subspace<T> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    pub fn row_space(m: &Matrix<T>) -> Self {
        Self::from_rows_vec(m.clone().into_rows(), m.cols())
    }

    /// Span of the given vectors, each of length `ambient`.
    pub fn span(vectors: &[Vec<T>], ambient: usize) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length differs from ambient");
        Self::from_rows_vec(vectors.to_vec(), ambient)
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(indices: impl IntoIterator<Item = usize>, ambient: usize) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        let basis = Matrix::from_fn(idx.len(), ambient, |r, c| if idx[r] == c { T::one() } else { T::zero() });
        Subspace { ambient, basis, pivots: idx }
    }

    fn from_rows_vec(mut rows: Vec<Vec<T>>, ambient: usize) -> Self {
        let pivots = rref_in_place(&mut rows, ambient);
        rows.truncate(pivots.len());
        let basis = Matrix::from_rows(rows, ambient).expect("rows keep their length");
        Subspace { ambient, basis, pivots }
    }

    /// Null space of `m` as a subspace of `T^(m.cols)`.
    pub fn kernel_of(m: &Matrix<T>) -> Self {
        let cols = m.cols();
        let mut rows = m.clone().into_rows();
        let pivots = rref_in_place(&mut rows, cols);
        let mut is_pivot = vec![false; cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
        let vectors: Vec<Vec<T>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![T::zero(); cols];
                v[f] = T::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -rows[r][f].clone();
                }
                v
            })
            .collect();
        Self::from_rows_vec(vectors, cols)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// The reduced row echelon basis, one vector per row.
    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<T>> {
        self.basis.clone().into_rows()
    }

    fn check_ambient(&self, other: &Self) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    /// `v` minus its projection along the pivot coordinates; zero exactly
    /// when `v` lies in the subspace.
    pub fn residual(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.ambient);
        let mut r = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let coef = v[p].clone();
            for (x, b) in r.iter_mut().zip(self.basis.row(row)) {
                if b.is_zero() {
                    continue;
                }
                let mut t = coef.clone();
                t *= b;
                *x -= t;
            }
        }
        r
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.residual(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_subspace(&self, other: &Self) -> Result<bool, LinalgError> {
        self.check_ambient(other)?;
        Ok(other.dim() <= self.dim() && (0..other.dim()).all(|r| self.contains(other.basis.row(r))))
    }

    pub fn join(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        if other.is_zero() || self.is_full() {
            return Ok(self.clone());
        }
        if self.is_zero() || other.is_full() {
            return Ok(other.clone());
        }
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Ok(Self::from_rows_vec(rows, self.ambient))
    }

    /// Annihilator with respect to the standard dot product.
    pub fn annihilator(&self) -> Self {
        Self::kernel_of(&self.basis)
    }

    pub fn meet(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        let constraints = self.annihilator().basis.stack(&other.annihilator().basis);
        Ok(Self::kernel_of(&constraints))
    }

    /// `{v : m v ∈ self}` for `m` with `self.ambient_dim()` rows.
    pub fn preimage_under(&self, m: &Matrix<T>) -> Result<Self, LinalgError> {
        if m.rows() != self.ambient {
            return Err(LinalgError::AmbientMismatch { left: m.rows(), right: self.ambient });
        }
        if self.is_full() {
            return Ok(Self::full(m.cols()));
        }
        let constraints = self.annihilator().basis.mul(m);
        Ok(Self::kernel_of(&constraints))
    }

    /// The image `m(self)` for `m` with `self.ambient_dim()` columns.
    pub fn image_under(&self, m: &Matrix<T>) -> Result<Self, LinalgError> {
        if m.cols() != self.ambient {
            return Err(LinalgError::AmbientMismatch { left: m.cols(), right: self.ambient });
        }
        let images: Vec<Vec<T>> = (0..self.dim()).map(|r| m.mul_vec(self.basis.row(r))).collect();
        Ok(Self::from_rows_vec(images, m.rows()))
    }

    /// Image under the coordinate projection onto `indices`, as a subspace
    /// of `T^(indices.len())`.
    pub fn project_coordinates(&self, indices: &[usize]) -> Self {
        let rows: Vec<Vec<T>> =
            (0..self.dim()).map(|r| indices.iter().map(|&c| self.basis[(r, c)].clone()).collect()).collect();
        Self::from_rows_vec(rows, indices.len())
    }

    /// The vectors of `self` supported on `indices`, written in those
    /// coordinates.
    pub fn intersect_coordinates(&self, indices: &[usize]) -> Self {
        let mut inside = vec![false; self.ambient];
        for &i in indices {
            inside[i] = true;
        }
        let outside: Vec<usize> = (0..self.ambient).filter(|&c| !inside[c]).collect();
        // c · B vanishes off `indices` exactly when c ∈ ker (B_outside)ᵀ
        let constraint = Matrix::from_fn(outside.len(), self.dim(), |r, c| self.basis[(c, outside[r])].clone());
        let coeffs = Self::kernel_of(&constraint);
        let rows: Vec<Vec<T>> = (0..coeffs.dim())
            .map(|r| {
                indices
                    .iter()
                    .map(|&col| {
                        let mut acc = T::zero();
                        for (k, c) in coeffs.basis.row(r).iter().enumerate() {
                            if !c.is_zero() {
                                acc += c.clone() * &self.basis[(k, col)];
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Self::from_rows_vec(rows, indices.len())
    }
}

impl<T: std::fmt::Debug> std::fmt::Debug for Subspace<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.pivots.len(), self.ambient, self.basis)
    }
}
