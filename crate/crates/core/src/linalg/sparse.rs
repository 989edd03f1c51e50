use super::{Field, Matrix, Subspace};

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVec<T> {
    entries: Vec<(usize, T)>,
}

impl<T: Field> SparseVec<T> {
    pub fn from_dense(v: &[T]) -> Self {
        let entries = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
        SparseVec { entries }
    }

    /// From `(index, value)` pairs in any order; zeros are dropped and
    /// repeated indices are summed.
    pub fn from_entries(mut entries: Vec<(usize, T)>) -> Self {
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, T)> = Vec::with_capacity(entries.len());
        for (i, x) in entries {
            match out.last_mut() {
                Some((j, y)) if *j == i => *y += x,
                _ => out.push((i, x)),
            }
        }
        out.retain(|(_, x)| !x.is_zero());
        SparseVec { entries: out }
    }

    pub fn to_dense(&self, len: usize) -> Vec<T> {
        let mut out = vec![T::zero(); len];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, T)] {
        &self.entries
    }

    pub fn leading(&self) -> Option<&(usize, T)> {
        self.entries.first()
    }

    pub fn get(&self, idx: usize) -> Option<&T> {
        self.entries.binary_search_by_key(&idx, |(i, _)| *i).ok().map(|p| &self.entries[p].1)
    }

    pub fn scale(&mut self, s: &T) {
        for (_, x) in self.entries.iter_mut() {
            *x *= s;
        }
    }

    /// `self -= coef · other`.
    pub fn sub_scaled(&mut self, coef: &T, other: &SparseVec<T>) {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, _)), Some((ib, _))) if ia < ib => out.push(a.next().unwrap()),
                (Some((ia, _)), Some((ib, _))) if ia > ib => {
                    let (i, y) = b.next().unwrap();
                    out.push((*i, -(coef.clone() * y)));
                }
                (Some(_), Some(_)) => {
                    let (i, mut x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    x -= coef.clone() * y;
                    if !x.is_zero() {
                        out.push((i, x));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (i, y) = b.next().unwrap();
                    out.push((*i, -(coef.clone() * y)));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }
}

/// Incrementally maintained reduced row echelon basis over sparse rows.
///
/// Rows stay fully reduced after every insertion, so membership is a single
/// pass over the candidate's pivot coordinates.
#[derive(Debug, Clone)]
pub struct SpanBuilder<T> {
    ambient: usize,
    rows: Vec<SparseVec<T>>,
    pivot_row: Vec<Option<usize>>,
}

impl<T: Field> SpanBuilder<T> {
    pub fn new(ambient: usize) -> Self {
        SpanBuilder { ambient, rows: Vec::new(), pivot_row: vec![None; ambient] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn residual(&self, v: &SparseVec<T>) -> SparseVec<T> {
        let mut r = v.clone();
        for (i, coef) in v.entries() {
            if let Some(row) = self.pivot_row[*i] {
                r.sub_scaled(coef, &self.rows[row]);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec<T>) -> bool {
        self.residual(v).is_zero()
    }

    /// Adds `v` to the span. Returns `true` if the dimension grew.
    pub fn insert(&mut self, v: &SparseVec<T>) -> bool {
        let mut r = self.residual(v);
        let Some((p, lead)) = r.leading().cloned() else {
            return false;
        };
        r.scale(&(T::one() / lead));
        for row in self.rows.iter_mut() {
            if let Some(c) = row.get(p).cloned() {
                row.sub_scaled(&c, &r);
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(r);
        true
    }

    /// The canonical basis, rows ordered by pivot.
    pub fn to_subspace(&self) -> Subspace<T> {
        Subspace::span(&self.sorted_rows().iter().map(|r| r.to_dense(self.ambient)).collect::<Vec<_>>(), self.ambient)
    }

    /// Rows ordered by pivot column; together they are in reduced row
    /// echelon form.
    pub fn sorted_rows(&self) -> Vec<SparseVec<T>> {
        self.pivot_row.iter().flatten().map(|&r| self.rows[r].clone()).collect()
    }

    pub fn to_matrix(&self) -> Matrix<T> {
        let rows = self.sorted_rows().iter().map(|r| r.to_dense(self.ambient)).collect();
        Matrix::from_rows(rows, self.ambient).expect("rows keep their length")
    }
}
