//! Nilpotent operators and their centered weight filtrations.
//!
//! For a nilpotent `N` with `N^l ≠ 0 = N^(l+1)` the weight filtration
//! centered at `l` is
//!
//! ```text
//! W_k = Σ_{i ≥ 0, j ≤ 0, i + j + l = k}  ker N^(i+1) ∩ im N^(−j)
//! ```
//!
//! with `W_k = 0` for `k < 0` and `W_k = V` for `k ≥ 2l`.

use serde_json::json;

use crate::linalg::{Field, LinalgError, Matrix, Subspace};
use crate::report::CheckResult;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FiltrationError {
    #[error("operator is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("operator is not nilpotent: N^{dim} ≠ 0 on a space of dimension {dim}")]
    NotNilpotent { dim: usize },
    #[error("weight filtration requested at center {requested}, but the nilpotency index is {index}")]
    CenterMismatch { requested: usize, index: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A square matrix with some vanishing power.
#[derive(Debug, Clone, PartialEq)]
pub struct NilpotentOperator<T> {
    matrix: Matrix<T>,
    index: usize,
}

impl<T: Field> NilpotentOperator<T> {
    pub fn new(matrix: Matrix<T>) -> Result<Self, FiltrationError> {
        if !matrix.is_square() {
            return Err(FiltrationError::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        let index = matrix.nilpotency_index().ok_or(FiltrationError::NotNilpotent { dim: matrix.rows() })?;
        Ok(NilpotentOperator { matrix, index })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `l` with `N^l ≠ 0` and `N^(l+1) = 0`; zero for the zero operator.
    pub fn nilpotency_index(&self) -> usize {
        self.index
    }

    /// `N^0, N^1, …, N^(l+1)`.
    fn powers(&self) -> Vec<Matrix<T>> {
        let mut out = vec![Matrix::identity(self.dim())];
        for _ in 0..=self.index {
            let next = out.last().unwrap().mul(&self.matrix);
            out.push(next);
        }
        out
    }

    /// Block sizes of the Jordan form, largest first.
    pub fn jordan_partition(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.powers().iter().map(Matrix::rank).collect();
        // #blocks of size ≥ s is rank(N^(s-1)) − rank(N^s)
        let at_least = |s: usize| ranks[s - 1] - ranks[s];
        let mut parts = Vec::new();
        for s in (1..=self.index + 1).rev() {
            let exactly = at_least(s) - if s < self.index + 1 { at_least(s + 1) } else { 0 };
            parts.extend(std::iter::repeat_n(s, exactly));
        }
        parts
    }

    pub fn weight_filtration(&self, center: usize) -> Result<WeightFiltration<T>, FiltrationError> {
        let l = self.index;
        if center != l {
            return Err(FiltrationError::CenterMismatch { requested: center, index: l });
        }
        let dim = self.dim();
        let powers = self.powers();
        // kernels[a] = ker N^a for a in 1..=l+1, images[b] = im N^b for b in 0..=l
        let kernels: Vec<Subspace<T>> = (0..=l + 1).map(|a| Subspace::kernel_of(&powers[a])).collect();
        let images: Vec<Subspace<T>> = (0..=l).map(|b| Subspace::row_space(&powers[b].transpose())).collect();

        let mut chain = Vec::with_capacity(2 * l + 1);
        for k in 0..=2 * l {
            let mut w = Subspace::zero(dim);
            for i in 0..=l {
                // j = k − l − i must satisfy −l ≤ j ≤ 0
                let j = k as i64 - l as i64 - i as i64;
                if j > 0 || -j > l as i64 {
                    continue;
                }
                let piece = kernels[i + 1].meet(&images[(-j) as usize])?;
                w = w.join(&piece)?;
            }
            chain.push(w);
        }
        Ok(WeightFiltration::from_chain(l, chain))
    }
}

/// `W_0 ⊆ W_1 ⊆ … ⊆ W_(2l)` together with the dimensions of its graded
/// pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFiltration<T> {
    center: usize,
    chain: Vec<Subspace<T>>,
    graded_dims: Vec<usize>,
}

impl<T: Field> WeightFiltration<T> {
    /// Wraps an explicit chain of `2 * center + 1` steps. No axioms are
    /// checked here; see [`verify_weight_axioms`].
    pub fn from_chain(center: usize, chain: Vec<Subspace<T>>) -> Self {
        assert_eq!(chain.len(), 2 * center + 1, "chain must have 2l+1 steps");
        let mut prev = 0;
        let graded_dims = chain
            .iter()
            .map(|w| {
                let g = w.dim().saturating_sub(prev);
                prev = w.dim();
                g
            })
            .collect();
        WeightFiltration { center, chain, graded_dims }
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn chain(&self) -> &[Subspace<T>] {
        &self.chain
    }

    pub fn graded_dims(&self) -> &[usize] {
        &self.graded_dims
    }

    pub fn ambient_dim(&self) -> usize {
        self.chain[0].ambient_dim()
    }

    /// `W_k` for any integer `k`.
    pub fn step(&self, k: i64) -> Subspace<T> {
        if k < 0 {
            Subspace::zero(self.ambient_dim())
        } else if k as usize >= self.chain.len() {
            Subspace::full(self.ambient_dim())
        } else {
            self.chain[k as usize].clone()
        }
    }
}

/// `graded_dims[l + k] = #{parts p : p ≥ k+1, p ≡ k+1 mod 2}` for the
/// sl2-module with one string per Jordan block.
pub fn graded_dims_from_partition(partition: &[usize]) -> Vec<usize> {
    let l = partition.iter().copied().max().unwrap_or(1).saturating_sub(1);
    (0..=2 * l)
        .map(|idx| {
            let k = (idx as i64 - l as i64).unsigned_abs() as usize;
            partition.iter().filter(|&&p| p > k && (p - k - 1).is_multiple_of(2)).count()
        })
        .collect()
}

/// Checks that `w` is the weight filtration of `n` centered at
/// `w.center()`: the chain is increasing and ends at the full space,
/// `N W_k ⊆ W_(k−2)`, and `N^k : Gr_(l+k) → Gr_(l−k)` is an isomorphism.
pub fn verify_weight_axioms<T: Field>(n: &NilpotentOperator<T>, w: &WeightFiltration<T>) -> Vec<CheckResult> {
    let l = w.center() as i64;
    let dim = n.dim();
    let mut shape = CheckResult::new("weight_chain_shape");
    if w.ambient_dim() != dim {
        shape.fail(json!({"ambient": w.ambient_dim(), "operator": dim}));
        return vec![shape];
    }
    for k in 0..2 * l {
        let inc = w.step(k + 1).contains_subspace(&w.step(k)).unwrap_or(false);
        shape.expect(inc, || json!({"not_increasing_at": k}));
    }
    shape.expect(w.step(2 * l).is_full(), || json!({"top_step_not_full": 2 * l}));

    let mut lowering = CheckResult::new("weight_lowering");
    for k in 0..=2 * l {
        let image = w.step(k).image_under(n.matrix()).expect("shapes agree");
        let ok = w.step(k - 2).contains_subspace(&image).unwrap_or(false);
        lowering.expect(ok, || json!({"k": k}));
    }

    let mut iso = CheckResult::new("weight_hard_lefschetz");
    let mut power = Matrix::identity(dim);
    for k in 0..=l {
        // signed, since a corrupted chain need not be increasing
        let gr = |j: i64| w.step(j).dim() as i64 - w.step(j - 1).dim() as i64;
        let (gr_up, gr_down) = (gr(l + k), gr(l - k));
        let below = w.step(l - k - 1);
        let pushed = w.step(l + k).image_under(&power).expect("shapes agree");
        let lands = w.step(l - k).contains_subspace(&pushed).unwrap_or(false);
        let induced_rank = pushed.join(&below).expect("same ambient").dim() as i64 - below.dim() as i64;
        if !(lands && gr_up == gr_down && induced_rank == gr_up) {
            iso.fail(json!({"k": k, "gr_up": gr_up, "gr_down": gr_down, "induced_rank": induced_rank, "lands": lands}));
        }
        power = power.mul(n.matrix());
    }
    vec![shape, lowering, iso]
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    pub(crate) fn jordan(parts: &[usize]) -> Matrix<Q> {
        let dim: usize = parts.iter().sum();
        let mut m = Matrix::zeros(dim, dim);
        let mut off = 0;
        for &p in parts {
            for i in 0..p.saturating_sub(1) {
                m[(off + i, off + i + 1)] = Q::from_integer(1);
            }
            off += p;
        }
        m
    }

    #[test]
    fn nilpotency_indices() {
        assert_eq!(NilpotentOperator::new(Matrix::<Q>::zeros(3, 3)).unwrap().nilpotency_index(), 0);
        assert_eq!(NilpotentOperator::new(jordan(&[2])).unwrap().nilpotency_index(), 1);
        assert_eq!(NilpotentOperator::new(jordan(&[3, 1])).unwrap().nilpotency_index(), 2);
        assert_eq!(NilpotentOperator::new(Matrix::<Q>::identity(2)), Err(FiltrationError::NotNilpotent { dim: 2 }));
        assert!(matches!(NilpotentOperator::new(Matrix::<Q>::zeros(2, 3)), Err(FiltrationError::NotSquare { .. })));
    }

    #[test]
    fn zero_operator_has_single_step() {
        let n = NilpotentOperator::new(Matrix::<Q>::zeros(3, 3)).unwrap();
        let w = n.weight_filtration(0).unwrap();
        assert_eq!(w.graded_dims(), &[3]);
        assert!(w.chain()[0].is_full());
        assert_eq!(n.jordan_partition(), vec![1, 1, 1]);
    }

    #[test]
    fn j2_filtration() {
        let n = NilpotentOperator::new(jordan(&[2])).unwrap();
        let w = n.weight_filtration(1).unwrap();
        assert_eq!(w.graded_dims(), &[1, 0, 1]);
        // image of J2 is the first coordinate line
        assert_eq!(w.chain()[0], Subspace::coordinate([0], 2));
        assert_eq!(w.chain()[1], w.chain()[0]);
        assert!(verify_weight_axioms(&n, &w).iter().all(CheckResult::passed));
    }

    #[test]
    fn wrong_center_is_rejected() {
        let n = NilpotentOperator::new(jordan(&[3])).unwrap();
        assert_eq!(n.weight_filtration(1), Err(FiltrationError::CenterMismatch { requested: 1, index: 2 }));
    }

    #[test]
    fn corrupted_chain_fails_lowering() {
        let n = NilpotentOperator::new(jordan(&[2, 1])).unwrap();
        let w = n.weight_filtration(1).unwrap();
        let mut chain = w.chain().to_vec();
        // W_0 = span(e0); replace it by the non-invariant line through e1
        chain[0] = Subspace::coordinate([1], 3);
        let bad = WeightFiltration::from_chain(1, chain);
        let checks = verify_weight_axioms(&n, &bad);
        assert!(!checks.iter().find(|c| c.name == "weight_lowering").unwrap().passed());
    }

    #[test]
    fn partition_formula() {
        assert_eq!(graded_dims_from_partition(&[2]), vec![1, 0, 1]);
        assert_eq!(graded_dims_from_partition(&[3, 1]), vec![1, 0, 2, 0, 1]);
        assert_eq!(graded_dims_from_partition(&[2, 2, 1, 1]), vec![2, 2, 2]);
        let n = NilpotentOperator::new(jordan(&[3, 1])).unwrap();
        assert_eq!(n.jordan_partition(), vec![3, 1]);
    }
}
