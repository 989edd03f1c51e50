//! Graded Frobenius-algebra models of hyperkähler cohomology.
//!
//! A model stores the even-degree pieces `H^{2d}`, `0 ≤ d ≤ 2n`, each with
//! a basis of pure Hodge bidegree, the cup product as structure constants,
//! the integral on the top degree, complex conjugation as a basis
//! involution, and the distinguished degree-2 classes σ, σ̄, β, ω.

mod k3;
mod spec;
mod symmetric;
mod validate;
mod verbitsky;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::filtration::{FiltrationError, NilpotentOperator};
use crate::{MatrixQ, Rational};

pub use k3::build_k3;
pub use spec::{default_gram, ModelKind, ModelSpec};
pub use symmetric::{matching_integral, SymmetricPowers};
pub use validate::validate;
pub use verbitsky::{build_verbitsky, pairing_kernel};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("b2 = 4 is not supported: the orthogonal group of a rank-4 form does not act transitively on isotropic classes, so the symmetry guarantees fail")]
    B2IsFour,
    #[error("b2 = {0} is too small; at least 5 is required")]
    B2TooSmall(usize),
    #[error("out of desk-scale bounds: {0}")]
    OutOfBounds(String),
    #[error("invalid model spec: {0}")]
    InvalidSpec(String),
    #[error("invalid quadratic form: {0}")]
    InvalidGram(String),
    #[error("inconsistent model: {0}")]
    Inconsistent(String),
}

/// Hodge type of a degree-2 basis vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HodgeTag {
    Sigma,
    SigmaBar,
    Hodge11,
}

impl HodgeTag {
    pub fn bidegree(self) -> Bidegree {
        match self {
            HodgeTag::Sigma => Bidegree(2, 0),
            HodgeTag::SigmaBar => Bidegree(0, 2),
            HodgeTag::Hodge11 => Bidegree(1, 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bidegree(pub usize, pub usize);

impl Bidegree {
    pub fn p(self) -> usize {
        self.0
    }

    pub fn q(self) -> usize {
        self.1
    }
}

impl std::ops::Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree(self.0 + o.0, self.1 + o.1)
    }
}

/// `H²` with its Beauville–Bogomolov form and Hodge tags.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticSpace {
    gram: MatrixQ,
    labels: Vec<HodgeTag>,
}

impl QuadraticSpace {
    pub fn new(gram: MatrixQ, labels: Vec<HodgeTag>) -> Result<Self, ModelError> {
        let b = gram.rows();
        if !gram.is_square() || labels.len() != b {
            return Err(ModelError::InvalidGram(format!(
                "{}x{} gram with {} labels",
                gram.rows(),
                gram.cols(),
                labels.len()
            )));
        }
        if gram != gram.transpose() {
            return Err(ModelError::InvalidGram("gram matrix is not symmetric".into()));
        }
        if gram.rank() != b {
            return Err(ModelError::InvalidGram("gram matrix is degenerate".into()));
        }
        let find = |t: HodgeTag| -> Result<usize, ModelError> {
            let hits: Vec<usize> = (0..b).filter(|&i| labels[i] == t).collect();
            match hits.as_slice() {
                [i] => Ok(*i),
                _ => Err(ModelError::InvalidGram(format!(
                    "expected exactly one {t:?} basis vector, found {}",
                    hits.len()
                ))),
            }
        };
        let s = find(HodgeTag::Sigma)?;
        let sb = find(HodgeTag::SigmaBar)?;
        if !gram[(s, s)].is_zero() || !gram[(sb, sb)].is_zero() {
            return Err(ModelError::InvalidGram("sigma and sigma_bar must be isotropic".into()));
        }
        if gram[(s, sb)].is_zero() {
            return Err(ModelError::InvalidGram("q(sigma, sigma_bar) must be nonzero".into()));
        }
        for i in (0..b).filter(|&i| labels[i] == HodgeTag::Hodge11) {
            if !gram[(s, i)].is_zero() || !gram[(sb, i)].is_zero() {
                return Err(ModelError::InvalidGram(format!(
                    "sigma and sigma_bar must be orthogonal to the (1,1) basis vector {i}"
                )));
            }
        }
        Ok(QuadraticSpace { gram, labels })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &MatrixQ {
        &self.gram
    }

    pub fn labels(&self) -> &[HodgeTag] {
        &self.labels
    }

    pub fn sigma_index(&self) -> usize {
        self.labels.iter().position(|&t| t == HodgeTag::Sigma).expect("validated")
    }

    pub fn sigma_bar_index(&self) -> usize {
        self.labels.iter().position(|&t| t == HodgeTag::SigmaBar).expect("validated")
    }

    pub fn q(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let gy = self.gram.mul_vec(y);
        x.iter().zip(&gy).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }
}

/// σ, σ̄, β, ω as coordinate vectors in `H²`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistinguishedClasses {
    pub sigma: Vec<Rational>,
    pub sigma_bar: Vec<Rational>,
    pub beta: Vec<Rational>,
    pub omega: Vec<Rational>,
}

impl DistinguishedClasses {
    /// σ = e0, σ̄ = e1 (or wherever the tags put them), β = e2 and
    /// ω = e2 + e3.
    pub fn standard(space: &QuadraticSpace) -> Self {
        let b = space.dim();
        let unit = |i: usize| -> Vec<Rational> {
            (0..b).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()
        };
        let h11: Vec<usize> = (0..b).filter(|&i| space.labels[i] == HodgeTag::Hodge11).collect();
        let beta = unit(h11[0]);
        let omega: Vec<Rational> = unit(h11[0]).iter().zip(unit(h11[1])).map(|(a, b)| a + b).collect();
        DistinguishedClasses { sigma: unit(space.sigma_index()), sigma_bar: unit(space.sigma_bar_index()), beta, omega }
    }

    /// Checks the invariants: β isotropic of type (1,1), q(ω,ω), q(β,ω),
    /// q(σ,σ̄) nonzero and the four vectors independent. Returns the list
    /// of violated conditions.
    pub fn violations(&self, space: &QuadraticSpace) -> Vec<String> {
        let mut out = Vec::new();
        if !space.q(&self.beta, &self.beta).is_zero() {
            out.push("beta is not isotropic".into());
        }
        let (s, sb) = (space.sigma_index(), space.sigma_bar_index());
        if !self.beta[s].is_zero() || !self.beta[sb].is_zero() {
            out.push("beta is not of type (1,1)".into());
        }
        if self.beta.iter().all(Zero::is_zero) {
            out.push("beta is zero".into());
        }
        if space.q(&self.omega, &self.omega).is_zero() {
            out.push("q(omega, omega) = 0".into());
        }
        if space.q(&self.beta, &self.omega).is_zero() {
            out.push("q(beta, omega) = 0".into());
        }
        if space.q(&self.sigma, &self.sigma_bar).is_zero() {
            out.push("q(sigma, sigma_bar) = 0".into());
        }
        let m = MatrixQ::from_rows(
            vec![self.sigma.clone(), self.sigma_bar.clone(), self.beta.clone(), self.omega.clone()],
            space.dim(),
        )
        .expect("class vectors have length b2");
        if m.rank() != 4 {
            out.push("sigma, sigma_bar, beta, omega are linearly dependent".into());
        }
        out
    }
}

/// One graded piece `H^{2d}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedPiece {
    pub bidegrees: Vec<Bidegree>,
    pub labels: Vec<String>,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.bidegrees.len()
    }
}

/// Structure constants: `table[a][b][i * dim_b + j]` holds the coordinates
/// of `x_i ∪ y_j` in `H^{2(a+b)}`; absent when `a + b > 2n`.
pub(crate) type MultTable = Vec<Vec<Option<Vec<Vec<Rational>>>>>;

#[derive(Debug, Clone, PartialEq)]
pub struct GradedAlgebraModel {
    n: usize,
    kind: ModelKind,
    space: QuadraticSpace,
    pieces: Vec<GradedPiece>,
    offsets: Vec<usize>,
    mult: MultTable,
    integral: Vec<Rational>,
    classes: DistinguishedClasses,
    conj: Vec<MatrixQ>,
}

impl GradedAlgebraModel {
    pub(crate) fn assemble(
        n: usize,
        kind: ModelKind,
        space: QuadraticSpace,
        pieces: Vec<GradedPiece>,
        mult: MultTable,
        integral: Vec<Rational>,
        conj: Vec<MatrixQ>,
    ) -> Self {
        let mut offsets = Vec::with_capacity(pieces.len() + 1);
        let mut acc = 0;
        for p in &pieces {
            offsets.push(acc);
            acc += p.dim();
        }
        offsets.push(acc);
        let classes = DistinguishedClasses::standard(&space);
        GradedAlgebraModel { n, kind, space, pieces, offsets, mult, integral, classes, conj }
    }

    /// Half the complex dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn b2(&self) -> usize {
        self.space.dim()
    }

    pub fn quadratic_space(&self) -> &QuadraticSpace {
        &self.space
    }

    pub fn classes(&self) -> &DistinguishedClasses {
        &self.classes
    }

    /// Replaces the distinguished classes without checking them.
    pub fn set_classes(&mut self, classes: DistinguishedClasses) {
        self.classes = classes;
    }

    /// Same model with β scaled by `beta_scale` and σ, σ̄ by `sigma_scale`.
    pub fn with_rescaled_classes(&self, beta_scale: &Rational, sigma_scale: &Rational) -> Self {
        let mut out = self.clone();
        let scale = |v: &[Rational], s: &Rational| v.iter().map(|x| x * s).collect::<Vec<_>>();
        out.classes.beta = scale(&self.classes.beta, beta_scale);
        out.classes.sigma = scale(&self.classes.sigma, sigma_scale);
        out.classes.sigma_bar = scale(&self.classes.sigma_bar, sigma_scale);
        out
    }

    pub fn pieces(&self) -> &[GradedPiece] {
        &self.pieces
    }

    /// `H^{2d}`.
    pub fn piece(&self, d: usize) -> &GradedPiece {
        &self.pieces[d]
    }

    pub fn top_index(&self) -> usize {
        2 * self.n
    }

    pub fn piece_dim(&self, d: usize) -> usize {
        self.pieces.get(d).map_or(0, GradedPiece::dim)
    }

    /// Offset of `H^{2d}` inside the total space.
    pub fn offset(&self, d: usize) -> usize {
        self.offsets[d]
    }

    pub fn block(&self, d: usize) -> std::ops::Range<usize> {
        self.offsets[d]..self.offsets[d + 1]
    }

    pub fn total_dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Dimensions of `H^{2d}` for `d = 0..=2n`.
    pub fn graded_dims(&self) -> Vec<usize> {
        self.pieces.iter().map(GradedPiece::dim).collect()
    }

    /// `b_0, …, b_{4n}` with zeros in odd degrees.
    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..=4 * self.n).map(|m| if m % 2 == 0 { self.piece_dim(m / 2) } else { 0 }).collect()
    }

    /// `h^{p,q}` counted from the stored bidegrees.
    pub fn hodge_number(&self, p: usize, q: usize) -> usize {
        if (p + q) % 2 == 1 {
            return 0;
        }
        let d = (p + q) / 2;
        self.pieces.get(d).map_or(0, |pc| pc.bidegrees.iter().filter(|b| **b == Bidegree(p, q)).count())
    }

    /// Cohomological half-degree and bidegree of a total-space index.
    pub fn locate(&self, idx: usize) -> (usize, Bidegree) {
        let d = self.offsets.partition_point(|&o| o <= idx) - 1;
        (d, self.pieces[d].bidegrees[idx - self.offsets[d]])
    }

    pub fn bidegree(&self, idx: usize) -> Bidegree {
        self.locate(idx).1
    }

    /// Coordinates of `x_i ∪ y_j` for basis vectors of `H^{2a}` and `H^{2b}`.
    pub fn product(&self, a: usize, i: usize, b: usize, j: usize) -> Option<&[Rational]> {
        let table = self.mult.get(a)?.get(b)?.as_ref()?;
        Some(&table[i * self.piece_dim(b) + j])
    }

    /// Overwrites one structure constant vector.
    pub fn set_product(&mut self, a: usize, i: usize, b: usize, j: usize, value: Vec<Rational>) {
        let db = self.piece_dim(b);
        let table = self.mult[a][b].as_mut().expect("degree pair within range");
        table[i * db + j] = value;
    }

    /// Overwrites the bidegree tag of a basis vector of `H^{2d}`.
    pub fn set_bidegree(&mut self, d: usize, i: usize, bd: Bidegree) {
        self.pieces[d].bidegrees[i] = bd;
    }

    /// Cup product of homogeneous elements given by coordinates.
    pub fn multiply(&self, a: usize, x: &[Rational], b: usize, y: &[Rational]) -> Vec<Rational> {
        let target = a + b;
        let mut out = vec![Rational::zero(); self.piece_dim(target)];
        if target > self.top_index() {
            return out;
        }
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, p) in out.iter_mut().zip(self.product(a, i, b, j).expect("in range")) {
                    if !p.is_zero() {
                        *o += &c * p;
                    }
                }
            }
        }
        out
    }

    /// The integral on the top degree.
    pub fn integral(&self) -> &[Rational] {
        &self.integral
    }

    pub fn integrate(&self, top: &[Rational]) -> Rational {
        top.iter().zip(&self.integral).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Conjugation on `H^{2d}`.
    pub fn conj(&self, d: usize) -> &MatrixQ {
        &self.conj[d]
    }

    pub fn conj_matrices(&self) -> &[MatrixQ] {
        &self.conj
    }

    /// Cup product with a degree-2 class as an operator on the total space.
    pub fn lefschetz(&self, x: &[Rational]) -> MatrixQ {
        assert_eq!(x.len(), self.b2(), "lefschetz class must live in H^2");
        let total = self.total_dim();
        let mut m = MatrixQ::zeros(total, total);
        for d in 0..self.top_index() {
            for j in 0..self.piece_dim(d) {
                let image = self.multiply(1, x, d, &unit(self.piece_dim(d), j));
                for (r, v) in image.into_iter().enumerate() {
                    if !v.is_zero() {
                        m[(self.offset(d + 1) + r, self.offset(d) + j)] = v;
                    }
                }
            }
        }
        m
    }

    pub fn lefschetz_operator(&self, x: &[Rational]) -> Result<NilpotentOperator<Rational>, FiltrationError> {
        NilpotentOperator::new(self.lefschetz(x))
    }

    /// Inclusion of `H^{2d}` into the total space.
    pub fn inclusion(&self, d: usize) -> MatrixQ {
        let off = self.offset(d);
        MatrixQ::from_fn(self.total_dim(), self.piece_dim(d), |r, c| {
            if r == off + c {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Restriction of a degree-preserving operator to `H^{2d}`.
    pub fn restrict(&self, op: &MatrixQ, d: usize) -> MatrixQ {
        let idx: Vec<usize> = self.block(d).collect();
        op.select(&idx, &idx)
    }
}

pub(crate) fn unit(len: usize, i: usize) -> Vec<Rational> {
    (0..len).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()
}

pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
