//! Lefschetz sl2-triples, Lie-bracket closure and the so(6) subalgebra
//! generated by the Lefschetz classes in `⟨σ, σ̄, β, ω⟩`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::linalg::{Field, Matrix, SpanBuilder, SparseVec};
use crate::models::GradedAlgebraModel;
use crate::report::CheckResult;
use crate::{MatrixQ, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LlvError {
    #[error("size mismatch: expected {expected}x{expected} operators, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("operator does not raise the grading by 2: entry ({row}, {col}) maps weight {from} to weight {to}")]
    NotRaising { row: usize, col: usize, from: i64, to: i64 },
    #[error("hard Lefschetz fails: L^{power}: V_{neg} -> V_{power} is not an isomorphism (dims {source_dim} -> {target_dim}, rank {rank})", neg = -power)]
    HardLefschetz { power: i64, source_dim: usize, target_dim: usize, rank: usize },
    #[error("sl2 completion is inconsistent: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GradingKind {
    /// `m − 2n` on `H^m`.
    #[serde(rename = "H0_degree")]
    H0Degree,
    /// `q − n` on `H^{p,q}`.
    #[serde(rename = "Hq_hodge")]
    HqHodge,
    /// `p − q` on `H^{p,q}`.
    #[serde(rename = "Hpq_difference")]
    HpqDifference,
    /// Any other diagonal integer grading.
    #[serde(rename = "custom")]
    Custom,
}

/// A diagonal grading operator with integer eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingOperator {
    kind: GradingKind,
    diag: Vec<i64>,
}

impl GradingOperator {
    pub fn new(model: &GradedAlgebraModel, kind: GradingKind) -> Self {
        let n = model.n() as i64;
        let diag = (0..model.total_dim())
            .map(|idx| {
                let (d, bd) = model.locate(idx);
                let (p, q) = (bd.p() as i64, bd.q() as i64);
                match kind {
                    GradingKind::H0Degree => 2 * d as i64 - 2 * n,
                    GradingKind::HqHodge => q - n,
                    GradingKind::HpqDifference => p - q,
                    GradingKind::Custom => unreachable!("custom gradings come from GradingOperator::custom"),
                }
            })
            .collect();
        GradingOperator { kind, diag }
    }

    pub fn custom(diag: Vec<i64>) -> Self {
        GradingOperator { kind: GradingKind::Custom, diag }
    }

    pub fn kind(&self) -> GradingKind {
        self.kind
    }

    pub fn diag(&self) -> &[i64] {
        &self.diag
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn matrix<T: Field>(&self) -> Matrix<T> {
        let diag: Vec<T> = self.diag.iter().map(|&x| from_i64(x)).collect();
        Matrix::from_diagonal(&diag)
    }

    /// Indices of each eigenspace, by eigenvalue.
    fn weight_spaces(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut out: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, &w) in self.diag.iter().enumerate() {
            out.entry(w).or_default().push(i);
        }
        out
    }
}

fn from_i64<T: Field>(x: i64) -> T {
    let mut acc = T::zero();
    let one = T::one();
    for _ in 0..x.unsigned_abs() {
        acc += one.clone();
    }
    if x < 0 {
        -acc
    } else {
        acc
    }
}

/// `(e, h, f)` with `[h, e] = 2e`, `[h, f] = −2f`, `[e, f] = h`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sl2Triple<T> {
    pub e: Matrix<T>,
    pub h: Matrix<T>,
    pub f: Matrix<T>,
}

/// Completes `l` to an sl2-triple with the given grading: the unique `Λ`
/// with `[H, Λ] = −2Λ` and `[L, Λ] = H`.
///
/// Built from the Lefschetz decomposition: on a primitive vector `p` of
/// weight `−w`, `Λ L^j p = j (w − j + 1) L^(j−1) p`.
pub fn sl2_complete<T: Field>(l: &Matrix<T>, h: &GradingOperator) -> Result<Sl2Triple<T>, LlvError> {
    let dim = h.dim();
    if l.rows() != dim || l.cols() != dim {
        return Err(LlvError::SizeMismatch { expected: dim, got: l.rows().max(l.cols()) });
    }
    let w = h.diag();
    for r in 0..dim {
        for c in 0..dim {
            if !l[(r, c)].is_zero() && w[r] != w[c] + 2 {
                return Err(LlvError::NotRaising { row: r, col: c, from: w[c], to: w[r] });
            }
        }
    }
    let spaces = h.weight_spaces();
    let empty = Vec::new();
    let space = |lam: i64| spaces.get(&lam).unwrap_or(&empty);
    let max_weight = spaces.keys().map(|k| k.abs()).max().unwrap_or(0);

    // powers of L, L^0 ..= L^(max_weight + 1)
    let mut powers = vec![Matrix::identity(dim)];
    for _ in 0..=max_weight {
        let next = powers.last().unwrap().mul(l);
        powers.push(next);
    }

    for lam in 0..=max_weight {
        let (src, tgt) = (space(-lam), space(lam));
        if src.is_empty() && tgt.is_empty() {
            continue;
        }
        let rank = powers[lam as usize].select(tgt, src).rank();
        if src.len() != tgt.len() || rank != src.len() {
            return Err(LlvError::HardLefschetz { power: lam, source_dim: src.len(), target_dim: tgt.len(), rank });
        }
    }

    // per weight: string vectors lying in it and their images under Λ
    type Pairs<T> = (Vec<Vec<T>>, Vec<Vec<T>>);
    let mut strings: BTreeMap<i64, Pairs<T>> = BTreeMap::new();
    for (&mu, idx) in spaces.range(..=0) {
        let top = (-mu) as usize;
        let kill = powers[top + 1].select(&(0..dim).collect::<Vec<_>>(), idx);
        let primitives = crate::linalg::Subspace::kernel_of(&kill);
        for local in primitives.basis_vectors() {
            let mut v = vec![T::zero(); dim];
            for (x, &i) in local.into_iter().zip(idx) {
                v[i] = x;
            }
            let mut prev: Option<Vec<T>> = None;
            for j in 0..=top {
                let coef: T = from_i64((j * (top - j + 1)) as i64);
                let image = match &prev {
                    Some(p) => p.iter().map(|x| x.clone() * &coef).collect(),
                    None => vec![T::zero(); dim],
                };
                let entry = strings.entry(mu + 2 * j as i64).or_default();
                entry.0.push(v.clone());
                entry.1.push(image);
                let next = l.mul_vec(&v);
                prev = Some(std::mem::replace(&mut v, next));
            }
        }
    }

    let mut lambda = Matrix::zeros(dim, dim);
    for (&wt, idx) in &spaces {
        let (vecs, images) = strings.remove(&wt).unwrap_or_default();
        if vecs.len() != idx.len() {
            return Err(LlvError::Inconsistent(format!(
                "weight {wt}: {} string vectors for a space of dimension {}",
                vecs.len(),
                idx.len()
            )));
        }
        let b = Matrix::from_fn(idx.len(), vecs.len(), |r, c| vecs[c][idx[r]].clone());
        let b_inv =
            b.inverse().map_err(|_| LlvError::Inconsistent(format!("string vectors of weight {wt} are dependent")))?;
        let below = space(wt - 2);
        let d = Matrix::from_fn(below.len(), images.len(), |r, c| images[c][below[r]].clone());
        let block = d.mul(&b_inv);
        for (r, &gr) in below.iter().enumerate() {
            for (c, &gc) in idx.iter().enumerate() {
                lambda[(gr, gc)] = block[(r, c)].clone();
            }
        }
    }

    let hm: Matrix<T> = h.matrix();
    if l.commutator(&lambda) != hm {
        return Err(LlvError::Inconsistent("[L, Λ] ≠ H".into()));
    }
    if hm.commutator(&lambda) != lambda.scale(&from_i64(-2)) {
        return Err(LlvError::Inconsistent("[H, Λ] ≠ −2Λ".into()));
    }
    Ok(Sl2Triple { e: l.clone(), h: hm, f: lambda })
}

/// Dimension of `{X : [H, X] = −2X, [L, X] = 0}`. The partner in
/// [`sl2_complete`] is unique exactly when this is zero.
pub fn lowering_centralizer_dim<T: Field>(l: &Matrix<T>, h: &GradingOperator) -> usize {
    let dim = h.dim();
    let w = h.diag();
    let cols: Vec<Vec<(usize, T)>> = (0..dim)
        .map(|c| (0..dim).filter(|&r| !l[(r, c)].is_zero()).map(|r| (r, l[(r, c)].clone())).collect())
        .collect();
    let rows: Vec<Vec<(usize, T)>> = (0..dim)
        .map(|r| (0..dim).filter(|&c| !l[(r, c)].is_zero()).map(|c| (c, l[(r, c)].clone())).collect())
        .collect();
    let mut span = SpanBuilder::new(dim * dim);
    let mut unknowns = 0;
    for r in 0..dim {
        for c in 0..dim {
            if w[r] != w[c] - 2 {
                continue;
            }
            unknowns += 1;
            // [L, E_rc] = L E_rc − E_rc L
            let mut entries: Vec<(usize, T)> = cols[r].iter().map(|(a, x)| (a * dim + c, x.clone())).collect();
            entries.extend(rows[c].iter().map(|(b, x)| (r * dim + b, -x.clone())));
            span.insert(&SparseVec::from_entries(entries));
        }
    }
    unknowns - span.dim()
}

/// A Lie subalgebra of `gl(V)` given by a basis of operators.
#[derive(Debug, Clone)]
pub struct LieSubalgebra<T> {
    size: usize,
    span: SpanBuilder<T>,
    basis: Vec<Matrix<T>>,
}

impl<T: Field> LieSubalgebra<T> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Size of the matrices.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn basis(&self) -> &[Matrix<T>] {
        &self.basis
    }

    pub fn contains(&self, x: &Matrix<T>) -> Result<bool, LlvError> {
        if x.rows() != self.size || x.cols() != self.size {
            return Err(LlvError::SizeMismatch { expected: self.size, got: x.rows().max(x.cols()) });
        }
        Ok(self.span.contains(&SparseVec::from_dense(x.as_slice())))
    }

    /// Every bracket of basis elements lies in the span.
    pub fn is_closed(&self) -> bool {
        self.basis.iter().enumerate().all(|(i, a)| {
            self.basis[i + 1..].iter().all(|b| self.span.contains(&SparseVec::from_dense(a.commutator(b).as_slice())))
        })
    }
}

/// The Lie algebra generated by `generators`: brackets of generators with
/// the current basis are added until nothing new appears. Right-normed
/// brackets span the generated algebra, so this is the full closure.
pub fn lie_closure<T: Field>(generators: &[Matrix<T>]) -> Result<LieSubalgebra<T>, LlvError> {
    let size = generators.first().map_or(0, Matrix::rows);
    for g in generators {
        if g.rows() != size || g.cols() != size {
            return Err(LlvError::SizeMismatch { expected: size, got: g.rows().max(g.cols()) });
        }
    }
    let mut span = SpanBuilder::new(size * size);
    let mut basis: Vec<Matrix<T>> = Vec::new();
    for g in generators {
        if span.insert(&SparseVec::from_dense(g.as_slice())) {
            basis.push(g.clone());
        }
    }
    let gens = basis.clone();
    let mut next = 0;
    while next < basis.len() {
        let x = basis[next].clone();
        for g in &gens {
            let y = g.commutator(&x);
            if span.insert(&SparseVec::from_dense(y.as_slice())) {
                basis.push(y);
            }
        }
        next += 1;
    }
    Ok(LieSubalgebra { size, span, basis })
}

/// Lefschetz triple of a degree-2 class against the degree grading.
pub fn lefschetz_triple(model: &GradedAlgebraModel, x: &[Rational]) -> Result<Sl2Triple<Rational>, LlvError> {
    sl2_complete(&model.lefschetz(x), &GradingOperator::new(model, GradingKind::H0Degree))
}

/// `Λ_σ̄`: the sl2 partner of `L_σ̄` with respect to the Hodge grading
/// `q − n`.
pub fn lambda_sigma_bar(model: &GradedAlgebraModel) -> Result<MatrixQ, LlvError> {
    let l = model.lefschetz(&model.classes().sigma_bar);
    Ok(sl2_complete(&l, &GradingOperator::new(model, GradingKind::HqHodge))?.f)
}

/// `C = [L_β, Λ_σ̄]`.
pub fn beta_sigma_commutator(model: &GradedAlgebraModel) -> Result<MatrixQ, LlvError> {
    let lam = lambda_sigma_bar(model)?;
    Ok(model.lefschetz(&model.classes().beta).commutator(&lam))
}

fn add(x: &[Rational], y: &[Rational], coef: i64) -> Vec<Rational> {
    let s = Rational::from_integer(coef.into());
    x.iter().zip(y).map(|(a, b)| a + &s * b).collect()
}

/// `σ + σ̄`, `σ − σ̄`, `ω`, `ω + tβ` with `t` the first of 1, 2 making the
/// last class non-isotropic. `q(ω + tβ)` is affine in `t` with slope
/// `2 q(β, ω) ≠ 0`, so one of the two works.
pub fn so6_generator_classes(model: &GradedAlgebraModel) -> Vec<Vec<Rational>> {
    let c = model.classes();
    let space = model.quadratic_space();
    let shifted = [1, 2]
        .into_iter()
        .map(|t| add(&c.omega, &c.beta, t))
        .find(|x| !space.q(x, x).is_zero())
        .unwrap_or_else(|| add(&c.omega, &c.beta, 1));
    vec![add(&c.sigma, &c.sigma_bar, 1), add(&c.sigma, &c.sigma_bar, -1), c.omega.clone(), shifted]
}

/// `b2` linearly independent classes with `q(x, x) ≠ 0`, chosen greedily
/// among `e_i` and `e_i ± e_j`.
pub fn lefschetz_spanning_set(model: &GradedAlgebraModel) -> Vec<Vec<Rational>> {
    let space = model.quadratic_space();
    let b = space.dim();
    let unit = |i: usize| -> Vec<Rational> {
        (0..b).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }).collect()
    };
    let mut candidates: Vec<Vec<Rational>> = (0..b).map(unit).collect();
    for i in 0..b {
        for j in i + 1..b {
            candidates.push(add(&unit(i), &unit(j), 1));
            candidates.push(add(&unit(i), &unit(j), -1));
        }
    }
    let mut span = SpanBuilder::new(b);
    let mut out = Vec::new();
    for x in candidates {
        if out.len() == b {
            break;
        }
        if !space.q(&x, &x).is_zero() && span.insert(&SparseVec::from_dense(&x)) {
            out.push(x);
        }
    }
    out
}

/// Generators `L_x, Λ_x, H` of the Lefschetz triples of `classes`.
pub fn triple_generators(model: &GradedAlgebraModel, classes: &[Vec<Rational>]) -> Result<Vec<MatrixQ>, LlvError> {
    let mut gens = Vec::with_capacity(2 * classes.len() + 1);
    for x in classes {
        let t = lefschetz_triple(model, x)?;
        gens.push(t.e);
        gens.push(t.f);
    }
    gens.push(GradingOperator::new(model, GradingKind::H0Degree).matrix());
    Ok(gens)
}

/// so(6) checks: precondition on `⟨σ, σ̄, β, ω⟩`, dimension 15 of the
/// closure, memberships and the commutator `[L_β, Λ_σ̄]`.
pub fn so6_report(model: &GradedAlgebraModel) -> Vec<CheckResult> {
    let space = model.quadratic_space();
    let c = model.classes();
    let classes = so6_generator_classes(model);

    let mut pre = CheckResult::new("so6_precondition");
    let four = [&c.sigma, &c.sigma_bar, &c.beta, &c.omega];
    let gram = MatrixQ::from_fn(4, 4, |r, s| space.q(four[r], four[s]));
    pre.expect(gram.rank() == 4, || json!({"restricted_form_rank": gram.rank()}));
    for (i, x) in classes.iter().enumerate() {
        pre.expect(!space.q(x, x).is_zero(), || json!({"isotropic_generator": i}));
    }

    let mut dimension = CheckResult::new("so6_dimension");
    let mut membership = CheckResult::new("so6_membership");
    let mut commutator = CheckResult::new("so6_commutator");
    let algebra = triple_generators(model, &classes).and_then(|g| lie_closure(&g));
    let algebra = match algebra {
        Ok(a) => a,
        Err(e) => {
            for check in [&mut dimension, &mut membership, &mut commutator] {
                check.fail(json!(e.to_string()));
            }
            return vec![pre, dimension, membership, commutator];
        }
    };
    dimension.set("dim", algebra.dim());
    dimension.expect(algebra.dim() == 15, || json!({"dim": algebra.dim(), "expected": 15}));

    let mut members: Vec<(&str, Result<MatrixQ, LlvError>)> = vec![
        ("L_beta", Ok(model.lefschetz(&c.beta))),
        ("Lambda_sigma_bar", lambda_sigma_bar(model)),
        ("Hpq_difference", Ok(GradingOperator::new(model, GradingKind::HpqDifference).matrix())),
        ("H0_degree", Ok(GradingOperator::new(model, GradingKind::H0Degree).matrix())),
    ];
    for (name, op) in members.drain(..) {
        match op.map(|m| algebra.contains(&m)) {
            Ok(Ok(true)) => {}
            Ok(Ok(false)) => membership.fail(json!({"not_a_member": name})),
            Ok(Err(e)) | Err(e) => membership.fail(json!({"operator": name, "error": e.to_string()})),
        }
    }

    match beta_sigma_commutator(model) {
        Ok(cm) => {
            commutator.expect(algebra.contains(&cm).unwrap_or(false), || json!("commutator is not in the algebra"));
            commutator.expect(cm.nilpotency_index().is_some(), || json!("commutator is not nilpotent"));
        }
        Err(e) => commutator.fail(json!(e.to_string())),
    }
    vec![pre, dimension, membership, commutator]
}

/// Closure of the Lefschetz triples of a spanning set of `H²`; expected
/// dimension `(b2 + 2)(b2 + 1) / 2`.
pub fn full_closure_check(model: &GradedAlgebraModel) -> CheckResult {
    let mut check = CheckResult::new("lefschetz_closure");
    let b = model.b2();
    let expected = (b + 2) * (b + 1) / 2;
    let classes = lefschetz_spanning_set(model);
    check.expect(classes.len() == b, || json!({"spanning_set_size": classes.len(), "b2": b}));
    match triple_generators(model, &classes).and_then(|g| lie_closure(&g)) {
        Ok(a) => {
            check.set("dim", a.dim());
            check.set("expected", expected);
            check.expect(a.dim() == expected, || json!({"dim": a.dim(), "expected": expected}));
        }
        Err(e) => check.fail(json!(e.to_string())),
    }
    check
}
