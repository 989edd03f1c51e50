//! Hodge and perverse filtrations on a model, obtained from the weight
//! filtrations of `L_σ̄` and `L_β`, and the perverse-Hodge cube.

use serde_json::json;

use crate::cube::PerverseHodgeCube;
use crate::filtration::{verify_weight_axioms, FiltrationError};
use crate::models::{Bidegree, GradedAlgebraModel};
use crate::report::CheckResult;
use crate::{NilpotentOperatorQ, SubspaceQ, WeightFiltrationQ};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PerverseError {
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
    #[error("nilpotency index of L_{operator} is {found}, expected n = {expected}; the model is inconsistent")]
    NilpotencyAnomaly { operator: &'static str, expected: usize, found: usize },
}

/// An increasing chain on every graded piece `H^{2d}`, written in the
/// local coordinates of that piece. Step `t` of degree `d` carries the
/// index `first_index(d) + t`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiltrationOnGraded {
    first: Vec<i64>,
    chains: Vec<Vec<SubspaceQ>>,
}

impl FiltrationOnGraded {
    pub fn new(first: Vec<i64>, chains: Vec<Vec<SubspaceQ>>) -> Self {
        assert_eq!(first.len(), chains.len());
        assert!(chains.iter().all(|c| !c.is_empty()));
        FiltrationOnGraded { first, chains }
    }

    /// Number of graded pieces.
    pub fn degrees(&self) -> usize {
        self.chains.len()
    }

    pub fn first_index(&self, d: usize) -> i64 {
        self.first[d]
    }

    pub fn last_index(&self, d: usize) -> i64 {
        self.first[d] + self.chains[d].len() as i64 - 1
    }

    pub fn chain(&self, d: usize) -> &[SubspaceQ] {
        &self.chains[d]
    }

    /// `F_j H^{2d}` for any integer `j`: zero below the declared range and
    /// the last step above it.
    pub fn step(&self, d: usize, j: i64) -> SubspaceQ {
        let chain = &self.chains[d];
        let t = j - self.first[d];
        if t < 0 {
            SubspaceQ::zero(chain[0].ambient_dim())
        } else if t as usize >= chain.len() {
            chain[chain.len() - 1].clone()
        } else {
            chain[t as usize].clone()
        }
    }

    /// Chains increase and end at the full piece.
    pub fn is_well_formed(&self) -> bool {
        self.chains.iter().all(|c| {
            c.windows(2).all(|w| w[1].contains_subspace(&w[0]).unwrap_or(false))
                && c.last().is_some_and(|s| s.is_full())
        })
    }
}

/// A nilpotent operator, its centered weight filtration and the induced
/// chains on the graded pieces.
#[derive(Debug, Clone)]
pub struct ModelFiltration {
    pub operator: NilpotentOperatorQ,
    pub weight: WeightFiltrationQ,
    pub graded: FiltrationOnGraded,
}

/// Local indices of the basis vectors of `H^{2d}` with the given bidegree.
fn bidegree_indices(model: &GradedAlgebraModel, d: usize, bd: Bidegree) -> Vec<usize> {
    model.piece(d).bidegrees.iter().enumerate().filter(|(_, b)| **b == bd).map(|(i, _)| i).collect()
}

/// `s ∩ V_a` for every block of a coordinate partition, in block
/// coordinates. When `s` is the direct sum of these intersections the
/// projections already are the intersections.
fn split_by_blocks(s: &SubspaceQ, blocks: &[Vec<usize>]) -> (Vec<SubspaceQ>, bool) {
    let projections: Vec<SubspaceQ> = blocks.iter().map(|b| s.project_coordinates(b)).collect();
    let graded = projections.iter().map(SubspaceQ::dim).sum::<usize>() == s.dim();
    if graded {
        (projections, true)
    } else {
        (blocks.iter().map(|b| s.intersect_coordinates(b)).collect(), false)
    }
}

fn weight_of(
    model: &GradedAlgebraModel,
    class: &[crate::Rational],
    name: &'static str,
) -> Result<(NilpotentOperatorQ, WeightFiltrationQ), PerverseError> {
    let op = model.lefschetz_operator(class)?;
    let l = op.nilpotency_index();
    if l != model.n() {
        return Err(PerverseError::NilpotencyAnomaly { operator: name, expected: model.n(), found: l });
    }
    let w = op.weight_filtration(l)?;
    Ok((op, w))
}

/// Restricts every step of a total-space filtration to the graded pieces;
/// step `t` of degree `d` gets index `first(d) + t`. Also reports whether
/// every step splits along the grading.
fn restrict_to_pieces(
    model: &GradedAlgebraModel,
    w: &WeightFiltrationQ,
    first: impl Fn(usize) -> i64,
) -> (FiltrationOnGraded, bool) {
    let blocks: Vec<Vec<usize>> = (0..=model.top_index()).map(|d| model.block(d).collect()).collect();
    let mut chains: Vec<Vec<SubspaceQ>> = vec![Vec::new(); blocks.len()];
    let mut graded = true;
    for step in w.chain() {
        let (pieces, ok) = split_by_blocks(step, &blocks);
        graded &= ok;
        for (d, p) in pieces.into_iter().enumerate() {
            chains[d].push(p);
        }
    }
    let firsts = (0..blocks.len()).map(first).collect();
    (FiltrationOnGraded::new(firsts, chains), graded)
}

/// Weight filtration of `L_σ̄` centered at `n`, restricted to each `H^{2d}`
/// with its own indices `0..=2n`.
pub fn hodge_filtration_via_sigma_bar(model: &GradedAlgebraModel) -> Result<ModelFiltration, PerverseError> {
    let (operator, weight) = weight_of(model, &model.classes().sigma_bar, "sigma_bar")?;
    let (graded, _) = restrict_to_pieces(model, &weight, |_| 0);
    Ok(ModelFiltration { operator, weight, graded })
}

/// The chain `W^σ̄_k ∩ H^{2d} = ⊕_{q ≥ 2n−k} H^{p,q}` read off the stored
/// bidegrees.
pub fn hodge_chain_from_bigrading(model: &GradedAlgebraModel) -> FiltrationOnGraded {
    let n = model.n();
    let chains = (0..=model.top_index())
        .map(|d| {
            let bds = &model.piece(d).bidegrees;
            (0..=2 * n)
                .map(|k| {
                    let idx = (0..bds.len()).filter(|&i| bds[i].q() + k >= 2 * n);
                    SubspaceQ::coordinate(idx, bds.len())
                })
                .collect()
        })
        .collect();
    FiltrationOnGraded::new(vec![0; model.top_index() + 1], chains)
}

/// Exact comparison of the `L_σ̄` weight filtration with the bigrading.
pub fn hodge_cross_check(model: &GradedAlgebraModel, hodge: &FiltrationOnGraded) -> CheckResult {
    let mut c = CheckResult::new("hodge_cross_check");
    let expected = hodge_chain_from_bigrading(model);
    for d in 0..=model.top_index() {
        for k in 0..=2 * model.n() as i64 {
            let got = hodge.step(d, k);
            let want = expected.step(d, k);
            c.expect(got == want, || json!({"degree": 2 * d, "k": k, "dim": got.dim(), "expected_dim": want.dim()}));
        }
    }
    c
}

/// `P_j H^{2d} = W^β_{j−2d+2n} ∩ H^{2d}` with `W^β` centered at `n`.
/// Indices on `H^{2d}` run over `2d−2n ..= 2d`.
pub fn perverse_filtration(model: &GradedAlgebraModel) -> Result<ModelFiltration, PerverseError> {
    let (operator, weight) = weight_of(model, &model.classes().beta, "beta")?;
    let n = model.n() as i64;
    let (graded, _) = restrict_to_pieces(model, &weight, |d| 2 * d as i64 - 2 * n);
    Ok(ModelFiltration { operator, weight, graded })
}

/// The perverse-Hodge cube
/// `h^{i,k,d} = dim (Gr^P_{d+k} H^{2d})^{d+i, d−i}` together with the
/// bookkeeping checks of its construction.
pub struct CubeComputation {
    pub cube: PerverseHodgeCube,
    pub perverse: ModelFiltration,
    pub checks: Vec<CheckResult>,
}

pub fn compute_cube(model: &GradedAlgebraModel) -> Result<CubeComputation, PerverseError> {
    let perverse = perverse_filtration(model)?;
    let mut cube = PerverseHodgeCube::new(model.n());
    let mut bigraded = CheckResult::new("perverse_bigraded");
    let mut purity = CheckResult::new("cube_purity");

    // the total-space steps must split along the degree grading
    let blocks: Vec<Vec<usize>> = (0..=model.top_index()).map(|d| model.block(d).collect()).collect();
    for (k, step) in perverse.weight.chain().iter().enumerate() {
        let (_, ok) = split_by_blocks(step, &blocks);
        bigraded.expect(ok, || json!({"weight_step_not_graded": k}));
    }

    for d in 0..=model.top_index() {
        let mut types: Vec<Bidegree> = model.piece(d).bidegrees.clone();
        types.sort();
        types.dedup();
        let type_blocks: Vec<Vec<usize>> = types.iter().map(|&bd| bidegree_indices(model, d, bd)).collect();
        let g = &perverse.graded;
        let mut prev_dims = vec![0usize; types.len()];
        let mut prev_total = 0usize;
        for j in g.first_index(d)..=g.last_index(d) {
            let step = g.step(d, j);
            let (parts, ok) = split_by_blocks(&step, &type_blocks);
            bigraded.expect(ok, || json!({"degree": 2 * d, "j": j, "not_bigraded": true}));
            let k = j - d as i64;
            let mut row_sum = 0u64;
            for (t, bd) in types.iter().enumerate() {
                let dim = parts[t].dim();
                let h = dim.checked_sub(prev_dims[t]).expect("filtration steps increase");
                let i = bd.p() as i64 - d as i64;
                cube.set(i, k, d as i64, h as u64);
                row_sum += h as u64;
                prev_dims[t] = dim;
            }
            let gr = step.dim() - prev_total;
            purity.expect(row_sum == gr as u64, || json!({"d": d, "k": k, "row_sum": row_sum, "gr_dim": gr}));
            prev_total = step.dim();
        }
    }
    purity.expect(
        cube.total() == model.total_dim() as u64,
        || json!({"cube_total": cube.total(), "model_dim": model.total_dim()}),
    );

    let mut checks = vec![bigraded, purity];
    checks.extend(verify_weight_axioms(&perverse.operator, &perverse.weight).into_iter().map(|mut c| {
        c.name = format!("beta_{}", c.name);
        c
    }));
    Ok(CubeComputation { cube, perverse, checks })
}

pub fn cube(model: &GradedAlgebraModel) -> Result<PerverseHodgeCube, PerverseError> {
    compute_cube(model).map(|c| c.cube)
}

/// Hodge-side checks: weight axioms of `W^σ̄` and the exact comparison with
/// the bigrading.
pub fn hodge_checks(model: &GradedAlgebraModel) -> Result<Vec<CheckResult>, PerverseError> {
    let hodge = hodge_filtration_via_sigma_bar(model)?;
    let mut checks: Vec<CheckResult> = verify_weight_axioms(&hodge.operator, &hodge.weight)
        .into_iter()
        .map(|mut c| {
            c.name = format!("sigma_bar_{}", c.name);
            c
        })
        .collect();
    checks.push(hodge_cross_check(model, &hodge.graded));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::ModelSpec;

    #[test]
    fn k3_hodge_w0_is_sigma_bar_and_point() {
        let m = ModelSpec::k3().build().unwrap();
        let h = hodge_filtration_via_sigma_bar(&m).unwrap();
        let w0 = &h.weight.chain()[0];
        let sb = m.offset(1) + m.quadratic_space().sigma_bar_index();
        assert_eq!(w0, &SubspaceQ::coordinate([sb, m.offset(2)], m.total_dim()));
        assert!(h.graded.step(1, 2).is_full());
        assert!(hodge_cross_check(&m, &h.graded).passed());
    }

    #[test]
    fn k3_perverse_on_h2() {
        let m = ModelSpec::k3().build().unwrap();
        let p = perverse_filtration(&m).unwrap();
        let dims: Vec<usize> = (0..=2).map(|j| p.graded.step(1, j).dim()).collect();
        assert_eq!(dims, vec![1, 21, 22]);
        assert_eq!(p.graded.step(1, 0), SubspaceQ::span(&[m.classes().beta.clone()], 22));
        assert!(p.graded.step(0, 0).is_full());
        assert!(p.graded.step(0, -1).is_zero());
        assert!(p.graded.is_well_formed());
    }

    #[test]
    fn k3_cube_matches_octahedron() {
        let m = ModelSpec::k3().build().unwrap();
        let c = compute_cube(&m).unwrap();
        for check in &c.checks {
            assert!(check.passed(), "{check:?}");
        }
        let got: Vec<(i64, i64, i64, u64)> = c.cube.entries().map(|e| (e.i, e.k, e.d, e.h)).collect();
        let want =
            vec![(0, 0, 0, 1), (0, -1, 1, 1), (-1, 0, 1, 1), (0, 0, 1, 18), (1, 0, 1, 1), (0, 1, 1, 1), (0, 0, 2, 1)];
        assert_eq!(got, want);
    }

    #[test]
    fn rejects_wrong_nilpotency() {
        let mut m = ModelSpec::k3().build().unwrap();
        let mut classes = m.classes().clone();
        classes.beta = vec![crate::Rational::from_integer(0.into()); 22];
        m.set_classes(classes);
        assert!(matches!(perverse_filtration(&m), Err(PerverseError::NilpotencyAnomaly { found: 0, .. })));
    }
}
