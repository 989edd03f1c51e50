use num_traits::{One, Zero};
use serde_json::json;

use super::{unit, Bidegree, GradedAlgebraModel};
use crate::report::CheckResult;
use crate::{MatrixQ, Rational};

/// Structural checks of a model: ring axioms on basis elements, Poincaré
/// duality, bigradedness, conjugation and the distinguished classes.
pub fn validate(model: &GradedAlgebraModel) -> Vec<CheckResult> {
    vec![
        check_classes(model),
        check_bidegrees(model),
        check_unit(model),
        check_commutativity(model),
        check_associativity(model),
        check_poincare(model),
        check_bigraded_product(model),
        check_conjugation(model),
    ]
}

fn basis(model: &GradedAlgebraModel, d: usize, i: usize) -> Vec<Rational> {
    unit(model.piece_dim(d), i)
}

fn check_classes(model: &GradedAlgebraModel) -> CheckResult {
    let mut c = CheckResult::new("model_classes");
    for v in model.classes().violations(model.quadratic_space()) {
        c.fail(json!(v));
    }
    c
}

fn check_bidegrees(model: &GradedAlgebraModel) -> CheckResult {
    let mut c = CheckResult::new("model_bidegrees");
    let two_n = 2 * model.n();
    for (d, piece) in model.pieces().iter().enumerate() {
        for (i, bd) in piece.bidegrees.iter().enumerate() {
            if bd.p() + bd.q() != 2 * d || bd.p() > two_n || bd.q() > two_n {
                c.fail(json!({"degree": 2 * d, "index": i, "p": bd.p(), "q": bd.q()}));
            }
        }
    }
    c
}

fn check_unit(model: &GradedAlgebraModel) -> CheckResult {
    let mut c = CheckResult::new("model_unit");
    if model.piece_dim(0) != 1 {
        c.fail(json!({"dim_h0": model.piece_dim(0)}));
        return c;
    }
    let one = vec![Rational::one()];
    for d in 0..=model.top_index() {
        for i in 0..model.piece_dim(d) {
            let x = basis(model, d, i);
            if model.multiply(0, &one, d, &x) != x || model.multiply(d, &x, 0, &one) != x {
                c.fail(json!({"degree": 2 * d, "index": i}));
            }
        }
    }
    c
}

fn check_commutativity(model: &GradedAlgebraModel) -> CheckResult {
    let mut c = CheckResult::new("model_commutativity");
    let top = model.top_index();
    for a in 0..=top {
        for b in a..=top - a {
            for i in 0..model.piece_dim(a) {
                for j in 0..model.piece_dim(b) {
                    if model.product(a, i, b, j) != model.product(b, j, a, i) {
                        c.fail(json!({"degrees": [2 * a, 2 * b], "indices": [i, j]}));
                    }
                }
            }
        }
    }
    c
}

fn check_associativity(model: &GradedAlgebraModel) -> CheckResult {
    let mut c = CheckResult::new("model_associativity");
    let top = model.top_index();
    let mut triples = 0u64;
    for a in 0..=top {
        for b in 0..=top - a {
            for e in 0..=top - a - b {
                for i in 0..model.piece_dim(a) {
                    for j in 0..model.piece_dim(b) {
                        let xy = model.product(a, i, b, j).expect("in range").to_vec();
                        for k in 0..model.piece_dim(e) {
                            let z = basis(model, e, k);
                            let left = model.multiply(a + b, &xy, e, &z);
                            let yz = model.product(b, j, e, k).expect("in range");
                            let right = model.multiply(a, &basis(model, a, i), b + e, yz);
                            triples += 1;
                            if left != right {
                                c.fail(json!({"degrees": [2 * a, 2 * b, 2 * e], "indices": [i, j, k]}));
                            }
                        }
                    }
                }
            }
        }
    }
    c.set("triples", triples);
    c
}

fn check_poincare(model: &GradedAlgebraModel) -> CheckResult {
    let mut c = CheckResult::new("model_poincare");
    let top = model.top_index();
    if model.integral().iter().all(Zero::is_zero) {
        c.fail(json!("integral vanishes on the top degree"));
    }
    for d in 0..=top {
        let (da, db) = (model.piece_dim(d), model.piece_dim(top - d));
        let m = MatrixQ::from_fn(da, db, |i, j| model.integrate(model.product(d, i, top - d, j).expect("in range")));
        let rank = m.rank();
        if da != db || rank != da {
            c.fail(json!({"degree": 2 * d, "dim": da, "dual_dim": db, "rank": rank}));
        }
    }
    c
}

fn check_bigraded_product(model: &GradedAlgebraModel) -> CheckResult {
    let mut c = CheckResult::new("model_bigraded");
    let top = model.top_index();
    for a in 0..=top {
        for b in 0..=top - a {
            for i in 0..model.piece_dim(a) {
                for j in 0..model.piece_dim(b) {
                    let expected = model.piece(a).bidegrees[i] + model.piece(b).bidegrees[j];
                    let prod = model.product(a, i, b, j).expect("in range");
                    for (r, v) in prod.iter().enumerate() {
                        if !v.is_zero() && model.piece(a + b).bidegrees[r] != expected {
                            c.fail(json!({"degrees": [2 * a, 2 * b], "indices": [i, j], "lands_on": r}));
                        }
                    }
                }
            }
        }
    }
    c
}

fn check_conjugation(model: &GradedAlgebraModel) -> CheckResult {
    let mut c = CheckResult::new("model_conjugation");
    let top = model.top_index();
    for d in 0..=top {
        let k = model.conj(d);
        if k.mul(k) != MatrixQ::identity(model.piece_dim(d)) {
            c.fail(json!({"not_an_involution_in_degree": 2 * d}));
        }
        for col in 0..model.piece_dim(d) {
            let Bidegree(p, q) = model.piece(d).bidegrees[col];
            for row in 0..model.piece_dim(d) {
                if !k[(row, col)].is_zero() && model.piece(d).bidegrees[row] != Bidegree(q, p) {
                    c.fail(json!({"degree": 2 * d, "index": col, "does_not_swap_type": [p, q]}));
                }
            }
        }
    }
    for a in 0..=top {
        for b in 0..=top - a {
            for i in 0..model.piece_dim(a) {
                for j in 0..model.piece_dim(b) {
                    let prod = model.product(a, i, b, j).expect("in range");
                    let lhs = model.conj(a + b).mul_vec(prod);
                    let rhs = model.multiply(a, &model.conj(a).column(i), b, &model.conj(b).column(j));
                    if lhs != rhs {
                        c.fail(json!({"not_multiplicative": {"degrees": [2 * a, 2 * b], "indices": [i, j]}}));
                    }
                }
            }
        }
    }
    if top >= 1 {
        let k = model.conj(1);
        let cls = model.classes();
        if k.mul_vec(&cls.sigma) != cls.sigma_bar || k.mul_vec(&cls.sigma_bar) != cls.sigma {
            c.fail(json!("conjugation does not swap sigma and sigma_bar"));
        }
        if k.mul_vec(&cls.beta) != cls.beta || k.mul_vec(&cls.omega) != cls.omega {
            c.fail(json!("conjugation does not fix beta and omega"));
        }
    }
    c
}
