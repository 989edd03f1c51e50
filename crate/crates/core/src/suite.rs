//! The full check suite on one model.

use std::time::Instant;

use serde_json::json;

use crate::cube::PerverseHodgeCube;
use crate::llv::{
    full_closure_check, lambda_sigma_bar, lowering_centralizer_dim, so6_report, GradingKind, GradingOperator,
};
use crate::models::{validate, GradedAlgebraModel};
use crate::octahedron::{
    bounds_check, commutator_nilpotency_check, octahedral_symmetry_check, octahedron_conjecture_check,
    pf_symmetry_check,
};
use crate::perverse::{compute_cube, hodge_checks};
use crate::report::{CheckReport, CheckResult};

pub struct SuiteOutcome {
    pub cube: Option<PerverseHodgeCube>,
    pub report: CheckReport,
}

fn timed(start: Instant, checks: Vec<CheckResult>) -> Vec<CheckResult> {
    checks.into_iter().map(|c| c.timed(start)).collect()
}

/// Runs model validation, the Hodge cross-check, the cube pipeline, every
/// cube symmetry and bound, the commutator criterion and the Lie-algebra
/// checks. Pipeline errors become failed checks.
pub fn run_suite(model: &GradedAlgebraModel) -> SuiteOutcome {
    let mut report = CheckReport::default();

    let t = Instant::now();
    report.extend(timed(t, validate(model)));

    let t = Instant::now();
    match hodge_checks(model) {
        Ok(checks) => report.extend(timed(t, checks)),
        Err(e) => report.push(CheckResult::new("hodge_cross_check").failed_with(json!(e.to_string())).timed(t)),
    }

    let t = Instant::now();
    let cube = match compute_cube(model) {
        Ok(c) => {
            report.extend(timed(t, c.checks));
            Some(c.cube)
        }
        Err(e) => {
            report.push(CheckResult::new("cube_pipeline").failed_with(json!(e.to_string())).timed(t));
            None
        }
    };

    if let Some(cube) = &cube {
        let t = Instant::now();
        let mut checks = vec![bounds_check(cube), pf_symmetry_check(cube)];
        checks.extend(octahedral_symmetry_check(cube));
        checks.extend(octahedron_conjecture_check(cube));
        report.extend(timed(t, checks));
        let t = Instant::now();
        report.extend(timed(t, commutator_nilpotency_check(model, cube)));
    }

    let t = Instant::now();
    let mut unique = CheckResult::new("sl2_uniqueness");
    match lambda_sigma_bar(model) {
        Ok(_) => {
            let l = model.lefschetz(&model.classes().sigma_bar);
            let extra = lowering_centralizer_dim(&l, &GradingOperator::new(model, GradingKind::HqHodge));
            unique.expect(extra == 0, || json!({"centralizer_dim": extra}));
        }
        Err(e) => unique.fail(json!(e.to_string())),
    }
    report.push(unique.timed(t));

    let t = Instant::now();
    report.extend(timed(t, so6_report(model)));
    let t = Instant::now();
    report.push(full_closure_check(model).timed(t));

    SuiteOutcome { cube, report }
}
