use std::collections::BTreeSet;

use proptest::prelude::*;

use phl_core::cube::PerverseHodgeCube;
use phl_core::models::ModelSpec;
use phl_core::octahedron::{symmetry_violation, SignedPermutation, SymmetryGroupSpec};
use phl_core::perverse::cube;
use phl_core::suite::run_suite;
use phl_core::Rational;

/// The subgroup generated by `gens`.
fn generated(gens: &[SignedPermutation]) -> BTreeSet<SignedPermutation> {
    let mut out = BTreeSet::from([SignedPermutation::IDENTITY]);
    loop {
        let next: BTreeSet<_> = out.iter().flat_map(|a| gens.iter().map(move |g| g.compose(a))).collect();
        let before = out.len();
        out.extend(next);
        if out.len() == before {
            return out;
        }
    }
}

/// Random cube on `[-2, 2]^3` (n = 2) averaged, by orbit sums, over `group`.
fn symmetrized(points: &[([i64; 3], u64)], group: &BTreeSet<SignedPermutation>) -> PerverseHodgeCube {
    let mut c = PerverseHodgeCube::new(2);
    for &(p, h) in points {
        for g in group {
            let [i, k, e] = g.apply(p);
            let old = c.get(i, k, e + 2);
            c.set(i, k, e + 2, old + h);
        }
    }
    c
}

fn element() -> impl Strategy<Value = SignedPermutation> {
    (0usize..48).prop_map(|i| SymmetryGroupSpec::octahedral().elements()[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn passing_symmetries_form_a_group(
        gens in prop::collection::vec(element(), 1..=2),
        points in prop::collection::vec(([-2i64..=2, -2i64..=2, -2i64..=2], 1u64..=5), 1..=6),
    ) {
        let sub = generated(&gens);
        let c = symmetrized(&points, &sub);
        let group = SymmetryGroupSpec::octahedral();
        let passing: Vec<_> = group.elements().iter().copied().filter(|g| symmetry_violation(&c, g).is_none()).collect();
        for g in &sub {
            prop_assert!(passing.contains(g));
        }
        for a in &passing {
            prop_assert!(passing.contains(&a.inverse()));
            for b in &passing {
                prop_assert!(passing.contains(&a.compose(b)));
            }
        }
    }
}

#[test]
fn group_structure() {
    let group = SymmetryGroupSpec::octahedral();
    assert!(group.is_closed());
    let rotations: BTreeSet<_> = group.rotations().into_iter().collect();
    for a in &rotations {
        assert_eq!(a.compose(&a.inverse()), SignedPermutation::IDENTITY);
        for b in &rotations {
            assert!(rotations.contains(&a.compose(b)));
        }
    }
    // three coordinate quarter turns generate all rotations
    let quarter = |perm, signs| SignedPermutation { perm, signs };
    let gens = [quarter([1, 0, 2], [-1, 1, 1]), quarter([0, 2, 1], [1, -1, 1])];
    assert_eq!(generated(&gens), rotations);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn cube_and_outcomes_ignore_class_scaling(b in 1i64..=5, bd in 1i64..=4, s in 1i64..=5, sd in 1i64..=4, flip: bool) {
        let m = ModelSpec::verbitsky(2, 5).build().unwrap();
        let beta = Rational::new((if flip { -b } else { b }).into(), bd.into());
        let sigma = Rational::new(s.into(), sd.into());
        let scaled = m.with_rescaled_classes(&beta, &sigma);
        prop_assert_eq!(cube(&scaled).unwrap(), cube(&m).unwrap());
        let names = |r: &phl_core::report::CheckReport| r.checks.iter().map(|c| (c.name.clone(), c.passed())).collect::<Vec<_>>();
        prop_assert_eq!(names(&run_suite(&scaled).report), names(&run_suite(&m).report));
    }
}
