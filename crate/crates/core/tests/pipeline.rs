use phl_core::cube::diamond_and_betti;
use phl_core::models::ModelSpec;
use phl_core::perverse::{compute_cube, hodge_checks, perverse_filtration};
use phl_core::render::render_ascii;

fn shipped() -> Vec<ModelSpec> {
    vec![ModelSpec::k3(), ModelSpec::verbitsky(2, 5), ModelSpec::verbitsky(2, 7), ModelSpec::verbitsky(3, 5)]
}

#[test]
fn cube_reproduces_model_hodge_numbers() {
    for spec in shipped() {
        let m = spec.build().unwrap();
        let computed = compute_cube(&m).unwrap();
        assert!(computed.checks.iter().all(|c| c.passed()), "{spec:?}");
        let c = computed.cube;
        assert_eq!(c.total() as usize, m.total_dim());
        let db = diamond_and_betti(&c);
        let betti: Vec<usize> = db.betti.iter().map(|&b| b as usize).collect();
        assert_eq!(betti, m.betti_numbers());
        for p in 0..=2 * m.n() {
            for q in 0..=2 * m.n() {
                assert_eq!(db.hodge[p][q] as usize, m.hodge_number(p, q), "{spec:?} h^{p},{q}");
            }
        }
        assert!(hodge_checks(&m).unwrap().iter().all(|c| c.passed()));
    }
}

#[test]
fn perverse_filtration_is_well_formed() {
    for spec in shipped() {
        let m = spec.build().unwrap();
        let p = perverse_filtration(&m).unwrap();
        assert!(p.graded.is_well_formed());
        for d in 0..=m.top_index() {
            // zero below the first index, all of H^{2d} at the last
            assert!(p.graded.step(d, p.graded.first_index(d) - 1).is_zero());
            assert!(p.graded.step(d, p.graded.last_index(d)).is_full());
        }
    }
}

#[test]
fn verbitsky_n2_b5_ascii() {
    let c = compute_cube(&ModelSpec::verbitsky(2, 5).build().unwrap()).unwrap().cube;
    let s = render_ascii(&c);
    let middle = s.split("\n\n").nth(2).unwrap();
    let expected = "d = 2\n    1\n  1 1 1\n1 1 3 1 1\n  1 1 1\n    1";
    assert_eq!(middle.trim_end(), expected);
}
