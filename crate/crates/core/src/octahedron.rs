//! Bounds, symmetries and the octahedron conjecture on a cube, plus the
//! nilpotency criterion for `C = [L_β, Λ_σ̄]`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use crate::cube::PerverseHodgeCube;
use crate::filtration::NilpotentOperator;
use crate::llv::beta_sigma_commutator;
use crate::models::GradedAlgebraModel;
use crate::report::CheckResult;

/// A signed permutation of the coordinates `(i, k, d − n)`:
/// `(g x)[r] = signs[r] · x[perm[r]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SignedPermutation {
    pub perm: [usize; 3],
    pub signs: [i64; 3],
}

impl SignedPermutation {
    pub const IDENTITY: SignedPermutation = SignedPermutation { perm: [0, 1, 2], signs: [1, 1, 1] };

    pub fn apply(&self, x: [i64; 3]) -> [i64; 3] {
        [0, 1, 2].map(|r| self.signs[r] * x[self.perm[r]])
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        let perm = [0, 1, 2].map(|r| other.perm[self.perm[r]]);
        let signs = [0, 1, 2].map(|r| self.signs[r] * other.signs[self.perm[r]]);
        SignedPermutation { perm, signs }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut perm = [0; 3];
        let mut signs = [1; 3];
        for r in 0..3 {
            perm[self.perm[r]] = r;
            signs[self.perm[r]] = self.signs[r];
        }
        SignedPermutation { perm, signs }
    }

    pub fn matrix(&self) -> [[i64; 3]; 3] {
        let mut m = [[0; 3]; 3];
        for r in 0..3 {
            m[r][self.perm[r]] = self.signs[r];
        }
        m
    }

    pub fn determinant(&self) -> i64 {
        let inversions =
            (0..3).flat_map(|a| (a + 1..3).map(move |b| (a, b))).filter(|&(a, b)| self.perm[a] > self.perm[b]).count();
        let parity = if inversions % 2 == 0 { 1 } else { -1 };
        parity * self.signs.iter().product::<i64>()
    }

    pub fn is_rotation(&self) -> bool {
        self.determinant() == 1
    }
}

/// The 48 signed permutations of three coordinates, split into the 24
/// rotations (determinant 1) and 24 reflections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryGroupSpec {
    elements: Vec<SignedPermutation>,
}

impl SymmetryGroupSpec {
    pub fn octahedral() -> Self {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut elements = Vec::with_capacity(48);
        for perm in perms {
            for bits in 0..8 {
                let signs = [0, 1, 2].map(|r| if bits >> r & 1 == 1 { -1 } else { 1 });
                elements.push(SignedPermutation { perm, signs });
            }
        }
        SymmetryGroupSpec { elements }
    }

    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn rotations(&self) -> Vec<SignedPermutation> {
        self.elements.iter().copied().filter(SignedPermutation::is_rotation).collect()
    }

    pub fn reflections(&self) -> Vec<SignedPermutation> {
        self.elements.iter().copied().filter(|g| !g.is_rotation()).collect()
    }

    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| self.elements.iter().all(|b| self.elements.contains(&a.compose(b))))
    }
}

/// `(i, k, d)` to `(i, k, d − n)` and back.
fn centered(n: i64, i: i64, k: i64, d: i64) -> [i64; 3] {
    [i, k, d - n]
}

/// First support point where `h ∘ g ≠ h`, if any. Checking the support
/// suffices: then `g` maps the finite support injectively into itself.
pub fn symmetry_violation(cube: &PerverseHodgeCube, g: &SignedPermutation) -> Option<[i64; 3]> {
    let n = cube.n() as i64;
    cube.entries().find_map(|e| {
        let [i, k, c] = g.apply(centered(n, e.i, e.k, e.d));
        (cube.get(i, k, c + n) != e.h).then_some([e.i, e.k, e.d])
    })
}

fn symmetry_check(name: &str, cube: &PerverseHodgeCube, elements: &[SignedPermutation]) -> CheckResult {
    let mut c = CheckResult::new(name);
    c.set("elements", elements.len());
    for g in elements {
        if let Some(p) = symmetry_violation(cube, g) {
            c.fail(json!({"element": {"perm": g.perm, "signs": g.signs}, "at": p}));
        }
    }
    c
}

/// `h^{i,k,d} = 0` whenever `|i| > d` or `|k| > d`; records the observed
/// `max |i|` and `max |k|` per slice.
pub fn bounds_check(cube: &PerverseHodgeCube) -> CheckResult {
    let mut c = CheckResult::new("bounds");
    let mut observed: BTreeMap<i64, (i64, i64)> = BTreeMap::new();
    for e in cube.entries() {
        if e.i.abs() > e.d || e.k.abs() > e.d {
            c.fail(json!([e.i, e.k, e.d]));
        }
        let slot = observed.entry(e.d).or_insert((0, 0));
        slot.0 = slot.0.max(e.i.abs());
        slot.1 = slot.1.max(e.k.abs());
    }
    let per_slice: Vec<_> =
        observed.iter().map(|(d, (i, k))| json!({"d": d, "max_abs_i": i, "max_abs_k": k})).collect();
    c.set("observed", per_slice);
    c
}

/// `h^{i,k,d} = h^{k,i,d}`.
pub fn pf_symmetry_check(cube: &PerverseHodgeCube) -> CheckResult {
    let swap = SignedPermutation { perm: [1, 0, 2], signs: [1, 1, 1] };
    let mut c = CheckResult::new("pf_symmetry");
    for e in cube.entries() {
        if cube.get(e.k, e.i, e.d) != e.h {
            c.fail(json!([e.i, e.k, e.d]));
        }
    }
    debug_assert_eq!(c.passed(), symmetry_violation(cube, &swap).is_none());
    c
}

/// The 24 rotations and 24 reflections, plus conjugation
/// `h^{i,k,d} = h^{−i,k,d}` and Poincaré `h^{i,k,d} = h^{−i,−k,2n−d}`.
pub fn octahedral_symmetry_check(cube: &PerverseHodgeCube) -> Vec<CheckResult> {
    let group = SymmetryGroupSpec::octahedral();
    let conj = SignedPermutation { perm: [0, 1, 2], signs: [-1, 1, 1] };
    let poincare = SignedPermutation { perm: [0, 1, 2], signs: [-1, -1, -1] };
    vec![
        symmetry_check("octahedral_rotations", cube, &group.rotations()),
        symmetry_check("octahedral_reflections", cube, &group.reflections()),
        symmetry_check("conjugation_symmetry", cube, &[conj]),
        symmetry_check("poincare_symmetry", cube, &[poincare]),
    ]
}

/// Support inside `|i| + |k| ≤ min(d, 2n − d)` and the six vertices
/// `(0,0,0)`, `(0,0,2n)`, `(±n,0,n)`, `(0,±n,n)` present.
pub fn octahedron_conjecture_check(cube: &PerverseHodgeCube) -> Vec<CheckResult> {
    let n = cube.n() as i64;
    let mut support = CheckResult::new("octahedron_support");
    for e in cube.entries() {
        if e.i.abs() + e.k.abs() > e.d.min(2 * n - e.d) {
            support.fail(json!([e.i, e.k, e.d]));
        }
    }
    let mut vertices = CheckResult::new("octahedron_vertices");
    for [i, k, d] in [[0, 0, 0], [0, 0, 2 * n], [n, 0, n], [-n, 0, n], [0, n, n], [0, -n, n]] {
        if cube.get(i, k, d) == 0 {
            vertices.fail(json!([i, k, d]));
        }
    }
    vec![support, vertices]
}

/// `C|_{H^{2d}}` has nilpotency index `min(d, 2n − d)` and the antidiagonal
/// sums `Σ_{i+k=c} h^{i,k,d}` are the graded dimensions of its centered
/// weight filtration.
pub fn commutator_nilpotency_check(model: &GradedAlgebraModel, cube: &PerverseHodgeCube) -> Vec<CheckResult> {
    let mut nilp = CheckResult::new("commutator_nilpotency");
    let mut sums = CheckResult::new("antidiagonal_sums");
    let c = match beta_sigma_commutator(model) {
        Ok(c) => c,
        Err(e) => {
            nilp.fail(json!(e.to_string()));
            sums.fail(json!(e.to_string()));
            return vec![nilp, sums];
        }
    };
    let n = model.n();
    for r in 0..c.rows() {
        for col in 0..c.cols() {
            if !num_traits::Zero::is_zero(&c[(r, col)]) && model.locate(r).0 != model.locate(col).0 {
                nilp.fail(json!({"not_degree_preserving_at": [r, col]}));
            }
        }
    }
    if !nilp.passed() {
        sums.fail(json!("commutator does not preserve degrees"));
        return vec![nilp, sums];
    }
    let mut indices = Vec::new();
    let mut literal = Vec::new();
    for d in 0..=model.top_index() {
        let expected = d.min(2 * n - d);
        let block = model.restrict(&c, d);
        let op = match NilpotentOperator::new(block) {
            Ok(op) => op,
            Err(e) => {
                nilp.fail(json!({"d": d, "error": e.to_string()}));
                sums.fail(json!({"d": d, "error": e.to_string()}));
                continue;
            }
        };
        let l = op.nilpotency_index();
        indices.push(json!({"d": d, "nilp": l, "expected": expected}));
        nilp.expect(l == expected, || json!({"d": d, "nilp": l, "expected": expected}));
        if l != d {
            literal.push(d);
        }

        let w = op.weight_filtration(l).expect("center is the nilpotency index");
        let mut by_c: BTreeMap<i64, u64> = BTreeMap::new();
        for (i, k, h) in cube.slice(d as i64) {
            *by_c.entry(i + k).or_default() += h;
        }
        let lw = l as i64;
        let mut ok = by_c.keys().all(|c| c.abs() <= lw);
        let graded: Vec<u64> = w.graded_dims().iter().map(|&g| g as u64).collect();
        let from_cube: Vec<u64> = (-lw..=lw).map(|c| by_c.get(&c).copied().unwrap_or(0)).collect();
        ok &= graded == from_cube;
        sums.expect(ok, || json!({"d": d, "antidiagonal_sums": by_c.iter().map(|(c, h)| json!([c, h])).collect::<Vec<_>>(), "weight_graded_dims": graded}));
    }
    nilp.set("indices", indices);
    // d where the literal reading nilp = d differs from min(d, 2n − d)
    nilp.set("literal_reading_discrepancies", literal);
    vec![nilp, sums]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::ModelSpec;
    use crate::perverse::cube;

    #[test]
    fn group_has_24_rotations() {
        let g = SymmetryGroupSpec::octahedral();
        assert_eq!(g.elements().len(), 48);
        assert_eq!(g.rotations().len(), 24);
        assert!(g.elements().contains(&SignedPermutation::IDENTITY));
        assert!(g.is_closed());
        for a in g.elements() {
            assert_eq!(a.compose(&a.inverse()), SignedPermutation::IDENTITY);
        }
    }

    #[test]
    fn k3_cube_passes_everything() {
        let m = ModelSpec::k3().build().unwrap();
        let c = cube(&m).unwrap();
        let mut checks = vec![bounds_check(&c), pf_symmetry_check(&c)];
        checks.extend(octahedral_symmetry_check(&c));
        checks.extend(octahedron_conjecture_check(&c));
        checks.extend(commutator_nilpotency_check(&m, &c));
        for check in &checks {
            assert!(check.passed(), "{check:?}");
        }
    }

    #[test]
    fn injected_entry_breaks_bounds() {
        let mut c = PerverseHodgeCube::new(1);
        c.set(3, 0, 1, 1);
        let b = bounds_check(&c);
        assert!(!b.passed());
        assert_eq!(b.witnesses, vec![json!([3, 0, 1])]);
    }

    #[test]
    fn off_diamond_support_fails_conjecture() {
        let mut c = PerverseHodgeCube::new(1);
        c.set(1, 1, 1, 1);
        let checks = octahedron_conjecture_check(&c);
        assert_eq!(checks[0].witnesses, vec![json!([1, 1, 1])]);
        assert!(bounds_check(&c).passed());
    }

    #[test]
    fn transpose_broken_cube_fails_pf() {
        let mut c = PerverseHodgeCube::new(1);
        c.set(1, 0, 1, 2);
        c.set(0, 1, 1, 1);
        assert!(!pf_symmetry_check(&c).passed());
    }
}
