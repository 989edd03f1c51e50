use num_traits::{One, Zero};

use super::{Bidegree, GradedAlgebraModel, GradedPiece, HodgeTag, ModelError, ModelKind, ModelSpec, MultTable};
use crate::{MatrixQ, Rational};

/// The full cohomology ring of a K3 surface: `H⁰ = ⟨1⟩`, `H² = ℚ^{b2}`,
/// `H⁴ = ⟨pt⟩` with `x ∪ y = q(x, y) pt` and `∫ pt = 1`.
pub fn build_k3(spec: &ModelSpec) -> Result<GradedAlgebraModel, ModelError> {
    if spec.kind != ModelKind::K3 {
        return Err(ModelError::InvalidSpec("build_k3 needs kind = k3".into()));
    }
    let space = spec.quadratic_space()?;
    let b = space.dim();
    let gram = space.gram().clone();

    let pieces = vec![
        GradedPiece { bidegrees: vec![Bidegree(0, 0)], labels: vec!["1".into()] },
        GradedPiece {
            bidegrees: space.labels().iter().map(|t| t.bidegree()).collect(),
            labels: space
                .labels()
                .iter()
                .enumerate()
                .map(|(i, t)| match t {
                    HodgeTag::Sigma => "sigma".to_string(),
                    HodgeTag::SigmaBar => "sigma_bar".to_string(),
                    HodgeTag::Hodge11 => format!("e{i}"),
                })
                .collect(),
        },
        GradedPiece { bidegrees: vec![Bidegree(2, 2)], labels: vec!["pt".into()] },
    ];
    let dims = [1, b, 1];
    let mut mult: MultTable = vec![vec![None; 3]; 3];
    for a in 0..3 {
        for c in 0..3 - a {
            let target = a + c;
            let mut table = Vec::with_capacity(dims[a] * dims[c]);
            for i in 0..dims[a] {
                for j in 0..dims[c] {
                    let v = match (a, c) {
                        (0, _) => super::unit(dims[target], j),
                        (_, 0) => super::unit(dims[target], i),
                        (1, 1) => vec![gram[(i, j)].clone()],
                        _ => unreachable!("degree pair exceeds top degree"),
                    };
                    table.push(v);
                }
            }
            mult[a][c] = Some(table);
        }
    }

    let (s, sb) = (space.sigma_index(), space.sigma_bar_index());
    let swap = MatrixQ::from_fn(b, b, |r, c| {
        let image = if c == s {
            sb
        } else if c == sb {
            s
        } else {
            c
        };
        if r == image {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let conj = vec![MatrixQ::identity(1), swap, MatrixQ::identity(1)];

    Ok(GradedAlgebraModel::assemble(1, ModelKind::K3, space, pieces, mult, vec![Rational::one()], conj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::int;

    #[test]
    fn default_k3_shape() {
        let m = build_k3(&ModelSpec::k3()).unwrap();
        assert_eq!(m.total_dim(), 24);
        assert_eq!(m.betti_numbers(), vec![1, 0, 22, 0, 1]);
        assert_eq!((m.hodge_number(2, 0), m.hodge_number(1, 1), m.hodge_number(0, 2)), (1, 20, 1));
    }

    #[test]
    fn sigma_times_sigma_bar_is_point() {
        let m = build_k3(&ModelSpec::k3()).unwrap();
        let c = m.classes();
        assert_eq!(m.multiply(1, &c.sigma, 1, &c.sigma_bar), vec![int(1)]);
        assert_eq!(m.multiply(1, &c.beta, 1, &c.beta), vec![int(0)]);
    }

    #[test]
    fn beta_squared_lefschetz_vanishes() {
        let m = build_k3(&ModelSpec::k3()).unwrap();
        let l = m.lefschetz(&m.classes().beta);
        assert!(!l.is_zero());
        assert!(l.mul(&l).is_zero());
        assert!(m.lefschetz(&vec![int(0); 22]).is_zero());
    }
}
