use std::collections::HashMap;

use num_traits::Zero;

use super::{Bidegree, GradedAlgebraModel, GradedPiece, ModelError, ModelKind, ModelSpec, MultTable, SymmetricPowers};
use crate::{MatrixQ, Rational, SubspaceQ};

/// Basis and reduction map of `Sym^d / K_d`.
struct Quotient {
    /// Monomial indices whose classes form the basis.
    basis: Vec<usize>,
    /// Coordinates of the class of every monomial of `Sym^d`.
    coords: Vec<Vec<Rational>>,
}

/// The subalgebra generated by `H²`: `Sym^d(H²) / K_d` in degree `2d`, where
/// `K_d` is the kernel of the pairing `Sym^d × Sym^(2n−d) → ℚ` given by the
/// matching-sum integral. `K_d` vanishes for `d ≤ n`.
pub fn build_verbitsky(spec: &ModelSpec) -> Result<GradedAlgebraModel, ModelError> {
    if spec.kind != ModelKind::Verbitsky {
        return Err(ModelError::InvalidSpec("build_verbitsky needs kind = verbitsky".into()));
    }
    let (n, b2) = spec.dimensions()?;
    let space = spec.quadratic_space()?;
    let top = 2 * n;
    let sym = SymmetricPowers::new(space.gram(), top);
    let mut memo = HashMap::new();

    let var_bidegree: Vec<Bidegree> = space.labels().iter().map(|t| t.bidegree()).collect();
    let bidegree_of = |exps: &[u8]| {
        exps.iter()
            .zip(&var_bidegree)
            .fold(Bidegree(0, 0), |acc, (&e, bd)| Bidegree(acc.0 + e as usize * bd.0, acc.1 + e as usize * bd.1))
    };

    let mut quotients = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let pairing = sym.pairing_matrix(d, top, &mut memo);
        // column m of rref(Pᵀ) expresses the pairing row of monomial m in
        // terms of the pivot monomials
        let (reduced, pivots) = pairing.transpose().rref();
        let rank = pivots.len();
        if d <= n && rank != sym.dim(d) {
            return Err(ModelError::Inconsistent(format!(
                "pairing on Sym^{d} has rank {rank} < {}; the form is not compatible with a Verbitsky component",
                sym.dim(d)
            )));
        }
        let coords: Vec<Vec<Rational>> =
            (0..sym.dim(d)).map(|m| (0..rank).map(|r| reduced[(r, m)].clone()).collect()).collect();
        for (m, c) in coords.iter().enumerate() {
            let bd = bidegree_of(&sym.monomials(d)[m]);
            for (r, x) in c.iter().enumerate() {
                if !x.is_zero() && bidegree_of(&sym.monomials(d)[pivots[r]]) != bd {
                    return Err(ModelError::Inconsistent(format!(
                        "pairing kernel in Sym^{d} is not bigraded (monomial {})",
                        sym.label(&sym.monomials(d)[m])
                    )));
                }
            }
        }
        quotients.push(Quotient { basis: pivots, coords });
    }

    let pieces: Vec<GradedPiece> = quotients
        .iter()
        .enumerate()
        .map(|(d, q)| GradedPiece {
            bidegrees: q.basis.iter().map(|&m| bidegree_of(&sym.monomials(d)[m])).collect(),
            labels: q.basis.iter().map(|&m| sym.label(&sym.monomials(d)[m])).collect(),
        })
        .collect();

    let mut mult: MultTable = vec![vec![None; top + 1]; top + 1];
    for a in 0..=top {
        for c in 0..=top - a {
            let target = a + c;
            let mut table = Vec::with_capacity(quotients[a].basis.len() * quotients[c].basis.len());
            for &i in &quotients[a].basis {
                for &j in &quotients[c].basis {
                    let prod: Vec<u8> =
                        sym.monomials(a)[i].iter().zip(&sym.monomials(c)[j]).map(|(x, y)| x + y).collect();
                    table.push(quotients[target].coords[sym.index_of(&prod)].clone());
                }
            }
            mult[a][c] = Some(table);
        }
    }

    let integral: Vec<Rational> =
        quotients[top].basis.iter().map(|&m| sym.integral(&sym.monomials(top)[m], &mut memo)).collect();

    let (s, sb) = (space.sigma_index(), space.sigma_bar_index());
    let conj: Vec<MatrixQ> = quotients
        .iter()
        .enumerate()
        .map(|(d, q)| {
            let k = q.basis.len();
            let mut m = MatrixQ::zeros(k, k);
            for (col, &mono) in q.basis.iter().enumerate() {
                let mut e = sym.monomials(d)[mono].clone();
                e.swap(s, sb);
                for (row, v) in q.coords[sym.index_of(&e)].iter().enumerate() {
                    m[(row, col)] = v.clone();
                }
            }
            m
        })
        .collect();

    debug_assert_eq!(space.dim(), b2);
    Ok(GradedAlgebraModel::assemble(n, ModelKind::Verbitsky, space, pieces, mult, integral, conj))
}

/// `K_d`: monomial combinations in `Sym^d` pairing to zero with all of
/// `Sym^(2n−d)`.
pub fn pairing_kernel(gram: &MatrixQ, n: usize, d: usize) -> SubspaceQ {
    let sym = SymmetricPowers::new(gram, 2 * n);
    let mut memo = HashMap::new();
    SubspaceQ::kernel_of(&sym.pairing_matrix(d, 2 * n, &mut memo).transpose())
}
