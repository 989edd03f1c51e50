use num_traits::Zero;
use proptest::prelude::*;

use phl_core::filtration::{graded_dims_from_partition, verify_weight_axioms, NilpotentOperator, WeightFiltration};
use phl_core::{MatrixQ, Rational, SubspaceQ};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn jordan(parts: &[usize]) -> MatrixQ {
    let dim: usize = parts.iter().sum();
    let mut m = MatrixQ::zeros(dim, dim);
    let mut off = 0;
    for &p in parts {
        for i in 0..p - 1 {
            m[(off + i, off + i + 1)] = q(1);
        }
        off += p;
    }
    m
}

/// Partitions of at most `max_dim`, largest part first.
fn partition(max_dim: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=max_dim, 1..=max_dim).prop_map(move |raw| {
        let mut parts = Vec::new();
        let mut total = 0;
        for p in raw {
            if total + p <= max_dim {
                parts.push(p);
                total += p;
            }
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    })
}

/// `g = U · Lᵀ` with unit-diagonal triangular factors, hence invertible.
fn invertible(dim: usize, upper: &[i64], lower: &[i64]) -> MatrixQ {
    let tri = |vals: &[i64], up: bool| {
        MatrixQ::from_fn(dim, dim, |r, c| {
            if r == c {
                q(1)
            } else if (r < c) == up {
                q(vals[(r * dim + c) % vals.len()])
            } else {
                Rational::zero()
            }
        })
    };
    tri(upper, true).mul(&tri(lower, false))
}

fn case() -> impl Strategy<Value = (Vec<usize>, MatrixQ)> {
    (partition(12), prop::collection::vec(-2i64..=2, 144), prop::collection::vec(-2i64..=2, 144)).prop_map(
        |(parts, u, l)| {
            let dim = parts.iter().sum();
            let g = invertible(dim, &u, &l);
            let n = g.mul(&jordan(&parts)).mul(&g.inverse().unwrap());
            (parts, n)
        },
    )
}

fn all_pass(n: &NilpotentOperator<Rational>, w: &WeightFiltration<Rational>) -> bool {
    verify_weight_axioms(n, w).iter().all(|c| c.passed())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn conjugated_jordan_forms((parts, m) in case()) {
        let n = NilpotentOperator::new(m).unwrap();
        prop_assert_eq!(n.jordan_partition(), parts.clone());
        let w = n.weight_filtration(n.nilpotency_index()).unwrap();
        prop_assert!(all_pass(&n, &w));
        prop_assert_eq!(w.graded_dims().to_vec(), graded_dims_from_partition(&parts));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn filtration_is_conjugation_equivariant(
        parts in partition(7),
        u in prop::collection::vec(-2i64..=2, 49),
        l in prop::collection::vec(-2i64..=2, 49),
    ) {
        let dim = parts.iter().sum();
        let j = jordan(&parts);
        let g = invertible(dim, &u, &l);
        let conj = NilpotentOperator::new(g.mul(&j).mul(&g.inverse().unwrap())).unwrap();
        let base = NilpotentOperator::new(j).unwrap();
        let wl = base.nilpotency_index();
        let w_base = base.weight_filtration(wl).unwrap();
        let w_conj = conj.weight_filtration(wl).unwrap();
        for (a, b) in w_base.chain().iter().zip(w_conj.chain()) {
            prop_assert_eq!(&a.image_under(&g).unwrap(), b);
        }
    }

    /// Replacing one step by another subspace of the same dimension that
    /// still fits in the chain always breaks an axiom.
    #[test]
    fn perturbed_chains_fail(
        (parts, m) in (partition(6), prop::collection::vec(-2i64..=2, 36), prop::collection::vec(-2i64..=2, 36)).prop_map(|(parts, u, l)| {
            let dim = parts.iter().sum();
            let g = invertible(dim, &u, &l);
            let n = g.mul(&jordan(&parts)).mul(&g.inverse().unwrap());
            (parts, n)
        }),
        noise in prop::collection::vec(-3i64..=3, 36),
    ) {
        let n = NilpotentOperator::new(m).unwrap();
        let l = n.nilpotency_index();
        let w = n.weight_filtration(l).unwrap();
        let dim: usize = parts.iter().sum();
        for k in 0..w.chain().len() {
            let step = &w.chain()[k];
            let below = if k == 0 { SubspaceQ::zero(dim) } else { w.chain()[k - 1].clone() };
            let above = w.chain().get(k + 1).cloned().unwrap_or_else(|| SubspaceQ::full(dim));
            let gap = step.dim() - below.dim();
            if gap == 0 || above.dim() == step.dim() {
                continue;
            }
            // below + `gap` noisy vectors from `above`
            let mut rows = below.basis_vectors();
            let pool = above.basis_vectors();
            for t in 0..gap {
                let v: Vec<Rational> = (0..dim)
                    .map(|c| pool.iter().enumerate().fold(Rational::zero(), |acc, (r, row)| acc + q(noise[(t * 7 + r * 3 + c) % 36]) * &row[c]))
                    .collect();
                rows.push(v);
            }
            let replacement = SubspaceQ::span(&rows, dim);
            if replacement.dim() != step.dim() || &replacement == step {
                continue;
            }
            let mut chain = w.chain().to_vec();
            chain[k] = replacement;
            let perturbed = WeightFiltration::from_chain(l, chain);
            prop_assert!(!all_pass(&n, &perturbed), "perturbation at {} passed", k);
        }
    }
}

#[test]
fn corrupted_chain_is_rejected() {
    let n = NilpotentOperator::new(jordan(&[3, 1])).unwrap();
    let w = n.weight_filtration(2).unwrap();
    assert!(all_pass(&n, &w));

    // swap two steps: no longer increasing
    let mut chain = w.chain().to_vec();
    chain.swap(1, 2);
    let bad = WeightFiltration::from_chain(2, chain);
    let checks = verify_weight_axioms(&n, &bad);
    assert!(checks.iter().any(|c| !c.passed()));

    // shift the whole chain by one
    let mut chain = w.chain().to_vec();
    chain.remove(0);
    chain.push(SubspaceQ::full(4));
    assert!(!all_pass(&n, &WeightFiltration::from_chain(2, chain)));

    // the filtration of a different operator
    let other = NilpotentOperator::new(jordan(&[2, 2])).unwrap();
    let w_other = other.weight_filtration(1).unwrap();
    let padded = WeightFiltration::from_chain(2, {
        let mut c = vec![SubspaceQ::zero(4)];
        c.extend(w_other.chain().iter().cloned());
        c.push(SubspaceQ::full(4));
        c
    });
    assert!(!all_pass(&n, &padded));
}

#[test]
fn sl2_string_formula_examples() {
    assert_eq!(graded_dims_from_partition(&[3, 1]), vec![1, 0, 2, 0, 1]);
    assert_eq!(graded_dims_from_partition(&[2, 2, 1]), vec![2, 1, 2]);
    assert_eq!(graded_dims_from_partition(&[1, 1]), vec![2]);
    assert_eq!(graded_dims_from_partition(&[4]), vec![1, 0, 1, 0, 1, 0, 1]);
}
