use std::collections::HashMap;

use num_traits::Zero;

use crate::{MatrixQ, Rational};

/// Monomial bases of `Sym^d(H²)` for `d ≤ max_degree`, with the matching-sum
/// integral and the contraction by the quadratic form.
#[derive(Debug, Clone)]
pub struct SymmetricPowers {
    gram: MatrixQ,
    monomials: Vec<Vec<Vec<u8>>>,
    index: Vec<HashMap<Vec<u8>, usize>>,
}

impl SymmetricPowers {
    pub fn new(gram: &MatrixQ, max_degree: usize) -> Self {
        let b = gram.rows();
        let monomials: Vec<Vec<Vec<u8>>> = (0..=max_degree).map(|d| exponent_vectors(b, d)).collect();
        let index = monomials.iter().map(|ms| ms.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect()).collect();
        SymmetricPowers { gram: gram.clone(), monomials, index }
    }

    pub fn vars(&self) -> usize {
        self.gram.rows()
    }

    pub fn monomials(&self, d: usize) -> &[Vec<u8>] {
        &self.monomials[d]
    }

    pub fn dim(&self, d: usize) -> usize {
        self.monomials[d].len()
    }

    pub fn index_of(&self, exps: &[u8]) -> usize {
        let d: usize = exps.iter().map(|&e| e as usize).sum();
        self.index[d][exps]
    }

    pub fn label(&self, exps: &[u8]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("e{i}") } else { format!("e{i}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Sum over perfect matchings of the factors of the monomial of the
    /// products of `q` over matched pairs.
    pub fn integral(&self, exps: &[u8], memo: &mut HashMap<Vec<u8>, Rational>) -> Rational {
        let deg: usize = exps.iter().map(|&e| e as usize).sum();
        if deg == 0 {
            return Rational::from_integer(1.into());
        }
        if deg % 2 == 1 {
            return Rational::zero();
        }
        if let Some(v) = memo.get(exps) {
            return v.clone();
        }
        let first = exps.iter().position(|&e| e > 0).expect("nonzero degree");
        let mut rest = exps.to_vec();
        rest[first] -= 1;
        let mut total = Rational::zero();
        for j in 0..exps.len() {
            if rest[j] == 0 || self.gram[(first, j)].is_zero() {
                continue;
            }
            // the first factor can pair with any of the rest[j] copies of e_j
            let copies = Rational::from_integer(rest[j].into());
            let mut remaining = rest.clone();
            remaining[j] -= 1;
            total += copies * &self.gram[(first, j)] * self.integral(&remaining, memo);
        }
        memo.insert(exps.to_vec(), total.clone());
        total
    }

    /// `P[m][m'] = ∫ m · m'` for `m ∈ Sym^d`, `m' ∈ Sym^(top − d)`.
    pub fn pairing_matrix(&self, d: usize, top: usize, memo: &mut HashMap<Vec<u8>, Rational>) -> MatrixQ {
        let rows = self.monomials(d);
        let cols = self.monomials(top - d);
        MatrixQ::from_fn(rows.len(), cols.len(), |r, c| {
            let prod: Vec<u8> = rows[r].iter().zip(&cols[c]).map(|(a, b)| a + b).collect();
            self.integral(&prod, memo)
        })
    }

    /// The contraction `Σ q_ij ∂_i ∂_j : Sym^d → Sym^(d−2)`, as a matrix whose
    /// columns are indexed by the monomials of `Sym^d`.
    pub fn contraction(&self, d: usize) -> MatrixQ {
        assert!(d >= 2);
        let b = self.vars();
        let mut m = MatrixQ::zeros(self.dim(d - 2), self.dim(d));
        for (c, exps) in self.monomials(d).iter().enumerate() {
            for i in 0..b {
                for j in 0..b {
                    let q = &self.gram[(i, j)];
                    if q.is_zero() {
                        continue;
                    }
                    let mut e = exps.clone();
                    let coef = if i == j {
                        if e[i] < 2 {
                            continue;
                        }
                        let c = e[i] as i64 * (e[i] as i64 - 1);
                        e[i] -= 2;
                        c
                    } else {
                        if e[i] == 0 || e[j] == 0 {
                            continue;
                        }
                        let c = e[i] as i64 * e[j] as i64;
                        e[i] -= 1;
                        e[j] -= 1;
                        c
                    };
                    let r = self.index_of(&e);
                    m[(r, c)] += Rational::from_integer(coef.into()) * q;
                }
            }
        }
        m
    }
}

/// Exponent vectors of total degree `d` in `b` variables, highest power of
/// the first variable first.
fn exponent_vectors(b: usize, d: usize) -> Vec<Vec<u8>> {
    fn rec(b: usize, d: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == b - 1 {
            prefix.push(d as u8);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as u8);
            rec(b, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if b == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(b, d, &mut Vec::with_capacity(b), &mut out);
    out
}

/// `∫ x_1 ⋯ x_k` for arbitrary degree-2 classes, by explicit enumeration of
/// the perfect matchings of the factors.
pub fn matching_integral(gram: &MatrixQ, factors: &[Vec<Rational>]) -> Rational {
    if factors.is_empty() {
        return Rational::from_integer(1.into());
    }
    if factors.len() % 2 == 1 {
        return Rational::zero();
    }
    let q = |x: &[Rational], y: &[Rational]| {
        let gy = gram.mul_vec(y);
        x.iter().zip(&gy).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    };
    let mut total = Rational::zero();
    for j in 1..factors.len() {
        let pair = q(&factors[0], &factors[j]);
        if pair.is_zero() {
            continue;
        }
        let rest: Vec<Vec<Rational>> =
            factors.iter().enumerate().filter(|&(i, _)| i != 0 && i != j).map(|(_, f)| f.clone()).collect();
        total += pair * matching_integral(gram, &rest);
    }
    total
}
