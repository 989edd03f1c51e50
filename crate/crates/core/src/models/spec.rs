use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{build_k3, build_verbitsky, int, GradedAlgebraModel, HodgeTag, ModelError, QuadraticSpace};
use crate::{MatrixQ, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    K3,
    Verbitsky,
}

/// Desk-scale limits for Verbitsky models.
pub const MAX_VERBITSKY_N: usize = 3;
pub const MAX_VERBITSKY_B2: usize = 8;
/// For `n = 1` the model is just `H⁰ ⊕ H² ⊕ H⁴`, so K3-sized forms are fine.
pub const MAX_VERBITSKY_B2_N1: usize = 22;

/// JSON model description:
/// `{"kind": "k3"|"verbitsky", "n": int, "b2": int, "gram": [["p/q", …], …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub kind: ModelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<String>>>,
}

impl ModelSpec {
    pub fn k3() -> Self {
        ModelSpec { kind: ModelKind::K3, n: Some(1), b2: Some(22), gram: None }
    }

    pub fn verbitsky(n: usize, b2: usize) -> Self {
        ModelSpec { kind: ModelKind::Verbitsky, n: Some(n), b2: Some(b2), gram: None }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// Resolved `(n, b2)` after defaults and range checks.
    pub fn dimensions(&self) -> Result<(usize, usize), ModelError> {
        let gram_b2 = self.gram.as_ref().map(Vec::len);
        let b2 = match (self.b2, gram_b2) {
            (Some(b), Some(g)) if b != g => {
                return Err(ModelError::InvalidSpec(format!("b2 = {b} but the gram matrix has {g} rows")))
            }
            (Some(b), _) => b,
            (None, Some(g)) => g,
            (None, None) if self.kind == ModelKind::K3 => 22,
            (None, None) => return Err(ModelError::InvalidSpec("b2 is required for verbitsky models".into())),
        };
        if b2 == 4 {
            return Err(ModelError::B2IsFour);
        }
        if b2 < 5 {
            return Err(ModelError::B2TooSmall(b2));
        }
        let n = match (self.kind, self.n) {
            (ModelKind::K3, None | Some(1)) => 1,
            (ModelKind::K3, Some(n)) => return Err(ModelError::InvalidSpec(format!("a K3 model has n = 1, not {n}"))),
            (ModelKind::Verbitsky, None) => {
                return Err(ModelError::InvalidSpec("n is required for verbitsky models".into()))
            }
            (ModelKind::Verbitsky, Some(0)) => return Err(ModelError::InvalidSpec("n must be at least 1".into())),
            (ModelKind::Verbitsky, Some(n)) => n,
        };
        let b2_cap = if n == 1 { MAX_VERBITSKY_B2_N1 } else { MAX_VERBITSKY_B2 };
        if self.kind == ModelKind::Verbitsky && (n > MAX_VERBITSKY_N || b2 > b2_cap) {
            return Err(ModelError::OutOfBounds(format!(
                "verbitsky models need n ≤ {MAX_VERBITSKY_N} and b2 ≤ {MAX_VERBITSKY_B2} (b2 ≤ {MAX_VERBITSKY_B2_N1} for n = 1), got n = {n}, b2 = {b2}"
            )));
        }
        Ok((n, b2))
    }

    /// The quadratic space: the explicit gram if given, the default
    /// otherwise. Basis vector 0 is σ, 1 is σ̄, the rest are (1,1).
    pub fn quadratic_space(&self) -> Result<QuadraticSpace, ModelError> {
        let (_, b2) = self.dimensions()?;
        let gram = match &self.gram {
            Some(rows) => parse_gram(rows)?,
            None => default_gram(b2),
        };
        let labels = (0..b2)
            .map(|i| match i {
                0 => HodgeTag::Sigma,
                1 => HodgeTag::SigmaBar,
                _ => HodgeTag::Hodge11,
            })
            .collect();
        QuadraticSpace::new(gram, labels)
    }

    pub fn build(&self) -> Result<GradedAlgebraModel, ModelError> {
        match self.kind {
            ModelKind::K3 => build_k3(self),
            ModelKind::Verbitsky => build_verbitsky(self),
        }
    }
}

fn parse_gram(rows: &[Vec<String>]) -> Result<MatrixQ, ModelError> {
    let b = rows.len();
    let mut parsed = Vec::with_capacity(b);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != b {
            return Err(ModelError::InvalidGram(format!("row {r} has {} entries, expected {b}", row.len())));
        }
        let vals = row
            .iter()
            .map(|s| {
                Rational::from_str(s.trim())
                    .map_err(|_| ModelError::InvalidGram(format!("entry {s:?} in row {r} is not a rational p/q")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        parsed.push(vals);
    }
    MatrixQ::from_rows(parsed, b).map_err(|e| ModelError::InvalidGram(e.to_string()))
}

/// Two hyperbolic planes (σ, σ̄) and (β, β∨), then a diagonal block:
/// `(+1, −1 × 17)` for `b2 = 22`, all `−1` otherwise.
pub fn default_gram(b2: usize) -> MatrixQ {
    assert!(b2 >= 4);
    let mut g = MatrixQ::zeros(b2, b2);
    for (a, b) in [(0, 1), (2, 3)] {
        g[(a, b)] = int(1);
        g[(b, a)] = int(1);
    }
    for i in 4..b2 {
        g[(i, i)] = if b2 == 22 && i == 4 { int(1) } else { int(-1) };
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_shape() {
        let s = ModelSpec::from_json(r#"{"kind": "verbitsky", "n": 2, "b2": 5}"#).unwrap();
        assert_eq!(s, ModelSpec::verbitsky(2, 5));
        let k = ModelSpec::from_json(r#"{"kind": "k3"}"#).unwrap();
        assert_eq!(k.dimensions().unwrap(), (1, 22));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(ModelSpec::from_json(r#"{"kind": "k3", "bee2": 22}"#).is_err());
    }

    #[test]
    fn b2_four_is_rejected() {
        let s = ModelSpec { kind: ModelKind::K3, n: Some(1), b2: Some(4), gram: None };
        assert_eq!(s.dimensions(), Err(ModelError::B2IsFour));
        assert!(ModelError::B2IsFour.to_string().contains("b2 = 4"));
    }

    #[test]
    fn desk_scale_bounds() {
        assert!(matches!(ModelSpec::verbitsky(4, 5).dimensions(), Err(ModelError::OutOfBounds(_))));
        assert!(matches!(ModelSpec::verbitsky(2, 9).dimensions(), Err(ModelError::OutOfBounds(_))));
    }

    #[test]
    fn default_gram_signature_for_k3() {
        let g = default_gram(22);
        let positive = (4..22).filter(|&i| g[(i, i)] > int(0)).count();
        // two hyperbolic planes contribute one positive direction each
        assert_eq!(positive + 2, 3);
        assert_eq!(g.rank(), 22);
    }

    #[test]
    fn explicit_gram_is_parsed() {
        let mut rows = vec![vec!["0".to_string(); 5]; 5];
        rows[0][1] = "1/2".into();
        rows[1][0] = "1/2".into();
        rows[2][3] = "1".into();
        rows[3][2] = "1".into();
        rows[4][4] = "-3".into();
        let s = ModelSpec { kind: ModelKind::Verbitsky, n: Some(1), b2: Some(5), gram: Some(rows) };
        let q = s.quadratic_space().unwrap();
        assert_eq!(q.gram()[(0, 1)], Rational::new(1.into(), 2.into()));
        let mut bad = s.clone();
        bad.gram.as_mut().unwrap()[4][4] = "x".into();
        assert!(matches!(bad.quadratic_space(), Err(ModelError::InvalidGram(_))));
    }
}
