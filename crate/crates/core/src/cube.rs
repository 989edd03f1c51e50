//! The perverse-Hodge cube `(i, k, d) ↦ h^{i,k,d}` and its JSON form
//! `{"n": int, "entries": [{"i": int, "k": int, "d": int, "h": int}, …]}`,
//! entries sorted by `(d, k, i)` with zeros omitted.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum CubeError {
    #[error("cube JSON does not parse: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid cube: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubeEntry {
    pub i: i64,
    pub k: i64,
    pub d: i64,
    pub h: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CubeDoc {
    n: usize,
    entries: Vec<CubeEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerverseHodgeCube {
    n: usize,
    // keyed by (d, k, i) so iteration follows the serialized order
    entries: BTreeMap<(i64, i64, i64), u64>,
}

impl PerverseHodgeCube {
    pub fn new(n: usize) -> Self {
        PerverseHodgeCube { n, entries: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: i64, k: i64, d: i64) -> u64 {
        self.entries.get(&(d, k, i)).copied().unwrap_or(0)
    }

    /// Sets an entry; zero removes it. Panics for `d` outside `[0, 2n]`.
    pub fn set(&mut self, i: i64, k: i64, d: i64, h: u64) {
        assert!((0..=2 * self.n as i64).contains(&d), "slice d = {d} outside [0, {}]", 2 * self.n);
        if h == 0 {
            self.entries.remove(&(d, k, i));
        } else {
            self.entries.insert((d, k, i), h);
        }
    }

    /// Nonzero entries in `(d, k, i)` order.
    pub fn entries(&self) -> impl Iterator<Item = CubeEntry> + '_ {
        self.entries.iter().map(|(&(d, k, i), &h)| CubeEntry { i, k, d, h })
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Nonzero entries of the slice `d`, as `(i, k, h)`.
    pub fn slice(&self, d: i64) -> Vec<(i64, i64, u64)> {
        self.entries
            .range((d, i64::MIN, i64::MIN)..=(d, i64::MAX, i64::MAX))
            .map(|(&(_, k, i), &h)| (i, k, h))
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut out = format!("{{\n  \"n\": {},\n  \"entries\": [", self.n);
        for (idx, e) in self.entries().enumerate() {
            let sep = if idx == 0 { "" } else { "," };
            write!(out, "{sep}\n    {{\"i\":{},\"k\":{},\"d\":{},\"h\":{}}}", e.i, e.k, e.d, e.h).unwrap();
        }
        if !self.is_empty() {
            out.push_str("\n  ");
        }
        out.push_str("]\n}\n");
        out
    }

    /// Parses the JSON form. Entries may come in any order and zeros are
    /// dropped; duplicates and slices outside `[0, 2n]` are rejected.
    pub fn from_json(text: &str) -> Result<Self, CubeError> {
        let doc: CubeDoc = serde_json::from_str(text)?;
        let mut cube = PerverseHodgeCube::new(doc.n);
        let top = 2 * doc.n as i64;
        for e in doc.entries {
            if !(0..=top).contains(&e.d) {
                return Err(CubeError::Invalid(format!("entry ({}, {}, {}) has d outside [0, {top}]", e.i, e.k, e.d)));
            }
            if cube.entries.contains_key(&(e.d, e.k, e.i)) {
                return Err(CubeError::Invalid(format!("duplicate entry ({}, {}, {})", e.i, e.k, e.d)));
            }
            cube.set(e.i, e.k, e.d, e.h);
        }
        Ok(cube)
    }
}

/// Hodge numbers and Betti numbers read off a cube.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiamondAndBetti {
    /// `hodge[p][q] = h^{p,q}` for `0 ≤ p, q ≤ 2n`.
    pub hodge: Vec<Vec<u64>>,
    /// `b_0, …, b_{4n}`; odd entries are zero.
    pub betti: Vec<u64>,
}

impl DiamondAndBetti {
    /// Rows of the Hodge diamond: row `m` lists `h^{p, m−p}` for
    /// decreasing `p`.
    pub fn diamond_rows(&self) -> Vec<Vec<u64>> {
        let size = self.hodge.len();
        (0..self.betti.len())
            .map(|m| (0..=m).rev().filter(|&p| p < size && m - p < size).map(|p| self.hodge[p][m - p]).collect())
            .collect()
    }
}

/// `h^{p,q} = Σ_k h^{p−d, k, d}` with `d = (p+q)/2`, and
/// `b_{2d} = Σ_{i,k} h^{i,k,d}`.
pub fn diamond_and_betti(cube: &PerverseHodgeCube) -> DiamondAndBetti {
    let n = cube.n() as i64;
    let size = (2 * n + 1) as usize;
    let mut hodge = vec![vec![0u64; size]; size];
    let mut betti = vec![0u64; (4 * n + 1) as usize];
    for e in cube.entries() {
        let p = e.d + e.i;
        let q = e.d - e.i;
        if (0..size as i64).contains(&p) && (0..size as i64).contains(&q) {
            hodge[p as usize][q as usize] += e.h;
        }
        betti[2 * e.d as usize] += e.h;
    }
    DiamondAndBetti { hodge, betti }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3_like() -> PerverseHodgeCube {
        let mut c = PerverseHodgeCube::new(1);
        c.set(0, 0, 0, 1);
        c.set(0, 0, 2, 1);
        c.set(0, 0, 1, 18);
        for (i, k) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            c.set(i, k, 1, 1);
        }
        c
    }

    #[test]
    fn json_round_trip_is_stable() {
        let c = k3_like();
        let text = c.to_json();
        assert!(text.contains(r#"{"i":0,"k":0,"d":1,"h":18}"#));
        let back = PerverseHodgeCube::from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn entries_are_sorted_by_d_then_k_then_i() {
        let keys: Vec<(i64, i64, i64)> = k3_like().entries().map(|e| (e.d, e.k, e.i)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn zeros_are_dropped_and_bad_slices_rejected() {
        let c = PerverseHodgeCube::from_json(r#"{"n":1,"entries":[{"i":0,"k":0,"d":0,"h":0}]}"#).unwrap();
        assert!(c.is_empty());
        assert!(PerverseHodgeCube::from_json(r#"{"n":1,"entries":[{"i":0,"k":0,"d":3,"h":1}]}"#).is_err());
        let dup = r#"{"n":1,"entries":[{"i":0,"k":0,"d":0,"h":1},{"i":0,"k":0,"d":0,"h":1}]}"#;
        assert!(PerverseHodgeCube::from_json(dup).is_err());
    }

    #[test]
    fn empty_cube_gives_zeros() {
        let r = diamond_and_betti(&PerverseHodgeCube::new(0));
        assert_eq!(r.betti, vec![0]);
        assert_eq!(r.hodge, vec![vec![0]]);
    }

    #[test]
    fn k3_like_diamond() {
        let r = diamond_and_betti(&k3_like());
        assert_eq!(r.betti, vec![1, 0, 22, 0, 1]);
        assert_eq!(r.diamond_rows(), vec![vec![1], vec![0, 0], vec![1, 20, 1], vec![0, 0], vec![1]]);
    }
}
