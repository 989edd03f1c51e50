//! Text renderings of a cube: ASCII diamonds per slice and a TikZ listing.

use std::fmt::Write as _;

use crate::cube::PerverseHodgeCube;

/// One diamond per slice `d`, rows `k` from top to bottom in decreasing
/// order, columns `i` increasing left to right. Zeros inside the diamond
/// `|i| + |k| ≤ min(d, 2n − d)` print as `·`, cells outside it stay blank
/// unless they carry a nonzero entry.
pub fn render_ascii(cube: &PerverseHodgeCube) -> String {
    if cube.is_empty() {
        return "(empty)\n".to_string();
    }
    let n = cube.n() as i64;
    let width = cube.entries().map(|e| e.h.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for d in 0..=2 * n {
        let slice = cube.slice(d);
        let level = d.min(2 * n - d);
        let r = slice.iter().map(|&(i, k, _)| i.abs().max(k.abs())).fold(level, i64::max);
        if d > 0 {
            out.push('\n');
        }
        writeln!(out, "d = {d}").unwrap();
        for k in (-r..=r).rev() {
            let mut line = String::new();
            for i in -r..=r {
                let h = cube.get(i, k, d);
                let cell = if h != 0 {
                    h.to_string()
                } else if i.abs() + k.abs() <= level {
                    "·".to_string()
                } else {
                    String::new()
                };
                if i > -r {
                    line.push(' ');
                }
                let pad = width.saturating_sub(cell.chars().count());
                line.push_str(&" ".repeat(pad));
                line.push_str(&cell);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
    out
}

/// A standalone TikZ picture with one node `\node at (i,d-n,k) {h};` per
/// nonzero entry, in the order of the cube JSON.
pub fn render_tex(cube: &PerverseHodgeCube) -> String {
    let n = cube.n() as i64;
    let mut out = String::new();
    out.push_str("\\documentclass[tikz]{standalone}\n\\begin{document}\n");
    out.push_str("\\begin{tikzpicture}[x={(1cm,0cm)},y={(0cm,1cm)},z={(0.45cm,0.3cm)}]\n");
    writeln!(out, "  % perverse-Hodge cube, n = {n}; coordinates (i, d-n, k)").unwrap();
    for e in cube.entries() {
        writeln!(out, "  \\node at ({},{},{}) {{{}}};", e.i, e.d - n, e.k, e.h).unwrap();
    }
    out.push_str("\\end{tikzpicture}\n\\end{document}\n");
    out
}
