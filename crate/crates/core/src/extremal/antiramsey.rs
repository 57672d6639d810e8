//! Reduction from properly edge-colored `K_n` to squares of order `n`, and
//! back from rainbow transversals to rainbow degree-2 edge sets.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::square::{Square, Symbol};
use crate::transversal::{is_transversal, Transversal};

use super::graph::EdgeColoredGraph;

/// Cell `(i, j)` gets the color of `v_i v_j`; the diagonal gets one fresh
/// symbol, one larger than the largest color.
pub fn antiramsey_reduce(g: &EdgeColoredGraph) -> Result<Square> {
    g.check_proper()?;
    let m = g.m();
    let fresh = g.edges().map(|e| e.2 + 1).max().unwrap_or(0);
    let cells = (0..m * m)
        .map(|i| {
            let (r, c) = (i / m, i % m);
            if r == c {
                fresh
            } else {
                g.color(r, c)
            }
        })
        .collect();
    let sq = Square::from_flat(m, cells)
        .map_err(|e| Error::AssertionFailure(format!("reduced square is not proper: {e}")))?;
    if sq.symbol_count() != g.color_count() + usize::from(m > 0) {
        return Err(Error::AssertionFailure("reduced square has the wrong symbol count".into()));
    }
    Ok(sq)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoFactorExtraction {
    /// Edges `(i, j, color)` with 0-based `i < j`, sorted.
    pub edges: Vec<(usize, usize, Symbol)>,
    /// Vertex whose diagonal cell was dropped, if any.
    pub dropped_vertex: Option<usize>,
    pub colors_distinct: bool,
    pub degree_two: bool,
    pub vertices_covered: usize,
}

impl TwoFactorExtraction {
    /// Distinct colors, degree 2 at every covered vertex, and at most one
    /// vertex left out.
    pub fn holds(&self, m: usize) -> bool {
        self.colors_distinct && self.degree_two && self.vertices_covered + 1 >= m
    }
}

/// Maps a rainbow transversal of `antiramsey_reduce(g)` to edges of `g`:
/// the diagonal cell (at most one) is dropped and cell `(k, l)` becomes
/// the edge `v_k v_l`.
pub fn extract_two_factor(t: &Transversal, g: &EdgeColoredGraph) -> Result<TwoFactorExtraction> {
    let m = g.m();
    let reduced = antiramsey_reduce(g)?;
    if !is_transversal(&reduced, t) {
        return Err(Error::PreconditionViolated(
            "not a transversal of the reduced square".into(),
        ));
    }
    let mut edges = Vec::with_capacity(m);
    let mut dropped_vertex = None;
    for cell in t.cells() {
        let (k, l) = (cell.row, cell.col);
        if k == l {
            dropped_vertex = Some(k);
            continue;
        }
        let e = (k.min(l), k.max(l), g.color(k, l));
        if edges.contains(&e) {
            return Err(Error::DegenerateExtraction(e.0 + 1, e.1 + 1));
        }
        edges.push(e);
    }
    edges.sort();
    let mut colors: Vec<Symbol> = edges.iter().map(|e| e.2).collect();
    colors.sort();
    colors.dedup();
    let mut degree = vec![0usize; m];
    for &(i, j, _) in &edges {
        degree[i] += 1;
        degree[j] += 1;
    }
    Ok(TwoFactorExtraction {
        colors_distinct: colors.len() == edges.len(),
        degree_two: degree.iter().all(|&d| d == 0 || d == 2),
        vertices_covered: degree.iter().filter(|&&d| d > 0).count(),
        edges,
        dropped_vertex,
    })
}
