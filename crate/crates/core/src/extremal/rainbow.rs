//! Exhaustive searches for rainbow 1-factors and rainbow 2-factors in
//! properly edge-colored complete graphs.

use serde::Serialize;

use crate::error::{Error, Result};

use super::graph::EdgeColoredGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FactorOutcome {
    /// Edges `(i, j)` with 0-based `i < j`, sorted.
    Found(Vec<(usize, usize)>),
    NotFound,
}

impl FactorOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, FactorOutcome::Found(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorSearch {
    pub outcome: FactorOutcome,
    pub nodes: u64,
}

/// Searches for a rainbow subgraph in which every vertex it touches has
/// degree `factor_degree`.
///
/// Degree 1 asks for a perfect matching. Degree 2 asks for vertex-disjoint
/// cycles of length at least 3 covering at least `min_vertices` vertices.
/// Both searches are exhaustive, so `NotFound` is a proof of absence;
/// running time grows quickly beyond a dozen vertices.
pub fn rainbow_factor_search(g: &EdgeColoredGraph, factor_degree: u8, min_vertices: usize) -> Result<FactorSearch> {
    g.check_proper()?;
    let m = g.m();
    let dense = g.dense_colors();
    let k = dense.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut s = State {
        g,
        dense,
        used_color: vec![false; k],
        taken: vec![false; m],
        edges: Vec::new(),
        nodes: 0,
    };
    let found = match factor_degree {
        1 => {
            if m % 2 == 1 {
                return Err(Error::OddVertices(m));
            }
            s.matching()
        }
        2 => {
            if min_vertices > m {
                return Err(Error::InfeasibleParams(format!(
                    "min_vertices {min_vertices} exceeds the vertex count {m}"
                )));
            }
            let mut path = Vec::new();
            s.cycles(m - min_vertices, &mut path)
        }
        d => return Err(Error::InfeasibleParams(format!("factor degree must be 1 or 2, got {d}"))),
    };
    let outcome = if found {
        let mut edges = s.edges.clone();
        edges.sort();
        FactorOutcome::Found(edges)
    } else {
        FactorOutcome::NotFound
    };
    Ok(FactorSearch { outcome, nodes: s.nodes })
}

/// Independent check of a claimed factor.
pub fn verify_factor(g: &EdgeColoredGraph, edges: &[(usize, usize)], factor_degree: u8, min_vertices: usize) -> bool {
    let m = g.m();
    let mut degree = vec![0usize; m];
    let mut colors = Vec::new();
    for &(i, j) in edges {
        if i == j || i >= m || j >= m {
            return false;
        }
        degree[i] += 1;
        degree[j] += 1;
        colors.push(g.color(i, j));
    }
    let mut distinct = colors.clone();
    distinct.sort();
    distinct.dedup();
    let mut pairs: Vec<(usize, usize)> = edges.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
    pairs.sort();
    pairs.dedup();
    let d = factor_degree as usize;
    let covered = degree.iter().filter(|&&x| x > 0).count();
    distinct.len() == colors.len()
        && pairs.len() == edges.len()
        && degree.iter().all(|&x| x == 0 || x == d)
        && if d == 1 { covered == m } else { covered >= min_vertices }
}

struct State<'a> {
    g: &'a EdgeColoredGraph,
    dense: Vec<u32>,
    used_color: Vec<bool>,
    taken: Vec<bool>,
    edges: Vec<(usize, usize)>,
    nodes: u64,
}

impl State<'_> {
    fn color(&self, i: usize, j: usize) -> usize {
        self.dense[self.g.pair_slot(i, j)] as usize
    }

    fn take_edge(&mut self, i: usize, j: usize) {
        let c = self.color(i, j);
        self.used_color[c] = true;
        self.edges.push((i.min(j), i.max(j)));
    }

    fn drop_edge(&mut self, i: usize, j: usize) {
        let c = self.color(i, j);
        self.used_color[c] = false;
        self.edges.pop();
    }

    fn matching(&mut self) -> bool {
        self.nodes += 1;
        let Some(v) = self.taken.iter().position(|&t| !t) else {
            return true;
        };
        self.taken[v] = true;
        for u in v + 1..self.g.m() {
            if self.taken[u] || self.used_color[self.color(v, u)] {
                continue;
            }
            self.taken[u] = true;
            self.take_edge(v, u);
            if self.matching() {
                return true;
            }
            self.drop_edge(v, u);
            self.taken[u] = false;
        }
        self.taken[v] = false;
        false
    }

    /// Cycles are rooted at their smallest vertex and traversed so that the
    /// second vertex is smaller than the last, which fixes the direction.
    fn cycles(&mut self, skips_left: usize, path: &mut Vec<usize>) -> bool {
        self.nodes += 1;
        let m = self.g.m();
        if let Some(&last) = path.last() {
            let root = path[0];
            if path.len() >= 3 && path[1] < last && !self.used_color[self.color(last, root)] {
                self.take_edge(last, root);
                let closed = std::mem::take(path);
                if self.cycles(skips_left, path) {
                    return true;
                }
                *path = closed;
                self.drop_edge(last, root);
            }
            for u in root + 1..m {
                if self.taken[u] || self.used_color[self.color(last, u)] {
                    continue;
                }
                self.taken[u] = true;
                self.take_edge(last, u);
                path.push(u);
                if self.cycles(skips_left, path) {
                    return true;
                }
                path.pop();
                self.drop_edge(last, u);
                self.taken[u] = false;
            }
            return false;
        }
        let Some(v) = self.taken.iter().position(|&t| !t) else {
            return true;
        };
        self.taken[v] = true;
        path.push(v);
        if self.cycles(skips_left, path) {
            return true;
        }
        path.pop();
        if skips_left > 0 && self.cycles(skips_left - 1, path) {
            return true;
        }
        self.taken[v] = false;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::construct::{circle_factorization, proper_coloring};

    #[test]
    fn k4_one_factorization_has_no_rainbow_matching() {
        let g = circle_factorization(4);
        let res = rainbow_factor_search(&g, 1, 4).unwrap();
        assert_eq!(res.outcome, FactorOutcome::NotFound);
    }

    #[test]
    fn k6_matchings_found() {
        for seed in 0..50 {
            let colors = 5 + (seed as usize % 11);
            let g = proper_coloring(6, colors, seed).unwrap();
            let FactorOutcome::Found(edges) = rainbow_factor_search(&g, 1, 6).unwrap().outcome else {
                panic!("seed {seed}: no rainbow perfect matching");
            };
            assert!(verify_factor(&g, &edges, 1, 6));
        }
    }

    #[test]
    fn odd_order_rejected_for_matchings() {
        let g = circle_factorization(5);
        assert!(matches!(rainbow_factor_search(&g, 1, 5), Err(Error::OddVertices(5))));
    }

    #[test]
    fn two_factors_verify() {
        for m in 3..=7 {
            let g = circle_factorization(m);
            let res = rainbow_factor_search(&g, 2, m - 1).unwrap();
            if let FactorOutcome::Found(edges) = res.outcome {
                assert!(verify_factor(&g, &edges, 2, m - 1));
            }
        }
    }

    #[test]
    fn k3_two_factor_is_the_triangle() {
        let g = circle_factorization(3);
        let res = rainbow_factor_search(&g, 2, 3).unwrap();
        assert_eq!(res.outcome, FactorOutcome::Found(vec![(0, 1), (0, 2), (1, 2)]));
    }
}
