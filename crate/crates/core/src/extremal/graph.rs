use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::square::{tokens, Symbol};

/// A complete graph `K_m` with a color on every edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoredGraph {
    m: usize,
    /// Upper-triangular, row-major over pairs `i < j`.
    colors: Vec<Symbol>,
}

impl EdgeColoredGraph {
    /// Builds from a color function on pairs `i < j` (0-based) and checks
    /// properness.
    pub fn from_fn(m: usize, mut color: impl FnMut(usize, usize) -> Symbol) -> Result<Self> {
        let mut colors = Vec::with_capacity(m * m.saturating_sub(1) / 2);
        for i in 0..m {
            for j in i + 1..m {
                colors.push(color(i, j));
            }
        }
        let g = EdgeColoredGraph { m, colors };
        g.check_proper()?;
        Ok(g)
    }

    /// Builds from `(i, j, color)` triples with 0-based vertices; every edge
    /// must appear exactly once.
    pub fn from_edges(m: usize, edges: &[(usize, usize, Symbol)]) -> Result<Self> {
        let mut colors: Vec<Option<Symbol>> = vec![None; m * m.saturating_sub(1) / 2];
        for &(i, j, c) in edges {
            if i == j || i >= m || j >= m {
                return Err(Error::InfeasibleParams(format!(
                    "edge ({}, {}) is not an edge of K_{m}",
                    i + 1,
                    j + 1
                )));
            }
            let slot = &mut colors[pair_index(m, i.min(j), i.max(j))];
            if slot.replace(c).is_some() {
                return Err(Error::InfeasibleParams(format!("edge ({}, {}) listed twice", i + 1, j + 1)));
            }
        }
        let colors = colors
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InfeasibleParams(format!("not every edge of K_{m} is colored")))?;
        let g = EdgeColoredGraph { m, colors };
        g.check_proper()?;
        Ok(g)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn color(&self, i: usize, j: usize) -> Symbol {
        assert_ne!(i, j, "no loops in K_m");
        self.colors[pair_index(self.m, i.min(j), i.max(j))]
    }

    pub fn color_count(&self) -> usize {
        self.colors.iter().collect::<HashSet<_>>().len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Symbol)> + '_ {
        let m = self.m;
        (0..m)
            .flat_map(move |i| (i + 1..m).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, self.color(i, j)))
    }

    /// Colors renumbered `0..color_count` by first occurrence in edge order.
    pub fn dense_colors(&self) -> Vec<u32> {
        let mut seen: Vec<Symbol> = Vec::new();
        self.colors
            .iter()
            .map(|c| match seen.iter().position(|s| s == c) {
                Some(p) => p as u32,
                None => {
                    seen.push(*c);
                    (seen.len() - 1) as u32
                }
            })
            .collect()
    }

    /// Position of edge `{i, j}` in edge order, i.e. in [`Self::dense_colors`].
    pub fn pair_slot(&self, i: usize, j: usize) -> usize {
        pair_index(self.m, i.min(j), i.max(j))
    }

    pub fn check_proper(&self) -> Result<()> {
        for v in 0..self.m {
            let mut seen: Vec<(Symbol, usize)> = Vec::new();
            for u in (0..self.m).filter(|&u| u != v) {
                let c = self.color(v, u);
                if let Some(&(_, w)) = seen.iter().find(|(s, _)| *s == c) {
                    return Err(Error::NotProper {
                        first: (v.min(w) + 1, v.max(w) + 1),
                        second: (v.min(u) + 1, v.max(u) + 1),
                        color: c,
                    });
                }
                seen.push((c, u));
            }
        }
        Ok(())
    }

    /// `.ecg` text: the vertex count, then one `i j c` line per edge with
    /// 1-based vertices.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.m);
        for (i, j, c) in self.edges() {
            out.push_str(&format!("{} {} {}\n", i + 1, j + 1, c));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            });
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "missing vertex count"))?;
        let toks = tokens(header);
        let m = match toks.as_slice() {
            [(col, tok)] => tok
                .parse::<usize>()
                .map_err(|_| Error::parse(line_no, *col, format!("invalid vertex count `{tok}`")))?,
            _ => return Err(Error::parse(line_no, 1, "first line must hold the vertex count")),
        };
        let mut edges = Vec::new();
        let mut seen = HashSet::new();
        for (line_no, line) in lines {
            let toks = tokens(line);
            if toks.len() != 3 {
                return Err(Error::parse(line_no, 1, "expected `i j color`"));
            }
            let mut vals = [0u64; 3];
            for (k, &(col, tok)) in toks.iter().enumerate() {
                vals[k] = tok.parse::<u64>().map_err(|_| {
                    Error::parse(line_no, col, format!("`{tok}` is not a non-negative integer"))
                })?;
            }
            let (i, j) = (vals[0] as usize, vals[1] as usize);
            if i == 0 || j == 0 || i > m || j > m || i == j {
                return Err(Error::parse(line_no, toks[0].0, format!("({i}, {j}) is not an edge of K_{m}")));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::parse(line_no, toks[0].0, format!("edge ({i}, {j}) repeated")));
            }
            let c = Symbol::try_from(vals[2])
                .map_err(|_| Error::parse(line_no, toks[2].0, "color out of range"))?;
            edges.push((i - 1, j - 1, c));
        }
        if edges.len() != m * m.saturating_sub(1) / 2 {
            return Err(Error::parse(
                line_no,
                1,
                format!("K_{m} needs {} edges, found {}", m * m.saturating_sub(1) / 2, edges.len()),
            ));
        }
        Self::from_edges(m, &edges)
    }
}

fn pair_index(m: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < m);
    i * (2 * m - i - 1) / 2 + (j - i - 1)
}
