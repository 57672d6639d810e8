//! Exact transversal search: row-by-row backtracking, next row chosen
//! fail-first (fewest admissible cells), with used-column and used-symbol
//! bitsets.

use std::ops::ControlFlow;
use std::time::Instant;

use crate::bitset::BitSet;
use crate::square::{CellRef, Square};
use crate::transversal::Transversal;

use super::report::{Method, Outcome, SolveReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    #[default]
    First,
    Count,
    All,
}

struct Search<'a> {
    square: &'a Square,
    n: usize,
    blocked: Option<&'a BitSet>,
    used_cols: BitSet,
    used_syms: BitSet,
    row_done: Vec<bool>,
    chosen: Vec<CellRef>,
    nodes: u64,
}

impl Search<'_> {
    #[inline]
    fn admissible(&self, r: usize, c: usize) -> bool {
        !self.used_cols.contains(c)
            && !self.used_syms.contains(self.square.id(r, c) as usize)
            && self.blocked.is_none_or(|b| !b.contains(r * self.n + c))
    }

    fn run<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[CellRef]) -> ControlFlow<()>,
    {
        self.nodes += 1;
        if self.chosen.len() == self.n {
            return visit(&self.chosen);
        }
        let mut best: Option<(usize, usize)> = None;
        for r in (0..self.n).filter(|&r| !self.row_done[r]) {
            let options = (0..self.n).filter(|&c| self.admissible(r, c)).count();
            if options == 0 {
                return ControlFlow::Continue(());
            }
            if best.is_none_or(|(_, o)| options < o) {
                best = Some((r, options));
            }
        }
        let (r, _) = best.expect("an open row remains");
        self.row_done[r] = true;
        for c in 0..self.n {
            if !self.admissible(r, c) {
                continue;
            }
            let s = self.square.id(r, c) as usize;
            self.used_cols.insert(c);
            self.used_syms.insert(s);
            self.chosen.push(CellRef::new(r, c));
            let flow = self.run(visit);
            self.chosen.pop();
            self.used_syms.remove(s);
            self.used_cols.remove(c);
            if flow.is_break() {
                self.row_done[r] = false;
                return flow;
            }
        }
        self.row_done[r] = false;
        ControlFlow::Continue(())
    }
}

/// Visits every transversal of `square` avoiding the `blocked` cells
/// (row-major cell indices). Returns the number of search nodes expanded.
pub fn for_each_transversal<F>(square: &Square, blocked: Option<&BitSet>, mut visit: F) -> u64
where
    F: FnMut(&[CellRef]) -> ControlFlow<()>,
{
    let n = square.n();
    let mut search = Search {
        square,
        n,
        blocked,
        used_cols: BitSet::new(n),
        used_syms: BitSet::new(square.symbol_count()),
        row_done: vec![false; n],
        chosen: Vec::with_capacity(n),
        nodes: 0,
    };
    let _ = search.run(&mut visit);
    search.nodes
}

/// Exact transversal search.
///
/// `First` stops at the first transversal; `Count` and `All` traverse the
/// whole tree and additionally report the number (and list) of
/// transversals. Deterministic for a fixed input.
pub fn find_transversal_exact(square: &Square, mode: SearchMode) -> SolveReport {
    let start = Instant::now();
    let mut first: Option<Transversal> = None;
    let mut count = 0u64;
    let mut all = Vec::new();
    let nodes = for_each_transversal(square, None, |cells| {
        count += 1;
        if first.is_none() {
            first = Some(Transversal::new(cells.to_vec()));
        }
        match mode {
            SearchMode::First => ControlFlow::Break(()),
            SearchMode::Count => ControlFlow::Continue(()),
            SearchMode::All => {
                all.push(Transversal::new(cells.to_vec()));
                ControlFlow::Continue(())
            }
        }
    });
    SolveReport {
        outcome: first.map_or(Outcome::NotFound, Outcome::Found),
        method: Method::Exact,
        node_count: nodes,
        elapsed: start.elapsed(),
        count: (mode != SearchMode::First).then_some(count),
        all: (mode == SearchMode::All).then_some(all),
    }
}

/// True iff the square has a transversal.
pub fn has_transversal(square: &Square) -> bool {
    find_transversal_exact(square, SearchMode::First).outcome.is_found()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transversal::is_transversal;

    /// Every permutation of columns, checked for distinct symbols.
    fn brute_force_count(square: &Square) -> u64 {
        fn go(sq: &Square, r: usize, cols: &mut Vec<bool>, syms: &mut Vec<u32>) -> u64 {
            let n = sq.n();
            if r == n {
                return 1;
            }
            let mut total = 0;
            for c in 0..n {
                let s = sq.get(r, c);
                if !cols[c] && !syms.contains(&s) {
                    cols[c] = true;
                    syms.push(s);
                    total += go(sq, r + 1, cols, syms);
                    syms.pop();
                    cols[c] = false;
                }
            }
            total
        }
        go(square, 0, &mut vec![false; square.n()], &mut Vec::new())
    }

    #[test]
    fn z3_has_three_transversals() {
        let sq = Square::cyclic(3);
        assert_eq!(brute_force_count(&sq), 3);
        let rep = find_transversal_exact(&sq, SearchMode::First);
        let t = rep.outcome.transversal().unwrap();
        assert!(is_transversal(&sq, t));
        assert_eq!(
            find_transversal_exact(&sq, SearchMode::Count).count,
            Some(3)
        );
        let all = find_transversal_exact(&sq, SearchMode::All).all.unwrap();
        assert_eq!(all.len(), 3);
        assert!(all.contains(&Transversal::new(vec![
            CellRef::new(0, 0),
            CellRef::new(1, 1),
            CellRef::new(2, 2)
        ])));
    }

    #[test]
    fn z4_has_none() {
        let sq = Square::cyclic(4);
        assert_eq!(brute_force_count(&sq), 0);
        let rep = find_transversal_exact(&sq, SearchMode::First);
        assert_eq!(rep.outcome, Outcome::NotFound);
    }

    #[test]
    fn all_distinct_first_is_main_diagonal() {
        let sq = Square::from_flat(4, (0..16).collect()).unwrap();
        let rep = find_transversal_exact(&sq, SearchMode::First);
        let t = rep.outcome.transversal().unwrap();
        assert_eq!(t.cells(), &(0..4).map(|i| CellRef::new(i, i)).collect::<Vec<_>>()[..]);
        assert_eq!(find_transversal_exact(&sq, SearchMode::Count).count, Some(24));
    }

    #[test]
    fn agrees_with_brute_force_on_random_squares() {
        for seed in 0..300u64 {
            let n = 1 + (seed % 6) as usize;
            let k = n + (seed as usize * 7) % (n * n - n + 1);
            let sq = crate::extremal::random_gls(n, k, seed).unwrap();
            let rep = find_transversal_exact(&sq, SearchMode::Count);
            assert_eq!(rep.count, Some(brute_force_count(&sq)), "seed {seed}");
        }
    }

    #[test]
    fn blocked_cells_are_avoided() {
        let sq = Square::cyclic(3);
        let mut blocked = BitSet::new(9);
        blocked.insert(0);
        let mut seen = 0;
        for_each_transversal(&sq, Some(&blocked), |cells| {
            assert!(!cells.contains(&CellRef::new(0, 0)));
            seen += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(seen, 2);
    }
}
