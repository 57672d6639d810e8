//! Partition of a square into `n` pairwise disjoint transversals.

use std::ops::ControlFlow;

use crate::bitset::BitSet;
use crate::square::Square;
use crate::transversal::Transversal;

use super::exact::for_each_transversal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    /// `n` disjoint transversals covering every cell.
    Found(Vec<Transversal>),
    /// No decomposition exists; carries a largest family of pairwise
    /// disjoint transversals.
    Infeasible {
        max_disjoint: usize,
        packing: Vec<Transversal>,
    },
}

impl Decomposition {
    pub fn is_found(&self) -> bool {
        matches!(self, Decomposition::Found(_))
    }
}

/// Exhaustive search for a decomposition into `n` disjoint transversals.
///
/// Every transversal meets row 1 exactly once, so transversals are grouped
/// by their row-1 column and at most one is taken per group. The search
/// maximizes the number of pairwise disjoint transversals and stops as soon
/// as `n` are found. Practical up to order 6 or 7.
pub fn decompose_into_transversals(square: &Square) -> Decomposition {
    let n = square.n();
    let mut groups: Vec<Vec<(Transversal, BitSet)>> = vec![Vec::new(); n];
    for_each_transversal(square, None, |cells| {
        let mut mask = BitSet::new(n * n);
        for c in cells {
            mask.insert(c.row * n + c.col);
        }
        let t = Transversal::new(cells.to_vec());
        groups[t.cells()[0].col].push((t, mask));
        ControlFlow::Continue(())
    });

    let mut search = Packing {
        groups: &groups,
        n,
        chosen: Vec::new(),
        best: Vec::new(),
    };
    search.run(0, &mut BitSet::new(n * n));
    let best: Vec<Transversal> = search.best.iter().map(|&(g, i)| groups[g][i].0.clone()).collect();
    if best.len() == n {
        Decomposition::Found(best)
    } else {
        Decomposition::Infeasible {
            max_disjoint: best.len(),
            packing: best,
        }
    }
}

struct Packing<'a> {
    groups: &'a [Vec<(Transversal, BitSet)>],
    n: usize,
    chosen: Vec<(usize, usize)>,
    best: Vec<(usize, usize)>,
}

impl Packing<'_> {
    /// Returns true once a full decomposition has been found.
    fn run(&mut self, group: usize, used: &mut BitSet) -> bool {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
            if self.best.len() == self.n {
                return true;
            }
        }
        if group == self.n || self.chosen.len() + (self.n - group) <= self.best.len() {
            return false;
        }
        for (i, (_, mask)) in self.groups[group].iter().enumerate() {
            if mask.intersects(used) {
                continue;
            }
            used.union_with(mask);
            self.chosen.push((group, i));
            let done = self.run(group + 1, used);
            self.chosen.pop();
            used.difference_with(mask);
            if done {
                return true;
            }
        }
        self.run(group + 1, used)
    }
}
