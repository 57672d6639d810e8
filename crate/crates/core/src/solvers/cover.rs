//! Partial transversals that cover prescribed rows: the greedy for at most
//! `(n + 1) / 2` rows, and the covering of all full rows and columns used
//! by the constructive solver.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::square::{CellRef, Square};
use crate::stats::SymbolStats;
use crate::transversal::{verify_partial_transversal, PartialTransversal};

const COVER_NODE_BUDGET: u64 = 5_000_000;

/// Rows, columns and symbols already taken by a partial transversal.
#[derive(Clone)]
struct Occupancy {
    rows: BitSet,
    cols: BitSet,
    syms: BitSet,
    cells: Vec<CellRef>,
}

impl Occupancy {
    fn new(square: &Square) -> Self {
        let n = square.n();
        Occupancy {
            rows: BitSet::new(n),
            cols: BitSet::new(n),
            syms: BitSet::new(square.symbol_count()),
            cells: Vec::new(),
        }
    }

    fn fits(&self, square: &Square, r: usize, c: usize) -> bool {
        !self.rows.contains(r) && !self.cols.contains(c) && !self.syms.contains(square.id(r, c) as usize)
    }

    fn place(&mut self, square: &Square, r: usize, c: usize) {
        self.rows.insert(r);
        self.cols.insert(c);
        self.syms.insert(square.id(r, c) as usize);
        self.cells.push(CellRef::new(r, c));
    }

    fn unplace(&mut self, square: &Square) {
        let cell = self.cells.pop().expect("nothing to undo");
        self.rows.remove(cell.row);
        self.cols.remove(cell.col);
        self.syms.remove(square.id(cell.row, cell.col) as usize);
    }
}

/// A partial transversal with exactly one cell in each of `rows`.
///
/// Requires `rows.len() ≤ (n + 1) / 2`, under which the first admissible
/// cell of every row always exists. Should the greedy ever stall, a bounded
/// backtracking search takes over.
pub fn greedy_partial_transversal(square: &Square, rows: &[usize]) -> Result<PartialTransversal> {
    let n = square.n();
    if 2 * rows.len() > n + 1 {
        return Err(Error::PreconditionViolated(format!(
            "{} rows requested but at most (n+1)/2 = {} are guaranteed for n = {n}",
            rows.len(),
            n.div_ceil(2)
        )));
    }
    let mut distinct = rows.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != rows.len() || distinct.last().is_some_and(|&r| r >= n) {
        return Err(Error::PreconditionViolated("rows must be distinct and in range".into()));
    }
    let mut occ = Occupancy::new(square);
    for &r in &distinct {
        match (0..n).find(|&c| occ.fits(square, r, c)) {
            Some(c) => occ.place(square, r, c),
            None => {
                let mut occ = Occupancy::new(square);
                let mut budget = COVER_NODE_BUDGET;
                if !complete_rows(square, &distinct, &mut occ, &mut budget) {
                    return Err(Error::AssertionFailure(format!(
                        "no partial transversal covers rows {distinct:?}"
                    )));
                }
                return Ok(PartialTransversal::new(occ.cells));
            }
        }
    }
    Ok(PartialTransversal::new(occ.cells))
}

fn complete_rows(square: &Square, rows: &[usize], occ: &mut Occupancy, budget: &mut u64) -> bool {
    let Some((&r, rest)) = rows.split_first() else {
        return true;
    };
    for c in 0..square.n() {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        if occ.fits(square, r, c) {
            occ.place(square, r, c);
            if complete_rows(square, rest, occ, budget) {
                return true;
            }
            occ.unplace(square);
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    /// `q ≤ p/2`: all full columns meet the chosen cells of full rows.
    A,
    /// `q > p/2`.
    B,
}

/// The full rows and columns (lines made only of repetition cells) of a
/// square, oriented so that there are at least as many full rows as full
/// columns. When `transposed` is set, `full_rows` and `full_cols` refer to
/// the transposed square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverPlan {
    pub full_rows: Vec<usize>,
    pub full_cols: Vec<usize>,
    pub case_tag: CaseTag,
    pub transposed: bool,
}

impl CoverPlan {
    pub fn new(square: &Square, stats: &SymbolStats) -> Self {
        let n = square.n();
        let rows: Vec<usize> = (0..n)
            .filter(|&r| (0..n).all(|c| !stats.is_singleton_at(square, r, c)))
            .collect();
        let cols: Vec<usize> = (0..n)
            .filter(|&c| (0..n).all(|r| !stats.is_singleton_at(square, r, c)))
            .collect();
        let transposed = cols.len() > rows.len();
        let (full_rows, full_cols) = if transposed { (cols, rows) } else { (rows, cols) };
        let case_tag = if 2 * full_cols.len() <= full_rows.len() {
            CaseTag::A
        } else {
            CaseTag::B
        };
        CoverPlan {
            full_rows,
            full_cols,
            case_tag,
            transposed,
        }
    }

    pub fn p(&self) -> usize {
        self.full_rows.len()
    }

    pub fn q(&self) -> usize {
        self.full_cols.len()
    }

    /// Size bound on the covering partial transversal: `p` in case (a),
    /// `⌈p/2⌉ + q` in case (b).
    pub fn size_bound(&self) -> usize {
        match self.case_tag {
            CaseTag::A => self.p(),
            CaseTag::B => self.p().div_ceil(2) + self.q(),
        }
    }
}

/// A partial transversal meeting every full row and every full column.
///
/// `min(q, ⌊p/2⌋)` cells are first chosen inside the intersection of the
/// full rows and full columns by exact search, then the remaining full rows
/// and columns are completed by bounded backtracking. The result never
/// exceeds [`CoverPlan::size_bound`] cells.
pub fn cover_full_lines(square: &Square, plan: &CoverPlan) -> Result<PartialTransversal> {
    let n = square.n();
    let (p, q) = (plan.p(), plan.q());
    if 2 * p > n + 1 {
        return Err(Error::PreconditionViolated(format!(
            "{p} full rows exceed (n+1)/2 for n = {n}"
        )));
    }
    if q > p {
        return Err(Error::PreconditionViolated(format!(
            "plan not normalized: q = {q} > p = {p}"
        )));
    }
    if p == 0 {
        return Ok(PartialTransversal::empty());
    }
    let work = if plan.transposed {
        square.transpose()
    } else {
        square.clone()
    };
    let k = q.min(p / 2);
    let mut search = CoverSearch {
        square: &work,
        rows: &plan.full_rows,
        cols: &plan.full_cols,
        k,
        bound: plan.size_bound(),
        budget: COVER_NODE_BUDGET,
        occ: Occupancy::new(&work),
    };
    if !search.intersection(0) {
        return Err(Error::AssertionFailure(format!(
            "no partial transversal covers {p} full rows and {q} full columns \
             within {} cells{}",
            plan.size_bound(),
            if search.budget == 0 { " (search budget exhausted)" } else { "" }
        )));
    }
    let cover = PartialTransversal::new(search.occ.cells);
    let cover = if plan.transposed { cover.transposed() } else { cover };
    debug_assert_eq!(verify_partial_transversal(square, cover.cells()), Ok(None));
    Ok(cover)
}

struct CoverSearch<'a> {
    square: &'a Square,
    rows: &'a [usize],
    cols: &'a [usize],
    k: usize,
    bound: usize,
    budget: u64,
    occ: Occupancy,
}

impl CoverSearch<'_> {
    fn tick(&mut self) -> bool {
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        true
    }

    /// Chooses `k` intersection cells, rows of the plan in order.
    fn intersection(&mut self, from: usize) -> bool {
        if self.occ.cells.len() == self.k {
            return self.complete();
        }
        let needed = self.k - self.occ.cells.len();
        if self.rows.len() - from < needed {
            return false;
        }
        for i in from..self.rows.len() {
            let r = self.rows[i];
            for ci in 0..self.cols.len() {
                if !self.tick() {
                    return false;
                }
                let c = self.cols[ci];
                if self.occ.fits(self.square, r, c) {
                    self.occ.place(self.square, r, c);
                    if self.intersection(i + 1) {
                        return true;
                    }
                    self.occ.unplace(self.square);
                }
            }
        }
        false
    }

    /// Covers the remaining full rows, then the remaining full columns.
    fn complete(&mut self) -> bool {
        if self.occ.cells.len() > self.bound {
            return false;
        }
        let n = self.square.n();
        if let Some(&r) = self.rows.iter().find(|&&r| !self.occ.rows.contains(r)) {
            for c in 0..n {
                if !self.tick() {
                    return false;
                }
                if self.occ.fits(self.square, r, c) {
                    self.occ.place(self.square, r, c);
                    if self.complete() {
                        return true;
                    }
                    self.occ.unplace(self.square);
                }
            }
            return false;
        }
        if let Some(&c) = self.cols.iter().find(|&&c| !self.occ.cols.contains(c)) {
            for r in 0..n {
                if !self.tick() {
                    return false;
                }
                if self.occ.fits(self.square, r, c) {
                    self.occ.place(self.square, r, c);
                    if self.complete() {
                        return true;
                    }
                    self.occ.unplace(self.square);
                }
            }
            return false;
        }
        true
    }
}
