//! Constructive transversal for squares with at least `0.75 n²` symbols.
//!
//! Each induction step works on the current order-`m` square `A`:
//!
//! 1. classify symbols of `A` as singletons or repetitions;
//! 2. cover every full row and column with a partial transversal;
//! 3. delete the covered rows and columns, leaving `A'`;
//! 4. look for a diagonal of `A'` made of singleton cells of `A`. If one
//!    exists, it completes the cover to a transversal;
//! 5. otherwise some singleton of `A` has more than `m/2` repetitions in its
//!    row or column. Keep it, delete its row and column and continue on the
//!    order-`(m-1)` square, which still has more than `0.75 (m-1)²` symbols.

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matching::{diagonal_or_blocker, BitMatrix, DiagonalOrBlocker};
use crate::square::{CellRef, Square};
use crate::stats::compute_stats;
use crate::transversal::{is_transversal, Transversal};

use super::cover::{cover_full_lines, CaseTag, CoverPlan};
use super::report::{Method, Outcome, SolveReport};

/// What happened at each induction step.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ConstructiveTrace {
    pub steps: Vec<StepTrace>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StepTrace {
    pub order: usize,
    pub symbol_count: usize,
    pub full_rows: usize,
    pub full_cols: usize,
    pub case_tag: CaseTag,
    pub cover_size: usize,
    /// The singleton kept when the singleton diagonal is blocked.
    pub pivot: Option<CellRef>,
}

impl ConstructiveTrace {
    /// Number of steps that had to fall back to deleting a singleton.
    pub fn pivots(&self) -> usize {
        self.steps.iter().filter(|s| s.pivot.is_some()).count()
    }
}

pub fn find_transversal_constructive(square: &Square) -> Result<SolveReport> {
    find_transversal_constructive_traced(square).map(|(report, _)| report)
}

pub fn find_transversal_constructive_traced(square: &Square) -> Result<(SolveReport, ConstructiveTrace)> {
    let start = Instant::now();
    let n = square.n();
    if 4 * square.symbol_count() < 3 * n * n {
        return Err(Error::PreconditionViolated(format!(
            "symbol_count {} < ceil(0.75 n^2) = {} for n = {n}",
            square.symbol_count(),
            (3 * n * n).div_ceil(4)
        )));
    }

    let mut trace = ConstructiveTrace::default();
    let mut current = square.clone();
    // Original row/column index of every row/column of `current`.
    let mut row_map: Vec<usize> = (0..n).collect();
    let mut col_map: Vec<usize> = (0..n).collect();
    let mut kept: Vec<CellRef> = Vec::with_capacity(n);

    let transversal = loop {
        let m = current.n();
        let count = current.symbol_count();
        let dense_enough = if trace.steps.is_empty() {
            4 * count >= 3 * m * m
        } else {
            4 * count > 3 * m * m
        };
        if !dense_enough {
            return Err(Error::AssertionFailure(format!(
                "induction step on order {m} has only {count} symbols"
            )));
        }

        let stats = compute_stats(&current);
        let plan = CoverPlan::new(&current, &stats);
        let cover = cover_full_lines(&current, &plan)?;
        if cover.size() > plan.size_bound() {
            return Err(Error::AssertionFailure(format!(
                "cover of size {} exceeds bound {}",
                cover.size(),
                plan.size_bound()
            )));
        }

        let mut row_used = vec![false; m];
        let mut col_used = vec![false; m];
        for c in cover.cells() {
            row_used[c.row] = true;
            col_used[c.col] = true;
        }
        let (full_r, full_c) = if plan.transposed {
            (&plan.full_cols, &plan.full_rows)
        } else {
            (&plan.full_rows, &plan.full_cols)
        };
        if full_r.iter().any(|&r| !row_used[r]) || full_c.iter().any(|&c| !col_used[c]) {
            return Err(Error::AssertionFailure("a full line survived the cover".into()));
        }

        let rest_rows: Vec<usize> = (0..m).filter(|&r| !row_used[r]).collect();
        let rest_cols: Vec<usize> = (0..m).filter(|&c| !col_used[c]).collect();
        let singles = BitMatrix::from_fn(rest_rows.len(), |i, j| {
            stats.is_singleton_at(&current, rest_rows[i], rest_cols[j])
        });

        let mut step = StepTrace {
            order: m,
            symbol_count: count,
            full_rows: plan.p(),
            full_cols: plan.q(),
            case_tag: plan.case_tag,
            cover_size: cover.size(),
            pivot: None,
        };

        match diagonal_or_blocker(&singles) {
            DiagonalOrBlocker::Diagonal(diag) => {
                trace.steps.push(step);
                let local = cover
                    .cells()
                    .iter()
                    .copied()
                    .chain(diag.iter().map(|d| CellRef::new(rest_rows[d.row], rest_cols[d.col])));
                kept.extend(local.map(|c| CellRef::new(row_map[c.row], col_map[c.col])));
                break Transversal::new(kept);
            }
            DiagonalOrBlocker::Blocker(_) => {
                let pivot = heavy_singleton(&current, &stats).ok_or_else(|| {
                    Error::AssertionFailure(format!(
                        "singleton diagonal blocked on order {m} but no singleton sees more \
                         than m/2 repetitions"
                    ))
                })?;
                step.pivot = Some(pivot);
                trace.steps.push(step);
                kept.push(CellRef::new(row_map[pivot.row], col_map[pivot.col]));
                row_map.remove(pivot.row);
                col_map.remove(pivot.col);
                let rows: Vec<usize> = (0..m).filter(|&r| r != pivot.row).collect();
                let cols: Vec<usize> = (0..m).filter(|&c| c != pivot.col).collect();
                current = current.submatrix(&rows, &cols);
            }
        }
    };

    if !is_transversal(square, &transversal) {
        return Err(Error::AssertionFailure(format!(
            "constructed cells {:?} are not a transversal",
            transversal.cells()
        )));
    }
    let report = SolveReport {
        outcome: Outcome::Found(transversal),
        method: Method::Constructive,
        node_count: trace.steps.len() as u64,
        elapsed: start.elapsed(),
        count: None,
        all: None,
    };
    Ok((report, trace))
}

/// A singleton whose row or column holds more than `m/2` repetition cells;
/// the one with the most such cells, ties by position.
fn heavy_singleton(square: &Square, stats: &crate::stats::SymbolStats) -> Option<CellRef> {
    let m = square.n();
    let reps_in_row: Vec<usize> = (0..m)
        .map(|r| (0..m).filter(|&c| !stats.is_singleton_at(square, r, c)).count())
        .collect();
    let reps_in_col: Vec<usize> = (0..m)
        .map(|c| (0..m).filter(|&r| !stats.is_singleton_at(square, r, c)).count())
        .collect();
    let mut best: Option<(usize, CellRef)> = None;
    for r in 0..m {
        for c in 0..m {
            if !stats.is_singleton_at(square, r, c) {
                continue;
            }
            let reps = reps_in_row[r].max(reps_in_col[c]);
            if 2 * reps > m && best.is_none_or(|(b, _)| reps > b) {
                best = Some((reps, CellRef::new(r, c)));
            }
        }
    }
    best.map(|(_, cell)| cell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::exact::has_transversal;

    #[test]
    fn all_distinct_order_three() {
        let sq = Square::from_flat(3, (0..9).collect()).unwrap();
        let rep = find_transversal_constructive(&sq).unwrap();
        assert!(is_transversal(&sq, rep.outcome.transversal().unwrap()));
    }

    #[test]
    fn z4_below_threshold() {
        assert!(matches!(
            find_transversal_constructive(&Square::cyclic(4)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn order_one_and_two() {
        let sq = Square::new(&[vec![5]]).unwrap();
        assert!(find_transversal_constructive(&sq).unwrap().outcome.is_found());
        // 3 symbols = ceil(0.75 * 4).
        let sq = Square::new(&[vec![0, 1], vec![2, 0]]).unwrap();
        let rep = find_transversal_constructive(&sq).unwrap();
        assert_eq!(
            rep.outcome.transversal().unwrap().cells(),
            &[CellRef::new(0, 1), CellRef::new(1, 0)]
        );
    }

    #[test]
    fn random_dense_squares_agree_with_exact() {
        for seed in 0..400u64 {
            let n = 2 + (seed % 7) as usize;
            let k = (3 * n * n).div_ceil(4) + (seed as usize % 3).min(n * n - (3 * n * n).div_ceil(4));
            let sq = crate::extremal::random_gls(n, k, seed).unwrap();
            let rep = find_transversal_constructive(&sq).unwrap();
            assert!(is_transversal(&sq, rep.outcome.transversal().unwrap()));
            assert!(has_transversal(&sq));
        }
    }
}
