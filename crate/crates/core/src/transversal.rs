use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::square::{CellRef, Square, Symbol};

/// Cells with pairwise distinct rows, columns and symbols.
///
/// Cells are kept sorted by row, then column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PartialTransversal {
    cells: Vec<CellRef>,
}

/// A partial transversal of size `n`.
pub type Transversal = PartialTransversal;

impl PartialTransversal {
    pub fn new(mut cells: Vec<CellRef>) -> Self {
        cells.sort();
        PartialTransversal { cells }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn cells(&self) -> &[CellRef] {
        &self.cells
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_full(&self, square: &Square) -> bool {
        self.size() == square.n()
    }

    pub fn push(&mut self, cell: CellRef) {
        let at = self.cells.partition_point(|c| *c < cell);
        self.cells.insert(at, cell);
    }

    pub fn extend(&mut self, other: &PartialTransversal) {
        for &c in &other.cells {
            self.push(c);
        }
    }

    pub fn transposed(&self) -> Self {
        Self::new(self.cells.iter().map(|c| c.transposed()).collect())
    }

    pub fn symbols(&self, square: &Square) -> Vec<Symbol> {
        self.cells.iter().map(|&c| square.at(c)).collect()
    }

    /// `[row, col, symbol]` triples, 1-based coordinates.
    pub fn triples(&self, square: &Square) -> Vec<[u64; 3]> {
        self.cells
            .iter()
            .map(|&c| [c.row as u64 + 1, c.col as u64 + 1, square.at(c) as u64])
            .collect()
    }
}

/// The first condition a candidate partial transversal breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Violation {
    RepeatedRow(usize),
    RepeatedCol(usize),
    RepeatedSymbol(Symbol),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RepeatedRow(r) => write!(f, "row {} repeated", r + 1),
            Violation::RepeatedCol(c) => write!(f, "column {} repeated", c + 1),
            Violation::RepeatedSymbol(s) => write!(f, "symbol {s} repeated"),
        }
    }
}

/// Checks that `cells` have pairwise distinct rows, columns and symbols.
///
/// Returns `Ok(None)` when they do, otherwise the first violation in scan
/// order. Out-of-range cells are an error.
pub fn verify_partial_transversal(square: &Square, cells: &[CellRef]) -> Result<Option<Violation>> {
    for &c in cells {
        square.check_cell(c)?;
    }
    let mut rows = HashSet::new();
    let mut cols = HashSet::new();
    let mut syms = HashSet::new();
    for &c in cells {
        if !rows.insert(c.row) {
            return Ok(Some(Violation::RepeatedRow(c.row)));
        }
        if !cols.insert(c.col) {
            return Ok(Some(Violation::RepeatedCol(c.col)));
        }
        let s = square.at(c);
        if !syms.insert(s) {
            return Ok(Some(Violation::RepeatedSymbol(s)));
        }
    }
    Ok(None)
}

/// True iff `t` is a transversal of `square` (size `n`, rainbow).
pub fn is_transversal(square: &Square, t: &PartialTransversal) -> bool {
    t.size() == square.n() && matches!(verify_partial_transversal(square, t.cells()), Ok(None))
}
