//! The square data model: validation, accessors and the `.sq` text format.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Symbol = u32;

/// A cell position. Stored 0-based; displayed and serialized 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CellRef {
    pub row: usize,
    pub col: usize,
}

impl CellRef {
    pub const fn new(row: usize, col: usize) -> Self {
        CellRef { row, col }
    }

    /// Builds a cell from 1-based coordinates.
    pub fn one_based(row: usize, col: usize) -> Self {
        assert!(row >= 1 && col >= 1, "1-based coordinates start at 1");
        CellRef::new(row - 1, col - 1)
    }

    pub fn transposed(self) -> Self {
        CellRef::new(self.col, self.row)
    }
}

impl fmt::Display for CellRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row + 1, self.col + 1)
    }
}

/// An order-`n` generalized Latin square: every symbol appears at most once
/// in each row and at most once in each column.
///
/// Symbols are opaque. Alongside the original values the square keeps a
/// dense relabeling `0..symbol_count` assigned by first occurrence in
/// row-major order, which is what the solvers index on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Square {
    n: usize,
    cells: Vec<Symbol>,
    ids: Vec<u32>,
    labels: Vec<Symbol>,
}

impl fmt::Debug for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Square(n={}, symbols={}, rows=", self.n, self.symbol_count())?;
        f.debug_list().entries(self.rows()).finish()?;
        write!(f, ")")
    }
}

/// Serialized as its list of rows.
impl Serialize for Square {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.rows())
    }
}

/// Validates a row-major grid and builds a [`Square`].
pub fn validate_square(grid: &[Vec<Symbol>]) -> Result<Square> {
    let n = grid.len();
    if n == 0 {
        return Err(Error::NotSquare("empty grid".into()));
    }
    for (i, row) in grid.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                row.len(),
                n
            )));
        }
    }
    Square::from_flat(n, grid.iter().flatten().copied().collect())
}

impl Square {
    pub fn new(grid: &[Vec<Symbol>]) -> Result<Self> {
        validate_square(grid)
    }

    /// Builds a square from `n * n` row-major entries.
    pub fn from_flat(n: usize, cells: Vec<Symbol>) -> Result<Self> {
        if n == 0 || cells.len() != n * n {
            return Err(Error::NotSquare(format!(
                "{} entries cannot form a square of order {}",
                cells.len(),
                n
            )));
        }
        let mut index: HashMap<Symbol, u32> = HashMap::new();
        let mut labels = Vec::new();
        let ids: Vec<u32> = cells
            .iter()
            .map(|&s| {
                *index.entry(s).or_insert_with(|| {
                    labels.push(s);
                    (labels.len() - 1) as u32
                })
            })
            .collect();

        let k = labels.len();
        let mut seen = vec![usize::MAX; k];
        for r in 0..n {
            for c in 0..n {
                let id = ids[r * n + c] as usize;
                if seen[id] == r {
                    return Err(Error::RowDuplicate {
                        row: r + 1,
                        symbol: labels[id],
                    });
                }
                seen[id] = r;
            }
        }
        seen.fill(usize::MAX);
        for c in 0..n {
            for r in 0..n {
                let id = ids[r * n + c] as usize;
                if seen[id] == c {
                    return Err(Error::ColDuplicate {
                        col: c + 1,
                        symbol: labels[id],
                    });
                }
                seen[id] = c;
            }
        }
        Ok(Square {
            n,
            cells,
            ids,
            labels,
        })
    }

    /// Cayley table of the cyclic group Z_n: entry `(r + c) mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "order must be positive");
        let cells = (0..n)
            .flat_map(|r| (0..n).map(move |c| ((r + c) % n) as Symbol))
            .collect();
        Square::from_flat(n, cells).expect("cyclic table is a Latin square")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn symbol_count(&self) -> usize {
        self.labels.len()
    }

    /// Original symbol at `(r, c)`, 0-based.
    pub fn get(&self, r: usize, c: usize) -> Symbol {
        self.cells[r * self.n + c]
    }

    pub fn at(&self, cell: CellRef) -> Symbol {
        self.get(cell.row, cell.col)
    }

    /// Dense symbol id at `(r, c)`.
    pub fn id(&self, r: usize, c: usize) -> u32 {
        self.ids[r * self.n + c]
    }

    pub fn cells(&self) -> &[Symbol] {
        &self.cells
    }

    /// Row-major dense ids.
    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    /// Original symbol for a dense id.
    pub fn label(&self, id: u32) -> Symbol {
        self.labels[id as usize]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Symbol]> {
        self.cells.chunks(self.n)
    }

    pub fn to_grid(&self) -> Vec<Vec<Symbol>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn contains(&self, cell: CellRef) -> bool {
        cell.row < self.n && cell.col < self.n
    }

    pub fn check_cell(&self, cell: CellRef) -> Result<()> {
        if self.contains(cell) {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                row: cell.row + 1,
                col: cell.col + 1,
                n: self.n,
            })
        }
    }

    pub fn transpose(&self) -> Square {
        let n = self.n;
        let cells = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .map(|(r, c)| self.get(c, r))
            .collect();
        Square::from_flat(n, cells).expect("transpose preserves validity")
    }

    /// Square with symbols replaced by their first-occurrence ids.
    pub fn normalized(&self) -> Square {
        Square::from_flat(self.n, self.ids.clone()).expect("relabeling preserves validity")
    }

    /// The sub-square on the given rows and columns (in the given order),
    /// keeping the original symbols.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Square {
        assert_eq!(rows.len(), cols.len(), "submatrix must be square");
        let cells = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self.get(r, c))
            .collect();
        Square::from_flat(rows.len(), cells).expect("sub-array of a valid square is valid")
    }

    /// Canonical text serialization: symbols renumbered by first occurrence.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for row in self.ids.chunks(self.n) {
            let line: Vec<String> = row.iter().map(|s| s.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the `.sq` text format: `#` comment lines, the order `n`, then
    /// `n` rows of `n` whitespace-separated non-negative integers.
    pub fn parse(text: &str) -> Result<Square> {
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
            .ok_or_else(|| Error::parse(1, 1, "missing order line"))?;
        let header_tokens = tokens(header);
        let n = match header_tokens.as_slice() {
            [(col, tok)] => tok
                .parse::<usize>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::parse(line_no, *col, format!("invalid order `{tok}`")))?,
            [] => return Err(Error::parse(line_no, 1, "missing order")),
            [_, (col, _), ..] => {
                return Err(Error::parse(line_no, *col, "order line must hold one integer"))
            }
        };
        let mut grid = Vec::with_capacity(n);
        for _ in 0..n {
            let (line_no, line) = lines.next().ok_or_else(|| {
                Error::parse(line_no + grid.len() + 1, 1, format!("expected {n} rows"))
            })?;
            let toks = tokens(line);
            if toks.len() != n {
                let col = toks.get(n).map_or(line.len() + 1, |t| t.0);
                return Err(Error::parse(
                    line_no,
                    col,
                    format!("expected {n} entries, found {}", toks.len()),
                ));
            }
            let mut row = Vec::with_capacity(n);
            for (col, tok) in toks {
                let v = tok.parse::<Symbol>().map_err(|_| {
                    Error::parse(line_no, col, format!("`{tok}` is not a non-negative integer"))
                })?;
                row.push(v);
            }
            grid.push(row);
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::parse(line_no, 1, "trailing data after the last row"));
        }
        validate_square(&grid)
    }
}

/// Whitespace-separated tokens with their 1-based starting column.
pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}
