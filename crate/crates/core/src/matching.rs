//! Bipartite matching on 0/1 matrices and the diagonal / zero-submatrix
//! duality.
//!
//! A square 0/1 matrix of order `n` has an all-1 diagonal exactly when it
//! has no all-0 submatrix of size `x × y` with `x + y ≥ n + 1`. Both sides
//! come out of one maximum matching: either the matching is perfect, or the
//! complement of a minimum vertex cover is such a submatrix.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::square::CellRef;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    rows: Vec<BitSet>,
}

impl BitMatrix {
    pub fn zeros(n: usize) -> Self {
        BitMatrix {
            n,
            rows: vec![BitSet::new(n); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |r, c| r == c)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                if f(r, c) {
                    m.rows[r].insert(c);
                }
            }
        }
        m
    }

    /// Builds from rows of 0/1 values; panics if the rows are not square.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self::from_fn(n, |r, c| rows[r][c] != 0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].contains(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &BitSet {
        &self.rows[r]
    }

    pub fn ones(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        self.rows.iter().map(|r| r.iter().collect()).collect()
    }
}

/// A maximum matching together with a minimum vertex cover of equal size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingResult {
    pub matching: Vec<CellRef>,
    pub cover_rows: Vec<usize>,
    pub cover_cols: Vec<usize>,
}

impl MatchingResult {
    pub fn size(&self) -> usize {
        self.matching.len()
    }

    pub fn cover_size(&self) -> usize {
        self.cover_rows.len() + self.cover_cols.len()
    }
}

/// Maximum matching by augmenting paths (rows scanned in increasing order,
/// columns tried in increasing order) and the König vertex cover obtained
/// from the alternating-reachability set of the unmatched rows.
pub fn max_matching(m: &BitMatrix) -> MatchingResult {
    let n = m.n();
    let adj = m.adjacency();
    let (match_row, match_col) = kuhn(n, n, &adj);

    // Alternating reachability from unmatched rows.
    let mut row_seen = vec![false; n];
    let mut col_seen = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&r| match_row[r].is_none()).collect();
    for &r in &stack {
        row_seen[r] = true;
    }
    while let Some(r) = stack.pop() {
        for &c in &adj[r] {
            if match_row[r] == Some(c) || col_seen[c] {
                continue;
            }
            col_seen[c] = true;
            if let Some(r2) = match_col[c] {
                if !row_seen[r2] {
                    row_seen[r2] = true;
                    stack.push(r2);
                }
            }
        }
    }

    let matching: Vec<CellRef> = (0..n)
        .filter_map(|r| match_row[r].map(|c| CellRef::new(r, c)))
        .collect();
    let cover_rows: Vec<usize> = (0..n).filter(|&r| !row_seen[r]).collect();
    let cover_cols: Vec<usize> = (0..n).filter(|&c| col_seen[c]).collect();
    let result = MatchingResult {
        matching,
        cover_rows,
        cover_cols,
    };
    assert_eq!(
        result.size(),
        result.cover_size(),
        "König equality violated: matching {} vs cover {}",
        result.size(),
        result.cover_size()
    );
    debug_assert!((0..n).all(|r| (0..n).all(|c| {
        !m.get(r, c) || result.cover_rows.contains(&r) || result.cover_cols.contains(&c)
    })));
    result
}

/// Augmenting-path matching. `adj[l]` lists right neighbours of left vertex
/// `l`, repeats allowed.
fn kuhn(n_left: usize, n_right: usize, adj: &[Vec<usize>]) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    fn augment(
        l: usize,
        adj: &[Vec<usize>],
        visited: &mut [bool],
        match_left: &mut [Option<usize>],
        match_right: &mut [Option<usize>],
    ) -> bool {
        for &r in &adj[l] {
            if visited[r] {
                continue;
            }
            visited[r] = true;
            let free = match match_right[r] {
                None => true,
                Some(l2) => augment(l2, adj, visited, match_left, match_right),
            };
            if free {
                match_left[l] = Some(r);
                match_right[r] = Some(l);
                return true;
            }
        }
        false
    }

    let mut match_left = vec![None; n_left];
    let mut match_right = vec![None; n_right];
    let mut visited = vec![false; n_right];
    for l in 0..n_left {
        visited.fill(false);
        augment(l, adj, &mut visited, &mut match_left, &mut match_right);
    }
    (match_left, match_right)
}

/// An all-0 submatrix `rows × cols` with `|rows| + |cols| ≥ n + 1`.
/// Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroSubmatrixCertificate {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl ZeroSubmatrixCertificate {
    pub fn x(&self) -> usize {
        self.rows.len()
    }

    pub fn y(&self) -> usize {
        self.cols.len()
    }

    /// Checks the certificate bit-exactly against `m`.
    pub fn verify(&self, m: &BitMatrix) -> bool {
        let n = m.n();
        self.x() + self.y() > n
            && self.rows.iter().all(|&r| r < n)
            && self.cols.iter().all(|&c| c < n)
            && self
                .rows
                .iter()
                .all(|&r| self.cols.iter().all(|&c| !m.get(r, c)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagonalOrBlocker {
    /// `n` one-cells with distinct rows and columns, sorted by row.
    Diagonal(Vec<CellRef>),
    Blocker(ZeroSubmatrixCertificate),
}

/// Either an all-1 diagonal of `m` or an all-0 submatrix proving none exists.
///
/// The blocker is (uncovered rows) × (uncovered columns) of the König cover.
pub fn diagonal_or_blocker(m: &BitMatrix) -> DiagonalOrBlocker {
    let n = m.n();
    let mm = max_matching(m);
    if mm.size() == n {
        return DiagonalOrBlocker::Diagonal(mm.matching);
    }
    let rows: Vec<usize> = (0..n).filter(|r| !mm.cover_rows.contains(r)).collect();
    let cols: Vec<usize> = (0..n).filter(|c| !mm.cover_cols.contains(c)).collect();
    let cert = ZeroSubmatrixCertificate { rows, cols };
    assert!(cert.verify(m), "extracted blocker does not verify");
    DiagonalOrBlocker::Blocker(cert)
}

/// Perfect matching of a regular bipartite multigraph on `n + n` vertices.
///
/// `adj[l]` lists the right endpoints of left vertex `l` (with repeats for
/// parallel edges). Returns the right partner of every left vertex.
pub fn regular_bipartite_pm(adj: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = adj.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let d = adj[0].len();
    if d == 0 {
        return Err(Error::NotRegular("degree must be at least 1".into()));
    }
    let mut right_deg = vec![0usize; n];
    for (l, nbrs) in adj.iter().enumerate() {
        if nbrs.len() != d {
            return Err(Error::NotRegular(format!(
                "left vertex {} has degree {}, expected {d}",
                l + 1,
                nbrs.len()
            )));
        }
        for &r in nbrs {
            if r >= n {
                return Err(Error::NotRegular(format!("right vertex {} out of range", r + 1)));
            }
            right_deg[r] += 1;
        }
    }
    if let Some(r) = right_deg.iter().position(|&x| x != d) {
        return Err(Error::NotRegular(format!(
            "right vertex {} has degree {}, expected {d}",
            r + 1,
            right_deg[r]
        )));
    }
    let (match_left, _) = kuhn(n, n, adj);
    match_left
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::AssertionFailure("regular bipartite graph without a perfect matching".into()))
}
