//! Canonical forms under row permutations, column permutations, symbol
//! relabeling and transposition.
//!
//! A square is identified with its row-major symbol string renumbered by
//! first occurrence; the canonical form is the lexicographically smallest
//! such string over the group. The search fixes a view (the square or its
//! transpose), a first row and a column order, then extends the string row
//! by row, pruning any branch whose prefix already exceeds the best one.

use serde::Serialize;

use crate::square::Square;

const UNSET: u32 = u32::MAX;

/// A square together with the order of its stabilizer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryClass {
    pub canonical: Square,
    /// Number of group elements (view, row order, column order) mapping the
    /// square to its canonical string.
    pub automorphisms: u64,
    /// Number of distinct first-occurrence-normalized squares in the class,
    /// `2 (n!)^2 / automorphisms`.
    pub orbit_size: u64,
}

pub fn canonical_form(square: &Square) -> Square {
    symmetry_class(square).canonical
}

pub fn symmetry_class(square: &Square) -> SymmetryClass {
    let n = square.n();
    let canon = Canonizer::new(n);
    let grid = square.ids().to_vec();
    let (best, automorphisms) = canon.minimum(&grid, n, true);
    let group = 2 * factorial(n) * factorial(n);
    SymmetryClass {
        canonical: Square::from_flat(n, best.into_iter().map(|x| x as _).collect())
            .expect("a relabeled arrangement of a valid square is valid"),
        automorphisms,
        orbit_size: group / automorphisms,
    }
}

/// Whether the square, read as stored, is already its own canonical form.
pub fn is_canonical(square: &Square) -> bool {
    let canon = Canonizer::new(square.n());
    let normalized: Vec<u32> = square.ids().to_vec();
    if square.cells().iter().zip(&normalized).any(|(&a, &b)| a != b) {
        return false;
    }
    !canon.has_smaller(&normalized, square.n(), true)
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // Next permutation in lexicographic order.
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Reusable search state for a fixed order `n`.
pub(crate) struct Canonizer {
    n: usize,
    perms: Vec<Vec<usize>>,
}

impl Canonizer {
    pub(crate) fn new(n: usize) -> Self {
        Canonizer {
            n,
            perms: permutations(n),
        }
    }

    /// Smallest string over arrangements of the `rows` stored rows of
    /// `grid` (dense ids, row-major, `rows * n` entries), with the
    /// transposed view included when `transpose` is set (requires
    /// `rows == n`). Returns the string and the number of arrangements
    /// attaining it.
    pub(crate) fn minimum(&self, grid: &[u32], rows: usize, transpose: bool) -> (Vec<u32>, u64) {
        let mut s = Search::new(self.n, rows, grid, None);
        for view in self.views(grid, rows, transpose) {
            s.grid = view;
            for perm in &self.perms {
                s.run_view(perm);
            }
        }
        (s.best, s.ties)
    }

    /// Whether some arrangement yields a string strictly smaller than
    /// `target`, which must itself be a normalized arrangement of `grid`.
    pub(crate) fn has_smaller(&self, target: &[u32], rows: usize, transpose: bool) -> bool {
        let mut s = Search::new(self.n, rows, target, Some(target));
        for view in self.views(target, rows, transpose) {
            s.grid = view;
            for perm in &self.perms {
                if s.run_view(perm) {
                    return true;
                }
            }
        }
        false
    }

    fn views(&self, grid: &[u32], rows: usize, transpose: bool) -> Vec<Vec<u32>> {
        let n = self.n;
        let mut views = vec![grid[..rows * n].to_vec()];
        if transpose {
            assert_eq!(rows, n, "transposition needs a full square");
            views.push((0..n * n).map(|i| grid[(i % n) * n + i / n]).collect());
        }
        views
    }
}

struct Search {
    n: usize,
    rows: usize,
    grid: Vec<u32>,
    perm: Vec<usize>,
    lab: Vec<u32>,
    next: u32,
    used: Vec<bool>,
    best: Vec<u32>,
    /// Rows of `best` established by a completed path.
    valid: usize,
    target_mode: bool,
    ties: u64,
}

impl Search {
    fn new(n: usize, rows: usize, grid: &[u32], target: Option<&[u32]>) -> Self {
        let k = grid.iter().map(|&x| x as usize + 1).max().unwrap_or(0);
        Search {
            n,
            rows,
            grid: Vec::new(),
            perm: Vec::new(),
            lab: vec![UNSET; k.max(n * n)],
            next: 0,
            used: vec![false; rows],
            best: target.map_or_else(|| vec![0; rows * n], |t| t[..rows * n].to_vec()),
            valid: if target.is_some() { rows } else { 0 },
            target_mode: target.is_some(),
            ties: 0,
        }
    }

    /// Explores all arrangements of the current view under column order
    /// `perm`. Returns true in target mode once a smaller string is found.
    fn run_view(&mut self, perm: &[usize]) -> bool {
        let n = self.n;
        self.perm.clear();
        self.perm.extend_from_slice(perm);
        for r0 in 0..self.rows {
            // The first row always reads 0, 1, ..., n - 1.
            for c in 0..n {
                self.lab[self.grid[r0 * n + perm[c]] as usize] = c as u32;
            }
            self.next = n as u32;
            if self.valid == 0 {
                for c in 0..n {
                    self.best[c] = c as u32;
                }
                self.valid = 1;
            }
            self.used[r0] = true;
            let found = self.descend(1);
            self.used[r0] = false;
            for c in 0..n {
                self.lab[self.grid[r0 * n + perm[c]] as usize] = UNSET;
            }
            if found {
                return true;
            }
        }
        false
    }

    fn descend(&mut self, depth: usize) -> bool {
        let n = self.n;
        if depth == self.rows {
            self.ties += 1;
            return false;
        }
        let mut row_buf = vec![0u32; n];
        let mut fresh: Vec<u32> = Vec::with_capacity(n);
        for r in 0..self.rows {
            if self.used[r] {
                continue;
            }
            // Label row r under the current map, comparing as we go.
            let mut order = std::cmp::Ordering::Equal;
            let compare = depth < self.valid;
            fresh.clear();
            let mut next = self.next;
            let mut pruned = false;
            for c in 0..n {
                let s = self.grid[r * n + self.perm[c]] as usize;
                let v = if self.lab[s] != UNSET {
                    self.lab[s]
                } else {
                    self.lab[s] = next;
                    fresh.push(s as u32);
                    next += 1;
                    next - 1
                };
                row_buf[c] = v;
                if compare && order == std::cmp::Ordering::Equal {
                    order = v.cmp(&self.best[depth * n + c]);
                    if order == std::cmp::Ordering::Greater {
                        pruned = true;
                        break;
                    }
                }
            }
            if !pruned {
                if compare && order == std::cmp::Ordering::Less {
                    if self.target_mode {
                        for &s in &fresh {
                            self.lab[s as usize] = UNSET;
                        }
                        return true;
                    }
                    self.valid = depth;
                    self.ties = 0;
                }
                if depth >= self.valid {
                    self.best[depth * n..(depth + 1) * n].copy_from_slice(&row_buf);
                    self.valid = depth + 1;
                }
                let saved = self.next;
                self.next = next;
                self.used[r] = true;
                let found = self.descend(depth + 1);
                self.used[r] = false;
                self.next = saved;
                if found {
                    for &s in &fresh {
                        self.lab[s as usize] = UNSET;
                    }
                    return true;
                }
            }
            for &s in &fresh {
                self.lab[s as usize] = UNSET;
            }
        }
        false
    }
}
