//! Orderly enumeration of squares up to symmetry.
//!
//! Cells are filled in row-major order with first-occurrence labels, so
//! every complete fill is a normalized string. After each completed row the
//! rows filled so far must form the smallest arrangement of themselves
//! (a necessary condition for the final string to be canonical); complete
//! fills are kept when no group element produces a smaller string.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::square::Square;

use super::canonical::Canonizer;

/// Prunes a partial fill: receives the filled prefix (row-major, whole
/// rows only) and the order. Returning false discards every completion, so
/// the predicate must be monotone: once false, false for all extensions.
pub type PrefixFilter<'a> = &'a (dyn Fn(&[u32], usize) -> bool + Sync);

#[derive(Debug, Clone)]
pub struct EnumerationConfig {
    pub n: usize,
    pub min_symbols: usize,
    pub max_symbols: usize,
    pub max_nodes: Option<u64>,
    pub deadline: Option<Instant>,
    /// Worker threads; 0 uses the global rayon pool.
    pub jobs: usize,
}

impl EnumerationConfig {
    pub fn new(n: usize) -> Self {
        EnumerationConfig {
            n,
            min_symbols: n,
            max_symbols: n * n,
            max_nodes: None,
            deadline: None,
            jobs: 0,
        }
    }

    pub fn symbols(mut self, min: usize, max: usize) -> Self {
        self.min_symbols = min;
        self.max_symbols = max;
        self
    }
}

#[derive(Debug, Clone)]
pub struct EnumerationResult {
    /// Canonical representatives, sorted by their cell strings.
    pub squares: Vec<Square>,
    pub nodes: u64,
    /// False when the node budget or deadline cut the search short.
    pub complete: bool,
}

/// One canonical square per symmetry class with `min..=max` symbols.
pub fn enumerate_squares(n: usize, min_symbols: usize, max_symbols: usize) -> Result<Vec<Square>> {
    let res = enumerate(&EnumerationConfig::new(n).symbols(min_symbols, max_symbols), None)?;
    Ok(res.squares)
}

pub fn enumerate(config: &EnumerationConfig, filter: Option<PrefixFilter<'_>>) -> Result<EnumerationResult> {
    let n = config.n;
    if n == 0 || n > 8 {
        return Err(Error::InfeasibleParams(format!("enumeration supports orders 1..=8, got {n}")));
    }
    let min = config.min_symbols.max(n);
    let max = config.max_symbols.min(n * n);
    if min > max {
        return Ok(EnumerationResult {
            squares: Vec::new(),
            nodes: 0,
            complete: true,
        });
    }
    let canon = Canonizer::new(n);
    let budget = Budget {
        nodes: AtomicU64::new(0),
        max_nodes: config.max_nodes,
        deadline: config.deadline,
        stopped: AtomicBool::new(false),
    };
    let base = Filler::new(n, min, max, &canon, filter, &budget);

    // Work units: every surviving fill of the first two rows.
    let split = if n >= 2 { 2 * n } else { n * n };
    let mut units = Vec::new();
    let mut seed = base.clone();
    seed.collect_prefixes(0, split, &mut units);
    let mut squares = seed.out;

    let run = |units: Vec<Filler<'_>>| -> Vec<Vec<u32>> {
        units
            .into_par_iter()
            .flat_map_iter(|mut f| {
                f.fill(split);
                f.out
            })
            .collect()
    };
    let found = if config.jobs == 0 {
        run(units)
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| Error::ResourceLimit(format!("cannot start worker pool: {e}")))?
            .install(|| run(units))
    };
    squares.extend(found);
    squares.sort();
    Ok(EnumerationResult {
        squares: squares
            .into_iter()
            .map(|cells| Square::from_flat(n, cells).expect("enumerated fills are proper"))
            .collect(),
        nodes: budget.nodes.load(Ordering::Relaxed),
        complete: !budget.stopped.load(Ordering::Relaxed),
    })
}

struct Budget {
    nodes: AtomicU64,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    stopped: AtomicBool,
}

impl Budget {
    fn tick(&self) -> bool {
        if self.stopped.load(Ordering::Relaxed) {
            return false;
        }
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.max_nodes.is_some_and(|m| count > m);
        let over_time = count.is_multiple_of(4096) && self.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.stopped.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

#[derive(Clone)]
struct Filler<'a> {
    n: usize,
    min: usize,
    max: usize,
    cells: Vec<u32>,
    row_mask: Vec<u64>,
    col_mask: Vec<u64>,
    count: usize,
    canon: &'a Canonizer,
    filter: Option<PrefixFilter<'a>>,
    budget: &'a Budget,
    out: Vec<Vec<u32>>,
}

impl<'a> Filler<'a> {
    fn new(
        n: usize,
        min: usize,
        max: usize,
        canon: &'a Canonizer,
        filter: Option<PrefixFilter<'a>>,
        budget: &'a Budget,
    ) -> Self {
        Filler {
            n,
            min,
            max,
            cells: vec![0; n * n],
            row_mask: vec![0; n],
            col_mask: vec![0; n],
            count: 0,
            canon,
            filter,
            budget,
            out: Vec::new(),
        }
    }

    /// Row-boundary and leaf checks; false prunes.
    fn accept_boundary(&mut self, pos: usize) -> bool {
        let n = self.n;
        if pos == 0 || !pos.is_multiple_of(n) {
            return true;
        }
        let rows = pos / n;
        if rows >= 2 && rows < n && self.canon.has_smaller(&self.cells[..pos], rows, false) {
            return false;
        }
        if let Some(f) = self.filter {
            if !f(&self.cells[..pos], n) {
                return false;
            }
        }
        true
    }

    fn fill(&mut self, pos: usize) {
        if !self.budget.tick() {
            return;
        }
        if !self.accept_boundary(pos) {
            return;
        }
        let n = self.n;
        if pos == n * n {
            if (self.min..=self.max).contains(&self.count) && !self.canon.has_smaller(&self.cells, n, true) {
                self.out.push(self.cells.clone());
            }
            return;
        }
        self.each_choice(pos, |f| f.fill(pos + 1));
    }

    /// Like [`Self::fill`], but stops at `split` and records the states.
    fn collect_prefixes(&mut self, pos: usize, split: usize, units: &mut Vec<Filler<'a>>) {
        if pos == split && pos < self.n * self.n {
            if self.accept_boundary(pos) {
                units.push(Filler {
                    out: Vec::new(),
                    ..self.clone()
                });
            }
            return;
        }
        if pos == self.n * self.n {
            self.fill(pos);
            return;
        }
        if !self.budget.tick() || !self.accept_boundary(pos) {
            return;
        }
        self.each_choice(pos, |f| f.collect_prefixes(pos + 1, split, units));
    }

    fn each_choice(&mut self, pos: usize, mut next: impl FnMut(&mut Self)) {
        let n = self.n;
        let (r, c) = (pos / n, pos % n);
        let remaining = n * n - pos - 1;
        let blocked = self.row_mask[r] | self.col_mask[c];
        // Reusing a symbol keeps the count; the rest must still reach min.
        if self.count + remaining >= self.min {
            for s in 0..self.count {
                if blocked >> s & 1 == 0 {
                    self.place(pos, s as u32);
                    next(self);
                    self.unplace(pos, s as u32);
                }
            }
        }
        if self.count < self.max && self.count + 1 + remaining >= self.min {
            let s = self.count as u32;
            self.count += 1;
            self.place(pos, s);
            next(self);
            self.unplace(pos, s);
            self.count -= 1;
        }
    }

    fn place(&mut self, pos: usize, s: u32) {
        let n = self.n;
        self.cells[pos] = s;
        self.row_mask[pos / n] |= 1 << s;
        self.col_mask[pos % n] |= 1 << s;
    }

    fn unplace(&mut self, pos: usize, s: u32) {
        let n = self.n;
        self.row_mask[pos / n] &= !(1 << s);
        self.col_mask[pos % n] &= !(1 << s);
    }
}
